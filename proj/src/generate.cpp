#include "opord/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "opord/errors.hpp"
#include "opord/rng.hpp"

namespace opord {
namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidParams(msg);
}

// Gram-Schmidt on a Gaussian matrix, one re-orthogonalization pass.
Matrix random_orthogonal(Rng& rng, int dim) {
    Matrix q(dim);
    for (int col = 0; col < dim; ++col) {
        std::vector<double> v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng.normal();
        for (int pass = 0; pass < 2; ++pass) {
            for (int prev = 0; prev < col; ++prev) {
                double dot = 0.0;
                for (int i = 0; i < dim; ++i) dot += v[i] * q.at(i, prev);
                for (int i = 0; i < dim; ++i) v[i] -= dot * q.at(i, prev);
            }
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            --col;
            continue;
        }
        for (int i = 0; i < dim; ++i) q.at(i, col) = v[i] / norm;
    }
    return q;
}

SpdMatrix random_spd(Rng& rng, int dim, double lo, double hi) {
    std::vector<double> vals(dim);
    for (double& v : vals) v = rng.log_uniform(lo, hi);
    return SpdMatrix::from_eigen(random_orthogonal(rng, dim), std::move(vals));
}

// Exponent-shrink pass keeping nested evaluations inside the conditioning
// budget: on a condition-c chain the evaluated nest has condition at most
// roughly c to the power (psi - t_n + r), so that mass is capped.
void cap_exponent_mass(FurutaParams& fp, double mass_cap) {
    const double tn = fp.t.back();
    while (psi_2n(fp) - tn + fp.r > mass_cap) {
        for (double& p : fp.p) p = 1.0 + 0.8 * (p - 1.0);
    }
}

double stage_exponent_cap(int n) {
    if (n <= 1) return 1.6;
    if (n == 2) return 1.35;
    return 1.2;
}

}  // namespace

OperatorChain gen_ordered_chain(std::uint64_t seed, int dim, int k,
                                double condition_cap) {
    require(dim >= 1, "gen_ordered_chain needs dim >= 1");
    require(k >= 2, "gen_ordered_chain needs k >= 2");
    require(condition_cap >= 1.0, "gen_ordered_chain needs condition_cap >= 1");

    Rng rng(seed);
    const double a1_hi = std::min(2.0, std::sqrt(condition_cap));
    std::vector<SpdMatrix> ops;
    ops.push_back(random_spd(rng, dim, 1.0, a1_hi));

    // Bumps consume a random fraction of the remaining eigenvalue headroom,
    // split across the links, so max_eig(A_k) stays below condition_cap
    // while min_eig(A_1) >= 1.
    const double headroom = condition_cap - a1_hi;
    const double use = rng.uniform(0.25, 0.9);
    std::vector<double> weights(static_cast<std::size_t>(k - 1));
    double total = 0.0;
    for (double& w : weights) {
        w = rng.uniform(0.1, 1.0);
        total += w;
    }
    for (int link = 0; link < k - 1; ++link) {
        const double step = headroom * use * weights[link] / total;
        if (step < 1e-9) {
            ops.push_back(ops.back());
            continue;
        }
        const SpdMatrix bump = random_spd(rng, dim, 0.15 * step, step);
        ops.emplace_back(SymMatrix::symmetrized(ops.back().mat() + bump.mat()));
    }
    return OperatorChain(std::move(ops));
}

OperatorChain gen_broken_chain(std::uint64_t seed, int dim, int k,
                               int broken_link, double violation_depth) {
    require(dim >= 1, "gen_broken_chain needs dim >= 1");
    require(k >= 2, "gen_broken_chain needs k >= 2");
    require(broken_link >= 1 && broken_link < k,
            "broken_link must satisfy 1 <= broken_link < k");
    require(violation_depth > 0.0, "violation_depth must be positive");
    require(violation_depth <= 0.85,
            "violation_depth above 0.85 cannot keep the broken operator "
            "positive definite");

    Rng rng(seed);
    std::vector<SpdMatrix> ops;
    ops.push_back(random_spd(rng, dim, 1.0, 1.8));
    for (int link = 1; link < k; ++link) {
        if (link == broken_link) {
            // Deficit along the top eigendirection of the predecessor: the
            // difference has min_eig exactly -c while all other directions
            // keep their positive margin, so only this link breaks.
            const SpdMatrix& prev = ops.back();
            const double margin_cap = std::min(1.5, 0.88 / violation_depth);
            const double c =
                prev.max_eig() * violation_depth * rng.uniform(1.0, margin_cap);
            const auto& eig = prev.eigen();
            std::vector<double> top(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) top[i] = eig.vectors.at(i, dim - 1);
            Matrix next = prev.mat();
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    next.at(i, j) -= c * top[i] * top[j];
            ops.emplace_back(SymMatrix::symmetrized(std::move(next)));
            continue;
        }
        const SpdMatrix bump = random_spd(rng, dim, 0.05, 0.25);
        ops.emplace_back(SymMatrix::symmetrized(ops.back().mat() + bump.mat()));
    }
    return OperatorChain(std::move(ops));
}

FurutaParams gen_params(std::uint64_t seed, int n) {
    require(n >= 1, "gen_params needs n >= 1");
    Rng rng(seed);
    FurutaParams fp;
    fp.n = n;
    fp.t.resize(static_cast<std::size_t>(n));
    fp.p.resize(static_cast<std::size_t>(2 * n));
    for (double& t : fp.t) t = rng.uniform(0.05, 0.95);
    const double p_hi = stage_exponent_cap(n);
    for (double& p : fp.p) p = 1.0 + rng.uniform(0.0, 1.0) * (p_hi - 1.0);
    fp.r = fp.t.back() + rng.uniform(0.05, 0.6);
    cap_exponent_mass(fp, 4.2);
    fp.validate();
    return fp;
}

FurutaParams gen_equal_weight_params(std::uint64_t seed, int n) {
    require(n >= 1, "gen_equal_weight_params needs n >= 1");
    Rng rng(seed);
    FurutaParams fp;
    fp.n = n;
    fp.t.assign(static_cast<std::size_t>(n), rng.uniform(0.05, 0.95));
    fp.p.resize(static_cast<std::size_t>(2 * n));
    const double p_hi = stage_exponent_cap(n);
    for (double& p : fp.p) p = 1.0 + rng.uniform(0.0, 1.0) * (p_hi - 1.0);
    fp.r = fp.t.back() + rng.uniform(0.05, 0.6);
    cap_exponent_mass(fp, 4.2);
    fp.validate();
    return fp;
}

ClassicParams gen_classic_params(std::uint64_t seed, ClassicTheorem theorem) {
    Rng rng(seed);
    ClassicParams cp;
    if (theorem == ClassicTheorem::furuta) {
        cp.q = rng.uniform(1.0, 2.0);
        cp.r = rng.uniform(0.0, 1.2);
        cp.p = rng.uniform(0.0, std::min(3.0, (1.0 + cp.r) * cp.q - cp.r));
    } else {
        cp.t = rng.uniform(0.0, 1.0);
        cp.p = rng.uniform(1.0, 1.5);
        cp.s = rng.uniform(1.0, 1.5);
        cp.r = cp.t + rng.uniform(0.0, 0.8);
    }
    const DomainCheck check = validate_classic_domain(theorem, cp);
    if (!check.valid) throw InvalidParams("classic draw left its domain: " + check.reason);
    return cp;
}

std::pair<FurutaParams, int> gen_equality_instance(std::uint64_t seed, int n,
                                                   int forced_m) {
    require(n >= 1, "gen_equality_instance needs n >= 1");
    require(forced_m == 0 || forced_m >= 2,
            "forced_m must be 0 (draw) or an integer >= 2");
    Rng rng(seed);
    const int m = forced_m > 0 ? forced_m : rng.uniform_int(2, 8);
    FurutaParams fp;
    fp.n = n;
    fp.t.resize(static_cast<std::size_t>(n));
    fp.p.resize(static_cast<std::size_t>(2 * n));
    for (double& t : fp.t) t = rng.uniform(0.1, 0.9);
    const double p_hi = std::min(stage_exponent_cap(n), 1.5);
    for (double& p : fp.p) p = 1.0 + rng.uniform(0.0, 1.0) * (p_hi - 1.0);
    // r chosen so (psi - t_n + r) / (r - t_n) is exactly m.
    const double md = static_cast<double>(m);
    while (true) {
        const double psi = psi_2n(fp);
        if (psi * md / (md - 1.0) <= 4.4) break;
        for (double& p : fp.p) p = 1.0 + 0.8 * (p - 1.0);
    }
    fp.r = fp.t.back() + psi_2n(fp) / (md - 1.0);
    fp.validate();
    return {fp, m};
}

std::uint64_t chain_fingerprint(const OperatorChain& chain) {
    constexpr std::uint64_t basis = 0xcbf29ce484222325ull;
    constexpr std::uint64_t prime = 0x100000001b3ull;
    std::uint64_t h = basis;
    auto mix = [&h](std::uint64_t word) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (word >> (8 * byte)) & 0xffu;
            h *= prime;
        }
    };
    mix(static_cast<std::uint64_t>(chain.length()));
    for (const SpdMatrix& op : chain.matrices()) {
        mix(static_cast<std::uint64_t>(op.dim()));
        for (int i = 0; i < op.dim(); ++i) {
            for (int j = 0; j < op.dim(); ++j) {
                std::uint64_t bits = 0;
                const double value = op.mat().at(i, j);
                std::memcpy(&bits, &value, sizeof bits);
                mix(bits);
            }
        }
    }
    return h;
}

}  // namespace opord
