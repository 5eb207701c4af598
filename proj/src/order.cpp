#include "opord/order.hpp"

#include <cmath>
#include <string>

namespace opord {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidParams(msg);
}

// Bracket the item compares against its link: ascending items look at
// A_{k+1}^{-1/2} A_k A_{k+1}^{-1/2}, descending at the mirrored form.
SpdMatrix bracket_matrix(const OperatorChain& chain, int item, int n) {
    if (item <= n)
        return congruence(fractional_power(chain.at(item + 1), -0.5), chain.at(item));
    return congruence(fractional_power(chain.at(item), -0.5), chain.at(item + 1));
}

// Scalar picked up while peeling the nested side of an item at the witness
// setting: an extreme-ratio term for the anchor, then one spectral bound
// per remaining slot, upper bounds over lower for ascending items and the
// reciprocal arrangement for descending ones.
double bound_factor(const OperatorChain& chain, int item, int n) {
    const int len = chain.length();
    const auto bounds_at = [&](int s) {
        return spectral_bounds(chain.at(item_slot_index(item, s, n, len)));
    };
    const SpectralBounds anchor = bounds_at(2 * n);
    const double sum = anchor.upper + anchor.lower;
    if (item <= n) {
        double c = sum * sum / (4.0 * anchor.upper * anchor.lower);
        for (int s = 3; s <= 2 * n - 1; s += 2) c *= bounds_at(s).upper;
        for (int s = 2; s <= 2 * n - 2; s += 2) c /= bounds_at(s).lower;
        return c;
    }
    double d = 4.0 * anchor.upper * anchor.lower / (sum * sum);
    for (int s = 3; s <= 2 * n - 1; s += 2) d *= bounds_at(s).lower;
    for (int s = 2; s <= 2 * n - 2; s += 2) d /= bounds_at(s).upper;
    return d;
}

std::vector<WitnessBound> bound_diagnostics(const OperatorChain& chain, int n, double p2) {
    std::vector<WitnessBound> out;
    for (int k = 1; k <= item_count(chain.length()); ++k) {
        WitnessBound b;
        b.item = k;
        b.link = k;
        b.factor = bound_factor(chain, k, n);
        b.threshold = std::pow(b.factor, 1.0 / p2);
        const SpdMatrix w = bracket_matrix(chain, k, n);
        b.bracket_extreme = (k <= n) ? w.max_eig() : w.min_eig();
        out.push_back(b);
    }
    return out;
}

OperatorChain inverted_reversed(const OperatorChain& chain) {
    std::vector<SpdMatrix> inv;
    inv.reserve(static_cast<std::size_t>(chain.length()));
    for (int i = chain.length(); i >= 1; --i) inv.push_back(spd_inverse(chain.at(i)));
    return OperatorChain(std::move(inv));
}

}  // namespace

std::vector<int> OrderReport::broken() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < links.size(); ++i)
        if (!links[i].holds_geq()) out.push_back(static_cast<int>(i) + 1);
    return out;
}

OrderReport check_order(const OperatorChain& chain, double tol) {
    OrderReport rep;
    rep.is_ordered = true;
    for (int i = 1; i < chain.length(); ++i) {
        const ComparisonVerdict v =
            loewner_compare(chain.at(i + 1).sym(), chain.at(i).sym(), tol);
        rep.is_ordered = rep.is_ordered && v.holds_geq();
        rep.links.push_back(v);
    }
    return rep;
}

ForwardReport verify_forward(const OperatorChain& chain, const FurutaParams& params,
                             double tol) {
    params.validate();
    const int len = chain.length();
    require(len == 2 * params.n + 1 || len == 2 * params.n,
            "stage count n = " + std::to_string(params.n) + " does not fit chain length " +
                std::to_string(len));
    if (!check_order(chain, tol).is_ordered)
        throw PreorderViolation("chain is not ordered; the forward direction claims nothing");

    ForwardReport rep;
    rep.family = (len % 2 == 1) ? Family::odd_chain_item : Family::even_chain_item;
    rep.all_hold = true;
    for (int k = 1; k <= item_count(len); ++k) {
        InequalitySpec spec;
        spec.family = rep.family;
        spec.k = k;
        spec.furuta = params;
        rep.items.push_back(check_inequality(spec, chain, tol));
        rep.all_hold = rep.all_hold && rep.items.back().holds;
    }
    return rep;
}

OperatorChain counterexample_chain(double u, double eps) {
    require(u > 1.0, "counterexample family needs u > 1, got " + std::to_string(u));
    require(eps > 0.0, "counterexample family needs eps > 0, got " + std::to_string(eps));
    const auto diag = [](double a, double b) {
        Matrix m(2);
        m.at(0, 0) = a;
        m.at(1, 1) = b;
        return SpdMatrix(SymMatrix(m));
    };
    return OperatorChain({diag(1.0, 1.0 / u), diag(1.0, 1.0), diag(1.0, u), diag(u, 1.0),
                          diag(u + eps, 1.0)});
}

FurutaParams counterexample_default_params() {
    FurutaParams fp;
    fp.n = 2;
    fp.t = {1.0, 1.0};
    fp.p = {2.0, 2.0, 2.0, 2.0};
    fp.r = 2.0;
    return fp;
}

CounterexampleReport verify_counterexample(double u, double eps, const FurutaParams& params,
                                           double tol) {
    params.validate();
    require(params.n == 2, "the counterexample family is a five-operator claim; needs n = 2");

    const OperatorChain chain = counterexample_chain(u, eps);
    CounterexampleReport rep;
    rep.u = u;
    rep.eps = eps;
    rep.order = check_order(chain, tol);

    InequalitySpec spec;
    spec.family = Family::odd_chain_item;
    spec.furuta = params;
    spec.k = 1;
    rep.first_item = check_inequality(spec, chain, tol);
    spec.k = item_count(chain.length());
    rep.last_item = check_inequality(spec, chain, tol);

    rep.first_holds = rep.first_item.holds;
    rep.last_holds = rep.last_item.holds;
    rep.order_fails = !rep.order.is_ordered;
    rep.expectations_met = rep.first_holds && rep.last_holds && rep.order_fails;
    return rep;
}

LinkBound link_spectral_bound(const OperatorChain& chain, int item, double p2) {
    const int len = chain.length();
    const int n = half_stages(len);
    require(p2 >= 1.0, "p2 must be at least 1, got " + std::to_string(p2));
    require(item >= 1 && item <= item_count(len),
            "item " + std::to_string(item) + " outside 1.." + std::to_string(item_count(len)));
    if (!check_order(chain).is_ordered)
        throw PreorderViolation("the spectral bound chain is only a theorem on ordered chains");

    LinkBound b;
    b.item = item;
    b.link = item;
    b.factor = bound_factor(chain, item, n);
    b.threshold = std::pow(b.factor, 1.0 / p2);
    b.bracket = bracket_matrix(chain, item, n);
    if (item <= n) {
        b.bracket_extreme = b.bracket.max_eig();
        b.consistent = b.bracket_extreme <= b.threshold * (1.0 + 1e-10) + 1e-12;
    } else {
        b.bracket_extreme = b.bracket.min_eig();
        b.consistent = b.bracket_extreme >= b.threshold * (1.0 - 1e-10) - 1e-12;
    }
    return b;
}

SymMatrix witness_rhs(const OperatorChain& chain, int item, int n, double p2) {
    const int len = chain.length();
    require(len == 2 * n + 1 || len == 2 * n,
            "stage count n = " + std::to_string(n) + " does not fit chain length " +
                std::to_string(len));
    require(item >= 1 && item <= n, "scaled evaluation covers ascending items only");
    require(p2 >= 1.0, "p2 must be at least 1, got " + std::to_string(p2));
    const int dim = chain.dim();

    // At the witness setting every stage power except p_2 is 1, so the nest
    // flattens to Z W^{p2} Z^T: Z collects the slot factors outermost first,
    // W is the link bracket.
    Matrix z = fractional_power(chain.at(item_slot_index(item, 2 * n, n, len)), 1.0).mat();
    for (int s = 2 * n - 1; s >= 2; --s) {
        const double e = (s % 2 == 1) ? -0.5 : 0.5;
        z = z * fractional_power(chain.at(item_slot_index(item, s, n, len)), e).mat();
    }

    const SpdMatrix w = bracket_matrix(chain, item, n);
    const EigenDecomposition& we = w.eigen();
    const Matrix m = z * we.vectors;

    // W^{p2} = sigma * diag(exp(p2 (ln w_i - ln w_max))) in W's eigenbasis,
    // sigma = w_max^{p2} kept as a scalar exponent until the very end.
    const double log_wmax = std::log(we.values.back());
    Matrix ghat(dim);
    for (int k = 0; k < dim; ++k) {
        const double wk = std::exp(p2 * (std::log(we.values[static_cast<std::size_t>(k)]) -
                                         log_wmax));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) ghat.at(i, j) += wk * m.at(i, k) * m.at(j, k);
    }

    // Square root of the normalized product; eigenvalues clipped at zero
    // since underflow can leave tiny negatives.
    const EigenDecomposition ge = eigendecompose(SymMatrix::symmetrized(ghat));
    Matrix root(dim);
    for (int k = 0; k < dim; ++k) {
        const double q = std::sqrt(std::max(ge.values[static_cast<std::size_t>(k)], 0.0));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                root.at(i, j) += q * ge.vectors.at(i, k) * ge.vectors.at(j, k);
    }

    // sqrt(sigma), clamped so the certificate side stays representable; the
    // clamp can only shrink the result, so it never fabricates a violation.
    const double half_log_sigma = std::min(0.5 * p2 * log_wmax, 345.0);
    return SymMatrix::symmetrized(root.scaled(std::exp(half_log_sigma)));
}

std::vector<double> default_schedule() {
    std::vector<double> s;
    for (double p2 = 1.0; p2 <= 16384.0; p2 *= 2.0) s.push_back(p2);
    return s;
}

WitnessReport reverse_witness(const OperatorChain& chain, int n,
                              const std::vector<double>& schedule, double tol) {
    const int len = chain.length();
    require(len == 2 * n + 1 || len == 2 * n,
            "stage count n = " + std::to_string(n) + " does not fit chain length " +
                std::to_string(len));
    require(!schedule.empty(), "empty p2 schedule");
    for (double p2 : schedule)
        require(p2 >= 1.0, "p2 must be at least 1, got " + std::to_string(p2));

    const Family fam = (len % 2 == 1) ? Family::odd_chain_item : Family::even_chain_item;
    const int items = item_count(len);
    const OperatorChain mirror = inverted_reversed(chain);

    WitnessReport rep;
    for (double p2 : schedule) {
        for (int k = 1; k <= items; ++k) {
            // descending items are the ascending items of the mirror chain
            const OperatorChain& frame = (k <= n) ? chain : mirror;
            const int frame_item = (k <= n) ? k : len - k;
            const SymMatrix rhs = witness_rhs(frame, frame_item, n, p2);
            const ComparisonVerdict v = loewner_compare(frame.at(len).sym(), rhs, tol);
            if (v.min_eig_diff < -10.0 * v.tolerance_used) {
                rep.found = true;
                InequalitySpec spec;
                spec.family = fam;
                spec.k = k;
                spec.furuta = witness_setting(n, p2);
                rep.spec = spec;
                rep.p2_used = p2;
                rep.residual = v.min_eig_diff;
                rep.bounds = bound_diagnostics(chain, n, p2);
                return rep;
            }
        }
    }
    rep.p2_used = schedule.back();
    rep.bounds = bound_diagnostics(chain, n, schedule.back());
    return rep;
}

}  // namespace opord
