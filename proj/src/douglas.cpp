#include "opord/douglas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opord/rng.hpp"

namespace opord {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidParams(msg);
}

Family family_for_length(int len) {
    return (len % 2 == 1) ? Family::odd_chain_item : Family::even_chain_item;
}

void check_frame(const OperatorChain& chain, const FurutaParams& params, int item) {
    params.validate();
    const int len = chain.length();
    require(len == 2 * params.n + 1 || len == 2 * params.n,
            "stage count n = " + std::to_string(params.n) + " does not fit chain length " +
                std::to_string(len));
    require(item >= 1 && item <= item_count(len),
            "item " + std::to_string(item) + " outside 1.." + std::to_string(item_count(len)));
}

double rel_frob(const Matrix& x, const Matrix& y) {
    return (x - y).frobenius_norm() / std::max(y.frobenius_norm(), 1e-300);
}

}  // namespace

DouglasSolution douglas_factor(const Matrix& s, const Matrix& t) {
    if (s.dim() != t.dim())
        throw DimensionMismatch("factor sides are " + std::to_string(s.dim()) + "x" +
                                std::to_string(s.dim()) + " and " + std::to_string(t.dim()) +
                                "x" + std::to_string(t.dim()));
    const EigenDecomposition te = eigendecompose(SymMatrix::symmetrized(t * t.transpose()));
    if (te.values.back() <= 0.0 || te.values.front() <= 1e-10 * te.values.back())
        throw MajorizationUnverifiable(
            "T T^t is singular beyond the positivity floor; the optimal constant "
            "cannot be certified");

    DouglasSolution sol;
    sol.q = lu_solve(t, s);
    const EigenDecomposition qe =
        eigendecompose(SymMatrix::symmetrized(sol.q.transpose() * sol.q));
    sol.norm_sq = std::max(qe.values.back(), 0.0);
    sol.residual = (t * sol.q - s).frobenius_norm() / std::max(s.frobenius_norm(), 1e-300);
    return sol;
}

ContractionWitness construct_contraction(const OperatorChain& chain,
                                         const FurutaParams& params, int item, int m) {
    check_frame(chain, params, item);
    const std::optional<int> mc = compute_m(params);
    if (!mc)
        throw DegenerateExponent(
            "the exponent ratio is not an integer; no equality family exists here");
    require(m == *mc, "m = " + std::to_string(m) + " does not match the exponent ratio " +
                          std::to_string(*mc));
    require(m >= 2, "the equality family needs m >= 2");

    const int len = chain.length();
    InequalitySpec spec;
    spec.family = family_for_length(len);
    spec.k = item;
    spec.furuta = params;
    const InequalityResult chk = check_inequality(spec, chain);
    if (!chk.holds)
        throw InequalityViolated("item " + std::to_string(item) +
                                 " fails on this chain; the majorization premise is absent");

    // chk.rhs is the nested side at outer exponent 1/m; its square root is
    // the 1/(2m) power fed to the factorization as in the construction.
    const double tau = params.r - params.t.back();
    const bool ascending = item <= params.n;
    const SpdMatrix half = fractional_power(chk.rhs, ascending ? 0.5 : -0.5);
    const SpdMatrix& anchor = ascending ? chain.at(len) : chain.at(1);
    const Matrix tside = fractional_power(anchor, ascending ? tau / 2.0 : -tau / 2.0).mat();
    const DouglasSolution e = douglas_factor(half.mat(), tside);

    ContractionWitness w;
    w.index = item;
    w.m = m;
    w.factor_residual = e.residual;
    w.s = SpdMatrix(SymMatrix::symmetrized(e.q * e.q.transpose()));
    w.norm = w.s.max_eig();
    w.equality_residuals = contraction_equalities(chain, params, item, m, w.s);
    return w;
}

std::pair<double, double> contraction_equalities(const OperatorChain& chain,
                                                 const FurutaParams& params, int item,
                                                 int m, const SpdMatrix& s) {
    check_frame(chain, params, item);
    require(m >= 2, "the equality family needs m >= 2");
    if (s.dim() != chain.dim())
        throw DimensionMismatch("contraction is " + std::to_string(s.dim()) +
                                "x" + std::to_string(s.dim()) + " on a chain of dimension " +
                                std::to_string(chain.dim()));

    const int len = chain.length();
    const bool ascending = item <= params.n;
    const double tn = params.t.back();
    const double tau = params.r - tn;
    const SpdMatrix& anchor = ascending ? chain.at(len) : chain.at(1);
    const Matrix x = ascending ? s.mat() : spd_inverse(s).mat();
    const Matrix a_tau = fractional_power(anchor, tau).mat();
    const Matrix cap = fractional_power(anchor, -tn / 2.0).mat();

    const Matrix ax = a_tau * x;
    const Matrix xa = x * a_tau;
    Matrix left_pow = Matrix::identity(chain.dim());
    Matrix right_pow = Matrix::identity(chain.dim());
    for (int j = 1; j < m; ++j) {
        left_pow = left_pow * ax;
        right_pow = right_pow * xa;
    }
    const Matrix f1 = cap * (x * left_pow) * cap;
    const Matrix f2 = cap * (right_pow * x) * cap;

    // both product forms must reproduce the nested side with its outermost
    // layer peeled; evaluated fresh, independent of any construction
    InequalitySpec spec;
    spec.family = family_for_length(len);
    spec.k = item;
    spec.furuta = params;
    const InequalityForm form = build_inequality(spec, len);
    const Matrix fresh = evaluate_chain(peel_outer_layer(form.rhs), chain).mat();

    return {rel_frob(f1, fresh), rel_frob(f2, fresh)};
}

bool uniqueness_check(const OperatorChain& chain, const FurutaParams& params, int item,
                      int m, int trials, std::uint64_t seed) {
    const ContractionWitness base = construct_contraction(chain, params, item, m);
    const double eq_tol = 1e-8;
    if (std::max(base.equality_residuals.first, base.equality_residuals.second) > eq_tol)
        return false;

    // analytic route: the defining relation pins s as an SPD m-th root of
    // the full nest conjugated back by the anchor power
    const int len = chain.length();
    InequalitySpec spec;
    spec.family = family_for_length(len);
    spec.k = item;
    spec.furuta = params;
    const InequalityForm form = build_inequality(spec, len);
    const SpdMatrix nest = evaluate_chain(with_outer_exponent(form.rhs, 1.0), chain);
    const bool ascending = item <= params.n;
    const double tau = params.r - params.t.back();
    const SpdMatrix wrap = ascending ? fractional_power(chain.at(len), -tau / 2.0)
                                     : fractional_power(chain.at(1), tau / 2.0);
    const SpdMatrix root = fractional_power(nest, ascending ? 1.0 / m : -1.0 / m);
    const SpdMatrix rebuilt = congruence(wrap, root);
    if (rel_frob(rebuilt.mat(), base.s.mat()) > 1e-9) return false;

    Rng rng(seed);
    const int dim = chain.dim();
    for (int trial = 0; trial < trials; ++trial) {
        Matrix p(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                const double v = rng.normal();
                p.at(i, j) = v;
                p.at(j, i) = v;
            }
        const double nrm = spectral_norm(SymMatrix(p));
        if (nrm < 1e-12) continue;
        const Matrix bump = p.scaled(1e-3 / nrm);
        std::pair<double, double> res;
        try {
            const SpdMatrix perturbed(SymMatrix::symmetrized(base.s.mat() + bump));
            res = contraction_equalities(chain, params, item, m, perturbed);
        } catch (const OpordError&) {
            continue;  // left the SPD cone; such a perturbation cannot satisfy the equality
        }
        if (std::max(res.first, res.second) <= 10.0 * eq_tol) return false;
    }
    return true;
}

}  // namespace opord
