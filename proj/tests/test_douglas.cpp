#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "opord/chain.hpp"
#include "opord/douglas.hpp"
#include "opord/errors.hpp"
#include "opord/exponents.hpp"
#include "opord/order.hpp"
#include "opord/rng.hpp"
#include "scalar_oracle.hpp"
#include "testutil.hpp"

using namespace opord;
using test::rand_orthogonal;
using test::rand_spd;

namespace {

Matrix diag(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

OperatorChain scalar_chain(const std::vector<double>& vals) {
    std::vector<SpdMatrix> ops;
    for (double v : vals) {
        Matrix m(1);
        m.at(0, 0) = v;
        ops.emplace_back(SymMatrix(m));
    }
    return OperatorChain(std::move(ops));
}

OperatorChain identity_chain(int dim, int len) {
    std::vector<SpdMatrix> ops(static_cast<std::size_t>(len), SpdMatrix::identity(dim));
    return OperatorChain(std::move(ops));
}

OperatorChain ordered_chain(Rng& rng, int dim, int len) {
    std::vector<SpdMatrix> ops;
    ops.push_back(rand_spd(rng, dim, 0.8, 1.2));
    for (int i = 1; i < len; ++i) {
        const SpdMatrix bump = rand_spd(rng, dim, 0.05, 0.15);
        ops.push_back(SpdMatrix(SymMatrix::symmetrized(ops.back().mat() + bump.mat())));
    }
    return OperatorChain(std::move(ops));
}

// Parameters whose exponent ratio is exactly the integer m:
// r - t_n = psi / (m - 1) makes (psi - t_n + r) / (r - t_n) = m.
FurutaParams eq_params(Rng& rng, int n, int m) {
    FurutaParams fp;
    fp.n = n;
    for (int j = 0; j < n; ++j) fp.t.push_back(rng.uniform(0.1, 0.9));
    for (int j = 0; j < 2 * n; ++j) fp.p.push_back(rng.uniform(1.0, 1.5));
    fp.r = fp.t.back() + psi_2n(fp) / (m - 1);
    return fp;
}

double rel_frob(const Matrix& x, const Matrix& y) {
    const double denom = std::max({x.frobenius_norm(), y.frobenius_norm(), 1e-300});
    return (x - y).frobenius_norm() / denom;
}

double max_residual(const std::pair<double, double>& r) {
    return std::max(r.first, r.second);
}

}  // namespace

TEST_CASE("factorization against an identity or matching side") {
    Rng rng(0xd009a501);
    for (int dim = 2; dim <= 4; ++dim) {
        Matrix s(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) s.at(i, j) = rng.normal();

        const DouglasSolution against_identity = douglas_factor(s, Matrix::identity(dim));
        CHECK(rel_frob(against_identity.q, s) < 1e-14);
        const double s_norm_sq =
            eigendecompose(SymMatrix::symmetrized(s.transpose() * s)).values.back();
        CHECK(against_identity.norm_sq == doctest::Approx(s_norm_sq).epsilon(1e-12));
        CHECK(against_identity.residual < 1e-12);

        const Matrix t = rand_spd(rng, dim, 0.5, 2.0).mat() * rand_orthogonal(rng, dim);
        const DouglasSolution self = douglas_factor(t, t);
        CHECK(rel_frob(self.q, Matrix::identity(dim)) < 1e-12);
        CHECK(self.norm_sq == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(self.residual < 1e-12);
    }
}

TEST_CASE("factorization of a diagonal pair divides entrywise") {
    const DouglasSolution sol = douglas_factor(diag({1.0, 2.0}), diag({2.0, 2.0}));
    CHECK(rel_frob(sol.q, diag({0.5, 1.0})) < 1e-14);
    CHECK(sol.norm_sq == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sol.residual < 1e-14);
}

TEST_CASE("factor norm matches the optimal majorization constant") {
    Rng rng(0xd009a502);
    for (int rep = 0; rep < 50; ++rep) {
        const int dim = rng.uniform_int(2, 4);
        const Matrix t = rand_spd(rng, dim, 0.4, 2.5).mat() * rand_orthogonal(rng, dim);
        Matrix s(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) s.at(i, j) = rng.normal();

        const DouglasSolution sol = douglas_factor(s, t);
        CHECK(sol.residual < 1e-10);

        // independent route: lambda_max of the congruence-reduced pencil
        const EigenDecomposition te =
            eigendecompose(SymMatrix::symmetrized(t * t.transpose()));
        Matrix inv_half(dim);
        for (int k = 0; k < dim; ++k) {
            const double w = 1.0 / std::sqrt(te.values[static_cast<std::size_t>(k)]);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    inv_half.at(i, j) += w * te.vectors.at(i, k) * te.vectors.at(j, k);
        }
        const Matrix pencil = inv_half * (s * s.transpose()) * inv_half;
        const double mu = eigendecompose(SymMatrix::symmetrized(pencil)).values.back();
        CHECK(sol.norm_sq ==
              doctest::Approx(mu).epsilon(1e-8).scale(std::max(mu, 1.0)));
    }
}

TEST_CASE("near-singular factor side is refused") {
    Matrix t(2);
    t.at(0, 0) = 1.0;
    t.at(1, 1) = 1e-6;  // T T^t condition 1e12, past the certification floor
    CHECK_THROWS_AS(douglas_factor(Matrix::identity(2), t), MajorizationUnverifiable);
    CHECK_THROWS_AS(douglas_factor(Matrix::identity(2), Matrix(2)), MajorizationUnverifiable);
    CHECK_THROWS_AS(douglas_factor(Matrix::identity(2), Matrix::identity(3)),
                    DimensionMismatch);
}

TEST_CASE("identity chain contracts to the identity") {
    FurutaParams fp;
    fp.n = 1;
    fp.t = {1.0};
    fp.p = {3.0, 1.0};
    fp.r = 2.0;  // psi = 3, ratio (3 - 1 + 2)/(2 - 1) = 4
    REQUIRE(compute_m(fp) == 4);

    const OperatorChain c = identity_chain(2, 3);
    for (int item = 1; item <= 2; ++item) {
        const ContractionWitness w = construct_contraction(c, fp, item, 4);
        CHECK(w.index == item);
        CHECK(w.norm == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rel_frob(w.s.mat(), Matrix::identity(2)) < 1e-12);
        CHECK(max_residual(w.equality_residuals) < 1e-12);
        CHECK(w.factor_residual < 1e-12);
    }
}

TEST_CASE("scalar chains give the closed-form contraction") {
    Rng rng(0xd009a503);
    for (int n = 1; n <= 2; ++n) {
        for (int m : {2, 3, 5}) {
            const int len = 2 * n + 1;
            std::vector<double> vals;
            double acc = rng.uniform(0.8, 1.1);
            for (int i = 0; i < len; ++i) {
                vals.push_back(acc);
                acc += rng.uniform(0.05, 0.3);
            }
            const FurutaParams fp = eq_params(rng, n, m);
            const OperatorChain c = scalar_chain(vals);
            for (int item = 1; item <= item_count(len); ++item) {
                const auto sides = oracle::item_sides(vals, item, fp);
                const double expected = (item <= n) ? sides.second / sides.first
                                                    : sides.first / sides.second;
                const ContractionWitness w = construct_contraction(c, fp, item, m);
                CAPTURE(n);
                CAPTURE(m);
                CAPTURE(item);
                CHECK(w.s.mat().at(0, 0) == doctest::Approx(expected).epsilon(1e-10));
                CHECK(w.norm <= 1.0 + 1e-10);
                CHECK(max_residual(w.equality_residuals) < 1e-10);
            }
        }
    }
}

TEST_CASE("ordered chains contract for every item and integer exponent") {
    Rng rng(0xd009a504);
    for (int m = 2; m <= 8; ++m) {
        for (int len : {2, 3, 4, 5}) {
            const int n = half_stages(len);
            const int dim = (m % 2 == 0) ? 2 : 3;
            const OperatorChain c = ordered_chain(rng, dim, len);
            const FurutaParams fp = eq_params(rng, n, m);
            for (int item = 1; item <= item_count(len); ++item) {
                const ContractionWitness w = construct_contraction(c, fp, item, m);
                CAPTURE(m);
                CAPTURE(len);
                CAPTURE(item);
                CHECK(w.norm <= 1.0 + 1e-10);
                CHECK(max_residual(w.equality_residuals) <= 1e-8);
                CHECK(w.factor_residual <= 1e-8);
            }
        }
    }
}

TEST_CASE("identity in place of the contraction is rejected by the residual") {
    Rng rng(0xd009a505);
    for (int len : {3, 5}) {
        const int n = half_stages(len);
        const OperatorChain c = ordered_chain(rng, 2, len);
        const FurutaParams fp = eq_params(rng, n, 3);
        for (int item = 1; item <= item_count(len); ++item) {
            const auto res = contraction_equalities(c, fp, item, 3, SpdMatrix::identity(2));
            CAPTURE(len);
            CAPTURE(item);
            CHECK(max_residual(res) > 1e-4);
        }
    }
}

TEST_CASE("the contraction is unique") {
    Rng rng(0xd009a506);

    SUBCASE("identity chain") {
        FurutaParams fp;
        fp.n = 1;
        fp.t = {1.0};
        fp.p = {3.0, 1.0};
        fp.r = 2.0;
        CHECK(uniqueness_check(identity_chain(2, 3), fp, 1, 4, 8));
        CHECK(uniqueness_check(identity_chain(2, 3), fp, 2, 4, 8));
    }

    SUBCASE("scalar chain") {
        const FurutaParams fp = eq_params(rng, 1, 3);
        CHECK(uniqueness_check(scalar_chain({1.0, 1.3, 1.7}), fp, 1, 3, 8));
        CHECK(uniqueness_check(scalar_chain({1.0, 1.3, 1.7}), fp, 2, 3, 8));
    }

    SUBCASE("random ordered chains") {
        for (int len : {3, 4}) {
            const OperatorChain c = ordered_chain(rng, 2, len);
            const FurutaParams fp = eq_params(rng, half_stages(len), 2);
            for (int item = 1; item <= item_count(len); ++item)
                CHECK(uniqueness_check(c, fp, item, 2, 8, 0xabcdef));
        }
    }
}

TEST_CASE("even-chain construction agrees with the duplicated-top reduction") {
    Rng rng(0xd009a507);
    for (int m : {2, 4}) {
        const OperatorChain even = ordered_chain(rng, 2, 4);
        std::vector<SpdMatrix> dup;
        for (int i = 1; i <= 4; ++i) dup.push_back(even.at(i));
        dup.push_back(even.at(4));
        const OperatorChain odd(std::move(dup));

        const FurutaParams fp = eq_params(rng, 2, m);
        for (int item = 1; item <= 3; ++item) {
            const ContractionWitness we = construct_contraction(even, fp, item, m);
            const ContractionWitness wo = construct_contraction(odd, fp, item, m);
            CAPTURE(m);
            CAPTURE(item);
            CHECK(rel_frob(we.s.mat(), wo.s.mat()) < 1e-9);
            CHECK(we.norm == doctest::Approx(wo.norm).epsilon(1e-9));
        }
    }
}

TEST_CASE("construction guards") {
    Rng rng(0xd009a508);

    SUBCASE("violated item has no majorization premise") {
        const FurutaParams fp = eq_params(rng, 1, 2);
        // descending scalar chain: item 1 claims 1 >= 2^{positive}
        const OperatorChain c = scalar_chain({2.0, 1.0});
        CHECK_THROWS_AS(construct_contraction(c, fp, 1, 2), InequalityViolated);
    }

    SUBCASE("non-integer exponent ratio") {
        FurutaParams fp;
        fp.n = 1;
        fp.t = {0.5};
        fp.p = {2.0, 1.0};
        fp.r = 1.1;  // psi = 2, ratio 2.6/0.6 is not an integer
        REQUIRE_FALSE(compute_m(fp).has_value());
        CHECK_THROWS_AS(construct_contraction(identity_chain(2, 3), fp, 1, 4),
                        DegenerateExponent);
    }

    SUBCASE("degenerate ratio at r equal to the last weight") {
        FurutaParams fp;
        fp.n = 1;
        fp.t = {0.5};
        fp.p = {2.0, 1.0};
        fp.r = 0.5;
        CHECK_THROWS_AS(construct_contraction(identity_chain(2, 3), fp, 1, 4),
                        DegenerateExponent);
    }

    SUBCASE("mismatched m") {
        const FurutaParams fp = eq_params(rng, 1, 3);
        CHECK_THROWS_AS(construct_contraction(identity_chain(2, 3), fp, 1, 4), InvalidParams);
    }

    SUBCASE("item range and chain length") {
        const FurutaParams fp = eq_params(rng, 1, 2);
        CHECK_THROWS_AS(construct_contraction(identity_chain(2, 3), fp, 3, 2), InvalidParams);
        CHECK_THROWS_AS(construct_contraction(identity_chain(2, 5), fp, 1, 2), InvalidParams);
    }

    SUBCASE("contraction dimension must match the chain") {
        const FurutaParams fp = eq_params(rng, 1, 2);
        CHECK_THROWS_AS(
            contraction_equalities(identity_chain(2, 3), fp, 1, 2, SpdMatrix::identity(3)),
            DimensionMismatch);
    }
}
