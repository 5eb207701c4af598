#pragma once

#include <cstdint>
#include <utility>

#include "opord/chain.hpp"
#include "opord/exponents.hpp"
#include "opord/matrix.hpp"

namespace opord {

// Factor of the majorization S S^t <= mu T T^t: the Q with S = T Q and
// ||Q||^2 equal to the smallest admissible mu.  T is restricted to the
// invertible case (strictly positive powers), where Q = T^{-1} S.
struct DouglasSolution {
    Matrix q = Matrix::identity(1);
    double norm_sq = 0.0;   // ||Q||^2, the optimal majorization constant
    double residual = 0.0;  // ||T Q - S||_F relative to ||S||_F
};

// Throws MajorizationUnverifiable when T T^t is singular beyond the
// positivity floor, since the optimal constant cannot be certified there.
DouglasSolution douglas_factor(const Matrix& s, const Matrix& t);

// The contraction that turns characterization item i into an operator
// equality: for ascending items s = A_top^{-tau/2} N^{1/m} A_top^{-tau/2}
// with tau = r - t_n and N the item's nested side; descending items use
// the inverse form on A_1.  The item holds exactly when norm <= 1.
struct ContractionWitness {
    int index = 1;
    int m = 2;
    SpdMatrix s = SpdMatrix::identity(1);
    double norm = 1.0;  // spectral norm of s
    std::pair<double, double> equality_residuals{0.0, 0.0};
    double factor_residual = 0.0;  // exactness of the Douglas factor behind s
};

// Builds the contraction through douglas_factor and verifies both product
// equalities.  Requires the integer exponent ratio of the parameters to
// equal m (DegenerateExponent when no integer exists, InvalidParams on
// mismatch) and item i to hold on the chain (InequalityViolated otherwise,
// since the majorization premise is absent).
ContractionWitness construct_contraction(const OperatorChain& chain,
                                         const FurutaParams& params, int item, int m);

// Residuals of the two stated product equalities, evaluated from scratch:
// with x = s (ascending) or s^{-1} (descending) and P the anchor,
//   P^{-t_n/2} x (P^tau x)^{m-1} P^{-t_n/2}   and
//   P^{-t_n/2} (x P^tau)^{m-1} x P^{-t_n/2}
// are both compared against the item's nested side with its outermost
// layer peeled off.  Nothing from any prior construction is reused.
std::pair<double, double> contraction_equalities(const OperatorChain& chain,
                                                 const FurutaParams& params, int item,
                                                 int m, const SpdMatrix& s);

// Uniqueness of the contraction: random symmetric perturbations of
// spectral norm 1e-3 must push the equality residuals past ten times the
// equality tolerance, and recomputing s from the defining relation by SPD
// m-th root must reproduce it to 1e-9.
bool uniqueness_check(const OperatorChain& chain, const FurutaParams& params, int item,
                      int m, int trials, std::uint64_t seed = 0x5eed0f5a11ull);

}  // namespace opord
