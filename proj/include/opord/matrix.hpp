#pragma once

#include <string>
#include <vector>

#include "opord/errors.hpp"

namespace opord {

// Dense square matrix of doubles, row-major.  Dimensions here are tiny
// (typically 1..8), so everything is plain O(n^3) arithmetic with no
// blocking or cleverness; correctness and reproducibility over speed.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim, 0.0) {}

    static Matrix identity(int dim);

    int dim() const { return dim_; }
    double& at(int i, int j) { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
    double at(int i, int j) const { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
    const std::vector<double>& entries() const { return e_; }

    Matrix transpose() const;
    double frobenius_norm() const;
    double max_abs_entry() const;

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(double a) const;

  private:
    int dim_ = 0;
    std::vector<double> e_;
};

// Solve A X = B for square invertible A by LU with partial pivoting.
// Throws StrictPositivityViolation-free diagnostics: a numerically singular
// A raises InvalidParams naming the pivot.
Matrix lu_solve(const Matrix& a, const Matrix& b);

// Real symmetric matrix.  Construction enforces symmetry: entries whose
// asymmetry |m_ij - m_ji| exceeds 1e-12 * max(1, max|entry|) are rejected;
// below that, entries are replaced by the exact average so the stored value
// is symmetric to the last bit.
class SymMatrix {
  public:
    SymMatrix() = default;
    explicit SymMatrix(const Matrix& m);

    // Accept any square matrix and store (m + m^T)/2 without the asymmetry
    // check.  For results of products that are symmetric in exact arithmetic.
    static SymMatrix symmetrized(const Matrix& m);

    int dim() const { return m_.dim(); }
    double at(int i, int j) const { return m_.at(i, j); }
    const Matrix& mat() const { return m_; }

    SymMatrix operator+(const SymMatrix& rhs) const;
    SymMatrix operator-(const SymMatrix& rhs) const;
    SymMatrix scaled(double a) const;

    static SymMatrix identity(int dim) { return SymMatrix(Matrix::identity(dim)); }

  private:
    Matrix m_;
};

// Eigenvalues ascending; vectors holds the corresponding orthonormal
// eigenvectors as columns, so mat = vectors * diag(values) * vectors^T.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

// Full eigendecomposition of a real symmetric matrix by the cyclic Jacobi
// method.  Sweeps until the off-diagonal Frobenius norm falls below
// 1e-14 * ||A||_F; throws EigenConvergenceFailure after 100 sweeps.
EigenDecomposition eigendecompose(const SymMatrix& a);

// Symmetric positive definite matrix.  Construction eigendecomposes and
// rejects anything whose smallest eigenvalue is at or below
// 1e-10 * largest (StrictPositivityViolation), so downstream code can take
// invertibility and real fractional powers for granted.  The decomposition
// is kept with the matrix; it is the workhorse for powers and bounds.
class SpdMatrix {
  public:
    explicit SpdMatrix(const SymMatrix& s);

    // Build V diag(values) V^T from a trusted orthonormal eigenbasis.  Same
    // positivity floor as the main constructor; entries are reconstructed
    // from the factors, so the stored decomposition matches exactly.
    static SpdMatrix from_eigen(const Matrix& vectors, std::vector<double> values);

    static SpdMatrix identity(int dim);

    int dim() const { return s_.dim(); }
    double at(int i, int j) const { return s_.at(i, j); }
    const SymMatrix& sym() const { return s_; }
    const Matrix& mat() const { return s_.mat(); }
    const EigenDecomposition& eigen() const { return eig_; }

    double min_eig() const { return eig_.values.front(); }
    double max_eig() const { return eig_.values.back(); }

  private:
    SpdMatrix(SymMatrix s, EigenDecomposition eig);

    SymMatrix s_;
    EigenDecomposition eig_;
};

// Verdict of a Loewner comparison of X against Y.  min/max_eig_diff are the
// extreme eigenvalues of X - Y; the relation classifies them against the
// tolerance actually used, which is recorded so reports are self-contained.
enum class Relation { GreaterEqual, LessEqual, Equal, Incomparable };

struct ComparisonVerdict {
    Relation relation = Relation::Incomparable;
    double min_eig_diff = 0.0;
    double max_eig_diff = 0.0;
    double tolerance_used = 0.0;

    // X >= Y holds (Equal counts).
    bool holds_geq() const { return min_eig_diff >= -tolerance_used; }
    // X <= Y holds (Equal counts).
    bool holds_leq() const { return max_eig_diff <= tolerance_used; }
};

const char* relation_name(Relation r);

// Compare X and Y in the Loewner order.  tol < 0 selects the default
// tolerance 1e-8 * max(||X||_2, ||Y||_2, 1).  Classification: Equal when
// both extreme eigenvalues of the difference are within tol of zero, then
// GreaterEqual / LessEqual by sign, else Incomparable.
ComparisonVerdict loewner_compare(const SymMatrix& x, const SymMatrix& y, double tol = -1.0);

// The default comparison tolerance for the pair (X, Y); exposed so other
// components quote exactly the same number.
double default_tolerance(const SymMatrix& x, const SymMatrix& y);

// Spectral norm (largest |eigenvalue|) of a symmetric matrix.
double spectral_norm(const SymMatrix& x);

// A^alpha for SPD A, real alpha, through the eigendecomposition.
// alpha = 0 and alpha = 1 return exact identity / copy.
SpdMatrix fractional_power(const SpdMatrix& a, double alpha);

// Inverse through the eigendecomposition (= fractional_power(a, -1)).
SpdMatrix spd_inverse(const SpdMatrix& a);

// X * M * X resymmetrized, for SPD X and M: the two-sided product that is
// positive definite in exact arithmetic.  Result is validated SPD.
SpdMatrix congruence(const SpdMatrix& x, const SpdMatrix& m);

// Tight two-sided scalar bounds u I >= A >= v I (u = largest eigenvalue,
// v = smallest; both strictly positive for SPD input).
struct SpectralBounds {
    double upper = 0.0;
    double lower = 0.0;
};

SpectralBounds spectral_bounds(const SpdMatrix& a);

// Squaring is not order preserving, but it is up to an explicit constant:
// for X >= Y > 0 with bounds u I >= Z >= v I of the chosen side Z, the
// factor (u + v)^2 / (4 u v) makes factor * X^2 >= Y^2.  Returns the factor
// and the verified comparison; requires X >= Y (PreorderViolation if not).
enum class SquareBoundMode { bound_on_X, bound_on_Y };

struct SquareBound {
    double factor = 0.0;
    ComparisonVerdict verdict;
};

SquareBound kantorovich_square_bound(const SpdMatrix& x, const SpdMatrix& y,
                                     SquareBoundMode mode, double tol = -1.0);

// Short human-readable description: dimension plus entry range.  Used in
// error messages so failures name the offending matrix.
std::string describe(const Matrix& m);

}  // namespace opord
