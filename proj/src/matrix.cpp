#include "opord/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace opord {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch " << a << " vs " << b;
        throw DimensionMismatch(os.str());
    }
}

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += a.at(i, j) * a.at(i, j);
    return std::sqrt(s);
}

}  // namespace

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) t.at(j, i) = at(i, j);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : e_) s += v * v;
    return std::sqrt(s);
}

double Matrix::max_abs_entry() const {
    double m = 0.0;
    for (double v : e_) m = std::max(m, std::abs(v));
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require_same_dim(dim_, rhs.dim_, "matrix product");
    Matrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const double aik = at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * rhs.at(k, j);
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    require_same_dim(dim_, rhs.dim_, "matrix sum");
    Matrix r(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + rhs.e_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    require_same_dim(dim_, rhs.dim_, "matrix difference");
    Matrix r(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - rhs.e_[i];
    return r;
}

Matrix Matrix::scaled(double a) const {
    Matrix r(dim_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = a * e_[i];
    return r;
}

std::string describe(const Matrix& m) {
    std::ostringstream os;
    os << m.dim() << "x" << m.dim() << " matrix, max |entry| " << m.max_abs_entry();
    return os.str();
}

Matrix lu_solve(const Matrix& a, const Matrix& b) {
    require_same_dim(a.dim(), b.dim(), "linear solve");
    const int n = a.dim();
    Matrix lu = a;
    Matrix x = b;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(lu.at(row, col)) > std::abs(lu.at(pivot, col))) pivot = row;
        if (std::abs(lu.at(pivot, col)) < 1e-300) {
            throw InvalidParams("linear solve: singular factor, zero pivot in column " +
                                std::to_string(col) + " (" + describe(a) + ")");
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(lu.at(pivot, j), lu.at(col, j));
                std::swap(x.at(pivot, j), x.at(col, j));
            }
        }
        for (int row = col + 1; row < n; ++row) {
            const double f = lu.at(row, col) / lu.at(col, col);
            lu.at(row, col) = 0.0;
            for (int j = col + 1; j < n; ++j) lu.at(row, j) -= f * lu.at(col, j);
            for (int j = 0; j < n; ++j) x.at(row, j) -= f * x.at(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        for (int j = 0; j < n; ++j) {
            double v = x.at(col, j);
            for (int k = col + 1; k < n; ++k) v -= lu.at(col, k) * x.at(k, j);
            x.at(col, j) = v / lu.at(col, col);
        }
    }
    return x;
}

SymMatrix::SymMatrix(const Matrix& m) {
    const double scale = std::max(1.0, m.max_abs_entry());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j) {
            const double asym = std::abs(m.at(i, j) - m.at(j, i));
            if (asym > 1e-12 * scale) {
                std::ostringstream os;
                os << "symmetric matrix expected, but entry (" << i << "," << j
                   << ") differs from its mirror by " << asym << " (" << describe(m) << ")";
                throw AsymmetryViolation(os.str());
            }
        }
    m_ = m;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j) {
            const double v = 0.5 * (m.at(i, j) + m.at(j, i));
            m_.at(i, j) = v;
            m_.at(j, i) = v;
        }
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
    SymMatrix s;
    s.m_ = m;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j) {
            const double v = 0.5 * (m.at(i, j) + m.at(j, i));
            s.m_.at(i, j) = v;
            s.m_.at(j, i) = v;
        }
    return s;
}

SymMatrix SymMatrix::operator+(const SymMatrix& rhs) const {
    SymMatrix s;
    s.m_ = m_ + rhs.m_;
    return s;
}

SymMatrix SymMatrix::operator-(const SymMatrix& rhs) const {
    SymMatrix s;
    s.m_ = m_ - rhs.m_;
    return s;
}

SymMatrix SymMatrix::scaled(double a) const {
    SymMatrix s;
    s.m_ = m_.scaled(a);
    return s;
}

EigenDecomposition eigendecompose(const SymMatrix& a) {
    const int n = a.dim();
    Matrix w = a.mat();
    Matrix v = Matrix::identity(n);
    const double norm = w.frobenius_norm();
    const double target = 1e-14 * norm;

    if (n > 1 && norm > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
            if (off_diagonal_norm(w) <= target) {
                converged = true;
                break;
            }
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const double apq = w.at(p, q);
                    if (apq == 0.0) continue;
                    // Classical Jacobi rotation annihilating (p, q); the
                    // smaller-angle root keeps the iteration stable.
                    const double theta = (w.at(q, q) - w.at(p, p)) / (2.0 * apq);
                    double t;
                    if (std::abs(theta) > 1e150) {
                        t = 1.0 / (2.0 * theta);
                    } else {
                        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                        if (theta < 0.0) t = -t;
                    }
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    const double tau = s / (1.0 + c);

                    w.at(p, p) -= t * apq;
                    w.at(q, q) += t * apq;
                    w.at(p, q) = 0.0;
                    w.at(q, p) = 0.0;
                    for (int r = 0; r < n; ++r) {
                        if (r == p || r == q) continue;
                        const double wrp = w.at(r, p);
                        const double wrq = w.at(r, q);
                        w.at(r, p) = wrp - s * (wrq + tau * wrp);
                        w.at(p, r) = w.at(r, p);
                        w.at(r, q) = wrq + s * (wrp - tau * wrq);
                        w.at(q, r) = w.at(r, q);
                    }
                    for (int r = 0; r < n; ++r) {
                        const double vrp = v.at(r, p);
                        const double vrq = v.at(r, q);
                        v.at(r, p) = vrp - s * (vrq + tau * vrp);
                        v.at(r, q) = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
        if (!converged && off_diagonal_norm(w) > target) {
            throw EigenConvergenceFailure(
                "eigenvalue iteration did not converge within 100 sweeps (" +
                describe(a.mat()) + ")");
        }
    }

    EigenDecomposition d;
    d.values.resize(n);
    for (int i = 0; i < n; ++i) d.values[i] = w.at(i, i);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return d.values[x] < d.values[y]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = d.values[order[k]];
        for (int r = 0; r < n; ++r) out.vectors.at(r, k) = v.at(r, order[k]);
    }
    return out;
}

SpdMatrix::SpdMatrix(SymMatrix s, EigenDecomposition eig)
    : s_(std::move(s)), eig_(std::move(eig)) {}

SpdMatrix::SpdMatrix(const SymMatrix& s) : s_(s), eig_(eigendecompose(s)) {
    // Relative floor: eigenvalues this close to zero make fractional powers
    // and inverses meaningless at double precision.
    if (!(min_eig() > 1e-10 * max_eig())) {
        std::ostringstream os;
        os << "matrix is not strictly positive definite: eigenvalue range ["
           << min_eig() << ", " << max_eig() << "] (" << describe(s.mat()) << ")";
        throw StrictPositivityViolation(os.str());
    }
}

SpdMatrix SpdMatrix::from_eigen(const Matrix& vectors, std::vector<double> values) {
    const int n = vectors.dim();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return values[x] < values[y]; });

    EigenDecomposition eig;
    eig.values.resize(n);
    eig.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        eig.values[k] = values[order[k]];
        for (int r = 0; r < n; ++r) eig.vectors.at(r, k) = vectors.at(r, order[k]);
    }

    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k)
                v += eig.vectors.at(i, k) * eig.values[k] * eig.vectors.at(j, k);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }

    if (!(eig.values.front() > 1e-10 * eig.values.back())) {
        std::ostringstream os;
        os << "matrix is not strictly positive definite: eigenvalue range ["
           << eig.values.front() << ", " << eig.values.back() << "] (" << describe(m) << ")";
        throw StrictPositivityViolation(os.str());
    }
    return SpdMatrix(SymMatrix::symmetrized(m), std::move(eig));
}

SpdMatrix SpdMatrix::identity(int dim) {
    return SpdMatrix::from_eigen(Matrix::identity(dim), std::vector<double>(dim, 1.0));
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::GreaterEqual: return "greater-equal";
        case Relation::LessEqual: return "less-equal";
        case Relation::Equal: return "equal";
        case Relation::Incomparable: return "incomparable";
    }
    return "unknown";
}

double spectral_norm(const SymMatrix& x) {
    const EigenDecomposition d = eigendecompose(x);
    return std::max(std::abs(d.values.front()), std::abs(d.values.back()));
}

double default_tolerance(const SymMatrix& x, const SymMatrix& y) {
    return 1e-8 * std::max({spectral_norm(x), spectral_norm(y), 1.0});
}

ComparisonVerdict loewner_compare(const SymMatrix& x, const SymMatrix& y, double tol) {
    require_same_dim(x.dim(), y.dim(), "Loewner comparison");
    if (tol < 0.0) tol = default_tolerance(x, y);

    const EigenDecomposition d = eigendecompose(x - y);
    ComparisonVerdict v;
    v.min_eig_diff = d.values.front();
    v.max_eig_diff = d.values.back();
    v.tolerance_used = tol;

    const bool lo_zero = std::abs(v.min_eig_diff) <= tol;
    const bool hi_zero = std::abs(v.max_eig_diff) <= tol;
    if (lo_zero && hi_zero) {
        v.relation = Relation::Equal;
    } else if (v.min_eig_diff >= -tol) {
        v.relation = Relation::GreaterEqual;
    } else if (v.max_eig_diff <= tol) {
        v.relation = Relation::LessEqual;
    } else {
        v.relation = Relation::Incomparable;
    }
    return v;
}

SpdMatrix fractional_power(const SpdMatrix& a, double alpha) {
    if (alpha == 0.0) return SpdMatrix::identity(a.dim());
    if (alpha == 1.0) return a;
    std::vector<double> powered(a.eigen().values.size());
    for (std::size_t i = 0; i < powered.size(); ++i)
        powered[i] = std::pow(a.eigen().values[i], alpha);
    return SpdMatrix::from_eigen(a.eigen().vectors, std::move(powered));
}

SpdMatrix spd_inverse(const SpdMatrix& a) { return fractional_power(a, -1.0); }

SpdMatrix congruence(const SpdMatrix& x, const SpdMatrix& m) {
    require_same_dim(x.dim(), m.dim(), "congruence");
    const Matrix r = x.mat() * m.mat() * x.mat();
    return SpdMatrix(SymMatrix::symmetrized(r));
}

SpectralBounds spectral_bounds(const SpdMatrix& a) {
    return SpectralBounds{a.max_eig(), a.min_eig()};
}

SquareBound kantorovich_square_bound(const SpdMatrix& x, const SpdMatrix& y,
                                     SquareBoundMode mode, double tol) {
    const ComparisonVerdict order = loewner_compare(x.sym(), y.sym(), tol);
    if (!order.holds_geq()) {
        throw PreorderViolation("square bound requires X >= Y, but the minimum eigenvalue of "
                                "X - Y is " + std::to_string(order.min_eig_diff));
    }
    const SpdMatrix& z = (mode == SquareBoundMode::bound_on_X) ? x : y;
    const SpectralBounds b = spectral_bounds(z);
    const double st = b.upper + b.lower;
    SquareBound out;
    out.factor = (st * st) / (4.0 * b.upper * b.lower);

    const SpdMatrix x2 = fractional_power(x, 2.0);
    const SpdMatrix y2 = fractional_power(y, 2.0);
    out.verdict = loewner_compare(x2.sym().scaled(out.factor), y2.sym(), tol);
    return out;
}

}  // namespace opord
