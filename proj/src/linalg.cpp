#include "qhc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qhc/error.hpp"

namespace qhc {

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::BadInput, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_column(std::size_t j, std::span<const double> values) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

static void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::BadInput, "matrix shape mismatch");
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::BadInput, "matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
    return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::BadInput, "matrix-vector shape mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(std::size_t order) : m_(order, order) {
    if (order == 0) throw Error(ErrorCode::BadInput, "SymMatrix order must be >= 1");
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(Matrix(rows)) {}

SymMatrix::SymMatrix(const Matrix& m) : m_(m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(ErrorCode::BadInput, "SymMatrix requires a non-empty square matrix");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) throw Error(ErrorCode::NotSymmetric, "entries differ across the diagonal");
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
    return s;
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::BadInput, "symmetrize requires a square matrix");
    SymMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return s;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
}

void SymMatrix::add(std::size_t i, std::size_t j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) { return SymMatrix(a.matrix() + b.matrix()); }
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) { return SymMatrix(a.matrix() - b.matrix()); }
SymMatrix operator*(double s, const SymMatrix& a) { return SymMatrix(s * a.matrix()); }
Vector operator*(const SymMatrix& a, std::span<const double> x) { return a.matrix() * x; }

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::BadInput, "dot: length mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double bilinear(std::span<const double> x, const Matrix& m, std::span<const double> y) {
    return dot(x, m * y);
}

double bilinear(std::span<const double> x, const SymMatrix& m, std::span<const double> y) {
    return bilinear(x, m.matrix(), y);
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

constexpr int kMaxSweeps = 100;

void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = a.rows();
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    for (std::size_t k = 0; k < n; ++k) {
        const double akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

double off_diagonal(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

void orthonormalize_columns(Matrix& v, std::size_t first, std::size_t last) {
    const std::size_t n = v.rows();
    for (std::size_t j = first; j < last; ++j) {
        Vector col = v.column(j);
        for (std::size_t k = first; k < j; ++k) {
            const Vector prev = v.column(k);
            const double proj = dot(prev, col);
            for (std::size_t i = 0; i < n; ++i) col[i] -= proj * prev[i];
        }
        const double nrm = norm(col);
        for (double& x : col) x /= nrm;
        v.set_column(j, col);
    }
}

void fix_sign(Matrix& v, std::size_t j) {
    const std::size_t n = v.rows();
    double largest = 0.0;
    for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, std::abs(v(i, j)));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v(i, j)) >= largest - 1e-12) {
            if (v(i, j) < 0.0)
                for (std::size_t k = 0; k < n; ++k) v(k, j) = -v(k, j);
            return;
        }
    }
}

} // namespace

Spectrum eig_sym(const SymMatrix& m) {
    const std::size_t n = m.order();
    Matrix a = m.matrix();
    Matrix v = Matrix::identity(n);
    const double scale = m.frobenius();
    if (scale > 0.0) {
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (off_diagonal(a) < 1e-12 * scale) break;
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                    if (std::abs(a(p, q)) > 1e-300) jacobi_rotate(a, v, p, q);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        s.eigenvalues[k] = a(order[k], order[k]);
        s.eigenvectors.set_column(k, v.column(order[k]));
    }

    const double cluster_tol = 1e-10 * std::max(1.0, scale);
    for (std::size_t first = 0; first < n;) {
        std::size_t last = first + 1;
        while (last < n && s.eigenvalues[last] - s.eigenvalues[last - 1] <= cluster_tol) ++last;
        if (last - first > 1) orthonormalize_columns(s.eigenvectors, first, last);
        first = last;
    }
    for (std::size_t k = 0; k < n; ++k) fix_sign(s.eigenvectors, k);
    return s;
}

KernelBasis kernel(const SymMatrix& m, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::BadInput, "kernel tolerance must be positive");
    const Spectrum s = eig_sym(m);
    KernelBasis kb;
    kb.tolerance = tol;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (std::abs(s.eigenvalues[k]) <= tol) kb.vectors.push_back(s.vector(k));
    return kb;
}

// ---------------------------------------------------------------------------
// Determinants, inverses, solves

namespace {

double cofactor_det(const Matrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
    const std::size_t n = rows.size();
    if (n == 1) return m(rows[0], cols[0]);
    if (n == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
    double total = 0.0;
    const std::size_t r0 = rows.front();
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < n; ++k) {
        const double entry = m(r0, cols[k]);
        if (entry == 0.0) continue;
        std::vector<std::size_t> sub_cols;
        sub_cols.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c)
            if (c != k) sub_cols.push_back(cols[c]);
        const double minor = cofactor_det(m, sub_rows, sub_cols);
        total += (k % 2 == 0 ? entry : -entry) * minor;
    }
    return total;
}

double lu_det(Matrix a) {
    const std::size_t n = a.rows();
    double d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            d = -d;
        }
        d *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

} // namespace

double det(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::BadInput, "det requires a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1.0;
    if (n <= 4) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        auto cols = idx;
        return cofactor_det(m, idx, cols);
    }
    return lu_det(m);
}

double det(const SymMatrix& m) { return det(m.matrix()); }

double char_poly_eval(const SymMatrix& m, double energy) {
    Matrix shifted = m.matrix();
    for (std::size_t i = 0; i < m.order(); ++i) shifted(i, i) -= energy;
    return det(shifted);
}

Vector solve(const Matrix& a_in, std::span<const double> b_in) {
    const std::size_t n = a_in.rows();
    if (a_in.cols() != n || b_in.size() != n) throw Error(ErrorCode::BadInput, "solve: shape mismatch");
    Matrix a = a_in;
    Vector b(b_in.begin(), b_in.end());
    const double scale = std::max(a.max_abs(), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) <= 1e-13 * scale) throw Error(ErrorCode::SingularMatrix, "solve: singular system");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= a(ii, j) * x[j];
        x[ii] = acc / a(ii, ii);
    }
    return x;
}

Matrix inverse(const Matrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n || n == 0) throw Error(ErrorCode::BadInput, "inverse requires a non-empty square matrix");
    const double scale = m.frobenius();
    const double d = det(m);
    if (!(std::abs(d) > 1e-12 * std::pow(scale, static_cast<double>(n))))
        throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");

    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) throw Error(ErrorCode::SingularMatrix, "zero pivot");
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        const double p = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = a(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

SymMatrix inverse(const SymMatrix& m) { return SymMatrix::symmetrize(inverse(m.matrix())); }

double projector_weight(const Spectrum& s, std::size_t state, double energy, double tol) {
    double w = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (std::abs(s.eigenvalues[k] - energy) <= tol) w += s.component(state, k) * s.component(state, k);
    return w;
}

std::size_t eigenspace_dimension(const Spectrum& s, double energy, double tol) {
    std::size_t d = 0;
    for (double lambda : s.eigenvalues)
        if (std::abs(lambda - energy) <= tol) ++d;
    return d;
}

} // namespace qhc
