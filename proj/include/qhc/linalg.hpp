#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qhc {

using Vector = std::vector<double>;

/// Dense row-major real matrix. Used for the non-square blocks (A) and the
/// non-symmetric intermediates of the Woodbury and Newton machinery.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }

    Vector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> values);
    Matrix transpose() const;

    double frobenius() const;
    double max_abs() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, std::span<const double> x);

/// Square real matrix whose symmetry is an invariant: every mutation writes
/// both (i,j) and (j,i), and construction from raw data rejects asymmetric
/// input.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t order);
    /// Throws Error(NotSymmetric) unless rows[i][j] == rows[j][i] exactly.
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);
    /// Throws Error(NotSymmetric) unless m is exactly symmetric.
    explicit SymMatrix(const Matrix& m);

    static SymMatrix identity(std::size_t n);
    static SymMatrix diagonal(std::span<const double> d);
    /// Symmetrizes (m + mᵀ)/2; for results of floating-point products.
    static SymMatrix symmetrize(const Matrix& m);

    std::size_t order() const noexcept { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    void set(std::size_t i, std::size_t j, double v);
    void add(std::size_t i, std::size_t j, double v);

    const Matrix& matrix() const noexcept { return m_; }
    double frobenius() const { return m_.frobenius(); }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    Matrix m_;
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double s, const SymMatrix& a);
Vector operator*(const SymMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
/// xᵀ·M·y
double bilinear(std::span<const double> x, const SymMatrix& m, std::span<const double> y);
double bilinear(std::span<const double> x, const Matrix& m, std::span<const double> y);

/// Eigenvalues ascending; eigenvectors stored as orthonormal columns.
struct Spectrum {
    Vector eigenvalues;
    Matrix eigenvectors;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    Vector vector(std::size_t k) const { return eigenvectors.column(k); }
    double component(std::size_t state, std::size_t k) const { return eigenvectors(state, k); }
};

struct KernelBasis {
    std::vector<Vector> vectors;
    double tolerance = 0.0;

    std::size_t dimension() const noexcept { return vectors.size(); }
};

inline constexpr double kDefaultKernelTol = 1e-9;

/// Cyclic Jacobi diagonalization. Sign convention: the largest-magnitude
/// component of each eigenvector is positive. Vectors inside a degenerate
/// cluster are re-orthonormalized, so only the cluster's span is meaningful.
Spectrum eig_sym(const SymMatrix& m);

/// Eigenvectors with |λ| ≤ tol.
KernelBasis kernel(const SymMatrix& m, double tol = kDefaultKernelTol);

/// Exact cofactor expansion for order ≤ 4, partially pivoted elimination above.
double det(const SymMatrix& m);
double det(const Matrix& m);

/// det(M − E·I)
double char_poly_eval(const SymMatrix& m, double energy);

/// Throws Error(SingularMatrix) when |det M| ≤ 1e-12·‖M‖ⁿ.
SymMatrix inverse(const SymMatrix& m);
Matrix inverse(const Matrix& m);

/// Solves A·x = b by partially pivoted elimination; throws SingularMatrix.
Vector solve(const Matrix& a, std::span<const double> b);

/// Sum over the eigenvalues within tol of energy of the squared component on
/// state, i.e. the diagonal entry of the eigenspace projector.
double projector_weight(const Spectrum& s, std::size_t state, double energy, double tol);

/// Number of eigenvalues within tol of energy.
std::size_t eigenspace_dimension(const Spectrum& s, double energy, double tol);

} // namespace qhc
