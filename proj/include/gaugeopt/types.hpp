#pragma once

#include <cstddef>
#include <vector>

namespace gaugeopt {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. All solver-facing storage is contiguous
// so the vector kernels can run over rows and whole buffers.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool all_finite() const;
    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Symmetric matrix stored as a full mirrored square; writes through set()
// keep entry(i,j) == entry(j,i) exact.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n) : m_(n, n) {}

    static SymMatrix identity(std::size_t n);
    // Symmetrizes exactly ((a_ij + a_ji)/2); rejects asymmetry beyond tol
    // relative to the largest entry.
    static SymMatrix from_matrix(const Matrix& a, double tol = 1e-12);
    // Trusts the caller that a is already symmetric (no check, no averaging).
    static SymMatrix from_matrix_unchecked(Matrix a);

    std::size_t order() const { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    void set(std::size_t i, std::size_t j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }

    const Matrix& as_matrix() const { return m_; }
    const double* data() const { return m_.data(); }
    std::size_t size() const { return m_.size(); }

private:
    Matrix m_;
};

// --- elementwise / reduction helpers (kernel-dispatched) ---

double dot(const Matrix& a, const Matrix& b);
double dot(const SymMatrix& a, const SymMatrix& b);
double frob_norm(const Matrix& a);
double frob_norm(const SymMatrix& a);
double sum_abs(const Matrix& a);
// Largest |entry|; row/col (if non-null) get the lexicographically smallest argmax.
double abs_max(const Matrix& a, std::size_t* r = nullptr, std::size_t* c = nullptr);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double s, const SymMatrix& a);

// y += s*x (shapes must match)
void add_scaled(Matrix& y, double s, const Matrix& x);
void scale_in_place(Matrix& a, double s);

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);     // A * B
Matrix matmul_nt(const Matrix& a, const Matrix& b);  // A * B'
Matrix matmul_tn(const Matrix& a, const Matrix& b);  // A' * B

Vector matvec(const Matrix& a, const Vector& x);    // A x
Vector matvec_t(const Matrix& a, const Vector& x);  // A' x

// --- vector helpers ---

double vdot(const Vector& a, const Vector& b);
double vnorm(const Vector& a);
void vaxpy(double s, const Vector& x, Vector& y);
void vscale(Vector& x, double s);

}  // namespace gaugeopt
