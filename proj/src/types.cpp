#include "gaugeopt/types.hpp"

#include <cmath>
#include <cstring>

#include "gaugeopt/errors.hpp"
#include "gaugeopt/kernels.hpp"

namespace gaugeopt {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
    return s;
}

SymMatrix SymMatrix::from_matrix(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) throw InvalidInput("SymMatrix: matrix is not square");
    const std::size_t n = a.rows();
    double asym = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            asym = std::max(asym, std::fabs(a(i, j) - a(j, i)));
            scale = std::max(scale, std::fabs(a(i, j)));
        }
    if (asym > tol * std::max(1.0, scale))
        throw InvalidInput("SymMatrix: input asymmetric beyond tolerance");
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    return s;
}

SymMatrix SymMatrix::from_matrix_unchecked(Matrix a) {
    SymMatrix s;
    s.m_ = std::move(a);
    return s;
}

namespace {
void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b)) throw InvalidInput(std::string(op) + ": shape mismatch");
}
}  // namespace

double dot(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "dot");
    return kernels::dot(a.data(), b.data(), a.size());
}

double dot(const SymMatrix& a, const SymMatrix& b) { return dot(a.as_matrix(), b.as_matrix()); }

double frob_norm(const Matrix& a) { return std::sqrt(kernels::sum_sq(a.data(), a.size())); }
double frob_norm(const SymMatrix& a) { return frob_norm(a.as_matrix()); }
double sum_abs(const Matrix& a) { return kernels::sum_abs(a.data(), a.size()); }

double abs_max(const Matrix& a, std::size_t* r, std::size_t* c) {
    std::size_t idx = 0;
    const double m = kernels::abs_max(a.data(), a.size(), (r || c) ? &idx : nullptr);
    if (r) *r = a.cols() ? idx / a.cols() : 0;
    if (c) *c = a.cols() ? idx % a.cols() : 0;
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator+");
    Matrix out = a;
    kernels::axpy(1.0, b.data(), out.data(), out.size());
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "operator-");
    Matrix out = a;
    kernels::axpy(-1.0, b.data(), out.data(), out.size());
    return out;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix out = a;
    kernels::scale(out.data(), s, out.size());
    return out;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    return SymMatrix::from_matrix_unchecked(a.as_matrix() + b.as_matrix());
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    return SymMatrix::from_matrix_unchecked(a.as_matrix() - b.as_matrix());
}

SymMatrix operator*(double s, const SymMatrix& a) {
    return SymMatrix::from_matrix_unchecked(s * a.as_matrix());
}

void add_scaled(Matrix& y, double s, const Matrix& x) {
    require_same_shape(y, x, "add_scaled");
    kernels::axpy(s, x.data(), y.data(), y.size());
}

void scale_in_place(Matrix& a, double s) { kernels::scale(a.data(), s, a.size()); }

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InvalidInput("matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            kernels::axpy(a(i, k), b.row(k), c.row(i), b.cols());
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw InvalidInput("matmul_nt: inner dimensions differ");
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j)
            c(i, j) = kernels::dot(a.row(i), b.row(j), a.cols());
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw InvalidInput("matmul_tn: inner dimensions differ");
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k)
        for (std::size_t i = 0; i < a.cols(); ++i)
            kernels::axpy(a(k, i), b.row(k), c.row(i), b.cols());
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (x.size() != a.cols()) throw InvalidInput("matvec: dimension mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        y[i] = kernels::dot(a.row(i), x.data(), a.cols());
    return y;
}

Vector matvec_t(const Matrix& a, const Vector& x) {
    if (x.size() != a.rows()) throw InvalidInput("matvec_t: dimension mismatch");
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        kernels::axpy(x[i], a.row(i), y.data(), a.cols());
    return y;
}

double vdot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidInput("vdot: length mismatch");
    return kernels::dot(a.data(), b.data(), a.size());
}

double vnorm(const Vector& a) { return std::sqrt(kernels::sum_sq(a.data(), a.size())); }

void vaxpy(double s, const Vector& x, Vector& y) {
    if (x.size() != y.size()) throw InvalidInput("vaxpy: length mismatch");
    kernels::axpy(s, x.data(), y.data(), y.size());
}

void vscale(Vector& x, double s) { kernels::scale(x.data(), s, x.size()); }

}  // namespace gaugeopt
