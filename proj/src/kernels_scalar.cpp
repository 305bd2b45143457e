#include "kernels_internal.hpp"

#include <algorithm>
#include <cmath>

namespace gaugeopt::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_abs_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double sum_sq_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double abs_max_value_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

void soft_threshold_scalar(const double* x, double t, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::fabs(x[i]) - t;
        out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
    }
}

void clamp_abs_scalar(const double* x, double c, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::min(std::max(x[i], -c), c);
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t = {
        dot_scalar,     sum_abs_scalar,        sum_sq_scalar,     axpy_scalar,
        scale_scalar,   abs_max_value_scalar,  soft_threshold_scalar, clamp_abs_scalar,
    };
    return t;
}

}  // namespace gaugeopt::kernels
