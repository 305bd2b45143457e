#include "gaugeopt/kernels.hpp"

#include <atomic>
#include <cmath>

#include "kernels_internal.hpp"

namespace gaugeopt::kernels {
namespace {

bool cpu_has_avx2() {
#if GAUGEOPT_HAVE_AVX2 && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct Dispatch {
    const KernelTable* table;
    Isa isa;
};

Dispatch pick_default() {
#if GAUGEOPT_HAVE_AVX2
    if (cpu_has_avx2()) return {&avx2_table(), Isa::Avx2};
#endif
    return {&scalar_table(), Isa::Scalar};
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Isa> g_isa{Isa::Scalar};

const KernelTable& table() {
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        const Dispatch d = pick_default();
        g_isa.store(d.isa, std::memory_order_relaxed);
        g_table.store(d.table, std::memory_order_release);
        t = d.table;
    }
    return *t;
}

}  // namespace

Isa active_isa() {
    table();
    return g_isa.load(std::memory_order_relaxed);
}

Isa force_isa(Isa isa) {
#if GAUGEOPT_HAVE_AVX2
    if (isa == Isa::Avx2 && cpu_has_avx2()) {
        g_isa.store(Isa::Avx2, std::memory_order_relaxed);
        g_table.store(&avx2_table(), std::memory_order_release);
        return Isa::Avx2;
    }
#endif
    g_isa.store(Isa::Scalar, std::memory_order_relaxed);
    g_table.store(&scalar_table(), std::memory_order_release);
    return Isa::Scalar;
}

double dot(const double* x, const double* y, std::size_t n) { return table().dot(x, y, n); }
double sum_abs(const double* x, std::size_t n) { return table().sum_abs(x, n); }
double sum_sq(const double* x, std::size_t n) { return table().sum_sq(x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { table().axpy(a, x, y, n); }
void scale(double* x, double a, std::size_t n) { table().scale(x, a, n); }

double abs_max(const double* x, std::size_t n, std::size_t* argmax) {
    const double m = table().abs_max_value(x, n);
    if (argmax) {
        std::size_t idx = 0;
        if (m > 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                if (std::fabs(x[i]) == m) { idx = i; break; }
            }
        }
        *argmax = idx;
    }
    return m;
}

void soft_threshold(const double* x, double t, double* out, std::size_t n) {
    table().soft_threshold(x, t, out, n);
}

void clamp_abs(const double* x, double c, double* out, std::size_t n) {
    table().clamp_abs(x, c, out, n);
}

}  // namespace gaugeopt::kernels
