#pragma once

#include <cstddef>

// Vector primitives behind the solvers' inner loops. Every operation has a
// scalar reference implementation and, on x86-64 with AVX2+FMA, a vectorized
// variant selected once at startup. The two are equivalence-tested; reductions
// may differ by rounding (different summation order), entrywise maps are exact.
namespace gaugeopt::kernels {

enum class Isa { Scalar, Avx2 };

// Instruction set chosen by the runtime dispatcher for this process.
Isa active_isa();

// Override the dispatch table (used by the equivalence tests). Selecting an
// ISA the CPU lacks falls back to Scalar and returns the ISA actually set.
Isa force_isa(Isa isa);

double dot(const double* x, const double* y, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);

// y += a*x
void axpy(double a, const double* x, double* y, std::size_t n);
// x *= a
void scale(double* x, double a, std::size_t n);

// Largest |x[i]|; *argmax (if non-null) receives the smallest index attaining
// it, which is the lexicographic argmax for row-major matrices.
double abs_max(const double* x, std::size_t n, std::size_t* argmax = nullptr);

// out[i] = sign(x[i]) * max(|x[i]| - t, 0)
void soft_threshold(const double* x, double t, double* out, std::size_t n);

// out[i] = min(max(x[i], -c), c), c >= 0
void clamp_abs(const double* x, double c, double* out, std::size_t n);

}  // namespace gaugeopt::kernels
