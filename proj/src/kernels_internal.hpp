#pragma once

#include <cstddef>

namespace gaugeopt::kernels {

struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_abs)(const double*, std::size_t);
    double (*sum_sq)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
    double (*abs_max_value)(const double*, std::size_t);
    void (*soft_threshold)(const double*, double, double*, std::size_t);
    void (*clamp_abs)(const double*, double, double*, std::size_t);
};

const KernelTable& scalar_table();
#if GAUGEOPT_HAVE_AVX2
const KernelTable& avx2_table();
#endif

}  // namespace gaugeopt::kernels
