#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gaugeopt/kernels.hpp"

using namespace gaugeopt;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(n);
    for (double& x : v) x = 2.0 * (static_cast<double>(gen() >> 11) * 0x1p-53) - 1.0;
    return v;
}

// run f under both dispatch tables, restore the default afterwards
template <typename F>
void with_both_isas(F&& f) {
    const kernels::Isa original = kernels::active_isa();
    kernels::force_isa(kernels::Isa::Scalar);
    f(kernels::Isa::Scalar);
    if (kernels::force_isa(kernels::Isa::Avx2) == kernels::Isa::Avx2) f(kernels::Isa::Avx2);
    kernels::force_isa(original);
}

}  // namespace

TEST_CASE("scalar and simd reductions agree within rounding") {
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 64u, 1001u}) {
        const auto x = random_vec(n, 11 + n);
        const auto y = random_vec(n, 57 + n);

        const kernels::Isa original = kernels::active_isa();
        kernels::force_isa(kernels::Isa::Scalar);
        const double dot_s = kernels::dot(x.data(), y.data(), n);
        const double abs_s = kernels::sum_abs(x.data(), n);
        const double sq_s = kernels::sum_sq(x.data(), n);
        const double max_s = kernels::abs_max(x.data(), n);

        if (kernels::force_isa(kernels::Isa::Avx2) == kernels::Isa::Avx2) {
            const double tol = 1e-13 * (1.0 + static_cast<double>(n));
            CHECK(std::fabs(kernels::dot(x.data(), y.data(), n) - dot_s) <= tol);
            CHECK(std::fabs(kernels::sum_abs(x.data(), n) - abs_s) <= tol);
            CHECK(std::fabs(kernels::sum_sq(x.data(), n) - sq_s) <= tol);
            CHECK(kernels::abs_max(x.data(), n) == max_s);  // max is rounding-free
        }
        kernels::force_isa(original);
    }
}

TEST_CASE("entrywise kernels match exactly across isas") {
    for (std::size_t n : {1u, 5u, 8u, 33u, 200u}) {
        const auto x = random_vec(n, 101 + n);
        std::vector<double> soft_s(n), clamp_s(n), axpy_s;
        kernels::Isa original = kernels::active_isa();

        kernels::force_isa(kernels::Isa::Scalar);
        kernels::soft_threshold(x.data(), 0.25, soft_s.data(), n);
        kernels::clamp_abs(x.data(), 0.5, clamp_s.data(), n);
        axpy_s = random_vec(n, 999);
        kernels::axpy(0.7, x.data(), axpy_s.data(), n);

        if (kernels::force_isa(kernels::Isa::Avx2) == kernels::Isa::Avx2) {
            std::vector<double> soft_v(n), clamp_v(n);
            kernels::soft_threshold(x.data(), 0.25, soft_v.data(), n);
            kernels::clamp_abs(x.data(), 0.5, clamp_v.data(), n);
            auto axpy_v = random_vec(n, 999);
            kernels::axpy(0.7, x.data(), axpy_v.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(soft_v[i] == soft_s[i]);
                CHECK(clamp_v[i] == clamp_s[i]);
                CHECK(std::fabs(axpy_v[i] - axpy_s[i]) <= 1e-15);
            }
        }
        kernels::force_isa(original);
    }
}

TEST_CASE("abs_max returns the first index attaining the maximum") {
    with_both_isas([](kernels::Isa) {
        std::vector<double> v = {0.5, -2.0, 2.0, -2.0, 1.0};
        std::size_t idx = 99;
        const double m = kernels::abs_max(v.data(), v.size(), &idx);
        CHECK(m == 2.0);
        CHECK(idx == 1);  // |-2.0| ties |2.0|; lexicographically smallest wins
    });
}

TEST_CASE("soft threshold shrinkage values") {
    with_both_isas([](kernels::Isa) {
        const std::vector<double> v = {2.0, -0.3, 0.5, -2.0};
        std::vector<double> out(v.size());
        kernels::soft_threshold(v.data(), 0.5, out.data(), v.size());
        CHECK(out[0] == doctest::Approx(1.5));
        CHECK(out[1] == 0.0);
        CHECK(out[2] == 0.0);
        CHECK(out[3] == doctest::Approx(-1.5));
    });
}

TEST_CASE("empty inputs are safe") {
    CHECK(kernels::dot(nullptr, nullptr, 0) == 0.0);
    CHECK(kernels::sum_abs(nullptr, 0) == 0.0);
    CHECK(kernels::abs_max(nullptr, 0) == 0.0);
}
