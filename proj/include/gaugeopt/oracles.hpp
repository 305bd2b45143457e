#pragma once

#include <cstdint>
#include <random>

#include "gaugeopt/rpca.hpp"
#include "gaugeopt/sdp.hpp"
#include "gaugeopt/types.hpp"

namespace gaugeopt::oracles {

// Deterministic generator: distributions are hand-rolled on top of
// mt19937_64's pinned output so identical seeds give identical streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1p-53;
    }

    double normal() {  // Box-Muller, cached pair
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    bool coin() { return (gen_() & 1u) != 0; }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct ReferenceNoConvergence : std::runtime_error {
    explicit ReferenceNoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct PlantedRpca {
    rpca::RpcaInstance instance;
    Matrix l_true;
    Matrix s_true;
    std::uint64_t seed = 0;
};

struct PlantedSdp {
    sdp::SdpInstance instance;
    SymMatrix x_strict;  // strictly feasible: A X = b, X > 0
    std::uint64_t seed = 0;
};

// Low-rank-plus-sparse instance: |L|_F = 1, sparse support of
// round(density*m*n) entries at +-magnitude, gamma = 1/sqrt(max(m,n)).
PlantedRpca gen_rpca(std::size_t m, std::size_t n, std::size_t rank, double density,
                     double magnitude, std::uint64_t seed);

// Slater-satisfying SDP instance: random symmetric A_i, X_strict = Q L Q' with
// L >= 0.1 I, b = A X_strict, C = C0 C0' + 0.1 I.
PlantedSdp gen_sdp(std::size_t n, std::size_t m, std::uint64_t seed);

struct RpcaReferenceResult {
    Matrix x;
    Matrix y;
    Matrix w;  // Lagrange multiplier of X + Y = M; W/<M,W> is a gauge-dual optimum
    double p_star = 0.0;
    std::size_t iterations = 0;
};

// Classical two-block ADMM with full singular value shrinkage; independent of
// the gauge pipeline.
RpcaReferenceResult rpca_reference_admm(const rpca::RpcaInstance& instance, double tol,
                                        std::size_t max_iter = 200000);

struct SdpReferenceResult {
    SymMatrix x;
    double p_star = 0.0;
    Vector y_dual;          // Lagrange-dual feasible point backing the bound
    double bound_gap = 0.0; // <C,X> - b'y_dual
    std::size_t iterations = 0;
};

// Two-block splitting over the PSD cone and the affine constraints with a
// Lagrange-dual bound certifying the objective.
SdpReferenceResult sdp_reference(const sdp::SdpInstance& instance, double tol,
                                 std::size_t max_iter = 200000);

struct VonNeumannCheck {
    double lhs = 0.0;  // <X, Y>
    double rhs = 0.0;  // <sigma(X), sigma(Y)>
    bool ok = false;
    bool equality = false;  // simultaneous ordered SVD case
};

VonNeumannCheck von_neumann_check(const Matrix& x, const Matrix& y);

}  // namespace gaugeopt::oracles
