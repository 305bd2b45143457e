#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "gaugeopt/errors.hpp"
#include "gaugeopt/types.hpp"

namespace gaugeopt {

// Leading singular triplet sigma, u, v with ||u|| = ||v|| = 1.
struct SvdTriplet {
    double sigma = 0.0;
    Vector u;
    Vector v;
};

struct EigPair {
    double lambda = 0.0;
    Vector q;
};

// Thin SVD, A = U * diag(sigma) * V' with sigma nonincreasing.
struct SvdResult {
    Matrix u;      // m x k
    Vector sigma;  // k = min(m, n), nonincreasing
    Matrix v;      // n x k
};

// S = Q * diag(lambda) * Q' with lambda nonincreasing.
struct EigResult {
    Matrix q;       // n x n, orthonormal columns
    Vector lambda;  // nonincreasing
};

struct NoConvergence : std::runtime_error {
    SvdTriplet best;
    NoConvergence(const std::string& what, SvdTriplet triplet)
        : std::runtime_error(what), best(std::move(triplet)) {}
};

SvdResult full_svd(const Matrix& a);
EigResult sym_eig(const SymMatrix& s);

double lambda_max(const SymMatrix& s);
double lambda_min(const SymMatrix& s);

SymMatrix psd_project(const SymMatrix& s);

using ApplyFn = std::function<void(const Vector&, Vector&)>;

struct TopSingularOptions {
    double tol = 1e-10;
    std::size_t max_iter = 2000;        // operator application pairs
    std::uint64_t seed = 0x6a09e667f3bcc909ULL;
    const Vector* warm_start = nullptr;  // right-vector guess, length n
};

// Largest singular triplet of the operator pair (apply: v -> Av of size m,
// apply_t: u -> A'u of size n) via Golub-Kahan-Lanczos bidiagonalization with
// full reorthogonalization and restarts. Throws NoConvergence (carrying the
// best triplet so far) if the residual tolerance is not met within max_iter.
SvdTriplet top_singular_triplet(const ApplyFn& apply, const ApplyFn& apply_t,
                                std::size_t m, std::size_t n,
                                const TopSingularOptions& opts = {});

SvdTriplet top_singular_triplet(const Matrix& a, const TopSingularOptions& opts = {});

enum class PencilBackend { DenseCongruence, IterativeLanczos };

// Largest lambda with Z q = lambda C q restricted to range(C), C >= 0.
// For C > 0 this equals lambda_max(C^{-1/2} Z C^{-1/2}). Throws
// PencilUnbounded when no finite mu satisfies mu*C - Z >= 0.
double max_pencil_eig(const SymMatrix& z, const SymMatrix& c, double tol = 1e-10,
                      PencilBackend backend = PencilBackend::DenseCongruence);

// Orthonormal columns spanning the eigenvectors of s with eigenvalue
// <= tau_null * max(1, lambda_max(s)). May return an n x 0 matrix.
Matrix null_space_basis(const SymMatrix& s, double tau_null);

}  // namespace gaugeopt
