#pragma once

#include <cstddef>
#include <cstdint>

#include "gaugeopt/errors.hpp"

namespace gaugeopt {

enum class StepKind { Sqrt, Polyak };

struct StepRule {
    StepKind kind = StepKind::Sqrt;
    double target = 0.0;  // Polyak target objective value

    static StepRule sqrt_rule() { return {StepKind::Sqrt, 0.0}; }
    static StepRule polyak(double target) { return {StepKind::Polyak, target}; }
};

struct SolverConfig {
    std::size_t max_iter = 5000;   // projected subgradient iterations
    double rel_tol = 1e-6;         // stall detection + refinement residual target
    std::size_t window = 50;       // stall window for the best-objective trace
    StepRule step_rule{};
    double tau_mult = 1e-4;        // singular-value multiplicity threshold (relative)
    double tau_null = 1e-6;        // null-space eigenvalue threshold (relative)
    double admm_beta = 1.0;        // recovery ADMM penalty
    double admm_tol = 1e-8;        // recovery ADMM relative residual target
    std::size_t admm_max_iter = 20000;
    double sdls_tol = 1e-8;        // projected-gradient residual target
    double cond6_tol = 1e-3;       // |Z|_inf/(gamma |Z|_2) deviation guard
    std::uint64_t seed = 0;
    bool refine = true;            // splitting refinement after the subgradient stage
    std::size_t refine_max_iter = 200000;
    double cert_tol = 1e-3;        // strong-duality verdict tolerance

    void validate() const {
        if (max_iter < 1) throw InvalidInput("SolverConfig: max_iter must be >= 1");
        if (!(rel_tol > 0.0) || !(tau_mult > 0.0) || !(tau_null > 0.0) ||
            !(admm_beta > 0.0) || !(admm_tol > 0.0) || !(sdls_tol > 0.0) ||
            !(cond6_tol > 0.0) || !(cert_tol > 0.0))
            throw InvalidInput("SolverConfig: tolerances must be positive");
        if (window < 1) throw InvalidInput("SolverConfig: window must be >= 1");
    }
};

}  // namespace gaugeopt
