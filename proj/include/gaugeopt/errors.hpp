#pragma once

#include <stdexcept>
#include <string>

namespace gaugeopt {

// Contract violations on inputs (bad shapes, non-finite data, zero M, ...).
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// File / schema problems, carries a human-readable location.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// C - A'y shift would leave a non-PSD cost matrix.
struct InvalidShift : std::runtime_error {
    explicit InvalidShift(const std::string& what) : std::runtime_error(what) {}
};

// No finite mu with mu*C - Z >= 0 exists.
struct PencilUnbounded : std::runtime_error {
    explicit PencilUnbounded(const std::string& what) : std::runtime_error(what) {}
};

// Null vector of mu*C - A'y lies in null(C); the attaining matrix cannot be normalized.
struct DegeneratePolar : std::runtime_error {
    explicit DegeneratePolar(const std::string& what) : std::runtime_error(what) {}
};

// null_space_basis returned r = 0 during primal recovery.
struct EmptyNullSpace : std::runtime_error {
    explicit EmptyNullSpace(const std::string& what) : std::runtime_error(what) {}
};

// The dual solution fails the |Z|_inf = gamma*|Z|_2 alignment needed for a
// nontrivial primal; caller should examine the trivial decompositions.
struct NoNontrivialSolution : std::runtime_error {
    double cond6_residual;
    NoNontrivialSolution(const std::string& what, double resid)
        : std::runtime_error(what), cond6_residual(resid) {}
};

// An iterative scheme's residuals grew by 1e6x.
struct Diverged : std::runtime_error {
    explicit Diverged(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaugeopt
