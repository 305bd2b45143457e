#pragma once

#include <vector>

#include "gaugeopt/config.hpp"
#include "gaugeopt/gauge.hpp"
#include "gaugeopt/linalg.hpp"
#include "gaugeopt/types.hpp"

namespace gaugeopt::rpca {

// Decompose M into low-rank X plus sparse Y:
//   min |X|_* + gamma |Y|_1  s.t.  X + Y = M
// solved through its gauge dual
//   min max(|Z|_2, |Z|_inf/gamma)  s.t.  <M, Z> >= 1.
struct RpcaInstance {
    Matrix m;
    double gamma = 1.0;

    void validate() const;
};

struct RpcaDualState {
    Matrix z;
    double objective = 0.0;         // max(|Z|_2, |Z|_inf/gamma)
    double feasibility = 0.0;       // <M, Z>
    std::size_t iterations = 0;     // subgradient iterations taken
    std::size_t refine_iterations = 0;
    std::vector<double> history;    // best objective per subgradient iteration
    bool refined = false;
    bool stalled = false;           // stopped on the window rule rather than max_iter
    bool lanczos_warning = false;   // an objective evaluation fell back to dense SVD
};

struct RpcaPrimal {
    Matrix x;
    Matrix y;
    SymMatrix t;   // r x r, PSD
    Matrix u;      // m x r
    Matrix v;      // n x r
};

struct TrivialFlags {
    bool m_zero_opt = false;  // (M, 0) optimal
    bool zero_m_opt = false;  // (0, M) optimal
};

struct RpcaCertificate {
    // residuals of the six optimality conditions
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0;
    bool c6_exempt = false;  // X or Y numerically zero
    DualityCertificate duality;
    TrivialFlags trivial;
    double tol = 0.0;
    bool pass = false;
};

struct LeadingSubspace {
    Matrix u;
    Matrix v;
    std::size_t r = 0;
};

struct AdmmTsubResult {
    SymMatrix t;
    Matrix y;
    Matrix w;
    std::size_t iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

// Euclidean projection onto {Z : <M, Z> >= 1}.
Matrix project_feasible(const Matrix& z, const Matrix& m);

// max(|Z|_2, |Z|_inf/gamma) with the spectral norm from the Lanczos kernel.
double dual_objective(const Matrix& z, double gamma, const TopSingularOptions& opts = {});

// One subgradient of the dual objective: u1 v1' on the spectral branch,
// sign(Z_ij) E_ij / gamma at the lexicographically smallest |Z| argmax on the
// max-norm branch; ties take the spectral branch. Returns zero for Z = 0.
Matrix dual_subgradient(const Matrix& z, double gamma, const TopSingularOptions& opts = {});

RpcaDualState solve_dual(const RpcaInstance& instance, const SolverConfig& cfg);

// Left/right singular subspaces for all singular values within tau_mult
// (relative) of the largest.
LeadingSubspace leading_subspace(const Matrix& z, double tau_mult);

// ADMM for  min_{T>=0}  <-Z/|Z|_2, M - U T V'> + gamma |M - U T V'|_1.
AdmmTsubResult admm_tsub(const RpcaInstance& instance, const Matrix& u, const Matrix& v,
                         const Matrix& z, const SolverConfig& cfg);

// Leading-subspace extraction + ADMM; throws NoNontrivialSolution when the
// dual violates |Z|_inf = gamma |Z|_2 beyond cfg.cond6_tol.
RpcaPrimal recover_primal(const RpcaInstance& instance, const RpcaDualState& dual,
                          const SolverConfig& cfg);

RpcaCertificate check_optimality(const RpcaInstance& instance, const Matrix& x,
                                 const Matrix& y, const Matrix& z, double tol);

TrivialFlags check_trivial(const Matrix& z, const Matrix& m, double gamma, double tol);

}  // namespace gaugeopt::rpca
