#pragma once

#include <optional>
#include <vector>

#include "gaugeopt/config.hpp"
#include "gaugeopt/gauge.hpp"
#include "gaugeopt/linalg.hpp"
#include "gaugeopt/types.hpp"

namespace gaugeopt::sdp {

// Standard-form SDP
//   min <C, X>  s.t.  (A X)_i = <A_i, X> = b_i, X >= 0
// solved through its gauge dual
//   min kappa°(A' y)  s.t.  b' y >= 1,  kappa°(Z) = inf{mu >= 0 : mu C - Z >= 0}.
struct SdpInstance {
    SymMatrix c;                // requires C >= 0 (see normalize_C)
    std::vector<SymMatrix> a;   // m constraint matrices
    Vector b;                   // length m, nonzero
    double objective_shift = 0.0;  // b' y_hat accumulated by normalize_C;
                                   // <C_orig, X> = <C, X> + shift when A X = b

    std::size_t order() const { return c.order(); }
    std::size_t num_constraints() const { return b.size(); }
    void validate() const;
};

enum class DualStatus { Ok, EssentiallyInfeasibleRegion };

struct SdpDualState {
    Vector y;
    double mu = 0.0;            // kappa°(A'y) at the returned iterate
    bool mu_finite = true;
    double feasibility = 0.0;   // b' y
    std::size_t iterations = 0;
    std::size_t refine_iterations = 0;
    std::vector<double> history;
    bool refined = false;
    bool stalled = false;
    DualStatus status = DualStatus::Ok;
    std::optional<SymMatrix> z_y;  // attaining matrix at the solution, when it exists
};

struct SdpPrimal {
    SymMatrix x;     // U2 T U2'
    SymMatrix t;     // r x r, PSD
    Matrix u2;       // n x r orthonormal
    double residual = 0.0;  // |A X - b|
};

struct SdpCertificate {
    double feas_primal = 0.0;     // |A X - b| / (1 + |b|)
    double feas_psd = 0.0;        // max(0, -lambda_min(X)) / (1 + lambda_max(X))
    double feas_dual = 0.0;       // |b'y - 1|
    double complementarity = 0.0; // |<mu C - A'y, X>| / (1 + mu |X|_F)
    DualityCertificate duality;
    double tol = 0.0;
    bool pass = false;
};

Vector apply_A(const SdpInstance& instance, const SymMatrix& x);
SymMatrix apply_At(const SdpInstance& instance, const Vector& y);

// Replace C by C - A'y_hat (y_hat Lagrange-dual feasible) and record the
// objective shift b'y_hat; throws InvalidShift if the result is not PSD.
SdpInstance normalize_C(const SdpInstance& instance, const Vector& y_hat);

// kappa°(A'y); infinite means y is essentially infeasible.
GaugeValue dual_objective(const SdpInstance& instance, const Vector& y);

// Rank-one attaining matrix Z_y = q q' / <C, q q'> from a unit null vector of
// mu_y C - A'y. Requires 0 < mu_y < inf.
SymMatrix attaining_matrix(const SdpInstance& instance, const Vector& y, double tau_null);

// A Z_y, an element of the subdifferential of kappa° ∘ A' at y; the zero
// vector when A'y <= 0.
Vector dual_subgradient(const SdpInstance& instance, const Vector& y);

// Euclidean projection onto {y : b'y >= 1}.
Vector project_halfspace(const Vector& y, const Vector& b);

SdpDualState solve_dual(const SdpInstance& instance, const SolverConfig& cfg);

// Null-space basis of mu C - A'y, then the semidefinite least squares
// min_{T>=0} |A U2 T U2' - b|; throws EmptyNullSpace when the basis is empty.
SdpPrimal recover_primal(const SdpInstance& instance, const SdpDualState& dual,
                         const SolverConfig& cfg);

// Projected gradient with a Lipschitz step for min_{T>=0} |A U2 T U2' - b|_2.
SymMatrix sdls_solve(const SdpInstance& instance, const Matrix& u2, const SolverConfig& cfg);

SdpCertificate check_optimality(const SdpInstance& instance, const SymMatrix& x,
                                const Vector& y, double tol);

// PSD pair with <A,B> = 0 must commute (share an eigenbasis); used as a test
// oracle: vacuously true when the inner product is not small.
bool simdiag_check(const SymMatrix& a, const SymMatrix& b, double tol);

}  // namespace gaugeopt::sdp
