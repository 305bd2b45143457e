#include <cmath>

#include "gaugeopt/kernels.hpp"
#include "gaugeopt/sdp.hpp"

namespace gaugeopt::sdp {

void SdpInstance::validate() const {
    const std::size_t n = c.order();
    if (n == 0) throw InvalidInput("SdpInstance: C is empty");
    if (!c.as_matrix().all_finite()) throw InvalidInput("SdpInstance: C has non-finite entries");
    if (b.empty()) throw InvalidInput("SdpInstance: b is empty");
    if (a.size() != b.size())
        throw InvalidInput("SdpInstance: number of constraint matrices differs from b");
    if (vnorm(b) == 0.0) throw InvalidInput("SdpInstance: b must be nonzero");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].order() != n) throw InvalidInput("SdpInstance: A_i order mismatch");
        if (!a[i].as_matrix().all_finite())
            throw InvalidInput("SdpInstance: A_i has non-finite entries");
    }
}

Vector apply_A(const SdpInstance& instance, const SymMatrix& x) {
    if (x.order() != instance.order()) throw InvalidInput("apply_A: order mismatch");
    Vector out(instance.num_constraints());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = kernels::dot(instance.a[i].data(), x.data(), x.size());
    return out;
}

SymMatrix apply_At(const SdpInstance& instance, const Vector& y) {
    if (y.size() != instance.num_constraints()) throw InvalidInput("apply_At: length mismatch");
    const std::size_t n = instance.order();
    Matrix acc(n, n);
    for (std::size_t i = 0; i < y.size(); ++i)
        kernels::axpy(y[i], instance.a[i].data(), acc.data(), acc.size());
    return SymMatrix::from_matrix_unchecked(std::move(acc));
}

SdpInstance normalize_C(const SdpInstance& instance, const Vector& y_hat) {
    instance.validate();
    const SymMatrix shift = apply_At(instance, y_hat);
    SdpInstance out = instance;
    out.c = instance.c - shift;
    const double lmax = lambda_max(out.c);
    if (lambda_min(out.c) < -1e-10 * std::max(1.0, lmax))
        throw InvalidShift("normalize_C: C - A'y_hat is not PSD; y_hat is not dual feasible");
    out.objective_shift = instance.objective_shift + vdot(instance.b, y_hat);
    return out;
}

GaugeValue dual_objective(const SdpInstance& instance, const Vector& y) {
    return sdp_polar(apply_At(instance, y), instance.c);
}

SymMatrix attaining_matrix(const SdpInstance& instance, const Vector& y, double tau_null) {
    const SymMatrix z = apply_At(instance, y);
    const double mu = std::max(max_pencil_eig(z, instance.c), 0.0);
    if (!(mu > 0.0))
        throw InvalidInput("attaining_matrix: kappa°(A'y) must be strictly positive");

    const SymMatrix pencil = mu * instance.c - z;
    const EigResult eig = sym_eig(pencil);
    const std::size_t n = pencil.order();
    // unit null vector = eigenvector of the smallest eigenvalue (last column)
    Vector q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = eig.q(i, n - 1);

    const Vector cq = matvec(instance.c.as_matrix(), q);
    const double cqq = vdot(q, cq);
    if (cqq <= tau_null)
        throw DegeneratePolar("attaining_matrix: null vector lies in null(C)");

    Matrix zy(n, n);
    for (std::size_t i = 0; i < n; ++i)
        kernels::axpy(q[i] / cqq, q.data(), zy.row(i), n);
    // exact symmetry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (zy(i, j) + zy(j, i));
            zy(i, j) = v;
            zy(j, i) = v;
        }
    return SymMatrix::from_matrix_unchecked(std::move(zy));
}

Vector dual_subgradient(const SdpInstance& instance, const Vector& y) {
    const SymMatrix z = apply_At(instance, y);
    if (lambda_max(z) <= 0.0) return Vector(instance.num_constraints(), 0.0);
    return apply_A(instance, attaining_matrix(instance, y, 1e-12));
}

Vector project_halfspace(const Vector& y, const Vector& b) {
    if (y.size() != b.size()) throw InvalidInput("project_halfspace: length mismatch");
    const double bb = vdot(b, b);
    if (bb == 0.0) throw InvalidInput("project_halfspace: b must be nonzero");
    const double v = vdot(b, y);
    if (v >= 1.0) return y;
    Vector out = y;
    vaxpy((1.0 - v) / bb, b, out);
    return out;
}

bool simdiag_check(const SymMatrix& a, const SymMatrix& b, double tol) {
    if (a.order() != b.order()) throw InvalidInput("simdiag_check: order mismatch");
    if (lambda_min(a) < -tol || lambda_min(b) < -tol)
        throw InvalidInput("simdiag_check: inputs must be PSD within tol");
    const double scale = 1.0 + frob_norm(a) * frob_norm(b);
    if (dot(a, b) > tol * scale) return true;  // hypothesis not triggered
    const Matrix ab = matmul(a.as_matrix(), b.as_matrix());
    return frob_norm(ab) <= std::sqrt(tol) * scale;
}

}  // namespace gaugeopt::sdp
