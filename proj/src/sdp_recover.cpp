#include <cmath>

#include "gaugeopt/kernels.hpp"
#include "gaugeopt/sdp.hpp"

namespace gaugeopt::sdp {

SymMatrix sdls_solve(const SdpInstance& instance, const Matrix& u2, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t r = u2.cols();
    if (r == 0) throw InvalidInput("sdls_solve: U2 must have at least one column");
    const std::size_t m = instance.num_constraints();

    // reduced constraint matrices U2' A_i U2
    std::vector<SymMatrix> ar(m);
    for (std::size_t i = 0; i < m; ++i) {
        Matrix t = matmul(matmul_tn(u2, instance.a[i].as_matrix()), u2);
        Matrix sym(r, r);
        for (std::size_t p = 0; p < r; ++p)
            for (std::size_t q = 0; q < r; ++q) sym(p, q) = 0.5 * (t(p, q) + t(q, p));
        ar[i] = SymMatrix::from_matrix_unchecked(std::move(sym));
    }

    // Lipschitz bound: largest eigenvalue of the m x m Gram of the reduced map
    SymMatrix gram(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            gram.set(i, j, kernels::dot(ar[i].data(), ar[j].data(), ar[i].size()));
    const double lip = std::max(lambda_max(gram), 1e-300) * (1.0 + 1e-12);

    const double bnorm = vnorm(instance.b);
    SymMatrix t(r);
    SymMatrix best = t;
    double best_obj = std::numeric_limits<double>::infinity();

    const std::size_t max_iter = 200000;
    for (std::size_t k = 0; k < max_iter; ++k) {
        Vector resid(m);
        for (std::size_t i = 0; i < m; ++i)
            resid[i] = kernels::dot(ar[i].data(), t.data(), t.size()) - instance.b[i];
        const double obj = vnorm(resid);
        if (obj < best_obj) {
            best_obj = obj;
            best = t;
        }

        Matrix grad(r, r);
        for (std::size_t i = 0; i < m; ++i)
            kernels::axpy(resid[i], ar[i].data(), grad.data(), grad.size());

        Matrix step = t.as_matrix();
        add_scaled(step, -1.0 / lip, grad);
        SymMatrix tnext = psd_project(SymMatrix::from_matrix(step, 1e-9));

        const double move = frob_norm(tnext.as_matrix() - t.as_matrix());
        t = std::move(tnext);
        if (lip * move <= cfg.sdls_tol * (1.0 + bnorm)) break;
    }

    Vector resid(m);
    for (std::size_t i = 0; i < m; ++i)
        resid[i] = kernels::dot(ar[i].data(), t.data(), t.size()) - instance.b[i];
    if (vnorm(resid) <= best_obj) return t;
    return best;
}

SdpPrimal recover_primal(const SdpInstance& instance, const SdpDualState& dual,
                         const SolverConfig& cfg) {
    instance.validate();
    cfg.validate();
    if (!dual.mu_finite || !(dual.mu > 0.0))
        throw InvalidInput("recover_primal: dual objective must be finite and positive");

    const SymMatrix pencil = dual.mu * instance.c - apply_At(instance, dual.y);
    const Matrix u2 = null_space_basis(pencil, cfg.tau_null);
    if (u2.cols() == 0)
        throw EmptyNullSpace(
            "recover_primal: mu C - A'y has no null space at tau_null; tighten the dual "
            "solve or raise tau_null");

    SdpPrimal primal;
    primal.u2 = u2;
    primal.t = sdls_solve(instance, u2, cfg);
    Matrix x = matmul_nt(matmul(u2, primal.t.as_matrix()), u2);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = i + 1; j < x.cols(); ++j) {
            const double v = 0.5 * (x(i, j) + x(j, i));
            x(i, j) = v;
            x(j, i) = v;
        }
    primal.x = SymMatrix::from_matrix_unchecked(std::move(x));

    Vector ax = apply_A(instance, primal.x);
    vaxpy(-1.0, instance.b, ax);
    primal.residual = vnorm(ax);
    return primal;
}

SdpCertificate check_optimality(const SdpInstance& instance, const SymMatrix& x,
                                const Vector& y, double tol) {
    instance.validate();
    if (x.order() != instance.order()) throw InvalidInput("check_optimality: X order mismatch");
    if (y.size() != instance.num_constraints())
        throw InvalidInput("check_optimality: y length mismatch");

    SdpCertificate cert;
    cert.tol = tol;

    Vector ax = apply_A(instance, x);
    vaxpy(-1.0, instance.b, ax);
    cert.feas_primal = vnorm(ax) / (1.0 + vnorm(instance.b));

    const double xmin = lambda_min(x);
    const double xmax = lambda_max(x);
    cert.feas_psd = std::max(0.0, -xmin) / (1.0 + std::max(xmax, 0.0));

    cert.feas_dual = std::fabs(vdot(instance.b, y) - 1.0);

    const GaugeValue mu = dual_objective(instance, y);
    if (mu.is_finite()) {
        const SymMatrix slack = mu.value * instance.c - apply_At(instance, y);
        cert.complementarity =
            std::fabs(dot(slack, x)) / (1.0 + mu.value * frob_norm(x));
    } else {
        cert.complementarity = std::numeric_limits<double>::infinity();
    }

    cert.duality = duality_certificate(sdp_gauge(x, instance.c), mu, tol);
    cert.pass = cert.feas_primal <= tol && cert.feas_psd <= tol && cert.feas_dual <= tol &&
                cert.complementarity <= tol &&
                cert.duality.verdict == DualityVerdict::StrongDuality;
    return cert;
}

}  // namespace gaugeopt::sdp
