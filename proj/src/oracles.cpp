#include <Eigen/Dense>

#include <cmath>
#include <numeric>

#include "gaugeopt/kernels.hpp"
#include "gaugeopt/oracles.hpp"

namespace gaugeopt::oracles {

RpcaReferenceResult rpca_reference_admm(const rpca::RpcaInstance& instance, double tol,
                                        std::size_t max_iter) {
    instance.validate();
    if (!(tol > 0.0)) throw InvalidInput("rpca_reference_admm: tol must be positive");
    const Matrix& m = instance.m;
    const double gamma = instance.gamma;
    const double mnorm = frob_norm(m);
    const double beta =
        std::max(1e-3, static_cast<double>(m.size()) / (4.0 * std::max(sum_abs(m), 1e-12)));

    RpcaReferenceResult res;
    res.x = Matrix(m.rows(), m.cols());
    res.y = Matrix(m.rows(), m.cols());
    res.w = Matrix(m.rows(), m.cols());
    double nuclear = 0.0;

    bool converged = false;
    std::size_t k = 0;
    for (; k < max_iter; ++k) {
        // X-step: singular value shrinkage at 1/beta
        Matrix bx = m - res.y;
        add_scaled(bx, 1.0 / beta, res.w);
        const SvdResult svd = full_svd(bx);
        Matrix us = svd.u;
        nuclear = 0.0;
        for (std::size_t c = 0; c < us.cols(); ++c) {
            const double sv = std::max(svd.sigma[c] - 1.0 / beta, 0.0);
            nuclear += sv;
            for (std::size_t r = 0; r < us.rows(); ++r) us(r, c) *= sv;
        }
        res.x = matmul_nt(us, svd.v);

        // Y-step: entrywise shrinkage at gamma/beta
        Matrix by = m - res.x;
        add_scaled(by, 1.0 / beta, res.w);
        Matrix ynew(m.rows(), m.cols());
        kernels::soft_threshold(by.data(), gamma / beta, ynew.data(), by.size());
        Matrix dy = ynew - res.y;
        res.y = std::move(ynew);

        Matrix resid = res.x + res.y - m;
        add_scaled(res.w, -beta, resid);

        const double pres = frob_norm(resid) / (1.0 + mnorm);
        const double dres = beta * frob_norm(dy) / (1.0 + mnorm);
        if (pres <= tol && dres <= tol && k > 0) {
            converged = true;
            ++k;
            break;
        }
    }
    res.iterations = k;
    if (!converged)
        throw ReferenceNoConvergence("rpca_reference_admm: residual tolerance not reached");
    res.p_star = nuclear + gamma * sum_abs(res.y);
    return res;
}

namespace {

// Largest generalized eigenvalue of (Z, C) with C > 0 via Eigen's
// generalized solver; deliberately independent of the pencil kernel.
double eigen_pencil_max(const SymMatrix& z, const SymMatrix& c) {
    const Eigen::Index n = static_cast<Eigen::Index>(z.order());
    Eigen::MatrixXd ze(n, n), ce(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            ze(i, j) = z(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            ce(i, j) = c(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(ze, ce,
                                                                  Eigen::EigenvaluesOnly);
    return ges.eigenvalues()(n - 1);
}

}  // namespace

SdpReferenceResult sdp_reference(const sdp::SdpInstance& instance, double tol,
                                 std::size_t max_iter) {
    instance.validate();
    if (!(tol > 0.0)) throw InvalidInput("sdp_reference: tol must be positive");
    const std::size_t n = instance.order();
    const std::size_t m = instance.num_constraints();
    const double bnorm = vnorm(instance.b);

    Eigen::MatrixXd gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double v =
                kernels::dot(instance.a[i].data(), instance.a[j].data(), instance.a[i].size());
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    gram.diagonal().array() += 1e-13 * (1.0 + gram.trace() / static_cast<double>(m));
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);

    const auto proj_affine = [&](const SymMatrix& x) {
        Vector r = apply_A(instance, x);
        vaxpy(-1.0, instance.b, r);
        Eigen::VectorXd re = Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(m));
        Eigen::VectorXd lam = ldlt.solve(re);
        Vector lv(lam.data(), lam.data() + m);
        return x - apply_At(instance, lv);
    };

    const double beta = 1.0;
    SymMatrix x = proj_affine(SymMatrix(n));
    SymMatrix s = psd_project(x);
    SymMatrix w(n);

    SdpReferenceResult res;
    bool converged = false;
    std::size_t k = 0;
    for (; k < max_iter; ++k) {
        SymMatrix arg = s - (1.0 / beta) * w;
        arg = arg - (1.0 / beta) * instance.c;
        x = proj_affine(arg);
        s = psd_project(x + (1.0 / beta) * w);
        SymMatrix resid = x - s;
        w = w + beta * resid;

        if (k % 25 == 24 || k + 1 == max_iter) {
            Vector as = apply_A(instance, s);
            vaxpy(-1.0, instance.b, as);
            const double feas = vnorm(as) / (1.0 + bnorm);
            // Lagrange-dual candidate from stationarity C - A'y - W = 0,
            // scaled into feasibility through the pencil value
            Vector rhs(m);
            const SymMatrix cw = instance.c - w;
            for (std::size_t i = 0; i < m; ++i)
                rhs[i] = kernels::dot(instance.a[i].data(), cw.data(), cw.size());
            Eigen::VectorXd rhe = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(m));
            Eigen::VectorXd ye = ldlt.solve(rhe);
            Vector y(ye.data(), ye.data() + m);
            double t = 1.0;
            if (lambda_min(instance.c) > 0.0) {
                const double mu = eigen_pencil_max(apply_At(instance, y), instance.c);
                if (mu > 1.0) t = 1.0 / mu;
            }
            vscale(y, t);
            const double pval = dot(instance.c, s);
            const double gap = std::fabs(pval - vdot(instance.b, y)) / (1.0 + std::fabs(pval));
            if (feas <= tol && gap <= tol) {
                res.y_dual = std::move(y);
                res.bound_gap = pval - vdot(instance.b, res.y_dual);
                converged = true;
                ++k;
                break;
            }
        }
    }
    res.iterations = k;
    if (!converged)
        throw ReferenceNoConvergence("sdp_reference: residual/gap tolerance not reached");
    res.x = s;
    res.p_star = dot(instance.c, s);
    return res;
}

VonNeumannCheck von_neumann_check(const Matrix& x, const Matrix& y) {
    if (!x.same_shape(y)) throw InvalidInput("von_neumann_check: shape mismatch");
    const SvdResult sx = full_svd(x);
    const SvdResult sy = full_svd(y);
    VonNeumannCheck out;
    out.lhs = dot(x, y);
    out.rhs = kernels::dot(sx.sigma.data(), sy.sigma.data(), sx.sigma.size());
    out.ok = out.lhs <= out.rhs + 1e-10;
    out.equality = std::fabs(out.lhs - out.rhs) <= 1e-10;
    return out;
}

}  // namespace gaugeopt::oracles
