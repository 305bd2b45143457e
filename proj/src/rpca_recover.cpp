#include <algorithm>
#include <cmath>
#include <numeric>

#include "gaugeopt/kernels.hpp"
#include "gaugeopt/rpca.hpp"

namespace gaugeopt::rpca {

namespace {

Matrix slice_cols(const Matrix& a, std::size_t count) {
    Matrix out(a.rows(), count);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = a(i, j);
    return out;
}

void require_orthonormal(const Matrix& u, const char* name) {
    const Matrix g = matmul_tn(u, u);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const double want = i == j ? 1.0 : 0.0;
            if (std::fabs(g(i, j) - want) > 1e-8)
                throw InvalidInput(std::string(name) + ": columns are not orthonormal");
        }
}

}  // namespace

LeadingSubspace leading_subspace(const Matrix& z, double tau_mult) {
    if (frob_norm(z) == 0.0) throw InvalidInput("leading_subspace: Z must be nonzero");
    if (!(tau_mult > 0.0)) throw InvalidInput("leading_subspace: tau_mult must be positive");
    const SvdResult svd = full_svd(z);
    const double top = svd.sigma.front();
    std::size_t r = 0;
    while (r < svd.sigma.size() && svd.sigma[r] >= (1.0 - tau_mult) * top) ++r;
    LeadingSubspace out;
    out.r = r;
    out.u = slice_cols(svd.u, r);
    out.v = slice_cols(svd.v, r);
    return out;
}

AdmmTsubResult admm_tsub(const RpcaInstance& instance, const Matrix& u, const Matrix& v,
                         const Matrix& z, const SolverConfig& cfg) {
    instance.validate();
    cfg.validate();
    require_orthonormal(u, "admm_tsub: U");
    require_orthonormal(v, "admm_tsub: V");
    const Matrix& m = instance.m;
    const double gamma = instance.gamma;
    const double beta = cfg.admm_beta;

    const SvdResult zsvd = full_svd(z);
    const double znorm2 = zsvd.sigma.empty() ? 0.0 : zsvd.sigma.front();
    if (!(znorm2 > 0.0)) throw InvalidInput("admm_tsub: Z must be nonzero");
    Matrix zhat = (-1.0 / znorm2) * z;

    const std::size_t r = u.cols();
    const double mnorm = frob_norm(m);

    AdmmTsubResult res;
    res.t = SymMatrix(r);
    Matrix w(m.rows(), m.cols());
    Matrix y(m.rows(), m.cols());
    Matrix utv(m.rows(), m.cols());  // U T V'
    double pres0 = -1.0;

    std::size_t k = 0;
    for (; k < cfg.admm_max_iter; ++k) {
        // Y-step: entrywise shrinkage at gamma/beta
        Matrix b = m;
        add_scaled(b, 1.0 / beta, w);
        add_scaled(b, -1.0, utv);
        add_scaled(b, -1.0 / beta, zhat);
        Matrix ynew(m.rows(), m.cols());
        kernels::soft_threshold(b.data(), gamma / beta, ynew.data(), b.size());

        // T-step: PSD projection of U'(M + W/beta - Y)V
        Matrix c = m;
        add_scaled(c, 1.0 / beta, w);
        add_scaled(c, -1.0, ynew);
        Matrix core = matmul(matmul_tn(u, c), v);
        Matrix sym_core(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                sym_core(i, j) = 0.5 * (core(i, j) + core(j, i));
        res.t = psd_project(SymMatrix::from_matrix_unchecked(std::move(sym_core)));

        utv = matmul_nt(matmul(u, res.t.as_matrix()), v);

        // W-step on the residual of Y + U T V' = M
        Matrix resid = ynew;
        add_scaled(resid, 1.0, utv);
        add_scaled(resid, -1.0, m);
        add_scaled(w, -beta, resid);

        const double pres = frob_norm(resid) / (1.0 + mnorm);
        Matrix dy = ynew - y;
        const double dres =
            beta * frob_norm(matmul(matmul_tn(u, dy), v)) / (1.0 + mnorm);
        y = std::move(ynew);

        if (pres0 < 0.0) pres0 = pres;
        res.primal_residual = pres;
        res.dual_residual = dres;
        if (pres > 1e6 * (pres0 + 1.0))
            throw Diverged("admm_tsub: primal residual grew unboundedly");
        if (std::max(pres, dres) <= cfg.admm_tol && k > 0) {
            ++k;
            break;
        }
    }
    res.iterations = k;
    res.y = std::move(y);
    res.w = std::move(w);
    return res;
}

RpcaPrimal recover_primal(const RpcaInstance& instance, const RpcaDualState& dual,
                          const SolverConfig& cfg) {
    instance.validate();
    cfg.validate();
    if (!(dual.objective > 0.0))
        throw InvalidInput("recover_primal: dual objective must be positive");

    const Matrix& z = dual.z;
    const SvdResult zsvd = full_svd(z);
    const double znorm2 = zsvd.sigma.empty() ? 0.0 : zsvd.sigma.front();
    const double zinf = abs_max(z);
    if (!(znorm2 > 0.0)) throw InvalidInput("recover_primal: Z must be nonzero");

    // boundedness of the reduced problem needs |Z/(gamma |Z|_2)|_inf = 1
    const double cond6 = std::fabs(zinf / (instance.gamma * znorm2) - 1.0);
    if (cond6 > cfg.cond6_tol)
        throw NoNontrivialSolution(
            "recover_primal: dual violates the max-norm/spectral alignment; "
            "the optimal decomposition may be trivial (run check_trivial)",
            cond6);

    const LeadingSubspace sub = leading_subspace(z, cfg.tau_mult);
    const AdmmTsubResult admm = admm_tsub(instance, sub.u, sub.v, z, cfg);

    RpcaPrimal primal;
    primal.u = sub.u;
    primal.v = sub.v;
    primal.t = admm.t;
    primal.x = matmul_nt(matmul(sub.u, admm.t.as_matrix()), sub.v);
    primal.y = instance.m - primal.x;
    return primal;
}

TrivialFlags check_trivial(const Matrix& z, const Matrix& m, double gamma, double tol) {
    if (!z.same_shape(m)) throw InvalidInput("check_trivial: shape mismatch");
    const double d = rpca_polar(z, z, gamma).value;
    const SvdResult msvd = full_svd(m);
    const double nuclear = std::accumulate(msvd.sigma.begin(), msvd.sigma.end(), 0.0);
    const double l1 = sum_abs(m);
    TrivialFlags flags;
    flags.m_zero_opt = std::fabs(nuclear * d - 1.0) <= tol;
    flags.zero_m_opt = std::fabs(gamma * l1 * d - 1.0) <= tol;
    return flags;
}

RpcaCertificate check_optimality(const RpcaInstance& instance, const Matrix& x,
                                 const Matrix& y, const Matrix& z, double tol) {
    instance.validate();
    if (!x.same_shape(instance.m) || !y.same_shape(instance.m) || !z.same_shape(instance.m))
        throw InvalidInput("check_optimality: shape mismatch");

    const Matrix& m = instance.m;
    const double gamma = instance.gamma;
    const double mnorm = frob_norm(m);

    RpcaCertificate cert;
    cert.tol = tol;

    cert.c1 = frob_norm(x + y - m) / (1.0 + mnorm);
    cert.c2 = std::fabs(dot(m, z) - 1.0);

    const double y1 = sum_abs(y);
    const double zinf = abs_max(z);
    cert.c3 = std::fabs(y1 * zinf - dot(y, z)) / (1.0 + y1 * zinf);

    const SvdResult xsvd = full_svd(x);
    const SvdResult zsvd = full_svd(z);
    const double x2 = xsvd.sigma.empty() ? 0.0 : xsvd.sigma.front();
    const double z2 = zsvd.sigma.empty() ? 0.0 : zsvd.sigma.front();
    double c4 = 0.0;
    for (std::size_t i = 0; i < xsvd.sigma.size(); ++i)
        c4 = std::max(c4, xsvd.sigma[i] * (z2 - zsvd.sigma[i]));
    cert.c4 = c4 / (1.0 + x2 * z2);

    const double sigdot =
        kernels::dot(xsvd.sigma.data(), zsvd.sigma.data(), xsvd.sigma.size());
    cert.c5 = std::fabs(dot(x, z) - sigdot) / (1.0 + sigdot);

    cert.c6 = std::fabs(z2 - zinf / gamma) / (1.0 + z2);
    const double zero_scale = 1e-12 * (1.0 + mnorm);
    cert.c6_exempt = frob_norm(x) <= zero_scale || frob_norm(y) <= zero_scale;

    cert.duality = duality_certificate(rpca_gauge(x, y, gamma),
                                       rpca_polar(z, z, gamma), tol);
    cert.trivial = check_trivial(z, m, gamma, tol);

    cert.pass = cert.c1 <= tol && cert.c2 <= tol && cert.c3 <= tol && cert.c4 <= tol &&
                cert.c5 <= tol && (cert.c6_exempt || cert.c6 <= tol);
    return cert;
}

}  // namespace gaugeopt::rpca
