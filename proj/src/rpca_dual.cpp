#include <algorithm>
#include <cmath>

#include "gaugeopt/kernels.hpp"
#include "gaugeopt/rpca.hpp"

namespace gaugeopt::rpca {

void RpcaInstance::validate() const {
    if (m.size() == 0) throw InvalidInput("RpcaInstance: M is empty");
    if (!m.all_finite()) throw InvalidInput("RpcaInstance: M has non-finite entries");
    if (frob_norm(m) == 0.0) throw InvalidInput("RpcaInstance: M must be nonzero");
    if (!(gamma > 0.0)) throw InvalidInput("RpcaInstance: gamma must be positive");
}

Matrix project_feasible(const Matrix& z, const Matrix& m) {
    if (!z.same_shape(m)) throw InvalidInput("project_feasible: shape mismatch");
    const double mm = dot(m, m);
    if (mm == 0.0) throw InvalidInput("project_feasible: M must be nonzero");
    const double v = dot(m, z);
    if (v >= 1.0) return z;
    Matrix out = z;
    add_scaled(out, (1.0 - v) / mm, m);
    return out;
}

namespace {

struct DualEval {
    double sigma = 0.0;  // |Z|_2
    Vector u, v;
    double zinf = 0.0;  // |Z|_inf
    std::size_t arg = 0;
    bool dense_fallback = false;
};

DualEval evaluate(const Matrix& z, const TopSingularOptions& opts, bool allow_fallback) {
    DualEval e;
    e.zinf = kernels::abs_max(z.data(), z.size(), &e.arg);
    if (frob_norm(z) == 0.0) {
        e.u.assign(z.rows(), 0.0);
        e.v.assign(z.cols(), 0.0);
        if (!e.u.empty()) e.u[0] = 1.0;
        if (!e.v.empty()) e.v[0] = 1.0;
        return e;
    }
    try {
        SvdTriplet top = top_singular_triplet(z, opts);
        e.sigma = top.sigma;
        e.u = std::move(top.u);
        e.v = std::move(top.v);
    } catch (const NoConvergence& nc) {
        if (!allow_fallback) throw;
        const SvdResult svd = full_svd(z);
        e.sigma = svd.sigma.empty() ? 0.0 : svd.sigma.front();
        e.u.resize(z.rows());
        e.v.resize(z.cols());
        for (std::size_t i = 0; i < z.rows(); ++i) e.u[i] = svd.u(i, 0);
        for (std::size_t j = 0; j < z.cols(); ++j) e.v[j] = svd.v(j, 0);
        e.dense_fallback = true;
        (void)nc;
    }
    return e;
}

Matrix subgradient_from_eval(const Matrix& z, const DualEval& e, double gamma) {
    Matrix g(z.rows(), z.cols());
    if (frob_norm(z) == 0.0) return g;  // 0 is a subgradient of a gauge at the origin
    if (e.sigma >= e.zinf / gamma) {
        for (std::size_t i = 0; i < z.rows(); ++i)
            kernels::axpy(e.u[i], e.v.data(), g.row(i), z.cols());
    } else {
        const double zval = z.data()[e.arg];
        g.data()[e.arg] = (zval >= 0.0 ? 1.0 : -1.0) / gamma;
    }
    return g;
}

// ---- epigraph projections for the splitting refiner ----

// Level w* minimizing sum_i max(a_i - g*w, 0)^2 + (w - u)^2 over w >= 0.
double epi_level(std::vector<double> a, double u, double g) {
    std::sort(a.begin(), a.end(), std::greater<double>());
    const double w_inactive = std::max(u, 0.0);
    if (a.empty() || a.front() <= g * w_inactive) return w_inactive;
    double csum = 0.0;
    double w = w_inactive;
    const std::size_t kmax = a.size();
    for (std::size_t k = 1; k <= kmax; ++k) {
        csum += a[k - 1];
        const double wk = (u + g * csum) / (1.0 + g * g * static_cast<double>(k));
        const double upper = a[k - 1];
        const double lower = (k < kmax) ? a[k] : -std::numeric_limits<double>::infinity();
        w = wk;
        if (g * wk <= upper + 1e-15 * std::max(1.0, upper) && g * wk >= lower) break;
    }
    return std::max(w, 0.0);
}

std::pair<Matrix, double> proj_epi_spectral(const Matrix& z, double t) {
    const SvdResult svd = full_svd(z);
    const double w = epi_level(svd.sigma, t, 1.0);
    Matrix us = svd.u;
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t k = 0; k < us.cols(); ++k)
            us(i, k) *= std::min(svd.sigma[k], w);
    return {matmul_nt(us, svd.v), w};
}

std::pair<Matrix, double> proj_epi_maxabs(const Matrix& z, double t, double gamma) {
    std::vector<double> a(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) a[i] = std::fabs(z.data()[i]);
    const double w = epi_level(std::move(a), t, gamma);
    Matrix q(z.rows(), z.cols());
    kernels::clamp_abs(z.data(), gamma * w, q.data(), z.size());
    return {q, w};
}

// ADMM on the dual in epigraph consensus form:
//   min t  s.t.  |P|_2 <= s, |Q|_inf <= gamma*u, P = Z, Q = Z, s = t = u,
//                <M, Z> >= 1.
Matrix refine_splitting(const Matrix& m, double gamma, const Matrix& z0, double tol,
                        std::size_t max_iter, std::size_t* iterations) {
    const double f0 = rpca_polar(z0, z0, gamma).value;
    double beta = 1.0 / std::max(f0, 1e-12);
    Matrix z = z0;
    double t = f0;
    Matrix lp(z.rows(), z.cols()), lq(z.rows(), z.cols());
    double ls = 0.0, lu = 0.0;
    double resid0 = -1.0;
    std::size_t k = 0;
    for (; k < max_iter; ++k) {
        Matrix zp = z - lp;
        auto [p, s] = proj_epi_spectral(zp, t - ls);
        Matrix zq = z - lq;
        auto [q, u] = proj_epi_maxabs(zq, t - lu, gamma);

        Matrix z0n = p + lp;
        add_scaled(z0n, 1.0, q);
        add_scaled(z0n, 1.0, lq);
        scale_in_place(z0n, 0.5);
        const double tn = 0.5 * ((s + ls) + (u + lu)) - 0.5 / beta;
        Matrix zn = project_feasible(z0n, m);

        const double rp = std::max(std::max(frob_norm(p - zn), frob_norm(q - zn)),
                                   std::max(std::fabs(s - tn), std::fabs(u - tn)));
        const double rd = beta * std::max(frob_norm(zn - z), std::fabs(tn - t));
        z = std::move(zn);
        t = tn;
        add_scaled(lp, 1.0, p);
        add_scaled(lp, -1.0, z);
        ls += s - t;
        add_scaled(lq, 1.0, q);
        add_scaled(lq, -1.0, z);
        lu += u - t;

        const double resid = std::max(rp, rd);
        if (resid0 < 0.0) resid0 = resid;
        if (resid <= tol * std::max(1.0, std::fabs(t))) break;
        if (resid > 1e6 * (resid0 + 1.0))
            throw Diverged("rpca dual refinement: residuals grew unboundedly");

        if ((k + 1) % 64 == 0) {
            if (rp > 10.0 * rd && beta < 1e8) {
                beta *= 2.0;
                scale_in_place(lp, 0.5);
                scale_in_place(lq, 0.5);
                ls *= 0.5;
                lu *= 0.5;
            } else if (rd > 10.0 * rp && beta > 1e-8) {
                beta *= 0.5;
                scale_in_place(lp, 2.0);
                scale_in_place(lq, 2.0);
                ls *= 2.0;
                lu *= 2.0;
            }
        }
    }
    if (iterations) *iterations = k;
    const double v = dot(m, z);
    if (v > 0.0) scale_in_place(z, 1.0 / v);
    return project_feasible(z, m);
}

}  // namespace

double dual_objective(const Matrix& z, double gamma, const TopSingularOptions& opts) {
    if (!(gamma > 0.0)) throw InvalidInput("dual_objective: gamma must be positive");
    const DualEval e = evaluate(z, opts, /*allow_fallback=*/false);
    return std::max(e.sigma, e.zinf / gamma);
}

Matrix dual_subgradient(const Matrix& z, double gamma, const TopSingularOptions& opts) {
    if (!(gamma > 0.0)) throw InvalidInput("dual_subgradient: gamma must be positive");
    const DualEval e = evaluate(z, opts, /*allow_fallback=*/false);
    return subgradient_from_eval(z, e, gamma);
}

RpcaDualState solve_dual(const RpcaInstance& instance, const SolverConfig& cfg) {
    instance.validate();
    cfg.validate();
    const Matrix& m = instance.m;
    const double gamma = instance.gamma;
    const double mm = dot(m, m);

    RpcaDualState state;
    Matrix z = (1.0 / mm) * m;  // feasible by construction: <M, Z0> = 1

    TopSingularOptions lopts;
    lopts.seed = cfg.seed ^ 0x5bf03635f0a4a51bULL;
    Vector warm;

    auto eval_z = [&](const Matrix& zz) {
        lopts.warm_start = warm.empty() ? nullptr : &warm;
        DualEval e = evaluate(zz, lopts, /*allow_fallback=*/true);
        if (e.dense_fallback) state.lanczos_warning = true;
        warm = e.v;
        return e;
    };

    DualEval e = eval_z(z);
    double f = std::max(e.sigma, e.zinf / gamma);
    double best = f;  // <M, Z0> = 1 exactly
    Matrix zbest = z;
    state.history.push_back(best);

    Matrix g0 = subgradient_from_eval(z, e, gamma);
    const double g0norm = frob_norm(g0);
    const double alpha0 = g0norm > 0.0 ? 1.0 / g0norm : 1.0;

    std::size_t k = 0;
    for (; k < cfg.max_iter; ++k) {
        Matrix g = subgradient_from_eval(z, e, gamma);
        const double gsq = kernels::sum_sq(g.data(), g.size());
        double alpha;
        if (cfg.step_rule.kind == StepKind::Sqrt) {
            alpha = alpha0 / std::sqrt(static_cast<double>(k + 1));
        } else {
            const double gap = f - cfg.step_rule.target;
            alpha = gap > 0.0 && gsq > 0.0 ? gap / gsq : 1e-16 * alpha0;
        }
        Matrix step = z;
        add_scaled(step, -alpha, g);
        z = project_feasible(step, m);

        e = eval_z(z);
        f = std::max(e.sigma, e.zinf / gamma);
        const double v = dot(m, z);
        const double candidate = v > 0.0 ? f / v : f;  // rescaled feasible point
        if (candidate < best) {
            best = candidate;
            zbest = (1.0 / v) * z;
        }
        state.history.push_back(best);

        if (state.history.size() > cfg.window) {
            const double prev = state.history[state.history.size() - 1 - cfg.window];
            if (prev - best < cfg.rel_tol * std::max(best, 1e-300)) {
                state.stalled = true;
                ++k;
                break;
            }
        }
    }
    state.iterations = k;

    if (cfg.refine) {
        try {
            Matrix zr = refine_splitting(m, gamma, zbest, cfg.rel_tol, cfg.refine_max_iter,
                                         &state.refine_iterations);
            const double fr = rpca_polar(zr, zr, gamma).value / dot(m, zr);
            if (fr < best) {
                best = fr;
                zbest = std::move(zr);
                state.history.push_back(best);
            }
            state.refined = true;
        } catch (const Diverged&) {
            // keep the subgradient solution; certificates report the quality
        }
    }

    state.z = project_feasible(zbest, m);
    state.objective = rpca_polar(state.z, state.z, gamma).value;
    state.feasibility = dot(m, state.z);
    return state;
}

}  // namespace gaugeopt::rpca
