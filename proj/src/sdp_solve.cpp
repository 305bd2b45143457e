#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "gaugeopt/kernels.hpp"
#include "gaugeopt/sdp.hpp"

namespace gaugeopt::sdp {

namespace {

struct PointEval {
    double mu = 0.0;
    bool finite = true;
    Vector g;  // subgradient A Z_y
};

PointEval eval_point(const SdpInstance& instance, const Vector& y) {
    PointEval e;
    e.g.assign(instance.num_constraints(), 0.0);
    const SymMatrix z = apply_At(instance, y);
    if (lambda_max(z) <= 0.0) return e;  // mu = 0, zero subgradient
    double mu;
    try {
        mu = std::max(max_pencil_eig(z, instance.c), 0.0);
    } catch (const PencilUnbounded&) {
        e.finite = false;
        return e;
    }
    e.mu = mu;
    if (!(mu > 0.0)) return e;

    const SymMatrix pencil = mu * instance.c - z;
    const EigResult eig = sym_eig(pencil);
    const std::size_t n = pencil.order();
    Vector q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = eig.q(i, n - 1);
    const double cqq = vdot(q, matvec(instance.c.as_matrix(), q));
    if (cqq <= 1e-14) {
        e.finite = false;  // null vector of the pencil sits in null(C)
        return e;
    }
    // g_i = <A_i, q q'> / <C, q q'>
    for (std::size_t i = 0; i < e.g.size(); ++i)
        e.g[i] = vdot(q, matvec(instance.a[i].as_matrix(), q)) / cqq;
    return e;
}

// Projection onto {p : p >= 0, sum p <= 1}.
Vector proj_simplex_cap(Vector v) {
    Vector w(v.size());
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = std::max(v[i], 0.0);
        total += w[i];
    }
    if (total <= 1.0) return w;
    Vector u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double csum = 0.0, theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        csum += u[j];
        const double cand = (csum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - cand > 0.0) theta = cand;
    }
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(v[i] - theta, 0.0);
    return w;
}

// ADMM on  min lambda_max^+(sum_i y_i At_i)  s.t.  b'y >= 1,  where
// At_i = C^{-1/2} A_i C^{-1/2}; valid whenever C > 0.
Vector refine_admm(const SdpInstance& instance, const Vector& y0, double tol,
                   std::size_t max_iter, std::size_t* iterations) {
    const std::size_t n = instance.order();
    const std::size_t m = instance.num_constraints();

    const EigResult ce = sym_eig(instance.c);
    if (ce.lambda.back() <= 0.0)
        throw InvalidInput("sdp refine: C must be positive definite");
    Matrix cih(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = 1.0 / std::sqrt(ce.lambda[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                cih(i, j) += ce.q(i, k) * s * ce.q(j, k);
    }

    std::vector<Matrix> at(m);
    for (std::size_t i = 0; i < m; ++i) {
        Matrix t = matmul(matmul(cih, instance.a[i].as_matrix()), cih);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) {
                const double v = 0.5 * (t(r, c) + t(c, r));
                t(r, c) = v;
                t(c, r) = v;
            }
        at[i] = std::move(t);
    }

    const auto apply_att = [&](const Vector& y) {
        Matrix acc(n, n);
        for (std::size_t i = 0; i < m; ++i)
            kernels::axpy(y[i], at[i].data(), acc.data(), acc.size());
        return acc;
    };

    Eigen::MatrixXd gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double v = kernels::dot(at[i].data(), at[j].data(), at[i].size());
            gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    // small ridge keeps the solve well-posed if the A_i are dependent
    gram.diagonal().array() += 1e-13 * (1.0 + gram.trace() / static_cast<double>(m));
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);

    const auto gram_solve = [&](const Vector& rhs) {
        Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(m));
        Eigen::VectorXd s = ldlt.solve(r);
        return Vector(s.data(), s.data() + m);
    };

    const Vector gib = gram_solve(instance.b);
    const double bgib = vdot(instance.b, gib);

    double beta = 1.0;
    Vector y = y0;
    Matrix lambda(n, n);
    double resid0 = -1.0;
    std::size_t k = 0;
    for (; k < max_iter; ++k) {
        // V-step: prox of lambda_max^+ at At'y - Lambda
        Matrix d = apply_att(y);
        add_scaled(d, -1.0, lambda);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) {
                const double v = 0.5 * (d(r, c) + d(c, r));
                d(r, c) = v;
                d(c, r) = v;
            }
        const EigResult de = sym_eig(SymMatrix::from_matrix_unchecked(std::move(d)));
        Vector scaled(de.lambda);
        vscale(scaled, beta);
        const Vector p = proj_simplex_cap(scaled);
        Matrix v(n, n);
        for (std::size_t kk = 0; kk < n; ++kk) {
            const double wv = de.lambda[kk] - p[kk] / beta;
            if (wv == 0.0) continue;
            for (std::size_t i = 0; i < n; ++i) {
                const double qik = de.q(i, kk) * wv;
                for (std::size_t j = 0; j < n; ++j) v(i, j) += qik * de.q(j, kk);
            }
        }

        // y-step: least squares against V + Lambda over the halfspace
        Matrix r = v + lambda;
        Vector rhs(m);
        for (std::size_t i = 0; i < m; ++i)
            rhs[i] = kernels::dot(at[i].data(), r.data(), r.size());
        Vector yu = gram_solve(rhs);
        const double bty = vdot(instance.b, yu);
        if (bty < 1.0) vaxpy((1.0 - bty) / bgib, gib, yu);

        Vector dy = yu;
        vaxpy(-1.0, y, dy);
        const double rd = beta * frob_norm(apply_att(dy));
        y = std::move(yu);

        Matrix e = apply_att(y);
        add_scaled(e, -1.0, v);
        const double rp = frob_norm(e);
        add_scaled(lambda, -1.0, e);  // Lambda += V - At'y

        const double resid = std::max(rp, rd);
        if (resid0 < 0.0) resid0 = resid;
        if (resid <= tol * std::max(1.0, frob_norm(v))) break;
        if (resid > 1e6 * (resid0 + 1.0))
            throw Diverged("sdp dual refinement: residuals grew unboundedly");

        if ((k + 1) % 64 == 0) {
            if (rp > 10.0 * rd && beta < 1e8) {
                beta *= 2.0;
                scale_in_place(lambda, 0.5);
            } else if (rd > 10.0 * rp && beta > 1e-8) {
                beta *= 0.5;
                scale_in_place(lambda, 2.0);
            }
        }
    }
    if (iterations) *iterations = k;
    const double bty = vdot(instance.b, y);
    if (bty > 0.0) vscale(y, 1.0 / bty);
    return project_halfspace(y, instance.b);
}

}  // namespace

SdpDualState solve_dual(const SdpInstance& instance, const SolverConfig& cfg) {
    instance.validate();
    cfg.validate();
    const double clmax = lambda_max(instance.c);
    if (lambda_min(instance.c) < -1e-10 * std::max(1.0, clmax))
        throw InvalidInput("solve_dual: instance must be normalized with C >= 0");

    const Vector& b = instance.b;
    const double bb = vdot(b, b);

    SdpDualState state;
    Vector y = b;
    vscale(y, 1.0 / bb);  // b'y0 = 1

    PointEval e = eval_point(instance, y);
    if (!e.finite) {
        state.status = DualStatus::EssentiallyInfeasibleRegion;
        state.y = y;
        state.mu_finite = false;
        state.feasibility = vdot(b, y);
        return state;
    }

    double best = e.mu;  // b'y0 = 1 exactly
    Vector ybest = y;
    state.history.push_back(best);

    const double g0norm = vnorm(e.g);
    const double alpha0 = g0norm > 0.0 ? 1.0 / g0norm : 1.0;

    std::size_t k = 0;
    for (; k < cfg.max_iter; ++k) {
        if (vnorm(e.g) == 0.0 && e.mu == 0.0) break;  // objective hit its floor
        const double gsq = kernels::sum_sq(e.g.data(), e.g.size());
        double alpha;
        if (cfg.step_rule.kind == StepKind::Sqrt) {
            alpha = alpha0 / std::sqrt(static_cast<double>(k + 1));
        } else {
            const double gap = e.mu - cfg.step_rule.target;
            alpha = gap > 0.0 && gsq > 0.0 ? gap / gsq : 1e-16 * alpha0;
        }

        Vector ynext = y;
        vaxpy(-alpha, e.g, ynext);
        ynext = project_halfspace(ynext, b);

        PointEval enext = eval_point(instance, ynext);
        // essential infeasibility can only appear with singular C; back off
        // toward the last finite iterate
        int backoff = 0;
        while (!enext.finite && backoff < 60) {
            for (std::size_t i = 0; i < ynext.size(); ++i) ynext[i] = 0.5 * (ynext[i] + y[i]);
            ynext = project_halfspace(ynext, b);
            enext = eval_point(instance, ynext);
            ++backoff;
        }
        if (!enext.finite) {
            state.status = DualStatus::EssentiallyInfeasibleRegion;
            break;
        }
        y = std::move(ynext);
        e = std::move(enext);

        const double v = vdot(b, y);
        const double candidate = v > 0.0 ? e.mu / v : e.mu;
        if (candidate < best) {
            best = candidate;
            ybest = y;
            vscale(ybest, 1.0 / v);
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

    if (cfg.refine && lambda_min(instance.c) > 0.0 && best > 0.0) {
        try {
            Vector yr = refine_admm(instance, ybest, cfg.rel_tol, cfg.refine_max_iter,
                                    &state.refine_iterations);
            const GaugeValue mur = dual_objective(instance, yr);
            if (mur.is_finite()) {
                const double candidate = mur.value / vdot(b, yr);
                if (candidate < best) {
                    best = candidate;
                    ybest = std::move(yr);
                    state.history.push_back(best);
                }
                state.refined = true;
            }
        } catch (const Diverged&) {
            // keep the subgradient iterate
        }
    }

    state.y = project_halfspace(ybest, b);
    const GaugeValue mu = dual_objective(instance, state.y);
    state.mu_finite = mu.is_finite();
    state.mu = mu.is_finite() ? mu.value : 0.0;
    state.feasibility = vdot(b, state.y);
    if (state.mu_finite && state.mu > 0.0) {
        try {
            state.z_y = attaining_matrix(instance, state.y, 1e-14);
        } catch (const DegeneratePolar&) {
            state.z_y.reset();
        }
    }
    return state;
}

}  // namespace gaugeopt::sdp
