#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "gaugeopt/kernels.hpp"
#include "gaugeopt/linalg.hpp"

namespace gaugeopt {

namespace {

void reorthogonalize(Vector& w, const std::vector<Vector>& basis) {
    // two passes of classical Gram-Schmidt keep the basis orthogonal to
    // working precision, which the projected small problem relies on
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& q : basis) {
            const double c = kernels::dot(w.data(), q.data(), w.size());
            if (c != 0.0) kernels::axpy(-c, q.data(), w.data(), w.size());
        }
    }
}

Vector seeded_unit_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Vector v(n);
    for (double& x : v) {
        const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
        x = 2.0 * u - 1.0;
    }
    const double norm = vnorm(v);
    if (norm == 0.0) {
        v.assign(n, 0.0);
        v[0] = 1.0;
        return v;
    }
    vscale(v, 1.0 / norm);
    return v;
}

struct Cycle {
    std::vector<Vector> ubase;  // k left vectors
    std::vector<Vector> vbase;  // k or k+1 right vectors
    Vector alpha;               // k diagonal entries
    Vector beta;                // superdiagonal; beta[j] couples u_j to v_{j+1}
    bool breakdown = false;
};

// Ritz triplet from the k x (k+1 when available) bidiagonal projection.
SvdTriplet project_candidate(const Cycle& cy, std::size_t m, std::size_t n) {
    const std::size_t k = cy.alpha.size();
    const std::size_t kv = cy.vbase.size();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                              static_cast<Eigen::Index>(kv));
    for (std::size_t j = 0; j < k; ++j) {
        b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = cy.alpha[j];
        if (j + 1 < kv && j < cy.beta.size())
            b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j + 1)) = cy.beta[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);

    SvdTriplet cand;
    cand.sigma = svd.singularValues()(0);
    cand.u.assign(m, 0.0);
    cand.v.assign(n, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        kernels::axpy(svd.matrixU()(static_cast<Eigen::Index>(j), 0), cy.ubase[j].data(),
                      cand.u.data(), m);
    for (std::size_t j = 0; j < kv; ++j)
        kernels::axpy(svd.matrixV()(static_cast<Eigen::Index>(j), 0), cy.vbase[j].data(),
                      cand.v.data(), n);
    const double un = vnorm(cand.u), vn = vnorm(cand.v);
    if (un > 0.0) vscale(cand.u, 1.0 / un);
    if (vn > 0.0) vscale(cand.v, 1.0 / vn);
    return cand;
}

// Cheap convergence estimate from the k x k truncation: beta_k * |p_k|.
double ritz_residual_estimate(const Cycle& cy) {
    const std::size_t k = cy.alpha.size();
    if (k == 0 || cy.beta.size() < k) return std::numeric_limits<double>::infinity();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                              static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
        b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = cy.alpha[j];
        if (j + 1 < k)
            b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j + 1)) = cy.beta[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
    return cy.beta[k - 1] * std::fabs(svd.matrixU()(static_cast<Eigen::Index>(k - 1), 0));
}

}  // namespace

SvdTriplet top_singular_triplet(const ApplyFn& apply, const ApplyFn& apply_t,
                                std::size_t m, std::size_t n,
                                const TopSingularOptions& opts) {
    if (m == 0 || n == 0) throw InvalidInput("top_singular_triplet: empty operator");
    if (!(opts.tol > 0.0)) throw InvalidInput("top_singular_triplet: tol must be positive");

    Vector v1;
    if (opts.warm_start && opts.warm_start->size() == n) {
        v1 = *opts.warm_start;
        const double norm = vnorm(v1);
        if (norm > 0.0 && std::isfinite(norm))
            vscale(v1, 1.0 / norm);
        else
            v1 = seeded_unit_vector(n, opts.seed);
    } else {
        v1 = seeded_unit_vector(n, opts.seed);
    }

    const std::size_t cycle_cap = std::min<std::size_t>(std::min(m, n), 250);
    std::size_t applications = 0;
    std::uint64_t reseed = opts.seed;

    SvdTriplet best;
    best.u.assign(m, 0.0);
    best.u[0] = 1.0;
    best.v = v1;
    double best_resid = std::numeric_limits<double>::infinity();

    Vector work_m(m), work_n(n);

    const auto explicit_residual = [&](const SvdTriplet& t) {
        apply(t.v, work_m);
        Vector r1 = work_m;
        kernels::axpy(-t.sigma, t.u.data(), r1.data(), m);
        apply_t(t.u, work_n);
        Vector r2 = work_n;
        kernels::axpy(-t.sigma, t.v.data(), r2.data(), n);
        ++applications;
        return std::max(vnorm(r1), vnorm(r2));
    };

    while (applications < opts.max_iter) {
        Cycle cy;
        cy.vbase.push_back(v1);
        bool estimate_hit = false;

        for (std::size_t j = 0; j < cycle_cap && applications < opts.max_iter; ++j) {
            apply(cy.vbase[j], work_m);
            ++applications;
            Vector u = work_m;
            if (j > 0) kernels::axpy(-cy.beta[j - 1], cy.ubase[j - 1].data(), u.data(), m);
            reorthogonalize(u, cy.ubase);
            const double a = vnorm(u);
            if (!(a > 1e-300)) {
                cy.breakdown = true;
                break;
            }
            vscale(u, 1.0 / a);
            cy.ubase.push_back(std::move(u));
            cy.alpha.push_back(a);

            apply_t(cy.ubase[j], work_n);
            Vector w = work_n;
            kernels::axpy(-a, cy.vbase[j].data(), w.data(), n);
            reorthogonalize(w, cy.vbase);
            const double b = vnorm(w);
            cy.beta.push_back(b);
            if (!(b > 1e-300)) {
                cy.breakdown = true;
                break;
            }
            vscale(w, 1.0 / b);
            cy.vbase.push_back(std::move(w));

            const std::size_t k = cy.alpha.size();
            const bool check_now = k <= 8 || k % 4 == 0;
            if (check_now && k > 1) {
                const double est = ritz_residual_estimate(cy);
                if (est <= 0.5 * opts.tol * std::max(1.0, cy.alpha.front())) {
                    estimate_hit = true;
                    break;
                }
            }
        }

        if (cy.alpha.empty()) {
            // the operator annihilates v1: zero matrix or an unlucky start;
            // certify by probing fresh directions
            best.sigma = 0.0;
            best.v = v1;
            double certified = 0.0;
            for (int probe = 0; probe < 3 && applications < opts.max_iter + 3; ++probe) {
                reseed = reseed * 6364136223846793005ULL + 1442695040888963407ULL;
                Vector p = seeded_unit_vector(n, reseed);
                apply(p, work_m);
                ++applications;
                certified = std::max(certified, vnorm(work_m));
            }
            if (certified <= opts.tol) return best;
            v1 = seeded_unit_vector(n, ++reseed);
            continue;
        }

        SvdTriplet cand = project_candidate(cy, m, n);
        const double resid = explicit_residual(cand);
        const bool improved = resid < 0.9 * best_resid;
        if (resid < best_resid) {
            best = cand;
            best_resid = resid;
        }
        if (resid <= opts.tol * std::max(1.0, cand.sigma)) return cand;
        if (cy.breakdown && resid <= 1e-11 * std::max(1.0, cand.sigma)) return cand;
        (void)estimate_hit;

        if (improved) {
            v1 = cand.v;  // restart from the Ritz vector
        } else {
            // stalled: blend the Ritz vector with a fresh random direction
            reseed = reseed * 6364136223846793005ULL + 1442695040888963407ULL;
            Vector mix = seeded_unit_vector(n, reseed);
            vscale(mix, 0.25);
            vaxpy(1.0, cand.v, mix);
            const double norm = vnorm(mix);
            v1 = mix;
            if (norm > 0.0) vscale(v1, 1.0 / norm);
        }
    }

    throw NoConvergence("top_singular_triplet: max_iter reached before residual tolerance",
                        best);
}

SvdTriplet top_singular_triplet(const Matrix& a, const TopSingularOptions& opts) {
    if (!a.all_finite()) throw InvalidInput("top_singular_triplet: non-finite input");
    const auto apply = [&a](const Vector& x, Vector& y) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            y[i] = kernels::dot(a.row(i), x.data(), a.cols());
    };
    const auto apply_t = [&a](const Vector& x, Vector& y) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t i = 0; i < a.rows(); ++i)
            kernels::axpy(x[i], a.row(i), y.data(), a.cols());
    };
    return top_singular_triplet(apply, apply_t, a.rows(), a.cols(), opts);
}

}  // namespace gaugeopt
