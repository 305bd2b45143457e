#include <Eigen/Dense>

#include <cmath>

#include "gaugeopt/linalg.hpp"

namespace gaugeopt {

namespace {

using EMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<const EMatrix>;

EMap as_eigen(const SymMatrix& s) {
    return EMap(s.data(), static_cast<Eigen::Index>(s.order()),
                static_cast<Eigen::Index>(s.order()));
}

double dense_congruence_spd(const SymMatrix& z, const SymMatrix& c);

// General C >= 0 path: block-split Z in C's eigenbasis and apply the
// generalized Schur-complement feasibility conditions for mu*C - Z >= 0.
double dense_singular_path(const SymMatrix& z, const SymMatrix& c, double tol) {
    const EigResult ce = sym_eig(c);
    const std::size_t n = c.order();
    const double cmax = ce.lambda.empty() ? 0.0 : ce.lambda.front();
    const double zscale = std::max(1.0, frob_norm(z));
    if (ce.lambda.empty() || !(ce.lambda.front() > 0.0))
        throw InvalidInput("max_pencil_eig: C must be nonzero PSD");
    if (ce.lambda.back() < -1e-10 * std::max(1.0, cmax))
        throw InvalidInput("max_pencil_eig: C is not PSD");

    const double rank_tol = 1e-12 * cmax;
    std::size_t r = 0;
    while (r < n && ce.lambda[r] > rank_tol) ++r;
    const std::size_t nn = n - r;

    // Zt = Q' Z Q
    Matrix zq = matmul(z.as_matrix(), ce.q);
    Matrix zt = matmul_tn(ce.q, zq);

    Matrix zrr(r, r), zrn(r, nn), znn(nn, nn);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) zrr(i, j) = 0.5 * (zt(i, j) + zt(j, i));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < nn; ++j) zrn(i, j) = 0.5 * (zt(i, r + j) + zt(r + j, i));
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j) znn(i, j) = 0.5 * (zt(r + i, r + j) + zt(r + j, r + i));

    Matrix schur = zrr;
    if (nn > 0) {
        const EigResult de = sym_eig(SymMatrix::from_matrix_unchecked(-1.0 * znn));
        const double dmax = de.lambda.empty() ? 0.0 : std::max(de.lambda.front(), 0.0);
        if (!de.lambda.empty() && de.lambda.back() < -tol * zscale)
            throw PencilUnbounded("Z has a positive component on null(C)");
        const double d_rank_tol = std::max(tol * zscale, 1e-14 * std::max(1.0, dmax));
        // pseudo-inverse of D = -Znn and the range condition Zrn (I - D D+) = 0
        Matrix zrn_q = matmul(zrn, de.q);  // r x nn, columns in D's eigenbasis
        Matrix pinv_part(r, nn);
        for (std::size_t k = 0; k < nn; ++k) {
            if (de.lambda[k] > d_rank_tol) {
                for (std::size_t i = 0; i < r; ++i)
                    pinv_part(i, k) = zrn_q(i, k) / de.lambda[k];
            } else {
                for (std::size_t i = 0; i < r; ++i) {
                    if (std::fabs(zrn_q(i, k)) > tol * zscale)
                        throw PencilUnbounded(
                            "Z couples range(C) with a null direction of C not damped by Z");
                    pinv_part(i, k) = 0.0;
                }
            }
        }
        Matrix corr = matmul_nt(pinv_part, zrn_q);
        add_scaled(schur, 1.0, corr);
    }
    // Lr^{-1/2} * schur * Lr^{-1/2}
    Matrix w(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            w(i, j) = schur(i, j) / std::sqrt(ce.lambda[i] * ce.lambda[j]);
    return lambda_max(SymMatrix::from_matrix(w, 1e-9));
}

double dense_congruence_spd(const SymMatrix& z, const SymMatrix& c) {
    const Eigen::Index n = static_cast<Eigen::Index>(c.order());
    Eigen::LLT<Eigen::MatrixXd> llt(as_eigen(c));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
    const Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd w = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd(as_eigen(z)));
    w = l.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd(w.transpose()));
    Eigen::MatrixXd ws = 0.5 * (w + w.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ws, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(n - 1);
}

double iterative_lanczos_path(const SymMatrix& z, const SymMatrix& c, double tol) {
    const Eigen::Index n = static_cast<Eigen::Index>(c.order());
    Eigen::LLT<Eigen::MatrixXd> llt(as_eigen(c));
    if (llt.info() != Eigen::Success)
        throw InvalidInput("max_pencil_eig: iterative backend requires C > 0");
    const Eigen::MatrixXd l = llt.matrixL();
    const EMap ze = as_eigen(z);

    // w -> L^{-1} Z L^{-T} w, matrix-vector products plus two triangular solves
    const auto op = [&](const Vector& x, Vector& y) {
        Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
        v = l.transpose().triangularView<Eigen::Upper>().solve(v);
        v = ze * v;
        v = l.triangularView<Eigen::Lower>().solve(v);
        Eigen::Map<Eigen::VectorXd>(y.data(), n) = v;
    };

    TopSingularOptions opts;
    opts.tol = std::max(tol * 1e-2, 1e-13);
    opts.max_iter = 4000;
    // |lambda|_max first, then shift to expose the signed maximum
    const SvdTriplet mag = top_singular_triplet(op, op, c.order(), c.order(), opts);
    const double shift = mag.sigma * 1.25 + 1.0;
    const auto op_shifted = [&](const Vector& x, Vector& y) {
        op(x, y);
        for (std::size_t i = 0; i < x.size(); ++i) y[i] += shift * x[i];
    };
    const SvdTriplet top = top_singular_triplet(op_shifted, op_shifted, c.order(), c.order(), opts);
    return top.sigma - shift;
}

}  // namespace

double max_pencil_eig(const SymMatrix& z, const SymMatrix& c, double tol, PencilBackend backend) {
    if (z.order() != c.order()) throw InvalidInput("max_pencil_eig: order mismatch");
    if (!z.as_matrix().all_finite() || !c.as_matrix().all_finite())
        throw InvalidInput("max_pencil_eig: non-finite input");
    if (!(tol > 0.0)) throw InvalidInput("max_pencil_eig: tol must be positive");

    if (backend == PencilBackend::IterativeLanczos) return iterative_lanczos_path(z, c, tol);

    const double v = dense_congruence_spd(z, c);
    if (std::isfinite(v)) return v;
    return dense_singular_path(z, c, tol);
}

}  // namespace gaugeopt
