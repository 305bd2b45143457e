#include <Eigen/Dense>

#include <cmath>
#include <numeric>

#include "gaugeopt/oracles.hpp"

namespace gaugeopt::oracles {

PlantedRpca gen_rpca(std::size_t m, std::size_t n, std::size_t rank, double density,
                     double magnitude, std::uint64_t seed) {
    if (m == 0 || n == 0) throw InvalidInput("gen_rpca: empty dimensions");
    if (rank == 0 || rank > std::min(m, n))
        throw InvalidInput("gen_rpca: rank must be in [1, min(m, n)]");
    if (!(density > 0.0) || !(density < 0.5))
        throw InvalidInput("gen_rpca: density must lie in (0, 0.5)");
    if (!(magnitude > 0.0)) throw InvalidInput("gen_rpca: magnitude must be positive");

    Rng rng(seed);

    Matrix a(m, rank), b(n, rank);
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
    for (std::size_t i = 0; i < b.size(); ++i) b.data()[i] = rng.normal();
    Matrix l = matmul_nt(a, b);
    const double lnorm = frob_norm(l);
    scale_in_place(l, 1.0 / lnorm);

    const std::size_t total = m * n;
    const std::size_t nnz = static_cast<std::size_t>(std::llround(density * static_cast<double>(total)));
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Matrix s(m, n);
    for (std::size_t k = 0; k < nnz; ++k) {
        const std::size_t j = k + rng.index(total - k);
        std::swap(idx[k], idx[j]);
        s.data()[idx[k]] = rng.coin() ? magnitude : -magnitude;
    }

    PlantedRpca out;
    out.seed = seed;
    out.l_true = std::move(l);
    out.s_true = std::move(s);
    out.instance.m = out.l_true + out.s_true;
    out.instance.gamma = 1.0 / std::sqrt(static_cast<double>(std::max(m, n)));
    return out;
}

PlantedSdp gen_sdp(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0 || m == 0) throw InvalidInput("gen_sdp: empty dimensions");
    if (m > n * (n + 1) / 2)
        throw InvalidInput("gen_sdp: m must not exceed n(n+1)/2");

    Rng rng(seed);
    PlantedSdp out;
    out.seed = seed;
    out.instance.a.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        Matrix g(n, n);
        for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
        Matrix sym(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sym(i, j) = 0.5 * (g(i, j) + g(j, i));
        out.instance.a.push_back(SymMatrix::from_matrix_unchecked(std::move(sym)));
    }

    // orthonormal Q from a Householder QR with a positive-diagonal sign fix
    Eigen::MatrixXd raw(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;

    Vector lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = 0.1 + rng.uniform();
    Matrix xs(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const double qik = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * lam[k];
            for (std::size_t j = 0; j < n; ++j)
                xs(i, j) += qik * q(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (xs(i, j) + xs(j, i));
            xs(i, j) = v;
            xs(j, i) = v;
        }
    out.x_strict = SymMatrix::from_matrix_unchecked(std::move(xs));

    Matrix c0(n, n);
    for (std::size_t i = 0; i < c0.size(); ++i) c0.data()[i] = rng.normal();
    Matrix c = matmul_nt(c0, c0);
    for (std::size_t i = 0; i < n; ++i) c(i, i) += 0.1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (c(i, j) + c(j, i));
            c(i, j) = v;
            c(j, i) = v;
        }
    out.instance.c = SymMatrix::from_matrix_unchecked(std::move(c));
    out.instance.b = apply_A(out.instance, out.x_strict);
    return out;
}

}  // namespace gaugeopt::oracles
