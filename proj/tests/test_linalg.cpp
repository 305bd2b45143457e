#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "gaugeopt/linalg.hpp"

using namespace gaugeopt;

namespace {

Matrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Matrix a(m, n);
    for (std::size_t i = 0; i < a.size(); ++i)
        a.data()[i] = 2.0 * (static_cast<double>(gen() >> 11) * 0x1p-53) - 1.0;
    return a;
}

SymMatrix random_sym(std::size_t n, std::uint64_t seed) {
    const Matrix g = random_matrix(n, n, seed);
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.5 * (g(i, j) + g(j, i));
    return SymMatrix::from_matrix_unchecked(std::move(s));
}

SymMatrix random_spd(std::size_t n, std::uint64_t seed, double ridge = 0.2) {
    const Matrix g = random_matrix(n, n, seed);
    Matrix s = matmul_nt(g, g);
    for (std::size_t i = 0; i < n; ++i) s(i, i) += ridge;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = v;
            s(j, i) = v;
        }
    return SymMatrix::from_matrix_unchecked(std::move(s));
}

Matrix diag_matrix(std::initializer_list<double> d) {
    Matrix a(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d) {
        a(i, i) = v;
        ++i;
    }
    return a;
}

double svd_reconstruction_error(const Matrix& a, const SvdResult& svd) {
    Matrix us = svd.u;
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t k = 0; k < us.cols(); ++k) us(i, k) *= svd.sigma[k];
    return frob_norm(a - matmul_nt(us, svd.v));
}

}  // namespace

TEST_CASE("full_svd on diagonal and zero matrices") {
    const SvdResult d = full_svd(diag_matrix({3.0, 1.0}));
    CHECK(d.sigma[0] == doctest::Approx(3.0));
    CHECK(d.sigma[1] == doctest::Approx(1.0));

    const SvdResult z = full_svd(Matrix(2, 3));
    CHECK(z.sigma[0] == 0.0);
    CHECK(z.sigma[1] == 0.0);
}

TEST_CASE("full_svd reconstructs and is orthonormal") {
    const Matrix a = random_matrix(5, 4, 42);
    const SvdResult svd = full_svd(a);
    CHECK(svd_reconstruction_error(a, svd) <= 1e-10 * frob_norm(a));
    const Matrix utu = matmul_tn(svd.u, svd.u);
    const Matrix vtv = matmul_tn(svd.v, svd.v);
    for (std::size_t i = 0; i < utu.rows(); ++i)
        for (std::size_t j = 0; j < utu.cols(); ++j) {
            CHECK(std::fabs(utu(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
            CHECK(std::fabs(vtv(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
        }
    for (std::size_t i = 1; i < svd.sigma.size(); ++i) CHECK(svd.sigma[i - 1] >= svd.sigma[i]);
}

TEST_CASE("full_svd rejects non-finite input") {
    Matrix a(2, 2);
    a(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(full_svd(a), InvalidInput);
}

TEST_CASE("sym_eig reconstructs with nonincreasing eigenvalues") {
    const SymMatrix s = random_sym(6, 7);
    const EigResult eig = sym_eig(s);
    for (std::size_t i = 1; i < eig.lambda.size(); ++i)
        CHECK(eig.lambda[i - 1] >= eig.lambda[i]);
    Matrix qs = eig.q;
    for (std::size_t i = 0; i < qs.rows(); ++i)
        for (std::size_t k = 0; k < qs.cols(); ++k) qs(i, k) *= eig.lambda[k];
    CHECK(frob_norm(s.as_matrix() - matmul_nt(qs, eig.q)) <= 1e-10 * (1.0 + frob_norm(s)));

    const EigResult d = sym_eig(SymMatrix::from_matrix(diag_matrix({2.0, -1.0})));
    CHECK(d.lambda[0] == doctest::Approx(2.0));
    CHECK(d.lambda[1] == doctest::Approx(-1.0));

    const EigResult id = sym_eig(SymMatrix::identity(3));
    for (double lam : id.lambda) CHECK(lam == doctest::Approx(1.0));
}

TEST_CASE("psd_project clamps negative eigenvalues") {
    const SymMatrix p = psd_project(SymMatrix::from_matrix(diag_matrix({2.0, -1.0})));
    CHECK(p(0, 0) == doctest::Approx(2.0));
    CHECK(p(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

    SUBCASE("psd input is a fixed point") {
        const SymMatrix spd = random_spd(5, 3);
        const SymMatrix q = psd_project(spd);
        CHECK(frob_norm(q.as_matrix() - spd.as_matrix()) <= 1e-12 * (1.0 + frob_norm(spd)));
    }

    SUBCASE("idempotent and nearly PSD output") {
        const SymMatrix s = random_sym(6, 19);
        const SymMatrix p1 = psd_project(s);
        const SymMatrix p2 = psd_project(p1);
        CHECK(frob_norm(p1.as_matrix() - p2.as_matrix()) <= 1e-10 * (1.0 + frob_norm(p1)));
        CHECK(lambda_min(p1) >= -1e-10);
    }

    SUBCASE("nearest PSD matrix against random PSD probes") {
        const SymMatrix s = random_sym(5, 23);
        const SymMatrix p = psd_project(s);
        const double dist = frob_norm(s.as_matrix() - p.as_matrix());
        for (int trial = 0; trial < 100; ++trial) {
            const SymMatrix probe = random_spd(5, 1000 + trial, 0.0);
            CHECK(dist <= frob_norm(s.as_matrix() - probe.as_matrix()) + 1e-12);
        }
    }
}

TEST_CASE("top_singular_triplet matches examples") {
    SUBCASE("diagonal") {
        const SvdTriplet t = top_singular_triplet(diag_matrix({3.0, 1.0}));
        CHECK(t.sigma == doctest::Approx(3.0));
        CHECK(std::fabs(t.u[0]) == doctest::Approx(1.0));
        CHECK(std::fabs(t.v[0]) == doctest::Approx(1.0));
    }
    SUBCASE("rank-1 outer product") {
        Matrix a(3, 2);
        const double av[3] = {2.0, 0.0, 0.0};
        const double bv[2] = {0.6, 0.8};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = av[i] * bv[j];
        const SvdTriplet t = top_singular_triplet(a);
        CHECK(t.sigma == doctest::Approx(2.0));
    }
    SUBCASE("random agrees with the dense oracle") {
        const Matrix a = random_matrix(30, 20, 5);
        const SvdResult svd = full_svd(a);
        const SvdTriplet t = top_singular_triplet(a);
        CHECK(std::fabs(t.sigma - svd.sigma.front()) <= 1e-8 * std::max(1.0, svd.sigma.front()));
    }
    SUBCASE("zero matrix") {
        const SvdTriplet t = top_singular_triplet(Matrix(4, 3));
        CHECK(t.sigma == 0.0);
    }
    SUBCASE("residual contract") {
        const Matrix a = random_matrix(12, 9, 77);
        TopSingularOptions opts;
        opts.tol = 1e-11;
        const SvdTriplet t = top_singular_triplet(a, opts);
        Vector av = matvec(a, t.v);
        vaxpy(-t.sigma, t.u, av);
        CHECK(vnorm(av) <= opts.tol * std::max(1.0, t.sigma));
    }
    SUBCASE("max_iter exhaustion carries the best iterate") {
        const Matrix a = random_matrix(20, 20, 13);
        TopSingularOptions opts;
        opts.tol = 1e-308;  // unreachable
        opts.max_iter = 8;
        CHECK_THROWS_AS(top_singular_triplet(a, opts), NoConvergence);
        try {
            top_singular_triplet(a, opts);
        } catch (const NoConvergence& e) {
            CHECK(e.best.sigma > 0.0);
            CHECK(e.best.u.size() == 20);
        }
    }
}

TEST_CASE("top_singular_triplet agrees with full_svd across shapes") {
    std::mt19937_64 shapes(321);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 1 + shapes() % 60;
        const std::size_t n = 1 + shapes() % 60;
        const Matrix a = random_matrix(m, n, 9000 + trial);
        const SvdResult svd = full_svd(a);
        const SvdTriplet t = top_singular_triplet(a);
        CHECK(std::fabs(t.sigma - svd.sigma.front()) <=
              1e-8 * std::max(1.0, svd.sigma.front()));
    }
}

TEST_CASE("max_pencil_eig") {
    SUBCASE("diagonal pencil") {
        const SymMatrix z = SymMatrix::from_matrix(diag_matrix({2.0, 2.0}));
        const SymMatrix c = SymMatrix::from_matrix(diag_matrix({1.0, 2.0}));
        CHECK(max_pencil_eig(z, c) == doctest::Approx(2.0));
    }
    SUBCASE("identity pencil equals lambda_max") {
        const SymMatrix z = random_sym(7, 31);
        CHECK(max_pencil_eig(z, SymMatrix::identity(7)) ==
              doctest::Approx(lambda_max(z)).epsilon(1e-8));
    }
    SUBCASE("random SPD pencil matches the dense congruence oracle") {
        for (int trial = 0; trial < 10; ++trial) {
            const SymMatrix z = random_sym(8, 100 + trial);
            const SymMatrix c = random_spd(8, 200 + trial);
            Eigen::MatrixXd ze(8, 8), ce(8, 8);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    ze(i, j) = z(i, j);
                    ce(i, j) = c(i, j);
                }
            Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(ze, ce);
            CHECK(max_pencil_eig(z, c) ==
                  doctest::Approx(ges.eigenvalues()(7)).epsilon(1e-8));
        }
    }
    SUBCASE("iterative backend agrees with dense") {
        const SymMatrix z = random_sym(9, 55);
        const SymMatrix c = random_spd(9, 56);
        const double dense = max_pencil_eig(z, c);
        const double iterative =
            max_pencil_eig(z, c, 1e-10, PencilBackend::IterativeLanczos);
        CHECK(std::fabs(dense - iterative) <= 1e-8 * std::max(1.0, std::fabs(dense)));
    }
    SUBCASE("singular C, Z vanishing on null(C)") {
        const SymMatrix z = SymMatrix::from_matrix(diag_matrix({1.0, 0.0}));
        const SymMatrix c = SymMatrix::from_matrix(diag_matrix({1.0, 0.0}));
        CHECK(max_pencil_eig(z, c) == doctest::Approx(1.0));
    }
    SUBCASE("singular C with positive null component is unbounded") {
        const SymMatrix z = SymMatrix::from_matrix(diag_matrix({0.0, 1.0}));
        const SymMatrix c = SymMatrix::from_matrix(diag_matrix({1.0, 0.0}));
        CHECK_THROWS_AS(max_pencil_eig(z, c), PencilUnbounded);
    }
    SUBCASE("singular C with undamped coupling is unbounded") {
        Matrix zm(2, 2);
        zm(0, 1) = zm(1, 0) = 1.0;
        const SymMatrix z = SymMatrix::from_matrix(zm);
        const SymMatrix c = SymMatrix::from_matrix(diag_matrix({1.0, 0.0}));
        CHECK_THROWS_AS(max_pencil_eig(z, c), PencilUnbounded);
    }
    SUBCASE("singular C with damped coupling stays finite") {
        // null-block component of Z strictly negative: the Schur complement
        // absorbs the coupling
        Matrix zm(2, 2);
        zm(0, 0) = 1.0;
        zm(0, 1) = zm(1, 0) = 1.0;
        zm(1, 1) = -2.0;
        const SymMatrix z = SymMatrix::from_matrix(zm);
        const SymMatrix c = SymMatrix::from_matrix(diag_matrix({1.0, 0.0}));
        // mu C - Z >= 0 iff mu >= 1 + 1/2 (Schur complement in the null block)
        CHECK(max_pencil_eig(z, c) == doctest::Approx(1.5));
    }
}

TEST_CASE("null_space_basis") {
    SUBCASE("explicit null vector") {
        const SymMatrix s = SymMatrix::from_matrix(diag_matrix({0.0, 2.0}));
        const Matrix basis = null_space_basis(s, 1e-8);
        REQUIRE(basis.cols() == 1);
        CHECK(std::fabs(basis(0, 0)) == doctest::Approx(1.0));
        CHECK(std::fabs(basis(1, 0)) <= 1e-12);
    }
    SUBCASE("zero matrix gives the full basis") {
        const Matrix basis = null_space_basis(SymMatrix(4), 1e-8);
        CHECK(basis.cols() == 4);
        const Matrix gram = matmul_tn(basis, basis);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(std::fabs(gram(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
    SUBCASE("planted two-dimensional null space") {
        // Q diag(5, 3, 1e-12, 1e-12) Q'
        const SymMatrix seed = random_sym(4, 91);
        const EigResult eig = sym_eig(seed);
        Vector lam = {5.0, 3.0, 1e-12, 1e-12};
        Matrix s(4, 4);
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    s(i, j) += eig.q(i, k) * lam[k] * eig.q(j, k);
        const SymMatrix sm = SymMatrix::from_matrix(s, 1e-9);
        const Matrix basis = null_space_basis(sm, 1e-8);
        REQUIRE(basis.cols() == 2);
        // span check via principal angles: projector difference must vanish
        Matrix planted(4, 2);
        for (std::size_t i = 0; i < 4; ++i) {
            planted(i, 0) = eig.q(i, 2);
            planted(i, 1) = eig.q(i, 3);
        }
        const Matrix overlap = matmul_tn(planted, basis);  // 2x2 rotation if spans match
        const SvdResult osvd = full_svd(overlap);
        CHECK(osvd.sigma[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(osvd.sigma[1] == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("residual bound") {
        const SymMatrix s = random_spd(6, 77, 0.0);
        const double tau = 1e-6;
        const Matrix basis = null_space_basis(s, tau);
        const double bound = 2.0 * tau * std::max(1.0, lambda_max(s)) *
                             std::sqrt(static_cast<double>(std::max<std::size_t>(basis.cols(), 1)));
        CHECK(frob_norm(matmul(s.as_matrix(), basis)) <= bound);
    }
}
