#include <Eigen/Dense>

#include "gaugeopt/linalg.hpp"

namespace gaugeopt {

namespace {

using EMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EMap = Eigen::Map<const EMatrix>;

Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
    return out;
}

}  // namespace

SvdResult full_svd(const Matrix& a) {
    if (!a.all_finite()) throw InvalidInput("full_svd: input has non-finite entries");
    const EMap ea(a.data(), static_cast<Eigen::Index>(a.rows()),
                  static_cast<Eigen::Index>(a.cols()));
    SvdResult out;
    // BDC is faster for larger blocks; Jacobi is the accurate small-case choice.
    if (std::min(a.rows(), a.cols()) >= 32) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(ea, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.u = from_eigen(svd.matrixU());
        out.v = from_eigen(svd.matrixV());
        out.sigma.assign(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(ea, Eigen::ComputeThinU | Eigen::ComputeThinV);
        out.u = from_eigen(svd.matrixU());
        out.v = from_eigen(svd.matrixV());
        out.sigma.assign(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
    }
    return out;
}

EigResult sym_eig(const SymMatrix& s) {
    if (!s.as_matrix().all_finite()) throw InvalidInput("sym_eig: input has non-finite entries");
    const EMap es(s.data(), static_cast<Eigen::Index>(s.order()),
                  static_cast<Eigen::Index>(s.order()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(es);
    if (eig.info() != Eigen::Success) throw InvalidInput("sym_eig: eigensolver failed");
    const Eigen::Index n = es.rows();
    EigResult out;
    out.q = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    out.lambda.resize(static_cast<std::size_t>(n));
    // Eigen returns ascending eigenvalues; flip to nonincreasing.
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;
        out.lambda[static_cast<std::size_t>(k)] = eig.eigenvalues()(src);
        for (Eigen::Index i = 0; i < n; ++i)
            out.q(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
                eig.eigenvectors()(i, src);
    }
    return out;
}

double lambda_max(const SymMatrix& s) {
    const EMap es(s.data(), static_cast<Eigen::Index>(s.order()),
                  static_cast<Eigen::Index>(s.order()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(es, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(es.rows() - 1);
}

double lambda_min(const SymMatrix& s) {
    const EMap es(s.data(), static_cast<Eigen::Index>(s.order()),
                  static_cast<Eigen::Index>(s.order()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(es, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

SymMatrix psd_project(const SymMatrix& s) {
    const EigResult eig = sym_eig(s);
    const std::size_t n = s.order();
    Matrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = std::max(eig.lambda[k], 0.0);
        if (lam == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double qik = eig.q(i, k) * lam;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += qik * eig.q(j, k);
        }
    }
    // exact symmetry despite accumulated rounding
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = v;
            out(j, i) = v;
        }
    return SymMatrix::from_matrix_unchecked(std::move(out));
}

Matrix null_space_basis(const SymMatrix& s, double tau_null) {
    const EigResult eig = sym_eig(s);
    const std::size_t n = s.order();
    const double lmax = eig.lambda.empty() ? 0.0 : eig.lambda.front();
    const double thresh = tau_null * std::max(1.0, lmax);
    std::size_t r = 0;
    for (double lam : eig.lambda)
        if (lam <= thresh) ++r;
    Matrix basis(n, r);
    // eigenvalues are nonincreasing, so the null candidates sit at the tail
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < n; ++i) basis(i, k) = eig.q(i, n - r + k);
    return basis;
}

}  // namespace gaugeopt
