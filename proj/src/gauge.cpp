#include "gaugeopt/gauge.hpp"

#include <cmath>
#include <numeric>

namespace gaugeopt {

GaugeValue rpca_gauge(const Matrix& x, const Matrix& y, double gamma) {
    if (!x.same_shape(y)) throw InvalidInput("rpca_gauge: X and Y shapes differ");
    if (!(gamma > 0.0)) throw InvalidInput("rpca_gauge: gamma must be positive");
    const SvdResult svd = full_svd(x);
    const double nuclear = std::accumulate(svd.sigma.begin(), svd.sigma.end(), 0.0);
    return GaugeValue::finite(nuclear + gamma * sum_abs(y));
}

GaugeValue rpca_polar(const Matrix& u, const Matrix& v, double gamma) {
    if (!(gamma > 0.0)) throw InvalidInput("rpca_polar: gamma must be positive");
    double spectral = 0.0;
    if (u.size() > 0) {
        const SvdResult svd = full_svd(u);
        spectral = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    }
    return GaugeValue::finite(std::max(spectral, abs_max(v) / gamma));
}

GaugeValue sdp_gauge(const SymMatrix& x, const SymMatrix& c, double tol_psd) {
    if (x.order() != c.order()) throw InvalidInput("sdp_gauge: order mismatch");
    const double lmin = lambda_min(x);
    const double lmax = lambda_max(x);
    if (lmin < -tol_psd * std::max(1.0, lmax)) return GaugeValue::infinity();
    return GaugeValue::finite(dot(x, c));
}

GaugeValue sdp_polar(const SymMatrix& z, const SymMatrix& c, double tol) {
    if (z.order() != c.order()) throw InvalidInput("sdp_polar: order mismatch");
    // mu_y = 0 when A'y <= 0: the supremum is attained at Z_y = 0
    const double zmax = lambda_max(z);
    if (zmax <= 0.0) return GaugeValue::finite(0.0);
    try {
        return GaugeValue::finite(std::max(max_pencil_eig(z, c, tol), 0.0));
    } catch (const PencilUnbounded&) {
        return GaugeValue::infinity();
    }
}

DualityCertificate duality_certificate(GaugeValue primal, GaugeValue dual, double tol) {
    DualityCertificate cert;
    cert.primal_value = primal;
    cert.dual_value = dual;
    cert.tol = tol;
    if (!primal.is_finite() || !dual.is_finite() || primal.value <= 0.0 || dual.value <= 0.0) {
        cert.verdict = DualityVerdict::WeakOnly;
        cert.degenerate = true;
        return cert;
    }
    const double product = primal.value * dual.value;
    cert.product = product;
    if (std::fabs(product - 1.0) <= tol)
        cert.verdict = DualityVerdict::StrongDuality;
    else if (product < 1.0 - tol)
        cert.verdict = DualityVerdict::Violated;
    else
        cert.verdict = DualityVerdict::WeakOnly;
    return cert;
}

}  // namespace gaugeopt
