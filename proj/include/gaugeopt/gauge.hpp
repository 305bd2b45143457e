#pragma once

#include <optional>

#include "gaugeopt/linalg.hpp"
#include "gaugeopt/types.hpp"

namespace gaugeopt {

// Nonnegative extended value; +infinity is an explicit flag, never a sentinel
// float ("essentially infeasible" is a first-class outcome).
struct GaugeValue {
    double value = 0.0;
    bool infinite = false;

    static GaugeValue finite(double v) { return {v, false}; }
    static GaugeValue infinity() { return {0.0, true}; }
    bool is_finite() const { return !infinite; }
};

enum class DualityVerdict { StrongDuality, WeakOnly, Violated };

struct DualityCertificate {
    GaugeValue primal_value;
    GaugeValue dual_value;
    std::optional<double> product;  // unset when either value is infinite or zero
    double tol = 0.0;
    DualityVerdict verdict = DualityVerdict::WeakOnly;
    bool degenerate = false;  // infinite or zero inputs
};

// ||X||_* + gamma * ||Y||_1 (shapes must match, gamma > 0)
GaugeValue rpca_gauge(const Matrix& x, const Matrix& y, double gamma);

// max(||U||_2, ||V||_inf / gamma), dense spectral-norm route
GaugeValue rpca_polar(const Matrix& u, const Matrix& v, double gamma);

// <C, X> if X is PSD within a relative band, +infinity otherwise
GaugeValue sdp_gauge(const SymMatrix& x, const SymMatrix& c, double tol_psd = 1e-8);

// inf{ mu >= 0 : mu*C - Z >= 0 }; +infinity when the pencil is unbounded
GaugeValue sdp_polar(const SymMatrix& z, const SymMatrix& c, double tol = 1e-10);

DualityCertificate duality_certificate(GaugeValue primal, GaugeValue dual, double tol);

}  // namespace gaugeopt
