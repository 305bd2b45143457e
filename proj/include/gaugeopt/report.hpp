#pragma once

#include <map>
#include <optional>
#include <string>

#include "gaugeopt/config.hpp"

namespace gaugeopt::io {

struct DualSummary {
    double objective = 0.0;
    double feasibility = 0.0;
    std::size_t iterations = 0;
    std::size_t refine_iterations = 0;
    bool refined = false;
    bool stalled = false;
    bool objective_finite = true;
    std::string status = "ok";
};

struct PrimalSummary {
    double objective = 0.0;           // gauge objective of the recovered solution
    double objective_original = 0.0;  // sdp: shifted back to the original C
    std::size_t rank = 0;             // recovered subspace dimension r
    double residual = 0.0;            // |X+Y-M| (rpca) or |A X - b| (sdp)
};

struct CertificateSummary {
    std::map<std::string, double> residuals;
    std::map<std::string, bool> flags;
    std::optional<double> product;
    std::string verdict = "WeakOnly";
    double tol = 0.0;
    bool pass = false;
};

struct Report {
    std::string schema = "gaugeopt/1";
    std::string kind;  // "rpca" | "sdp"
    std::string instance_digest;
    SolverConfig config;
    DualSummary dual;
    std::optional<PrimalSummary> primal;
    std::optional<CertificateSummary> certificate;
    std::string error;  // nonempty when a stage failed
    std::map<std::string, double> timings_ms;
};

std::string serialize_report(const Report& report);
Report parse_report(const std::string& text);

// Serialized form with the timing fields removed, for determinism checks.
std::string report_without_timings(const std::string& text);

}  // namespace gaugeopt::io
