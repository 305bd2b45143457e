#pragma once

#include <optional>

#include "gaugeopt/oracles.hpp"
#include "gaugeopt/report.hpp"
#include "gaugeopt/rpca.hpp"
#include "gaugeopt/sdp.hpp"

namespace gaugeopt::pipeline {

// Full dual-solve -> recovery -> certification run. Exit codes: 0 certificate
// passed, 2 certified weak / degenerate outcome, 1 reserved for hard errors
// (thrown, not returned).
struct RpcaRun {
    rpca::RpcaDualState dual;
    std::optional<rpca::RpcaPrimal> primal;
    std::optional<rpca::RpcaCertificate> certificate;
    bool trivial_used = false;
    io::Report report;
    int exit_code = 2;
};

struct SdpRun {
    sdp::SdpDualState dual;
    std::optional<sdp::SdpPrimal> primal;
    std::optional<sdp::SdpCertificate> certificate;
    io::Report report;
    int exit_code = 2;
};

RpcaRun run_rpca(const rpca::RpcaInstance& instance, const SolverConfig& cfg);
SdpRun run_sdp(const sdp::SdpInstance& instance, const SolverConfig& cfg);

}  // namespace gaugeopt::pipeline
