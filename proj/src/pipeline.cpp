#include "gaugeopt/pipeline.hpp"

#include <chrono>
#include <numeric>

#include "gaugeopt/instance_io.hpp"

namespace gaugeopt::pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string verdict_name(DualityVerdict v) {
    switch (v) {
        case DualityVerdict::StrongDuality: return "StrongDuality";
        case DualityVerdict::WeakOnly: return "WeakOnly";
        case DualityVerdict::Violated: return "Violated";
    }
    return "WeakOnly";
}

io::CertificateSummary summarize(const rpca::RpcaCertificate& cert) {
    io::CertificateSummary s;
    s.residuals = {{"c1", cert.c1}, {"c2", cert.c2}, {"c3", cert.c3},
                   {"c4", cert.c4}, {"c5", cert.c5}, {"c6", cert.c6}};
    s.flags = {{"c6_exempt", cert.c6_exempt},
               {"m_zero_opt", cert.trivial.m_zero_opt},
               {"zero_m_opt", cert.trivial.zero_m_opt},
               {"degenerate", cert.duality.degenerate}};
    s.product = cert.duality.product;
    s.verdict = verdict_name(cert.duality.verdict);
    s.tol = cert.tol;
    s.pass = cert.pass;
    return s;
}

io::CertificateSummary summarize(const sdp::SdpCertificate& cert) {
    io::CertificateSummary s;
    s.residuals = {{"feas_primal", cert.feas_primal},
                   {"feas_psd", cert.feas_psd},
                   {"feas_dual", cert.feas_dual},
                   {"complementarity", cert.complementarity}};
    s.flags = {{"degenerate", cert.duality.degenerate}};
    s.product = cert.duality.product;
    s.verdict = verdict_name(cert.duality.verdict);
    s.tol = cert.tol;
    s.pass = cert.pass;
    return s;
}

}  // namespace

RpcaRun run_rpca(const rpca::RpcaInstance& instance, const SolverConfig& cfg) {
    instance.validate();
    cfg.validate();
    RpcaRun run;
    run.report.kind = "rpca";
    run.report.instance_digest = io::instance_digest(instance);
    run.report.config = cfg;

    const auto t0 = Clock::now();
    run.dual = rpca::solve_dual(instance, cfg);
    run.report.timings_ms["solve_dual"] = ms_since(t0);

    run.report.dual.objective = run.dual.objective;
    run.report.dual.feasibility = run.dual.feasibility;
    run.report.dual.iterations = run.dual.iterations;
    run.report.dual.refine_iterations = run.dual.refine_iterations;
    run.report.dual.refined = run.dual.refined;
    run.report.dual.stalled = run.dual.stalled;
    run.report.dual.status = run.dual.lanczos_warning ? "lanczos_fallback" : "ok";

    const auto t1 = Clock::now();
    Matrix x, y;
    std::size_t rank = 0;
    try {
        rpca::RpcaPrimal primal = rpca::recover_primal(instance, run.dual, cfg);
        rank = primal.u.cols();
        x = primal.x;
        y = primal.y;
        run.primal = std::move(primal);
    } catch (const NoNontrivialSolution& e) {
        const rpca::TrivialFlags flags =
            rpca::check_trivial(run.dual.z, instance.m, instance.gamma, cfg.cert_tol);
        if (flags.m_zero_opt) {
            x = instance.m;
            y = Matrix(instance.m.rows(), instance.m.cols());
        } else if (flags.zero_m_opt) {
            x = Matrix(instance.m.rows(), instance.m.cols());
            y = instance.m;
        } else {
            run.report.error = std::string("recovery failed: ") + e.what();
            run.report.timings_ms["recover_primal"] = ms_since(t1);
            run.exit_code = 2;
            return run;
        }
        run.trivial_used = true;
    }
    run.report.timings_ms["recover_primal"] = ms_since(t1);

    const auto t2 = Clock::now();
    run.certificate =
        rpca::check_optimality(instance, x, y, run.dual.z, cfg.cert_tol);
    run.report.timings_ms["check_optimality"] = ms_since(t2);

    io::PrimalSummary ps;
    ps.objective = rpca_gauge(x, y, instance.gamma).value;
    ps.objective_original = ps.objective;
    ps.rank = rank;
    ps.residual = frob_norm(x + y - instance.m);
    run.report.primal = ps;
    run.report.certificate = summarize(*run.certificate);

    if (!run.primal) {
        // keep the trivial decomposition available to callers
        rpca::RpcaPrimal primal;
        primal.x = x;
        primal.y = y;
        run.primal = std::move(primal);
    }
    run.exit_code = run.certificate->pass ? 0 : 2;
    return run;
}

SdpRun run_sdp(const sdp::SdpInstance& instance, const SolverConfig& cfg) {
    instance.validate();
    cfg.validate();
    SdpRun run;
    run.report.kind = "sdp";
    run.report.instance_digest = io::instance_digest(instance);
    run.report.config = cfg;

    const auto t0 = Clock::now();
    run.dual = sdp::solve_dual(instance, cfg);
    run.report.timings_ms["solve_dual"] = ms_since(t0);

    run.report.dual.objective = run.dual.mu;
    run.report.dual.feasibility = run.dual.feasibility;
    run.report.dual.iterations = run.dual.iterations;
    run.report.dual.refine_iterations = run.dual.refine_iterations;
    run.report.dual.refined = run.dual.refined;
    run.report.dual.stalled = run.dual.stalled;
    run.report.dual.objective_finite = run.dual.mu_finite;
    run.report.dual.status = run.dual.status == sdp::DualStatus::Ok
                                 ? "ok"
                                 : "essentially_infeasible_region";

    if (run.dual.status != sdp::DualStatus::Ok || !run.dual.mu_finite) {
        run.report.error = "dual solve ended in an essentially infeasible region";
        run.exit_code = 2;
        return run;
    }

    const auto t1 = Clock::now();
    try {
        run.primal = sdp::recover_primal(instance, run.dual, cfg);
    } catch (const EmptyNullSpace& e) {
        run.report.error = std::string("recovery failed: ") + e.what();
        run.report.timings_ms["recover_primal"] = ms_since(t1);
        run.exit_code = 2;
        return run;
    }
    run.report.timings_ms["recover_primal"] = ms_since(t1);

    const auto t2 = Clock::now();
    run.certificate = sdp::check_optimality(instance, run.primal->x, run.dual.y, cfg.cert_tol);
    run.report.timings_ms["check_optimality"] = ms_since(t2);

    io::PrimalSummary ps;
    ps.objective = dot(instance.c, run.primal->x);
    ps.objective_original = ps.objective + instance.objective_shift;
    ps.rank = run.primal->u2.cols();
    ps.residual = run.primal->residual;
    run.report.primal = ps;
    run.report.certificate = summarize(*run.certificate);
    run.exit_code = run.certificate->pass ? 0 : 2;
    return run;
}

}  // namespace gaugeopt::pipeline
