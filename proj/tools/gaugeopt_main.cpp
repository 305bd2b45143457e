#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "gaugeopt/instance_io.hpp"
#include "gaugeopt/mmio.hpp"
#include "gaugeopt/oracles.hpp"
#include "gaugeopt/pipeline.hpp"

namespace fs = std::filesystem;
using namespace gaugeopt;

namespace {

struct SolveOptions {
    std::vector<std::string> inputs;
    std::string report_path;
    std::string report_dir;
    std::string primal_out;
    std::string dual_out;
    std::string step = "sqrt";
    unsigned jobs = 1;
    bool no_refine = false;
    SolverConfig cfg;
};

void add_solver_flags(CLI::App* cmd, SolveOptions& opt) {
    cmd->add_option("--input", opt.inputs, "instance file(s)")->required();
    cmd->add_option("--report", opt.report_path, "report JSON path (single input)");
    cmd->add_option("--report-dir", opt.report_dir, "directory for per-input reports");
    cmd->add_option("--primal-out", opt.primal_out, "recovered primal solution path");
    cmd->add_option("--dual-out", opt.dual_out, "dual solution path");
    cmd->add_option("--max-iter", opt.cfg.max_iter, "subgradient iteration cap");
    cmd->add_option("--rel-tol", opt.cfg.rel_tol, "solver accuracy target");
    cmd->add_option("--window", opt.cfg.window, "stall-detection window");
    cmd->add_option("--step", opt.step, "step rule: sqrt | polyak:TARGET");
    cmd->add_option("--seed", opt.cfg.seed, "rng seed");
    cmd->add_option("--tau-mult", opt.cfg.tau_mult, "singular value multiplicity threshold");
    cmd->add_option("--tau-null", opt.cfg.tau_null, "null-space eigenvalue threshold");
    cmd->add_option("--admm-beta", opt.cfg.admm_beta, "recovery ADMM penalty");
    cmd->add_option("--admm-tol", opt.cfg.admm_tol, "recovery ADMM residual target");
    cmd->add_option("--sdls-tol", opt.cfg.sdls_tol, "semidefinite least-squares residual target");
    cmd->add_option("--cond6-tol", opt.cfg.cond6_tol, "max-norm/spectral alignment guard");
    cmd->add_option("--cert-tol", opt.cfg.cert_tol, "certificate pass tolerance");
    cmd->add_flag("--no-refine", opt.no_refine, "skip the splitting refinement stage");
    cmd->add_option("--jobs", opt.jobs, "worker threads for multiple inputs");
}

SolverConfig finalize_config(SolveOptions& opt) {
    SolverConfig cfg = opt.cfg;
    cfg.refine = !opt.no_refine;
    if (opt.step == "sqrt") {
        cfg.step_rule = StepRule::sqrt_rule();
    } else if (opt.step.rfind("polyak:", 0) == 0) {
        cfg.step_rule = StepRule::polyak(std::stod(opt.step.substr(7)));
    } else {
        throw InvalidInput("--step must be 'sqrt' or 'polyak:TARGET'");
    }
    cfg.validate();
    return cfg;
}

int solve_one(const std::string& input, const SolveOptions& opt, const SolverConfig& cfg,
              bool want_rpca, const std::string& report_path) {
    const io::LoadedInstance loaded = io::load_instance(input);
    io::Report report;
    int code = 2;

    if (want_rpca) {
        if (loaded.kind != io::LoadedInstance::Kind::Rpca)
            throw InvalidInput(input + ": expected an rpca instance");
        pipeline::RpcaRun run = pipeline::run_rpca(*loaded.rpca, cfg);
        report = run.report;
        code = run.exit_code;
        if (!opt.primal_out.empty() && run.primal)
            io::write_text_file(opt.primal_out,
                                io::serialize_rpca_primal(run.primal->x, run.primal->y));
        if (!opt.dual_out.empty())
            io::write_text_file(opt.dual_out, io::serialize_rpca_dual(run.dual.z));
    } else {
        if (loaded.kind != io::LoadedInstance::Kind::Sdp)
            throw InvalidInput(input + ": expected an sdp instance");
        sdp::SdpInstance instance = *loaded.sdp;
        if (loaded.sdp_y_hat) instance = sdp::normalize_C(instance, *loaded.sdp_y_hat);
        pipeline::SdpRun run = pipeline::run_sdp(instance, cfg);
        report = run.report;
        code = run.exit_code;
        if (!opt.primal_out.empty() && run.primal)
            io::write_text_file(opt.primal_out, io::serialize_sdp_primal(run.primal->x));
        if (!opt.dual_out.empty())
            io::write_text_file(opt.dual_out, io::serialize_sdp_dual(run.dual.y));
    }

    if (!report_path.empty())
        io::write_text_file(report_path, io::serialize_report(report));
    return code;
}

int cmd_solve(SolveOptions& opt, bool want_rpca) {
    const SolverConfig cfg = finalize_config(opt);
    if (opt.inputs.size() > 1 && !opt.report_path.empty())
        throw InvalidInput("--report needs a single --input; use --report-dir");
    if (opt.inputs.size() > 1 && (!opt.primal_out.empty() || !opt.dual_out.empty()))
        throw InvalidInput("--primal-out/--dual-out need a single --input");

    auto report_path_for = [&](const std::string& input) -> std::string {
        if (!opt.report_path.empty()) return opt.report_path;
        if (!opt.report_dir.empty()) {
            fs::create_directories(opt.report_dir);
            return (fs::path(opt.report_dir) / (fs::path(input).stem().string() + ".report.json"))
                .string();
        }
        return "";
    };

    if (opt.inputs.size() == 1 || opt.jobs <= 1) {
        int worst = 0;
        for (const std::string& input : opt.inputs)
            worst = std::max(worst, solve_one(input, opt, cfg, want_rpca, report_path_for(input)));
        return worst;
    }

    // shard independent instances across worker threads
    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{0};
    std::mutex err_mutex;
    std::vector<std::string> errors;
    const unsigned workers = std::min<unsigned>(opt.jobs, opt.inputs.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= opt.inputs.size()) return;
                try {
                    const int code =
                        solve_one(opt.inputs[i], opt, cfg, want_rpca, report_path_for(opt.inputs[i]));
                    int cur = worst.load();
                    while (code > cur && !worst.compare_exchange_weak(cur, code)) {}
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    errors.emplace_back(opt.inputs[i] + ": " + e.what());
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::string& e : errors) std::cerr << "error: " << e << "\n";
    if (!errors.empty()) return 1;
    return worst.load();
}

int cmd_check(const std::string& instance_path, const std::string& primal_path,
              const std::string& dual_path, double tol) {
    const io::LoadedInstance loaded = io::load_instance(instance_path);
    if (loaded.kind == io::LoadedInstance::Kind::Rpca) {
        const auto [x, y] = io::load_rpca_primal(primal_path);
        const Matrix z = io::load_rpca_dual(dual_path);
        const rpca::RpcaCertificate cert =
            rpca::check_optimality(*loaded.rpca, x, y, z, tol);
        std::cout << "c1 (X+Y=M)            " << cert.c1 << "\n"
                  << "c2 (<M,Z>=1)          " << cert.c2 << "\n"
                  << "c3 (l1 alignment)     " << cert.c3 << "\n"
                  << "c4 (spectral compl.)  " << cert.c4 << "\n"
                  << "c5 (simultaneous SVD) " << cert.c5 << "\n"
                  << "c6 (norm balance)     " << cert.c6
                  << (cert.c6_exempt ? "  [exempt]" : "") << "\n";
        if (cert.duality.product)
            std::cout << "duality product       " << *cert.duality.product << "\n";
        std::cout << (cert.pass ? "PASS" : "FAIL") << "\n";
        return cert.pass ? 0 : 2;
    }
    const SymMatrix x = io::load_sdp_primal(primal_path);
    const Vector y = io::load_sdp_dual(dual_path);
    const sdp::SdpCertificate cert = sdp::check_optimality(*loaded.sdp, x, y, tol);
    std::cout << "feas_primal       " << cert.feas_primal << "\n"
              << "feas_psd          " << cert.feas_psd << "\n"
              << "feas_dual         " << cert.feas_dual << "\n"
              << "complementarity   " << cert.complementarity << "\n";
    if (cert.duality.product)
        std::cout << "duality product   " << *cert.duality.product << "\n";
    std::cout << (cert.pass ? "PASS" : "FAIL") << "\n";
    return cert.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gaugeopt: robust PCA and SDP through their gauge duals"};
    app.require_subcommand(1);

    SolveOptions rpca_opt, sdp_opt;
    CLI::App* solve_rpca = app.add_subcommand("solve-rpca", "solve a robust PCA instance");
    add_solver_flags(solve_rpca, rpca_opt);
    CLI::App* solve_sdp = app.add_subcommand("solve-sdp", "solve a standard-form SDP instance");
    add_solver_flags(solve_sdp, sdp_opt);

    CLI::App* gen = app.add_subcommand("gen", "generate planted instances");
    gen->require_subcommand(1);

    std::size_t gm = 10, gn = 10, grank = 1;
    double gdensity = 0.05, gmagnitude = 1.0;
    std::uint64_t gseed = 0;
    std::string gout = "instance.json";
    CLI::App* gen_rpca_cmd = gen->add_subcommand("rpca", "low-rank plus sparse instance");
    gen_rpca_cmd->add_option("--m", gm, "rows");
    gen_rpca_cmd->add_option("--n", gn, "cols");
    gen_rpca_cmd->add_option("--rank", grank, "planted rank");
    gen_rpca_cmd->add_option("--density", gdensity, "sparse support density");
    gen_rpca_cmd->add_option("--magnitude", gmagnitude, "sparse entry magnitude");
    gen_rpca_cmd->add_option("--seed", gseed, "rng seed");
    gen_rpca_cmd->add_option("--out", gout, "output instance path");

    std::size_t sn = 8, sm = 6;
    std::uint64_t sseed = 0;
    std::string sout = "instance.json";
    CLI::App* gen_sdp_cmd = gen->add_subcommand("sdp", "Slater-satisfying SDP instance");
    gen_sdp_cmd->add_option("--n", sn, "matrix order");
    gen_sdp_cmd->add_option("--m", sm, "constraint count");
    gen_sdp_cmd->add_option("--seed", sseed, "rng seed");
    gen_sdp_cmd->add_option("--out", sout, "output instance path");

    std::string check_instance, check_primal, check_dual;
    double check_tol = 1e-3;
    CLI::App* check = app.add_subcommand("check", "certify a primal/dual pair");
    check->add_option("--instance", check_instance, "instance file")->required();
    check->add_option("--primal", check_primal, "primal solution file")->required();
    check->add_option("--dual", check_dual, "dual solution file")->required();
    check->add_option("--tol", check_tol, "pass tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_rpca->parsed()) return cmd_solve(rpca_opt, /*want_rpca=*/true);
        if (solve_sdp->parsed()) return cmd_solve(sdp_opt, /*want_rpca=*/false);
        if (gen_rpca_cmd->parsed()) {
            const oracles::PlantedRpca planted =
                oracles::gen_rpca(gm, gn, grank, gdensity, gmagnitude, gseed);
            io::write_text_file(gout, io::serialize_rpca_instance(planted.instance));
            nlohmann::json sidecar;
            sidecar["schema"] = "gaugeopt/1";
            sidecar["kind"] = "rpca-planted";
            sidecar["seed"] = planted.seed;
            sidecar["matrices"]["L_true"] = io::write_matrix_market(planted.l_true);
            sidecar["matrices"]["S_true"] = io::write_matrix_market(planted.s_true);
            io::write_text_file(gout + ".planted.json", sidecar.dump(2) + "\n");
            return 0;
        }
        if (gen_sdp_cmd->parsed()) {
            const oracles::PlantedSdp planted = oracles::gen_sdp(sn, sm, sseed);
            io::write_text_file(sout, io::serialize_sdp_instance(planted.instance));
            nlohmann::json sidecar;
            sidecar["schema"] = "gaugeopt/1";
            sidecar["kind"] = "sdp-planted";
            sidecar["seed"] = planted.seed;
            sidecar["matrices"]["X_strict"] = io::write_matrix_market(planted.x_strict.as_matrix());
            io::write_text_file(sout + ".planted.json", sidecar.dump(2) + "\n");
            return 0;
        }
        if (check->parsed()) return cmd_check(check_instance, check_primal, check_dual, check_tol);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
