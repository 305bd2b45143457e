#include "gaugeopt/report.hpp"

#include <json.hpp>

#include "gaugeopt/errors.hpp"

namespace gaugeopt::io {

using nlohmann::json;

namespace {

json config_to_json(const SolverConfig& c) {
    json j;
    j["max_iter"] = c.max_iter;
    j["rel_tol"] = c.rel_tol;
    j["window"] = c.window;
    if (c.step_rule.kind == StepKind::Sqrt) {
        j["step_rule"] = {{"kind", "sqrt"}};
    } else {
        j["step_rule"] = {{"kind", "polyak"}, {"target", c.step_rule.target}};
    }
    j["tau_mult"] = c.tau_mult;
    j["tau_null"] = c.tau_null;
    j["admm_beta"] = c.admm_beta;
    j["admm_tol"] = c.admm_tol;
    j["admm_max_iter"] = c.admm_max_iter;
    j["sdls_tol"] = c.sdls_tol;
    j["cond6_tol"] = c.cond6_tol;
    j["seed"] = c.seed;
    j["refine"] = c.refine;
    j["refine_max_iter"] = c.refine_max_iter;
    j["cert_tol"] = c.cert_tol;
    return j;
}

SolverConfig config_from_json(const json& j) {
    SolverConfig c;
    c.max_iter = j.at("max_iter").get<std::size_t>();
    c.rel_tol = j.at("rel_tol").get<double>();
    c.window = j.at("window").get<std::size_t>();
    const json& sr = j.at("step_rule");
    if (sr.at("kind").get<std::string>() == "polyak")
        c.step_rule = StepRule::polyak(sr.at("target").get<double>());
    else
        c.step_rule = StepRule::sqrt_rule();
    c.tau_mult = j.at("tau_mult").get<double>();
    c.tau_null = j.at("tau_null").get<double>();
    c.admm_beta = j.at("admm_beta").get<double>();
    c.admm_tol = j.at("admm_tol").get<double>();
    c.admm_max_iter = j.at("admm_max_iter").get<std::size_t>();
    c.sdls_tol = j.at("sdls_tol").get<double>();
    c.cond6_tol = j.at("cond6_tol").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.refine = j.at("refine").get<bool>();
    c.refine_max_iter = j.at("refine_max_iter").get<std::size_t>();
    c.cert_tol = j.at("cert_tol").get<double>();
    return c;
}

json report_to_json(const Report& r) {
    json j;
    j["schema"] = r.schema;
    j["kind"] = r.kind;
    j["instance_digest"] = r.instance_digest;
    j["config"] = config_to_json(r.config);
    j["dual"] = {{"objective", r.dual.objective},
                 {"feasibility", r.dual.feasibility},
                 {"iterations", r.dual.iterations},
                 {"refine_iterations", r.dual.refine_iterations},
                 {"refined", r.dual.refined},
                 {"stalled", r.dual.stalled},
                 {"objective_finite", r.dual.objective_finite},
                 {"status", r.dual.status}};
    if (r.primal) {
        j["primal"] = {{"objective", r.primal->objective},
                       {"objective_original", r.primal->objective_original},
                       {"rank", r.primal->rank},
                       {"residual", r.primal->residual}};
    }
    if (r.certificate) {
        json c;
        c["residuals"] = r.certificate->residuals;
        c["flags"] = r.certificate->flags;
        if (r.certificate->product)
            c["product"] = *r.certificate->product;
        c["verdict"] = r.certificate->verdict;
        c["tol"] = r.certificate->tol;
        c["pass"] = r.certificate->pass;
        j["certificate"] = c;
    }
    if (!r.error.empty()) j["error"] = r.error;
    j["timings_ms"] = r.timings_ms;
    return j;
}

Report report_from_json(const json& j) {
    Report r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != "gaugeopt/1")
        throw ParseError("report: unsupported schema '" + r.schema + "'");
    r.kind = j.at("kind").get<std::string>();
    r.instance_digest = j.at("instance_digest").get<std::string>();
    r.config = config_from_json(j.at("config"));
    const json& d = j.at("dual");
    r.dual.objective = d.at("objective").get<double>();
    r.dual.feasibility = d.at("feasibility").get<double>();
    r.dual.iterations = d.at("iterations").get<std::size_t>();
    r.dual.refine_iterations = d.at("refine_iterations").get<std::size_t>();
    r.dual.refined = d.at("refined").get<bool>();
    r.dual.stalled = d.at("stalled").get<bool>();
    r.dual.objective_finite = d.at("objective_finite").get<bool>();
    r.dual.status = d.at("status").get<std::string>();
    if (j.contains("primal")) {
        PrimalSummary p;
        p.objective = j["primal"].at("objective").get<double>();
        p.objective_original = j["primal"].at("objective_original").get<double>();
        p.rank = j["primal"].at("rank").get<std::size_t>();
        p.residual = j["primal"].at("residual").get<double>();
        r.primal = p;
    }
    if (j.contains("certificate")) {
        CertificateSummary c;
        const json& cj = j["certificate"];
        c.residuals = cj.at("residuals").get<std::map<std::string, double>>();
        c.flags = cj.at("flags").get<std::map<std::string, bool>>();
        if (cj.contains("product")) c.product = cj.at("product").get<double>();
        c.verdict = cj.at("verdict").get<std::string>();
        c.tol = cj.at("tol").get<double>();
        c.pass = cj.at("pass").get<bool>();
        r.certificate = c;
    }
    r.error = j.value("error", "");
    r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    return r;
}

}  // namespace

std::string serialize_report(const Report& report) { return report_to_json(report).dump(2) + "\n"; }

Report parse_report(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError("report: malformed JSON");
    return report_from_json(doc);
}

std::string report_without_timings(const std::string& text) {
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError("report: malformed JSON");
    doc.erase("timings_ms");
    return doc.dump(2) + "\n";
}

}  // namespace gaugeopt::io
