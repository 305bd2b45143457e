#include "gaugeopt/instance_io.hpp"

#include <json.hpp>

#include <cstring>
#include <fstream>

#include "gaugeopt/mmio.hpp"

namespace gaugeopt::io {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "gaugeopt/1";

bool is_inline_mm(const std::string& value) { return value.rfind("%%MatrixMarket", 0) == 0; }

std::string fetch_matrix_text(const json& matrices, const std::string& name,
                              const std::filesystem::path& base_dir) {
    if (!matrices.contains(name))
        throw ParseError("instance: missing matrix '" + name + "'");
    const std::string value = matrices.at(name).get<std::string>();
    if (is_inline_mm(value)) return value;
    return read_text_file(base_dir / value);
}

json parse_envelope(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ParseError(path.string() + ": malformed JSON");
    if (!doc.is_object()) throw ParseError(path.string() + ": envelope must be an object");
    return doc;
}

SymMatrix parse_sym(const Matrix& raw, const std::string& name) {
    try {
        return SymMatrix::from_matrix(raw, 1e-12);
    } catch (const InvalidInput&) {
        throw InvalidInput("instance: matrix '" + name + "' must be symmetric");
    }
}

class Fnv1a {
public:
    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ ^= b[i];
            hash_ *= 1099511628211ULL;
        }
    }
    void value(double v) { bytes(&v, sizeof(v)); }
    void value(std::uint64_t v) { bytes(&v, sizeof(v)); }
    std::string hex() const {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
        return buf;
    }

private:
    std::uint64_t hash_ = 1469598103934665603ULL;
};

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw ParseError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

LoadedInstance load_instance(const std::filesystem::path& path) {
    const json doc = parse_envelope(path);
    const auto base_dir = path.has_parent_path() ? path.parent_path()
                                                 : std::filesystem::path(".");
    if (!doc.contains("kind")) throw ParseError(path.string() + ": missing 'kind'");
    const std::string kind = doc.at("kind").get<std::string>();
    const json matrices = doc.value("matrices", json::object());

    LoadedInstance out;
    if (kind == "rpca") {
        out.kind = LoadedInstance::Kind::Rpca;
        rpca::RpcaInstance inst;
        inst.m = read_matrix_market(fetch_matrix_text(matrices, "M", base_dir));
        if (!doc.contains("gamma")) throw ParseError(path.string() + ": rpca needs 'gamma'");
        inst.gamma = doc.at("gamma").get<double>();
        inst.validate();
        out.rpca = std::move(inst);
    } else if (kind == "sdp") {
        out.kind = LoadedInstance::Kind::Sdp;
        sdp::SdpInstance inst;
        if (!doc.contains("b")) throw ParseError(path.string() + ": sdp needs 'b'");
        inst.b = doc.at("b").get<Vector>();
        inst.c = parse_sym(read_matrix_market(fetch_matrix_text(matrices, "C", base_dir)), "C");
        inst.a.reserve(inst.b.size());
        for (std::size_t i = 0; i < inst.b.size(); ++i) {
            const std::string name = "A" + std::to_string(i);
            inst.a.push_back(
                parse_sym(read_matrix_market(fetch_matrix_text(matrices, name, base_dir)), name));
        }
        inst.objective_shift = doc.value("objective_shift", 0.0);
        inst.validate();
        if (doc.contains("y_hat")) out.sdp_y_hat = doc.at("y_hat").get<Vector>();
        out.sdp = std::move(inst);
    } else {
        throw ParseError(path.string() + ": unknown kind '" + kind + "'");
    }
    return out;
}

std::string serialize_rpca_instance(const rpca::RpcaInstance& instance) {
    json doc;
    doc["schema"] = kSchema;
    doc["kind"] = "rpca";
    doc["gamma"] = instance.gamma;
    doc["matrices"]["M"] = write_matrix_market(instance.m);
    return doc.dump(2) + "\n";
}

std::string serialize_sdp_instance(const sdp::SdpInstance& instance) {
    json doc;
    doc["schema"] = kSchema;
    doc["kind"] = "sdp";
    doc["b"] = instance.b;
    if (instance.objective_shift != 0.0) doc["objective_shift"] = instance.objective_shift;
    doc["matrices"]["C"] = write_matrix_market(instance.c.as_matrix());
    for (std::size_t i = 0; i < instance.a.size(); ++i)
        doc["matrices"]["A" + std::to_string(i)] = write_matrix_market(instance.a[i].as_matrix());
    return doc.dump(2) + "\n";
}

std::string serialize_rpca_primal(const Matrix& x, const Matrix& y) {
    json doc;
    doc["schema"] = kSchema;
    doc["kind"] = "rpca-primal";
    doc["matrices"]["X"] = write_matrix_market(x);
    doc["matrices"]["Y"] = write_matrix_market(y);
    return doc.dump(2) + "\n";
}

std::string serialize_rpca_dual(const Matrix& z) {
    json doc;
    doc["schema"] = kSchema;
    doc["kind"] = "rpca-dual";
    doc["matrices"]["Z"] = write_matrix_market(z);
    return doc.dump(2) + "\n";
}

std::string serialize_sdp_primal(const SymMatrix& x) {
    json doc;
    doc["schema"] = kSchema;
    doc["kind"] = "sdp-primal";
    doc["matrices"]["X"] = write_matrix_market(x.as_matrix());
    return doc.dump(2) + "\n";
}

std::string serialize_sdp_dual(const Vector& y) {
    json doc;
    doc["schema"] = kSchema;
    doc["kind"] = "sdp-dual";
    doc["y"] = y;
    return doc.dump(2) + "\n";
}

namespace {

json load_solution(const std::filesystem::path& path, const char* want_kind) {
    const json doc = parse_envelope(path);
    const std::string kind = doc.value("kind", "");
    if (kind != want_kind)
        throw ParseError(path.string() + ": expected kind '" + want_kind + "', got '" + kind + "'");
    return doc;
}

Matrix solution_matrix(const json& doc, const std::filesystem::path& path,
                       const std::string& name) {
    const json matrices = doc.value("matrices", json::object());
    const auto base_dir = path.has_parent_path() ? path.parent_path()
                                                 : std::filesystem::path(".");
    return read_matrix_market(fetch_matrix_text(matrices, name, base_dir));
}

}  // namespace

std::pair<Matrix, Matrix> load_rpca_primal(const std::filesystem::path& path) {
    const json doc = load_solution(path, "rpca-primal");
    return {solution_matrix(doc, path, "X"), solution_matrix(doc, path, "Y")};
}

Matrix load_rpca_dual(const std::filesystem::path& path) {
    const json doc = load_solution(path, "rpca-dual");
    return solution_matrix(doc, path, "Z");
}

SymMatrix load_sdp_primal(const std::filesystem::path& path) {
    const json doc = load_solution(path, "sdp-primal");
    return parse_sym(solution_matrix(doc, path, "X"), "X");
}

Vector load_sdp_dual(const std::filesystem::path& path) {
    const json doc = load_solution(path, "sdp-dual");
    if (!doc.contains("y")) throw ParseError(path.string() + ": missing 'y'");
    return doc.at("y").get<Vector>();
}

std::string instance_digest(const rpca::RpcaInstance& instance) {
    Fnv1a h;
    h.value(std::uint64_t{1});
    h.value(static_cast<std::uint64_t>(instance.m.rows()));
    h.value(static_cast<std::uint64_t>(instance.m.cols()));
    h.value(instance.gamma);
    h.bytes(instance.m.data(), instance.m.size() * sizeof(double));
    return h.hex();
}

std::string instance_digest(const sdp::SdpInstance& instance) {
    Fnv1a h;
    h.value(std::uint64_t{2});
    h.value(static_cast<std::uint64_t>(instance.order()));
    h.value(static_cast<std::uint64_t>(instance.num_constraints()));
    h.bytes(instance.b.data(), instance.b.size() * sizeof(double));
    h.bytes(instance.c.data(), instance.c.size() * sizeof(double));
    for (const SymMatrix& ai : instance.a) h.bytes(ai.data(), ai.size() * sizeof(double));
    h.value(instance.objective_shift);
    return h.hex();
}

}  // namespace gaugeopt::io
