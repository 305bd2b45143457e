#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "gaugeopt/rpca.hpp"
#include "gaugeopt/sdp.hpp"

namespace gaugeopt::io {

// JSON envelope: { "schema": "gaugeopt/1", "kind": "rpca"|"sdp", "gamma"?,
// "b"?, "matrices": { name -> inline Matrix Market text or relative path } }.
// Matrix names: "M" (rpca); "C" and "A0".."A{m-1}" (sdp). A map value
// starting with "%%MatrixMarket" is inline; anything else resolves relative
// to the envelope's directory.
struct LoadedInstance {
    enum class Kind { Rpca, Sdp };
    Kind kind;
    std::optional<rpca::RpcaInstance> rpca;
    std::optional<sdp::SdpInstance> sdp;
    std::optional<Vector> sdp_y_hat;  // optional "y_hat" for normalize_C
};

LoadedInstance load_instance(const std::filesystem::path& path);

std::string serialize_rpca_instance(const rpca::RpcaInstance& instance);
std::string serialize_sdp_instance(const sdp::SdpInstance& instance);

// Solution envelopes reuse the same shape with kinds "rpca-primal" (X, Y),
// "rpca-dual" (Z), "sdp-primal" (X) and "sdp-dual" ("y" array).
std::string serialize_rpca_primal(const Matrix& x, const Matrix& y);
std::string serialize_rpca_dual(const Matrix& z);
std::string serialize_sdp_primal(const SymMatrix& x);
std::string serialize_sdp_dual(const Vector& y);

std::pair<Matrix, Matrix> load_rpca_primal(const std::filesystem::path& path);
Matrix load_rpca_dual(const std::filesystem::path& path);
SymMatrix load_sdp_primal(const std::filesystem::path& path);
Vector load_sdp_dual(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// FNV-1a over the canonical binary layout; stable across runs.
std::string instance_digest(const rpca::RpcaInstance& instance);
std::string instance_digest(const sdp::SdpInstance& instance);

}  // namespace gaugeopt::io
