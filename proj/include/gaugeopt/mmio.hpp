#pragma once

#include <string>

#include "gaugeopt/types.hpp"

namespace gaugeopt::io {

// Matrix Market 1.0 serialization: array format, real, general,
// column-oriented entry order, 17 significant digits (lossless round trip).
std::string write_matrix_market(const Matrix& a);

// Reads array and coordinate formats, real/integer fields, general and
// symmetric storage (lower triangle mirrored). Throws ParseError with the
// offending line on malformed input.
Matrix read_matrix_market(const std::string& text);

}  // namespace gaugeopt::io
