#include "gaugeopt/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "gaugeopt/errors.hpp"

namespace gaugeopt::io {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("MatrixMarket line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string write_matrix_market(const Matrix& a) {
    std::string out = "%%MatrixMarket matrix array real general\n";
    out += std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    char buf[64];
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", a(i, j));
            out += buf;
        }
    return out;
}

Matrix read_matrix_market(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) fail(1, "empty input");
    ++lineno;
    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket") fail(lineno, "missing %%MatrixMarket banner");
    if (lower(object) != "matrix") fail(lineno, "only 'matrix' objects are supported");
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format != "array" && format != "coordinate")
        fail(lineno, "unsupported format '" + format + "'");
    if (field != "real" && field != "integer")
        fail(lineno, "unsupported field '" + field + "'");
    if (symmetry != "general" && symmetry != "symmetric")
        fail(lineno, "unsupported symmetry '" + symmetry + "'");

    auto next_data_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '%') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line()) fail(lineno, "missing size line");
    std::istringstream sizes(line);
    long long rows = -1, cols = -1, nnz = -1;
    if (format == "array") {
        if (!(sizes >> rows >> cols)) fail(lineno, "bad size line");
    } else {
        if (!(sizes >> rows >> cols >> nnz)) fail(lineno, "bad size line");
    }
    if (rows < 0 || cols < 0) fail(lineno, "negative dimensions");
    if (symmetry == "symmetric" && rows != cols)
        fail(lineno, "symmetric matrices must be square");

    Matrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));

    if (format == "array") {
        const std::size_t want =
            symmetry == "general"
                ? a.rows() * a.cols()
                : a.rows() * (a.rows() + 1) / 2;
        std::size_t count = 0;
        std::size_t i = 0, j = 0;
        if (symmetry == "symmetric") i = 0;
        while (count < want) {
            if (!next_data_line()) fail(lineno, "unexpected end of data");
            std::istringstream vs(line);
            double v;
            while (vs >> v) {
                if (count >= want) fail(lineno, "too many entries");
                a(i, j) = v;
                if (symmetry == "symmetric") a(j, i) = v;
                ++count;
                // column-oriented traversal; symmetric stores the lower triangle
                if (++i >= a.rows()) {
                    ++j;
                    i = symmetry == "symmetric" ? j : 0;
                }
            }
        }
    } else {
        for (long long k = 0; k < nnz; ++k) {
            if (!next_data_line()) fail(lineno, "unexpected end of coordinate data");
            std::istringstream vs(line);
            long long ci, cj;
            double v;
            if (!(vs >> ci >> cj >> v)) fail(lineno, "bad coordinate entry");
            if (ci < 1 || cj < 1 || ci > rows || cj > cols)
                fail(lineno, "coordinate out of range");
            a(static_cast<std::size_t>(ci - 1), static_cast<std::size_t>(cj - 1)) = v;
            if (symmetry == "symmetric")
                a(static_cast<std::size_t>(cj - 1), static_cast<std::size_t>(ci - 1)) = v;
        }
    }
    return a;
}

}  // namespace gaugeopt::io
