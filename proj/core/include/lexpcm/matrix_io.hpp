#ifndef LEXPCM_MATRIX_IO_HPP
#define LEXPCM_MATRIX_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lexpcm/pcm.hpp"

namespace lexpcm {

/// Parse failure with 1-based source position.
struct ParseError : std::runtime_error {
    ParseError(int line, int column, const std::string& what_arg)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what_arg),
          line(line),
          column(column) {}
    int line;
    int column;
};

// Matrix text format:
//   line 1: the order n
//   lines 2..n+1: n whitespace-separated tokens each
// A token is "*" (missing), a decimal number, or a "p/q" fraction.
// For an off-diagonal pair, the lower-triangle token may be "*" while the
// upper one is known (the reciprocal is derived), or explicit, in which case
// it must match the reciprocal within relative 1e-12. A pair is missing only
// when both tokens are "*".
IncompletePcm parse_matrix(std::istream& in);
IncompletePcm parse_matrix_text(const std::string& text);
IncompletePcm parse_matrix_file(const std::string& path);

/// Serialize with full round-trip precision (17 significant digits).
std::string format_matrix(const IncompletePcm& matrix);
std::string format_matrix(const CompletePcm& matrix);

void write_matrix_file(const std::string& path, const CompletePcm& matrix);

}  // namespace lexpcm

#endif  // LEXPCM_MATRIX_IO_HPP
