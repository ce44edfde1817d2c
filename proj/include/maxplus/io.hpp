#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "maxplus/csr.hpp"

namespace maxplus::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised when a file cannot be opened or read.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix files. Blank lines and text after '#' are ignored.
//   dense:  "n", then n rows of n tokens
//   sparse: "n m", then m lines "i j w" with 1-based indices
// Tokens are integers, p/q rationals, or "." / "-inf" for ε.
TropicalMatrix parse_matrix(std::string_view text);
std::string read_file(const std::filesystem::path& path);

std::string write_dense(const TropicalMatrix& a);
std::string write_sparse(const TropicalMatrix& a);

std::string sha256_hex(std::string_view bytes);

std::string expansion_to_json(const CsrExpansion& x, const std::string& input_digest, int indent = 2);
/// Throws ParseError (line 0) on schema violations.
CsrExpansion expansion_from_json(std::string_view text);

}  // namespace maxplus::io
