#pragma once

// JSON matrix files ({order, entries: [[[re, im], ...], ...], metadata}) and
// CSV export.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hforge/core.hpp"

namespace hforge {

struct MatrixMetadata {
  std::string family;
  std::vector<Complex> params;
  std::string note;
};

struct MatrixFile {
  ComplexMatrix matrix;
  MatrixMetadata metadata;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Doubles are written in shortest round-trip form, so parse(serialize(m))
/// reproduces every entry bit for bit.
std::string serialize_json(const MatrixFile& file);
MatrixFile parse_json(std::string_view text);

/// One row per line, entries "re+imi" separated by commas.
std::string serialize_csv(const ComplexMatrix& m);

MatrixFile read_matrix_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string format_complex(Complex z);

}  // namespace hforge
