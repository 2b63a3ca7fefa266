#include "hforge/cli/matrix_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hforge {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("entry must be a [re, im] pair of numbers");
  }
  const Complex z{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParseError("entry is not finite");
  return z;
}

}  // namespace

std::string serialize_json(const MatrixFile& file) {
  const ComplexMatrix& m = file.matrix;
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    entries.push_back(std::move(row));
  }
  json params = json::array();
  for (const Complex& z : file.metadata.params) params.push_back(complex_to_json(z));
  json doc;
  doc["order"] = m.rows();
  doc["entries"] = std::move(entries);
  doc["metadata"] = {{"family", file.metadata.family}, {"params", std::move(params)}, {"note", file.metadata.note}};
  return doc.dump(2) + "\n";
}

MatrixFile parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("entries")) {
    throw ParseError("matrix file needs 'order' and 'entries'");
  }
  if (!doc["order"].is_number_integer() || doc["order"].get<long long>() < 1) {
    throw ParseError("'order' must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(doc["order"].get<long long>());
  const json& entries = doc["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n) {
    throw ParseError("'entries' must have 'order' rows");
  }
  MatrixFile out;
  out.matrix.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("matrix is not square");
    for (Eigen::Index j = 0; j < n; ++j) out.matrix(i, j) = complex_from_json(row[static_cast<std::size_t>(j)]);
  }
  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) throw ParseError("'metadata' must be an object");
    if (meta.contains("family")) {
      if (!meta["family"].is_string()) throw ParseError("'metadata.family' must be a string");
      out.metadata.family = meta["family"].get<std::string>();
    }
    if (meta.contains("note")) {
      if (!meta["note"].is_string()) throw ParseError("'metadata.note' must be a string");
      out.metadata.note = meta["note"].get<std::string>();
    }
    if (meta.contains("params")) {
      if (!meta["params"].is_array()) throw ParseError("'metadata.params' must be an array");
      for (const json& p : meta["params"]) out.metadata.params.push_back(complex_from_json(p));
    }
  }
  return out;
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (std::signbit(z.imag()) ? "" : "+") << z.imag() << "i";
  return os.str();
}

std::string serialize_csv(const ComplexMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_complex(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace hforge
