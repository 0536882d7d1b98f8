#include "zpreal/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace zpreal {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + why);
}

const json& member(const json& j, const char* key) {
  if (!j.contains(key)) parse_fail(key, "missing");
  return j.at(key);
}

std::size_t read_count(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) parse_fail(key, "expected a non-negative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

Complex read_complex(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    parse_fail(field, "expected [re, im]");
  }
  const Complex z(v[0].get<double>(), v[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) parse_fail(field, "non-finite value");
  return z;
}

std::vector<Complex> read_list(const json& j, const char* key, std::size_t n) {
  const json& v = member(j, key);
  if (!v.is_array() || v.size() != n) parse_fail(key, "expected a list of " + std::to_string(n) + " [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(read_complex(v[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix read_matrix(const json& v, const std::string& key, std::size_t rows, std::size_t cols) {
  if (!v.is_array() || v.size() != rows) parse_fail(key, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = v[r];
    const std::string rk = key + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != cols) parse_fail(rk, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = read_complex(row[c], rk + "[" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json report_to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.pass}});
  }
  return {{"passed", r.passed()}, {"checks", checks}, {"values", r.values}, {"notes", r.notes}};
}

InstanceFile parse_instance(const std::string& text, double sep_min) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("<root>", "expected an object");
  const json& ver = member(j, "format_version");
  if (!ver.is_number_integer() || ver.get<int>() != kFormatVersion) {
    parse_fail("format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  }
  InstanceFile f;
  ZeroPoleData& d = f.data;
  d.k = read_count(j, "k");
  const std::size_t n = read_count(j, "n");
  if (d.k == 0) parse_fail("k", "must be at least 1");
  d.poles = read_list(j, "poles", n);
  d.zeros = read_list(j, "zeros", n);
  d.F_P = read_matrix(member(j, "F_P"), "F_P", d.k, n);
  d.G_P = read_matrix(member(j, "G_P"), "G_P", n, d.k);
  d.F_N = read_matrix(member(j, "F_N"), "F_N", d.k, n);
  d.G_N = read_matrix(member(j, "G_N"), "G_N", n, d.k);
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) parse_fail("metadata", "expected an object");
    f.metadata = j["metadata"];
  }
  if (j.contains("R_inf")) {
    const Matrix r_inf = read_matrix(j["R_inf"], "R_inf", d.k, d.k);
    Matrix r_inv;
    try {
      r_inv = inverse(r_inf);
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidData, "R_inf is singular");
    }
    d.F_P = r_inv * d.F_P;
    d.G_N = d.G_N * r_inf;
    f.metadata["discarded_R_inf"] = matrix_to_json(r_inf);
  }
  validate(d, sep_min);
  return f;
}

InstanceFile load_instance(const std::string& path, double sep_min) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), sep_min);
}

std::string write_instance(const InstanceFile& f) {
  const ZeroPoleData& d = f.data;
  json j;
  j["format_version"] = kFormatVersion;
  j["k"] = d.k;
  j["n"] = d.n();
  json poles = json::array(), zeros = json::array();
  for (const auto& z : d.poles) poles.push_back(complex_to_json(z));
  for (const auto& z : d.zeros) zeros.push_back(complex_to_json(z));
  j["poles"] = poles;
  j["zeros"] = zeros;
  j["F_P"] = matrix_to_json(d.F_P);
  j["G_P"] = matrix_to_json(d.G_P);
  j["F_N"] = matrix_to_json(d.F_N);
  j["G_N"] = matrix_to_json(d.G_N);
  j["metadata"] = f.metadata;
  return j.dump(2) + "\n";
}

void save_instance(const InstanceFile& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write '" + path + "'");
  out << write_instance(f);
}

}  // namespace zpreal
