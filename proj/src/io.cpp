// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include "hillcert/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hillcert/errors.hpp"

namespace hillcert {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw io_error("write to '" + path + "' failed");
}

namespace {

// Emit an n x n real matrix part as nested JSON arrays with %.12e entries.
void append_matrix(std::string& out, const ComplexMatrix& J, bool imag_part) {
  out += '[';
  for (Eigen::Index r = 0; r < J.rows(); ++r) {
    if (r > 0) out += ", ";
    out += '[';
    for (Eigen::Index c = 0; c < J.cols(); ++c) {
      if (c > 0) out += ", ";
      out += format_double(imag_part ? J(r, c).imag() : J(r, c).real());
    }
    out += ']';
  }
  out += ']';
}

json parse_or_throw(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw io_error(std::string("malformed JSON in ") + what);
  return j;
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw io_error(std::string("missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

int int_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw io_error(std::string("missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

// Read an n x n nested array of numbers into the given real/imag part.
void read_matrix(const json& arr, ComplexMatrix& J, int dim, bool imag_part,
                 const char* key) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    throw io_error(std::string("field '") + key + "' is not a " +
                   std::to_string(dim) + "-row matrix");
  for (int r = 0; r < dim; ++r) {
    const json& row = arr[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw io_error(std::string("row of '") + key + "' has wrong length");
    for (int c = 0; c < dim; ++c) {
      if (!row[c].is_number())
        throw io_error(std::string("non-numeric entry in '") + key + "'");
      double v = row[c].get<double>();
      if (imag_part)
        J(r, c) = Complex(J(r, c).real(), v);
      else
        J(r, c) = Complex(v, J(r, c).imag());
    }
  }
}

}  // namespace

std::string write_series_json(const FourierMatrixSeries& series) {
  std::string out = "{\n";
  out += "  \"omega\": " + format_double(series.omega) + ",\n";
  out += "  \"dim\": " + std::to_string(series.dim) + ",\n";
  out += std::string("  \"real\": ") + (series.real_series ? "true" : "false") +
         ",\n";
  out += "  \"coeffs\": [\n";
  bool first = true;
  for (const auto& [k, J] : series.coeffs) {
    if (!first) out += ",\n";
    first = false;
    out += "    { \"k\": " + std::to_string(k) + ", \"re\": ";
    append_matrix(out, J, false);
    out += ", \"im\": ";
    append_matrix(out, J, true);
    out += " }";
  }
  out += "\n  ]\n}\n";
  return out;
}

FourierMatrixSeries parse_series_json(const std::string& text) {
  json j = parse_or_throw(text, "series file");
  FourierMatrixSeries series;
  series.omega = number_field(j, "omega");
  series.dim = int_field(j, "dim");
  if (series.dim < 1) throw io_error("field 'dim' must be >= 1");
  if (!j.contains("real") || !j["real"].is_boolean())
    throw io_error("missing or non-boolean field 'real'");
  series.real_series = j["real"].get<bool>();
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw io_error("missing or non-array field 'coeffs'");
  for (const json& entry : j["coeffs"]) {
    int k = int_field(entry, "k");
    ComplexMatrix J = ComplexMatrix::Zero(series.dim, series.dim);
    if (!entry.contains("re") || !entry.contains("im"))
      throw io_error("coefficient entry lacks 're'/'im'");
    read_matrix(entry["re"], J, series.dim, false, "re");
    read_matrix(entry["im"], J, series.dim, true, "im");
    if (series.coeffs.count(k) != 0)
      throw io_error("duplicate coefficient k = " + std::to_string(k));
    series.coeffs[k] = std::move(J);
  }
  series.validate();
  return series;
}

std::string write_solution_json(const PeriodicSolution& sol,
                                const DuffingParams& params) {
  std::string out = "{\n";
  out += "  \"params\": { \"alpha\": " + format_double(params.alpha) +
         ", \"beta\": " + format_double(params.beta) +
         ", \"delta\": " + format_double(params.delta) +
         ", \"F\": " + format_double(params.F) +
         ", \"omega\": " + format_double(params.omega) + " },\n";
  out += "  \"N_h\": " + std::to_string(sol.N_h) + ",\n";
  out += "  \"residual_norm\": " + format_double(sol.residual_norm) + ",\n";
  out += "  \"coeffs\": [\n";
  for (int k = -sol.N_h; k <= sol.N_h; ++k) {
    Complex c = sol.coeff(k);
    out += "    { \"k\": " + std::to_string(k) +
           ", \"re\": " + format_double(c.real()) +
           ", \"im\": " + format_double(c.imag()) + " }";
    if (k < sol.N_h) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::pair<PeriodicSolution, DuffingParams> parse_solution_json(
    const std::string& text) {
  json j = parse_or_throw(text, "solution file");
  if (!j.contains("params") || !j["params"].is_object())
    throw io_error("missing or non-object field 'params'");
  const json& p = j["params"];
  DuffingParams params;
  params.alpha = number_field(p, "alpha");
  params.beta = number_field(p, "beta");
  params.delta = number_field(p, "delta");
  params.F = number_field(p, "F");
  params.omega = number_field(p, "omega");

  PeriodicSolution sol;
  sol.N_h = int_field(j, "N_h");
  if (sol.N_h < 1) throw io_error("field 'N_h' must be >= 1");
  sol.omega = params.omega;
  sol.residual_norm = number_field(j, "residual_norm");
  sol.coeffs = ComplexVector::Zero(2 * sol.N_h + 1);
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw io_error("missing or non-array field 'coeffs'");
  for (const json& entry : j["coeffs"]) {
    int k = int_field(entry, "k");
    if (k < -sol.N_h || k > sol.N_h)
      throw io_error("harmonic index k = " + std::to_string(k) +
                     " outside [-N_h, N_h]");
    sol.coeffs(k + sol.N_h) =
        Complex(number_field(entry, "re"), number_field(entry, "im"));
  }
  return {sol, params};
}

}  // namespace hillcert
