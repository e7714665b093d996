#pragma once

// Serialization: map-spec JSON, verdict JSON, deterministic CSV tables.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "compop/diagnostics.hpp"
#include "compop/errors.hpp"
#include "compop/maps.hpp"
#include "compop/spaces.hpp"

namespace compop {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void bad_field(const std::string& field, const std::string& why) {
  throw argument_error("map-spec: field '" + field + "' " + why);
}

inline Complex parse_complex(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad_field(field, "must be a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline CVector parse_cvector(const Json& j, const std::string& field, std::size_t N) {
  if (!j.is_array() || j.size() != N) bad_field(field, "must be an array of " + std::to_string(N) + " complex pairs");
  CVector v(static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < N; ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace detail

/// {"N": n, "A": [[[re,im],..],..], "B": [[re,im],..], "C": [[re,im],..], "d": [re,im]}
inline LinearFractionalMap map_from_json(const Json& j) {
  if (!j.is_object()) throw argument_error("map-spec: top level must be an object");
  if (!j.contains("N")) detail::bad_field("N", "is missing");
  if (!j["N"].is_number_integer() || j["N"].get<long long>() < 1) detail::bad_field("N", "must be a positive integer");
  const auto N = static_cast<std::size_t>(j["N"].get<long long>());
  for (const char* f : {"A", "B", "C", "d"}) {
    if (!j.contains(f)) detail::bad_field(f, "is missing");
  }
  const Json& ja = j["A"];
  if (!ja.is_array() || ja.size() != N) detail::bad_field("A", "must have " + std::to_string(N) + " rows");
  const auto n = static_cast<Eigen::Index>(N);
  CMatrix A(n, n);
  for (std::size_t i = 0; i < N; ++i) {
    const CVector row = detail::parse_cvector(ja[i], "A[" + std::to_string(i) + "]", N);
    A.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  const CVector B = detail::parse_cvector(j["B"], "B", N);
  const CVector C = detail::parse_cvector(j["C"], "C", N);
  const Complex d = detail::parse_complex(j["d"], "d");
  if (d == Complex(0.0)) detail::bad_field("d", "must be nonzero");
  return {A, B, C, d};
}

inline LinearFractionalMap parse_map_spec(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw argument_error(std::string("map-spec: invalid JSON: ") + e.what());
  }
  return map_from_json(j);
}

inline LinearFractionalMap load_map_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw argument_error("map-spec: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map_spec(ss.str());
}

inline Json map_to_json(const LinearFractionalMap& phi) {
  const auto n = static_cast<Eigen::Index>(phi.dim());
  Json A = Json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < n; ++c) row.push_back(detail::complex_json(phi.A()(i, c)));
    A.push_back(std::move(row));
  }
  auto vec = [&](const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(detail::complex_json(v(i)));
    return out;
  };
  Json j;
  j["N"] = phi.dim();
  j["A"] = std::move(A);
  j["B"] = vec(phi.B());
  j["C"] = vec(phi.C());
  j["d"] = detail::complex_json(phi.d());
  return j;
}

/// "hardy", "bergman" (s = 0) or "bergman:S".
inline SpaceSpec parse_space(const std::string& text, std::size_t N) {
  if (text == "hardy") return SpaceSpec::hardy(N);
  if (text == "bergman") return SpaceSpec::bergman(N, 0.0);
  const std::string prefix = "bergman:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t pos = 0;
    double s = 0.0;
    try {
      s = std::stod(text.substr(prefix.size()), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size() - prefix.size()) throw argument_error("space: bad weight in '" + text + "'");
    return SpaceSpec::bergman(N, s);
  }
  throw argument_error("space: expected hardy, bergman or bergman:S, got '" + text + "'");
}

inline std::string space_name(const SpaceSpec& sp) {
  std::ostringstream os;
  os << sp;
  return os.str();
}

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["witness"] = v.witness;
  Json hyps = Json::array();
  for (const auto& h : v.hypotheses) {
    Json hj;
    hj["name"] = h.name;
    hj["passed"] = h.passed;
    hj["detail"] = h.detail;
    hyps.push_back(std::move(hj));
  }
  j["hypotheses"] = std::move(hyps);
  if (v.gap) j["gap"] = *v.gap;
  if (v.slice_k) j["slice_k"] = *v.slice_k;
  if (v.reduced_space) j["reduced_space"] = space_name(*v.reduced_space);
  return j;
}

inline Json kernel_scan_to_json(const KernelScan& scan) {
  Json j = verdict_to_json(scan.verdict);
  Json table = Json::array();
  for (const auto& [r, b] : scan.table) table.push_back(Json::array({r, b}));
  j["table"] = std::move(table);
  j["iterate_sup_norms"] = scan.iterate_sup_norms;
  if (scan.first_contracting_iterate) j["first_contracting_iterate"] = *scan.first_contracting_iterate;
  return j;
}

/// Doubles with 12 significant digits.
inline std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Fixed-header CSV table, rows appended as already formatted cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw argument_error("CsvTable: row width does not match header");
    rows_.push_back(std::move(cells));
  }

  void write(std::ostream& os) const {
    write_line(os, header_);
    for (const auto& r : rows_) write_line(os, r);
  }

 private:
  static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace compop
