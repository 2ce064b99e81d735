#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "geoft/identities.hpp"

namespace geoft {

using Json = nlohmann::json;

namespace io_detail {

[[noreturn]] inline void bad(const std::string& msg) {
  fail(ErrorKind::ParseError, msg);
}

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    bad(std::string("missing field '") + key + "'");
  return j[key];
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + ": expected a number");
  return j.get<double>();
}

}  // namespace io_detail

// ---- scalars / linear algebra -------------------------------------------------

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0);
  if (!j.is_array() || j.size() != 2)
    io_detail::bad("complex value: expected [re, im]");
  return Complex(io_detail::number(j[0], "re"), io_detail::number(j[1], "im"));
}

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline Vector vector_from_json(const Json& j, const char* what = "vector") {
  if (!j.is_array() || j.empty())
    io_detail::bad(std::string(what) + ": expected a nonempty array");
  Vector v(int(j.size()));
  for (int i = 0; i < v.size(); ++i)
    v(i) = io_detail::number(j[std::size_t(i)], what);
  return v;
}

inline Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(std::move(row));
  }
  return out;
}

inline Matrix matrix_from_json(const Json& j, const char* what = "matrix") {
  if (!j.is_array() || j.empty())
    io_detail::bad(std::string(what) + ": expected an array of rows");
  const int rows = int(j.size());
  if (!j[0].is_array() || j[0].empty())
    io_detail::bad(std::string(what) + ": rows must be nonempty arrays");
  const int cols = int(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[std::size_t(i)];
    if (!row.is_array() || int(row.size()) != cols)
      io_detail::bad(std::string(what) + ": ragged rows");
    for (int k = 0; k < cols; ++k)
      m(i, k) = io_detail::number(row[std::size_t(k)], what);
  }
  return m;
}

// ---- structures ---------------------------------------------------------------

inline Json to_json(const GeometricStructure& b) {
  return Json{{"matrix", to_json(b.M)}};
}

// Accepts {"matrix": [[...]]} or a bare array of rows.
inline GeometricStructure structure_from_json(const Json& j) {
  const Json& m = j.is_object() ? io_detail::member(j, "matrix") : j;
  return make_structure(matrix_from_json(m, "structure matrix"));
}

inline Json to_json(const GeometricPair& pair) {
  const auto cls = classify(pair.structure);
  return Json{{"matrix", to_json(pair.M())},
              {"inverse", to_json(pair.B)},
              {"det", pair.det_b},
              {"cond_estimate", pair.cond_estimate},
              {"opposite", to_json(Matrix(pair.M().transpose()))},
              {"symmetric", cls.symmetric},
              {"skew", cls.skew},
              {"positive_definite", cls.positive_definite}};
}

inline Json to_json(const Lattice& L) {
  return Json{{"generator", to_json(L.generator)}};
}

inline Lattice lattice_from_json(const Json& j) {
  const Json& g = j.is_object() ? io_detail::member(j, "generator") : j;
  return make_lattice(matrix_from_json(g, "lattice generator"));
}

// ---- gaussians ------------------------------------------------------------------

inline Json to_json(const GaussianFunction& g) {
  return Json{{"A", to_json(g.shape)},
              {"c", to_json(g.center)},
              {"amp", to_json(g.amp)},
              {"w", to_json(g.modulation)}};
}

inline GaussianFunction gaussian_from_json(const Json& j) {
  if (!j.is_object()) io_detail::bad("gaussian: expected an object");
  const Matrix A = matrix_from_json(io_detail::member(j, "A"), "gaussian A");
  const int n = int(A.rows());
  const Vector c = j.contains("c") ? vector_from_json(j["c"], "gaussian c")
                                   : Vector(Vector::Zero(n));
  const Vector w = j.contains("w") ? vector_from_json(j["w"], "gaussian w")
                                   : Vector(Vector::Zero(n));
  const Complex amp =
      j.contains("amp") ? complex_from_json(j["amp"]) : Complex(1, 0);
  return make_gaussian(A, c, amp, w);
}

// ---- grids and fields ---------------------------------------------------------------

inline Json to_json(const GridSpec& g) {
  return Json{{"shape", g.shape},
              {"origin", to_json(g.origin)},
              {"spacing", to_json(g.spacing)},
              {"mode", g.mode == GridMode::Periodic ? "periodic" : "truncated"}};
}

inline GridSpec grid_from_json(const Json& j) {
  if (!j.is_object()) io_detail::bad("grid: expected an object");
  const Json& shape_j = io_detail::member(j, "shape");
  if (!shape_j.is_array() || shape_j.empty())
    io_detail::bad("grid shape: expected a nonempty array");
  std::vector<int> shape;
  for (const auto& s : shape_j) {
    if (!s.is_number_integer()) io_detail::bad("grid shape: integer entries");
    shape.push_back(s.get<int>());
  }
  const Vector origin =
      vector_from_json(io_detail::member(j, "origin"), "grid origin");
  const Vector spacing =
      vector_from_json(io_detail::member(j, "spacing"), "grid spacing");
  GridMode mode = GridMode::Truncated;
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "periodic")
      mode = GridMode::Periodic;
    else if (m == "truncated")
      mode = GridMode::Truncated;
    else
      io_detail::bad("grid mode: expected 'truncated' or 'periodic'");
  }
  return make_grid(shape, origin, spacing, mode);
}

inline Json values_to_json(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (const Complex& v : values) out.push_back(to_json(v));
  return out;
}

inline std::vector<Complex> values_from_json(const Json& j) {
  if (!j.is_array()) io_detail::bad("values: expected an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

inline Json to_json(const SampledField& f) {
  return Json{{"grid", to_json(f.grid)}, {"values", values_to_json(f.values)}};
}

inline SampledField field_from_json(const Json& j) {
  if (!j.is_object()) io_detail::bad("field: expected an object");
  SampledField f{grid_from_json(io_detail::member(j, "grid")),
                 values_from_json(io_detail::member(j, "values"))};
  if (f.values.size() != f.grid.total_size())
    io_detail::bad("field: value count does not match the grid");
  return f;
}

inline Json to_json(const Side side) {
  return side == Side::Left ? "left" : "right";
}

inline Side side_from_json(const Json& j) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  io_detail::bad("side: expected 'left' or 'right'");
}

// Frequency-domain payload. Bin values live on the sheared lattice generated by
// lattice.generator (columns), counts per axis matching the source grid; the
// explicit frequency list is included only for small outputs.
inline Json to_json(const ShearedSpectrum& s) {
  Json out{{"domain", "frequency"},
           {"side", to_json(s.side)},
           {"shear", to_json(s.shear)},
           {"source_grid", to_json(s.source_grid)},
           {"lattice", Json{{"generator", to_json(s.lattice_generator())},
                            {"counts", s.source_grid.shape}}},
           {"values", values_to_json(s.values)}};
  if (s.values.size() <= 4096) {
    Json freqs = Json::array();
    for (std::size_t jb = 0; jb < s.values.size(); ++jb)
      freqs.push_back(to_json(s.frequency(jb)));
    out["frequencies"] = std::move(freqs);
  }
  return out;
}

inline ShearedSpectrum spectrum_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("domain") || j["domain"] != "frequency")
    io_detail::bad("spectrum: expected an object with domain == 'frequency'");
  ShearedSpectrum s;
  s.side = side_from_json(io_detail::member(j, "side"));
  s.shear = matrix_from_json(io_detail::member(j, "shear"), "spectrum shear");
  s.source_grid = grid_from_json(io_detail::member(j, "source_grid"));
  s.values = values_from_json(io_detail::member(j, "values"));
  if (s.values.size() != s.source_grid.total_size())
    io_detail::bad("spectrum: value count does not match the source grid");
  return s;
}

// ---- reports ---------------------------------------------------------------------

inline Json to_json(const PoissonReport& r) {
  return Json{{"form", to_string(r.form)},
              {"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"abs_gap", r.abs_gap},
              {"tolerance", r.tolerance},
              {"passed", r.passed},
              {"spatial", Json{{"radius", r.spatial_radius},
                               {"terms", r.spatial_terms},
                               {"tail_bound", r.spatial_tail}}},
              {"frequency", Json{{"radius", r.frequency_radius},
                                 {"terms", r.frequency_terms},
                                 {"tail_bound", r.frequency_tail}}}};
}

inline Json check_report_to_json(const CheckReport& r, bool timings = false) {
  Json out{{"id", r.id},          {"statement", r.statement},
           {"tolerance", r.tolerance}, {"residual", r.residual},
           {"passed", r.passed},  {"seed", r.seed},
           {"lhs", r.lhs_summary}, {"rhs", r.rhs_summary}};
  if (timings) out["runtime_ms"] = r.runtime_ms;
  return out;
}

inline Json suite_report_to_json(const std::vector<CheckReport>& reports,
                                 uint64_t base_seed, const std::string& filter,
                                 bool timings = false) {
  Json checks = Json::array();
  std::size_t passed = 0;
  for (const auto& r : reports) {
    checks.push_back(check_report_to_json(r, timings));
    if (r.passed) ++passed;
  }
  return Json{{"checks", std::move(checks)},
              {"summary", Json{{"total", reports.size()},
                               {"passed", passed},
                               {"failed", reports.size() - passed},
                               {"all_passed", passed == reports.size()},
                               {"base_seed", base_seed},
                               {"filter", filter}}}};
}

// ---- files ------------------------------------------------------------------------

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_detail::bad("cannot open '" + path + "'");
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) io_detail::bad("invalid JSON in '" + path + "'");
  return j;
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) io_detail::bad("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace geoft
