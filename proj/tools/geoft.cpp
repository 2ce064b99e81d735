// geoft: command-line front end for the transform/operator library.
//
// Subcommands: pair, transform, frac, poisson, verify.  All structured output
// is JSON (stdout or --out); numeric values serialize with shortest
// round-trip formatting, so identical inputs give byte-identical outputs.
//
// Exit codes: 0 success, 1 a requested numeric check failed, 2 bad usage or
// unreadable input, 3 degenerate structure, 4 structure not admissible for the
// fractional operator, 5 parameter out of range, 6 certified tail bound not
// achievable, 10 other library error, 11 unexpected failure.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "geoft/io.hpp"

namespace {

using namespace geoft;

int error_exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
      return 2;
    case ErrorKind::NonSquare:
    case ErrorKind::Degenerate:
      return 3;
    case ErrorKind::NotPositiveDefinite:
      return 4;
    case ErrorKind::ParamOutOfRange:
      return 5;
    case ErrorKind::TailBoundViolated:
      return 6;
    default:
      return 10;
  }
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << '\n';
  else
    save_json(out_path, j);
}

std::vector<Vector> points_from_json(const Json& j) {
  const Json& arr = j.is_object() && j.contains("points") ? j["points"] : j;
  if (!arr.is_array() || arr.empty())
    io_detail::bad("points: expected a nonempty array of coordinate arrays");
  std::vector<Vector> out;
  out.reserve(arr.size());
  for (const auto& p : arr) out.push_back(vector_from_json(p, "point"));
  return out;
}

Vector parse_coords(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      io_detail::bad("coordinate list: cannot parse '" + tok + "'");
    }
  }
  if (vals.empty()) io_detail::bad("coordinate list: empty");
  Vector v(int(vals.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = vals[std::size_t(i)];
  return v;
}

std::string csv_num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_csv(const std::string& path, int dim, const std::string& coord_name,
               const std::vector<Vector>& coords,
               const std::vector<Complex>& values) {
  std::ofstream out(path);
  if (!out) io_detail::bad("cannot write '" + path + "'");
  for (int d = 0; d < dim; ++d) out << coord_name << '_' << d << ',';
  out << "re,im\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (int d = 0; d < dim; ++d) out << csv_num(coords[i](d)) << ',';
    out << csv_num(values[i].real()) << ',' << csv_num(values[i].imag())
        << '\n';
  }
}

// ---- pair --------------------------------------------------------------------

struct PairArgs {
  std::string in, out;
};

int run_pair(const PairArgs& a) {
  const auto pair = make_pair(structure_from_json(load_json(a.in)));
  emit(to_json(pair), a.out);
  return 0;
}

// ---- transform -----------------------------------------------------------------

struct TransformArgs {
  std::string in, structure, freqs, out, csv;
  std::string side = "left";
  std::string method = "fft";
  bool inverse = false;
};

int run_transform(const TransformArgs& a) {
  const auto pair = make_pair(structure_from_json(load_json(a.structure)));
  const Side side = side_from_json(Json(a.side));
  const Json input = load_json(a.in);

  if (a.method == "fft") {
    if (!a.inverse) {
      const auto f = field_from_json(input);
      const auto s = geometric_ft_fft(f, pair, side);
      emit(to_json(s), a.out);
      if (!a.csv.empty())
        write_csv(a.csv, f.grid.dim(), "xi", s.frequencies(), s.values);
    } else {
      const auto s = spectrum_from_json(input);
      const auto f = inverse_geometric_ft_fft(s, pair);
      emit(to_json(f), a.out);
      if (!a.csv.empty()) {
        std::vector<Vector> pts;
        pts.reserve(f.values.size());
        for (std::size_t i = 0; i < f.values.size(); ++i)
          pts.push_back(f.grid.point(i));
        write_csv(a.csv, f.grid.dim(), "x", pts, f.values);
      }
    }
    return 0;
  }

  if (a.method != "direct")
    io_detail::bad("method: expected 'fft' or 'direct'");
  if (a.freqs.empty())
    io_detail::bad("--method direct requires --freqs (evaluation points)");
  const auto f = field_from_json(input);
  const auto pts = points_from_json(load_json(a.freqs));
  const auto vals =
      a.inverse ? inverse_geometric_ft_direct(f, pair, side, pts)
                : geometric_ft_direct(f, pair, side, pts);
  Json pj = Json::array();
  for (const auto& p : pts) pj.push_back(to_json(p));
  emit(Json{{"side", to_json(side)},
            {"inverse", a.inverse},
            {"points", std::move(pj)},
            {"values", values_to_json(vals)}},
       a.out);
  if (!a.csv.empty())
    write_csv(a.csv, int(pts[0].size()), a.inverse ? "x" : "xi", pts, vals);
  return 0;
}

// ---- frac ---------------------------------------------------------------------

struct FracArgs {
  std::string in, gaussian, points, structure, out;
  std::string path = "classical";
  double s = 0.5;
};

int run_frac(const FracArgs& a) {
  const auto pair = make_pair(structure_from_json(load_json(a.structure)));
  const auto fp = make_frac_params(pair, a.s);

  if (!a.gaussian.empty()) {
    // Quadrature route: pointwise values for a Gaussian input, path-free.
    if (a.points.empty())
      io_detail::bad("--gaussian requires --points (evaluation points)");
    const auto g = gaussian_from_json(load_json(a.gaussian));
    const auto pts = points_from_json(load_json(a.points));
    const auto vals = frac_laplacian_gaussian(g, fp, pts);
    Json pj = Json::array();
    for (const auto& p : pts) pj.push_back(to_json(p));
    emit(Json{{"s", a.s},
              {"route", "subordination"},
              {"points", std::move(pj)},
              {"values", values_to_json(vals)}},
         a.out);
    return 0;
  }

  if (a.in.empty()) io_detail::bad("frac needs either --in or --gaussian");
  const auto f = field_from_json(load_json(a.in));
  if (a.path == "all") {
    const auto left = frac_laplacian(f, fp, FracPath::Left);
    const auto right = frac_laplacian(f, fp, FracPath::Right);
    const auto classical = frac_laplacian(f, fp, FracPath::Classical);
    const double gap =
        std::max(max_abs_diff(left.values, classical.values),
                 max_abs_diff(right.values, classical.values));
    emit(Json{{"s", a.s},
              {"grid", to_json(f.grid)},
              {"paths", Json{{"left", values_to_json(left.values)},
                             {"right", values_to_json(right.values)},
                             {"classical", values_to_json(classical.values)}}},
              {"max_pairwise_gap", gap}},
         a.out);
    return 0;
  }
  FracPath path = FracPath::Classical;
  if (a.path == "left")
    path = FracPath::Left;
  else if (a.path == "right")
    path = FracPath::Right;
  else if (a.path != "classical")
    io_detail::bad("path: expected left, right, classical, or all");
  emit(to_json(frac_laplacian(f, fp, path)), a.out);
  return 0;
}

// ---- poisson -------------------------------------------------------------------

struct PoissonArgs {
  std::string gaussian, lattice, structure, out;
  std::string x = "0";
  std::string form = "classical";
  double tol = 1e-10;
  double spatial_radius = -1, frequency_radius = -1;
};

int run_poisson(const PoissonArgs& a) {
  const auto g = gaussian_from_json(load_json(a.gaussian));
  const Vector x = parse_coords(a.x);
  PoissonForm form = PoissonForm::Classical;
  bool found = false;
  for (PoissonForm f :
       {PoissonForm::Classical, PoissonForm::LeftFromLattice,
        PoissonForm::RightFromOpposite, PoissonForm::LatticeLeft,
        PoissonForm::LatticeRight, PoissonForm::InverseLeft,
        PoissonForm::InverseRight}) {
    if (to_string(f) == a.form) {
      form = f;
      found = true;
      break;
    }
  }
  if (!found) io_detail::bad("unknown form '" + a.form + "'");

  PoissonOptions opt;
  opt.tolerance = a.tol;
  if (a.spatial_radius > 0) opt.spatial_radius = a.spatial_radius;
  if (a.frequency_radius > 0) opt.frequency_radius = a.frequency_radius;

  PoissonReport rep;
  if (!a.lattice.empty()) {
    rep = poisson_check(g, x, form, lattice_from_json(load_json(a.lattice)), opt);
  } else if (!a.structure.empty()) {
    rep = poisson_check(
        g, x, form, make_pair(structure_from_json(load_json(a.structure))), opt);
  } else {
    io_detail::bad("poisson needs --lattice or --structure");
  }
  emit(to_json(rep), a.out);
  return rep.passed ? 0 : 1;
}

// ---- verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string filter, out;
  uint64_t seed = 20240817;
  bool timings = false;
  bool list = false;
};

int run_verify(const VerifyArgs& a) {
  if (a.list) {
    std::cout << "| id | verified relation | tolerance |\n";
    std::cout << "|----|-------------------|-----------|\n";
    for (const auto& spec : check_catalog()) {
      if (!a.filter.empty() &&
          spec.id.compare(0, a.filter.size(), a.filter) != 0)
        continue;
      std::ostringstream tol;
      tol << spec.tolerance;
      std::string st;
      for (char c : spec.statement) {  // keep table cells well formed
        if (c == '|') st += "\\|";
        else st += c;
      }
      std::cout << "| `" << spec.id << "` | `" << st << "` | " << tol.str()
                << " |\n";
    }
    return 0;
  }

  const auto reports = run_suite(a.filter, a.seed);
  std::size_t passed = 0;
  for (const auto& r : reports) {
    if (r.passed) ++passed;
    std::ostringstream line;
    line << (r.passed ? "[ ok ] " : "[FAIL] ") << std::left << std::setw(36)
         << r.id << " residual " << std::scientific << std::setprecision(3)
         << r.residual << "  (tol " << r.tolerance << ")";
    std::cout << line.str() << '\n';
  }
  std::cout << passed << "/" << reports.size() << " checks passed\n";
  if (!a.out.empty())
    save_json(a.out,
              suite_report_to_json(reports, a.seed, a.filter, a.timings));
  return passed == reports.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "geoft: left/right transforms for a nondegenerate bilinear structure,\n"
      "their differential calculus, lattice summation, and fractional powers"};
  app.require_subcommand(1);

  PairArgs pair_args;
  auto* cmd_pair =
      app.add_subcommand("pair", "inspect a structure matrix and its inverse");
  cmd_pair->add_option("--in", pair_args.in, "structure JSON")->required();
  cmd_pair->add_option("--out", pair_args.out, "write JSON here");

  TransformArgs tr_args;
  auto* cmd_tr = app.add_subcommand("transform", "sided transform of a field");
  cmd_tr->add_option("--in", tr_args.in, "field (or spectrum) JSON")->required();
  cmd_tr->add_option("--structure", tr_args.structure, "structure JSON")
      ->required();
  cmd_tr->add_option("--side", tr_args.side, "left|right");
  cmd_tr->add_flag("--inverse", tr_args.inverse, "apply the inverse transform");
  cmd_tr->add_option("--method", tr_args.method, "fft|direct");
  cmd_tr->add_option("--freqs", tr_args.freqs,
                     "evaluation points JSON (direct method)");
  cmd_tr->add_option("--out", tr_args.out, "write JSON here");
  cmd_tr->add_option("--csv", tr_args.csv, "also write CSV rows here");

  FracArgs frac_args;
  auto* cmd_frac =
      app.add_subcommand("frac", "fractional power of the second-order operator");
  cmd_frac->add_option("--structure", frac_args.structure, "structure JSON")
      ->required();
  cmd_frac->add_option("--s", frac_args.s, "exponent in (0, 1)")->required();
  cmd_frac->add_option("--in", frac_args.in, "periodic field JSON");
  cmd_frac->add_option("--gaussian", frac_args.gaussian,
                       "Gaussian JSON (subordination route)");
  cmd_frac->add_option("--points", frac_args.points,
                       "evaluation points JSON for --gaussian");
  cmd_frac->add_option("--path", frac_args.path,
                       "left|right|classical|all (field route)");
  cmd_frac->add_option("--out", frac_args.out, "write JSON here");

  PoissonArgs po_args;
  auto* cmd_po =
      app.add_subcommand("poisson", "certified lattice summation identity");
  cmd_po->add_option("--gaussian", po_args.gaussian, "Gaussian JSON")
      ->required();
  cmd_po->add_option("--x", po_args.x, "offset, comma-separated coordinates");
  cmd_po->add_option("--form", po_args.form,
                     "classical|left-from-lattice|right-from-opposite|"
                     "lattice-left|lattice-right|inverse-left|inverse-right");
  cmd_po->add_option("--lattice", po_args.lattice, "lattice JSON");
  cmd_po->add_option("--structure", po_args.structure, "structure JSON");
  cmd_po->add_option("--tol", po_args.tol, "gap tolerance");
  cmd_po->add_option("--spatial-radius", po_args.spatial_radius,
                     "fix the spatial summation radius");
  cmd_po->add_option("--frequency-radius", po_args.frequency_radius,
                     "fix the frequency summation radius");
  cmd_po->add_option("--out", po_args.out, "write report JSON here");

  VerifyArgs ver_args;
  auto* cmd_ver = app.add_subcommand("verify", "run the identity catalog");
  cmd_ver->add_option("--filter", ver_args.filter, "id prefix to select");
  cmd_ver->add_option("--seed", ver_args.seed, "base seed for random draws");
  cmd_ver->add_option("--out", ver_args.out, "write report JSON here");
  cmd_ver->add_flag("--timings", ver_args.timings,
                    "include runtime_ms in the report");
  cmd_ver->add_flag("--list", ver_args.list,
                    "print the catalog table without running it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_pair->parsed()) return run_pair(pair_args);
    if (cmd_tr->parsed()) return run_transform(tr_args);
    if (cmd_frac->parsed()) return run_frac(frac_args);
    if (cmd_po->parsed()) return run_poisson(po_args);
    if (cmd_ver->parsed()) return run_verify(ver_args);
  } catch (const geoft::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return error_exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 11;
  }
  return 2;
}
