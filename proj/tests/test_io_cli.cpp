#include "geoft/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace geoft;

namespace {

std::string samples(const std::string& name) {
  return std::string(GEOFT_SAMPLES_DIR) + "/" + name;
}

std::string tmp_path(const std::string& name) {
  return ::testing::TempDir() + "geoft_" + name;
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string("\"") + GEOFT_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc < 0 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

// ---- serialization round trips -------------------------------------------------

TEST(Io, StructureRoundTrip) {
  Matrix M(2, 2);
  M << 2, 1, 0, 1;
  const auto b = make_structure(M);
  const auto back = structure_from_json(to_json(b));
  EXPECT_EQ(back.M(0, 0), 2.0);
  EXPECT_EQ(back.M(0, 1), 1.0);
  EXPECT_EQ(max_abs(back.M - M), 0.0);
  // bare matrix form also accepted
  const auto bare = structure_from_json(Json::parse("[[2, 1], [0, 1]]"));
  EXPECT_EQ(max_abs(bare.M - M), 0.0);
}

TEST(Io, GaussianRoundTrip) {
  Matrix A(2, 2);
  A << 1.5, 0.3, 0.3, 0.8;
  Vector c(2), w(2);
  c << 0.4, -0.2;
  w << 0.6, -1.0;
  const auto g = make_gaussian(A, c, Complex(0.7, 0.25), w);
  const auto back = gaussian_from_json(to_json(g));
  EXPECT_EQ(max_abs(back.shape - g.shape), 0.0);
  EXPECT_EQ(back.center, g.center);
  EXPECT_EQ(back.amp, g.amp);
  EXPECT_EQ(back.modulation, g.modulation);
  // defaults: c, w, amp optional
  const auto minimal = gaussian_from_json(Json::parse(R"({"A": [[1]]})"));
  EXPECT_EQ(minimal.amp, Complex(1, 0));
  EXPECT_EQ(minimal.center(0), 0.0);
}

TEST(Io, FieldRoundTrip) {
  const auto grid = make_grid({4, 3}, Vector::Zero(2),
                              Vector::Constant(2, 0.5), GridMode::Periodic);
  SampledField f{grid, {}};
  Rng rng(5);
  for (std::size_t i = 0; i < grid.total_size(); ++i)
    f.values.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const auto back = field_from_json(to_json(f));
  EXPECT_EQ(back.grid.shape, f.grid.shape);
  EXPECT_EQ(back.grid.mode, GridMode::Periodic);
  EXPECT_EQ(back.values, f.values);  // bitwise through shortest round-trip
}

TEST(Io, SpectrumRoundTrip) {
  const auto pair = make_pair(Matrix(2 * Matrix::Identity(1, 1)));
  const auto g = standard_gaussian(1);
  const auto f = sample_gaussian(g, default_gaussian_grid(g, 16));
  const auto s = geometric_ft_fft(f, pair, Side::Left);
  const Json j = to_json(s);
  EXPECT_EQ(j.at("domain"), "frequency");
  EXPECT_TRUE(j.contains("frequencies"));  // small output keeps explicit list
  EXPECT_EQ(j.at("lattice").at("counts")[0], 16);
  const auto back = spectrum_from_json(j);
  EXPECT_EQ(back.side, Side::Left);
  EXPECT_EQ(back.values, s.values);
  EXPECT_EQ(max_abs(back.shear - s.shear), 0.0);
  const auto restored = inverse_geometric_ft_fft(back, pair);
  EXPECT_LT(max_abs_diff(restored.values, f.values), 1e-14);
}

TEST(Io, LatticeAndReports) {
  Matrix G(2, 2);
  G << 1, 0.5, 0, 2;
  const auto L = lattice_from_json(to_json(make_lattice(G)));
  EXPECT_EQ(max_abs(L.generator - G), 0.0);

  const auto rep = poisson_check(standard_gaussian(1), Vector::Zero(1),
                                 PoissonForm::Classical,
                                 make_lattice(Matrix(Matrix::Identity(1, 1))));
  const Json j = to_json(rep);
  EXPECT_EQ(j.at("form"), "classical");
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_GT(j.at("spatial").at("terms").get<int>(), 0);
}

TEST(Io, SuiteReportShape) {
  const auto reports = run_suite("pair.", 7);
  const Json j = suite_report_to_json(reports, 7, "pair.");
  EXPECT_EQ(j.at("summary").at("total").get<std::size_t>(), reports.size());
  EXPECT_TRUE(j.at("summary").at("all_passed").get<bool>());
  EXPECT_FALSE(j.at("checks")[0].contains("runtime_ms"));
  const Json timed = suite_report_to_json(reports, 7, "pair.", true);
  EXPECT_TRUE(timed.at("checks")[0].contains("runtime_ms"));
}

TEST(Io, ParseErrors) {
  const auto expect_parse_error = [](const char* text) {
    try {
      field_from_json(Json::parse(text));
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    }
  };
  expect_parse_error("{}");
  expect_parse_error(R"({"grid": {"shape": [4], "origin": [0], "spacing": [1]},
                         "values": [[0, 0]]})");  // count mismatch
  try {
    structure_from_json(Json::parse(R"({"matrix": [[1, 2], [3]]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  try {
    load_json(tmp_path("missing_file.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}

// ---- CLI end to end ---------------------------------------------------------------

TEST(Cli, PairCommand) {
  const std::string out = tmp_path("pair_out.json");
  ASSERT_EQ(run_cli("pair --in " + samples("structure_shear_2d.json") +
                    " --out " + out),
            0);
  const Json j = load_json(out);
  EXPECT_EQ(j.at("det").get<double>(), 2.0);
  EXPECT_EQ(j.at("inverse")[0][0].get<double>(), 0.5);
  EXPECT_EQ(j.at("inverse")[0][1].get<double>(), -0.5);
  EXPECT_FALSE(j.at("symmetric").get<bool>());
}

TEST(Cli, TransformFftThereAndBack) {
  const std::string spec_out = tmp_path("spec.json");
  const std::string back_out = tmp_path("back.json");
  ASSERT_EQ(run_cli("transform --in " + samples("field_gauss_1d.json") +
                    " --structure " + samples("structure_scale_1d.json") +
                    " --side left --out " + spec_out),
            0);
  const auto s = spectrum_from_json(load_json(spec_out));
  // frequency bin values match the closed form on the whole lattice
  const auto closed = gaussian_geometric_ft(
      standard_gaussian(1), make_pair(Matrix(2 * Matrix::Identity(1, 1))),
      Side::Left);
  double worst = 0;
  for (std::size_t j = 0; j < s.values.size(); ++j)
    worst = std::max(worst,
                     std::abs(s.values[j] - closed.evaluate(s.frequency(j))));
  EXPECT_LT(worst, 1e-12);

  ASSERT_EQ(run_cli("transform --inverse --in " + spec_out + " --structure " +
                    samples("structure_scale_1d.json") + " --side left --out " +
                    back_out),
            0);
  const auto f = field_from_json(load_json(back_out));
  const auto orig = field_from_json(load_json(samples("field_gauss_1d.json")));
  EXPECT_LT(max_abs_diff(f.values, orig.values), 1e-14);
}

TEST(Cli, TransformDirectAtPoints) {
  const std::string out = tmp_path("direct.json");
  ASSERT_EQ(run_cli("transform --method direct --in " +
                    samples("field_gauss_1d.json") + " --structure " +
                    samples("structure_scale_1d.json") + " --freqs " +
                    samples("points_probe_1d.json") + " --out " + out),
            0);
  const Json j = load_json(out);
  const auto vals = values_from_json(j.at("values"));
  ASSERT_EQ(vals.size(), 3u);
  EXPECT_NEAR(vals[0].real(), 1.0, 1e-12);               // xi = 0
  EXPECT_NEAR(vals[2].real(), 0.04321391826377224, 1e-12);  // e^{-pi}
  EXPECT_NEAR(vals[1].real(), 0.45593812776599623677, 1e-12);  // e^{-pi/4}
}

TEST(Cli, TransformCsvOutput) {
  const std::string out = tmp_path("direct_csv.json");
  const std::string csv = tmp_path("direct.csv");
  ASSERT_EQ(run_cli("transform --method direct --in " +
                    samples("field_gauss_1d.json") + " --structure " +
                    samples("structure_scale_1d.json") + " --freqs " +
                    samples("points_probe_1d.json") + " --out " + out +
                    " --csv " + csv),
            0);
  const std::string text = slurp(csv);
  EXPECT_EQ(text.substr(0, 9), "xi_0,re,i");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);  // header + 3 rows
}

TEST(Cli, FracSubordinationValues) {
  const std::string out = tmp_path("frac.json");
  ASSERT_EQ(run_cli("frac --structure " + samples("structure_unit_1d.json") +
                    " --s 0.5 --gaussian " + samples("gaussian_standard_1d.json") +
                    " --points " + samples("points_probe_1d.json") + " --out " +
                    out),
            0);
  const Json j = load_json(out);
  const auto vals = values_from_json(j.at("values"));
  ASSERT_EQ(vals.size(), 3u);
  EXPECT_NEAR(vals[0].real(), 2.0, 1e-9);
  EXPECT_NEAR(vals[2].real(), 0.084868350249138002, 1e-9);
}

TEST(Cli, PoissonClassicalTheta) {
  const std::string out = tmp_path("poisson.json");
  ASSERT_EQ(run_cli("poisson --gaussian " + samples("gaussian_standard_1d.json") +
                    " --x 0 --form classical --lattice " +
                    samples("lattice_z1.json") + " --out " + out),
            0);
  const Json j = load_json(out);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_NEAR(complex_from_json(j.at("lhs")).real(), 1.0864348112133080146,
              1e-12);
  EXPECT_LT(j.at("abs_gap").get<double>(), 1e-10);
}

TEST(Cli, VerifyFilterDeterministicReport) {
  const std::string a = tmp_path("verify_a.json");
  const std::string b = tmp_path("verify_b.json");
  ASSERT_EQ(run_cli("verify --filter pair. --seed 11 --out " + a), 0);
  ASSERT_EQ(run_cli("verify --filter pair. --seed 11 --out " + b), 0);
  const std::string ta = slurp(a), tb = slurp(b);
  ASSERT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);  // byte-identical reruns
  const Json j = load_json(a);
  EXPECT_TRUE(j.at("summary").at("all_passed").get<bool>());
  EXPECT_EQ(j.at("summary").at("filter"), "pair.");
}

TEST(Cli, ExitCodes) {
  // 2: unusable inputs / bad usage
  EXPECT_EQ(run_cli("transform --in /nonexistent.json --structure " +
                    samples("structure_unit_1d.json")),
            2);
  EXPECT_EQ(run_cli("no-such-command"), 2);
  EXPECT_EQ(run_cli("pair"), 2);  // missing required --in

  // 3: degenerate structure
  const std::string degen = tmp_path("degenerate.json");
  spit(degen, R"({"matrix": [[1, 2], [2, 4]]})");
  EXPECT_EQ(run_cli("pair --in " + degen), 3);

  // 4: structure without positive-definite symmetric part
  const std::string skew = tmp_path("skew.json");
  spit(skew, R"({"matrix": [[0, 1], [-1, 0]]})");
  EXPECT_EQ(run_cli("frac --structure " + skew + " --s 0.5 --gaussian " +
                    samples("gaussian_standard_2d.json") + " --points " +
                    samples("points_probe_2d.json")),
            4);

  // 5: exponent outside (0, 1)
  EXPECT_EQ(run_cli("frac --structure " + samples("structure_unit_1d.json") +
                    " --s 1.5 --gaussian " + samples("gaussian_standard_1d.json") +
                    " --points " + samples("points_probe_1d.json")),
            5);

  // 6: requested fixed radius cannot certify the tail
  EXPECT_EQ(run_cli("poisson --gaussian " + samples("gaussian_standard_1d.json") +
                    " --form classical --lattice " + samples("lattice_z1.json") +
                    " --tol 1e-12 --spatial-radius 1 --frequency-radius 1"),
            6);
}

TEST(Cli, FracFieldPathsAgree) {
  // build a small periodic field file, then run the three label routes
  const auto grid = make_grid({8, 8}, Vector::Zero(2),
                              Vector::Constant(2, 0.125), GridMode::Periodic);
  SampledField f{grid, {}};
  Rng rng(3);
  for (std::size_t i = 0; i < grid.total_size(); ++i)
    f.values.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
  const std::string field_path = tmp_path("torus_field.json");
  save_json(field_path, to_json(f));

  const std::string unit2 = tmp_path("unit2.json");
  spit(unit2, R"({"matrix": [[1, 0], [0, 1]]})");
  const std::string out = tmp_path("frac_all.json");
  ASSERT_EQ(run_cli("frac --structure " + unit2 + " --s 0.4 --path all --in " +
                    field_path + " --out " + out),
            0);
  const Json j = load_json(out);
  EXPECT_LT(j.at("max_pairwise_gap").get<double>(), 1e-12);
  EXPECT_EQ(values_from_json(j.at("paths").at("left")).size(),
            grid.total_size());
}
