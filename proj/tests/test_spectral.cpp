#include <gtest/gtest.h>

#include <cstdlib>

#include "geoft/gaussian.hpp"
#include "geoft/spectral.hpp"

namespace geoft {
namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

GaussianFunction test_gaussian_2d() {
  return make_gaussian(mat2(1.5, 0.3, 0.3, 0.8), vec2(0.4, -0.2),
                       Complex(0.7, 0.25), vec2(0.6, -1.0));
}

SampledField standard_line_field() {
  // [-8, 8) with spacing 1/16
  const auto grid = make_grid({256}, vec1(-8.0), vec1(1.0 / 16.0));
  return sample_gaussian(standard_gaussian(1), grid);
}

TEST(DftDirect, StandardGaussianLine) {
  const auto f = standard_line_field();
  const auto out = dft_direct(f, {vec1(0.0), vec1(0.5)});
  EXPECT_NEAR(std::abs(out[0] - 1.0), 0, 1e-12);
  EXPECT_NEAR(std::abs(out[1] - 0.45593812776599623677), 0, 1e-12);
}

TEST(DftDirect, Errors) {
  const auto f = standard_line_field();
  try {
    dft_direct(f, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyFrequencyList);
  }
  try {
    dft_direct(f, {vec2(0, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  auto periodic = f;
  periodic.grid.mode = GridMode::Periodic;
  try {
    dft_direct(periodic, {vec1(0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedMode);
  }
}

TEST(GeometricDirect, MatchesClosedForm) {
  const auto pair = make_pair(mat2(2, 1, 0, 1));
  const auto g = test_gaussian_2d();
  const auto f = sample_gaussian(g, default_gaussian_grid(g, 128));
  const std::vector<Vector> freqs = {vec2(0, 0), vec2(0.5, -0.25),
                                     vec2(-0.3, 0.8), vec2(1.0, 0.4)};
  for (Side side : {Side::Left, Side::Right}) {
    const auto closed = gaussian_geometric_ft(g, pair, side);
    const auto out = geometric_ft_direct(f, pair, side, freqs);
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      EXPECT_NEAR(std::abs(out[k] - closed.evaluate(freqs[k])), 0, 1e-10);
    }
  }
}

TEST(FftSheared, MatchesClosedFormOnWholeLattice) {
  // Unit-determinant shear keeps the reciprocal lattice from thinning, so the
  // aliasing floor on the full lattice sits far below the tolerance.
  const auto pair = make_pair(mat2(1, 1, 0, 1));
  const auto g = make_gaussian(mat2(1.5, 0.3, 0.3, 0.8), vec2(0.4, -0.2),
                               Complex(0.7, 0.25), vec2(0, 0));
  const auto f = sample_gaussian(g, default_gaussian_grid(g, 160));
  for (Side side : {Side::Left, Side::Right}) {
    const auto s = geometric_ft_fft(f, pair, side);
    const auto closed = gaussian_geometric_ft(g, pair, side);
    double worst = 0;
    for (std::size_t j = 0; j < s.values.size(); ++j) {
      worst = std::max(worst, std::abs(s.values[j] - closed.evaluate(s.frequency(j))));
    }
    EXPECT_LT(worst, 1e-10);
  }
}

TEST(FftSheared, AgreesWithDirectQuadrature) {
  // Same Riemann sum through two implementations; values must match to FFT
  // round-off even where the function itself is far from converged.
  const auto pair = make_pair(mat2(2, 1, 0, 1));
  const auto g = test_gaussian_2d();
  const auto f = sample_gaussian(g, default_gaussian_grid(g, 24));
  for (Side side : {Side::Left, Side::Right}) {
    const auto s = geometric_ft_fft(f, pair, side);
    const auto direct = geometric_ft_direct(f, pair, side, s.frequencies());
    double worst = 0;
    for (std::size_t j = 0; j < direct.size(); ++j)
      worst = std::max(worst, std::abs(s.values[j] - direct[j]));
    EXPECT_LT(worst, 1e-12);
  }
}

TEST(FftSheared, FrequencyLabelsAreShearedBins) {
  const auto pair = make_pair(mat2(2, 1, 0, 1));
  const auto grid = make_grid({4, 4}, vec2(0, 0), vec2(0.25, 0.25));
  SampledField f{grid, std::vector<Complex>(16, Complex(1, 0))};
  const auto s = geometric_ft_fft(f, pair, Side::Left);
  // bin (1, 3): signed integers (1, -1), periods 1 -> zeta = (1, -1)
  const std::size_t flat = 1 * 4 + 3;
  const Vector zeta = vec2(1.0, -1.0);
  EXPECT_LT((s.frequency(flat) - pair.B.transpose() * zeta).cwiseAbs().maxCoeff(),
            1e-15);
  const auto sr = geometric_ft_fft(f, pair, Side::Right);
  EXPECT_LT((sr.frequency(flat) - pair.B * zeta).cwiseAbs().maxCoeff(), 1e-15);
  // lattice generator maps integer vectors to frequencies
  EXPECT_LT((s.lattice_generator() * zeta - s.frequency(flat)).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(FftSheared, ExactRoundTripOnRoughData) {
  // Inversion is exact DFT algebra: no smoothness or decay is needed.
  const auto pair = make_pair(mat2(2, 1, 0, 1));
  Rng rng(413);
  for (GridMode mode : {GridMode::Truncated, GridMode::Periodic}) {
    const auto grid = make_grid({12, 10}, vec2(-1.0, 0.5), vec2(0.21, 0.17), mode);
    SampledField f{grid, {}};
    f.values.reserve(grid.total_size());
    for (std::size_t i = 0; i < grid.total_size(); ++i)
      f.values.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (Side side : {Side::Left, Side::Right}) {
      const auto back = inverse_geometric_ft_fft(geometric_ft_fft(f, pair, side), pair);
      EXPECT_LT(max_abs_diff(back.values, f.values), 1e-13);
    }
  }
}

TEST(InverseDirect, AgreesWithFftInverse) {
  const auto pair = make_pair(mat2(2, 1, 0, 1));
  const auto g = test_gaussian_2d();
  const auto f = sample_gaussian(g, default_gaussian_grid(g, 16));
  for (Side side : {Side::Left, Side::Right}) {
    const auto s = geometric_ft_fft(f, pair, side);
    const auto via_fft = inverse_geometric_ft_fft(s, pair);
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < f.grid.total_size(); ++i)
      pts.push_back(f.grid.point(i));
    const double cell =
        std::abs(s.shear.determinant()) * f.grid.frequency_cell_volume();
    const auto via_sum = inverse_geometric_ft_direct(s.values, s.frequencies(),
                                                     cell, pair, side, pts);
    EXPECT_LT(max_abs_diff(via_sum, via_fft.values), 1e-12);
    EXPECT_LT(max_abs_diff(via_sum, f.values), 1e-12);
  }
}

TEST(Convolve, TruncatedGaussiansMatchClosedForm) {
  const auto f = standard_line_field();
  const auto c = convolve(f, f);
  ASSERT_EQ(c.grid.shape[0], 511);
  EXPECT_NEAR(c.grid.origin(0), -16.0, 1e-15);
  // x = 0 lives at index 256
  EXPECT_NEAR(std::abs(c.values[256] - 0.7071067811865475244), 0, 1e-10);
  const auto closed = gaussian_convolve(standard_gaussian(1), standard_gaussian(1));
  double worst = 0;
  for (std::size_t i = 0; i < c.grid.total_size(); ++i)
    worst = std::max(worst,
                     std::abs(c.values[i] - closed.evaluate(c.grid.point(i))));
  EXPECT_LT(worst, 1e-10);
}

TEST(Convolve, PeriodicPlaneWavesAreOrthogonal) {
  const auto grid = make_grid({16}, vec1(0), vec1(1.0 / 16), GridMode::Periodic);
  const auto e3 = sample_plane_wave(grid, vec1(3), +1);
  const auto e5 = sample_plane_wave(grid, vec1(5), +1);
  const auto same = convolve(e3, e3);
  const auto cross = convolve(e3, e5);
  double worst_same = 0, worst_cross = 0;
  for (std::size_t i = 0; i < grid.total_size(); ++i) {
    worst_same = std::max(worst_same, std::abs(same.values[i] - e3.values[i]));
    worst_cross = std::max(worst_cross, std::abs(cross.values[i]));
  }
  EXPECT_LT(worst_same, 1e-13);
  EXPECT_LT(worst_cross, 1e-13);
}

TEST(Convolve, LayoutMismatchErrors) {
  const auto a = make_grid({8}, vec1(0), vec1(0.5));
  const auto b = make_grid({8}, vec1(0), vec1(0.25));
  SampledField fa{a, std::vector<Complex>(8, 1.0)};
  SampledField fb{b, std::vector<Complex>(8, 1.0)};
  try {
    convolve(fa, fb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridMismatch);
  }
  auto fp = fb;
  fp.grid = a;
  fp.grid.mode = GridMode::Periodic;
  try {
    convolve(fa, fp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridMismatch);
  }
}

TEST(ApplyMultiplier, ActsOnPlaneWaves) {
  const auto grid = make_grid({32}, vec1(0), vec1(1.0 / 32), GridMode::Periodic);
  const auto e3 = sample_plane_wave(grid, vec1(3), +1);
  const auto d = apply_multiplier(e3, [](const Vector& xi) {
    return Complex(0, kTwoPi * xi(0));
  });
  double worst = 0;
  for (std::size_t i = 0; i < grid.total_size(); ++i)
    worst = std::max(worst,
                     std::abs(d.values[i] - Complex(0, kTwoPi * 3) * e3.values[i]));
  EXPECT_LT(worst, 1e-12);
  auto trunc = e3;
  trunc.grid.mode = GridMode::Truncated;
  EXPECT_THROW(apply_multiplier(trunc, [](const Vector&) { return Complex(1, 0); }),
               Error);
}

TEST(Determinism, ThreadCountDoesNotChangeTransforms) {
  const auto pair = make_pair(mat2(2, 1, 0, 1));
  const auto g = test_gaussian_2d();
  const auto f = sample_gaussian(g, default_gaussian_grid(g, 20));
  const auto freqs = geometric_ft_fft(f, pair, Side::Left).frequencies();

  setenv("GEOFT_THREADS", "1", 1);
  const auto one = geometric_ft_direct(f, pair, Side::Left, freqs);
  setenv("GEOFT_THREADS", "4", 1);
  const auto four = geometric_ft_direct(f, pair, Side::Left, freqs);
  unsetenv("GEOFT_THREADS");
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].real(), four[i].real());
    EXPECT_EQ(one[i].imag(), four[i].imag());
  }
}

}  // namespace
}  // namespace geoft
