// End-to-end acceptance gate. Each test prints exactly one summary line:
//   [acceptance] C## <name> PASS|FAIL
// Tolerances are pinned here on purpose; loosening them is a library
// regression, not a test fix.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "geoft/io.hpp"

using namespace geoft;

namespace {

struct Banner {
  const char* tag;
  ~Banner() {
    std::printf("[acceptance] %s %s\n", tag,
                ::testing::Test::HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
  }
};

Matrix random_matrix(Rng& rng, int n, double lo, double hi) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

GeometricPair random_pair(Rng& rng, int n, double max_cond = 50) {
  for (;;) {
    try {
      const auto pair = make_pair(make_structure(random_matrix(rng, n, -2, 2)));
      if (pair.cond_estimate < max_cond) return pair;
    } catch (const Error&) {
    }
  }
}

GeometricPair random_posdef_pair(Rng& rng, int n) {
  const Matrix R = random_matrix(rng, n, -1, 1);
  Matrix S = R * R.transpose() + (0.6 + rng.uniform(0, 0.5)) * Matrix::Identity(n, n);
  Matrix K = random_matrix(rng, n, -0.8, 0.8);
  K = 0.5 * (K - K.transpose());
  return make_pair(make_structure(S + K));
}

GaussianFunction random_gaussian(Rng& rng, int n) {
  const Matrix R = random_matrix(rng, n, -1, 1);
  const Matrix A =
      (0.4 + rng.uniform(0, 0.8)) *
      (R * R.transpose() + (0.5 + rng.uniform(0, 0.5)) * Matrix::Identity(n, n));
  Vector c(n), w(n);
  for (int i = 0; i < n; ++i) {
    c(i) = rng.uniform(-0.6, 0.6);
    w(i) = rng.uniform(-0.8, 0.8);
  }
  return make_gaussian(A, c, Complex(rng.uniform(0.4, 1.2), rng.uniform(-0.6, 0.6)),
                       w);
}

std::vector<Vector> random_probes(Rng& rng, int n, int count, double r) {
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) {
    Vector p(n);
    for (int i = 0; i < n; ++i) p(i) = rng.uniform(-r, r);
    out.push_back(p);
  }
  return out;
}

SampledField random_torus_field(const GridSpec& grid, Rng& rng) {
  SampledField f{grid, {}};
  for (std::size_t i = 0; i < grid.total_size(); ++i)
    f.values.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

GridSpec torus(int n, int pts) {
  return make_grid(std::vector<int>(std::size_t(n), pts), Vector::Zero(n),
                   Vector::Constant(n, 1.0 / pts), GridMode::Periodic);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// C1: pairing identity and determinant product over random structures.
TEST(Acceptance, C01) {
  Banner banner{"C01 geometric-pair-correctness"};
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const auto pair = random_pair(rng, n);
    Matrix P(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        P(i, j) = evaluate(pair.structure, Vector(Vector::Unit(n, i)),
                           Vector(pair.B * Vector::Unit(n, j)));
    EXPECT_LE(max_abs(P - Matrix::Identity(n, n)), 1e-12);
    EXPECT_LE(std::abs(pair.det_b * pair.B.determinant() - 1.0), 1e-12);
  }
}

// C2: FFT route vs direct quadrature on the sheared frequency lattice.
TEST(Acceptance, C02) {
  Banner banner{"C02 transform-oracle-equivalence"};
  Rng rng(102);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pair = random_pair(rng, 2, 20);
    const auto g = random_gaussian(rng, 2);
    const auto f = sample_gaussian(g, default_gaussian_grid(g, 20));
    const Side side = trial % 2 == 0 ? Side::Left : Side::Right;
    const auto s = geometric_ft_fft(f, pair, side);
    const auto direct = geometric_ft_direct(f, pair, side, s.frequencies());
    const double rel =
        max_abs_diff(s.values, direct) / std::max(1e-300, max_abs_value(direct));
    EXPECT_LE(rel, 1e-10) << "trial " << trial;
  }
}

// C3: grid transforms of Gaussians against the closed forms, N = 128 on [-8, 8].
TEST(Acceptance, C03) {
  Banner banner{"C03 gaussian-closed-form-agreement"};
  const auto pair = make_pair(Matrix(2 * Matrix::Identity(1, 1)));
  const auto grid = make_grid({128}, Vector::Constant(1, -8.0),
                              Vector::Constant(1, 16.0 / 128));
  const auto modulated =
      make_gaussian(Matrix(1.3 * Matrix::Identity(1, 1)),
                    Vector::Constant(1, 0.3), Complex(0.9, 0.2),
                    Vector::Constant(1, 0.5));
  for (const auto& g : {standard_gaussian(1), modulated}) {
    const auto f = sample_gaussian(g, grid);
    for (Side side : {Side::Left, Side::Right}) {
      const auto s = geometric_ft_fft(f, pair, side);
      const auto closed = gaussian_geometric_ft(g, pair, side);
      double worst = 0, scale = 0;
      for (std::size_t j = 0; j < s.values.size(); ++j) {
        const Complex truth = closed.evaluate(s.frequency(j));
        worst = std::max(worst, std::abs(s.values[j] - truth));
        scale = std::max(scale, std::abs(truth));
      }
      EXPECT_LE(worst / scale, 1e-8);
    }
  }
}

// C4: inversion round trips (|det b| included) and the composition chains.
TEST(Acceptance, C04) {
  Banner banner{"C04 inversion-and-composition"};
  Rng rng(104);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pair = random_pair(rng, 2);
    const auto g = random_gaussian(rng, 2);
    const auto probes = random_probes(rng, 2, 5, 1.2);
    const double detB = std::abs(1.0 / pair.det_b);
    for (Side side : {Side::Left, Side::Right}) {
      const auto round = gaussian_inverse_geometric_ft(
          gaussian_geometric_ft(g, pair, side), pair, side);
      for (const auto& p : probes)
        EXPECT_LE(std::abs(round.evaluate(p) - g.evaluate(p)), 1e-8);
    }
    // chains: two forward transforms reduce to a weighted reflection/pullback
    const auto LL = gaussian_geometric_ft(gaussian_geometric_ft(g, pair, Side::Left),
                                          pair, Side::Left);
    const auto RR = gaussian_geometric_ft(
        gaussian_geometric_ft(g, pair, Side::Right), pair, Side::Right);
    const auto RL = gaussian_geometric_ft(gaussian_geometric_ft(g, pair, Side::Left),
                                          pair, Side::Right);
    const Matrix CL = (-pair.B.transpose() * pair.M()).inverse();
    const Matrix CR = (-pair.B * pair.M().transpose()).inverse();
    for (const auto& p : probes) {
      EXPECT_LE(std::abs(RL.evaluate(p) - detB * g.evaluate(Vector(-p))), 1e-9);
      EXPECT_LE(std::abs(LL.evaluate(p) - detB * g.evaluate(Vector(CL * p))),
                1e-9);
      EXPECT_LE(std::abs(RR.evaluate(p) - detB * g.evaluate(Vector(CR * p))),
                1e-9);
    }
  }
  // grid route keeps the |det b| factor of the inverse
  const auto pair = random_pair(rng, 2);
  const auto f = random_torus_field(torus(2, 12), rng);
  for (Side side : {Side::Left, Side::Right}) {
    const auto back =
        inverse_geometric_ft_fft(geometric_ft_fft(f, pair, side), pair);
    EXPECT_LE(max_abs_diff(back.values, f.values), 1e-8);
  }
}

// C5: inner-product identities with the |det b| factor, plus duality.
TEST(Acceptance, C05) {
  Banner banner{"C05 parseval-plancherel-duality"};
  Rng rng(105);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pair = random_pair(rng, 2);
    const auto f = random_gaussian(rng, 2);
    const auto g = random_gaussian(rng, 2);
    const double d = std::abs(pair.det_b);
    for (Side side : {Side::Left, Side::Right}) {
      const auto tf = gaussian_geometric_ft(f, pair, side);
      const auto tg = gaussian_geometric_ft(g, pair, side);
      const Complex inner =
          gaussian_integral(gaussian_product(f, gaussian_conjugate(g)));
      const Complex spectral = d * gaussian_integral(gaussian_product(
                                       tf, gaussian_conjugate(tg)));
      EXPECT_LE(std::abs(inner - spectral) / std::max(1.0, std::abs(inner)),
                1e-7);
      const double norm2 = gaussian_l2_norm_sq(f);
      EXPECT_LE(std::abs(norm2 - d * gaussian_l2_norm_sq(tf)) /
                    std::max(1.0, norm2),
                1e-7);
    }
    const Complex dual_l = gaussian_integral(
        gaussian_product(gaussian_geometric_ft(f, pair, Side::Left), g));
    const Complex dual_r = gaussian_integral(
        gaussian_product(f, gaussian_geometric_ft(g, pair, Side::Right)));
    EXPECT_LE(std::abs(dual_l - dual_r) / std::max(1.0, std::abs(dual_l)), 1e-7);
  }
}

// C6: convolution and product theorems with the |det b| factor.
TEST(Acceptance, C06) {
  Banner banner{"C06 convolution-product-theorems"};
  Rng rng(106);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pair = random_pair(rng, 2);
    const auto f = random_gaussian(rng, 2);
    const auto g = random_gaussian(rng, 2);
    const auto probes = random_probes(rng, 2, 4, 1.0);
    const double d = std::abs(pair.det_b);
    for (Side side : {Side::Left, Side::Right}) {
      const auto tf = gaussian_geometric_ft(f, pair, side);
      const auto tg = gaussian_geometric_ft(g, pair, side);
      const auto t_conv = gaussian_geometric_ft(gaussian_convolve(f, g), pair, side);
      const auto t_prod = gaussian_geometric_ft(gaussian_product(f, g), pair, side);
      const auto conv_t = gaussian_convolve(tf, tg);
      for (const auto& p : probes) {
        EXPECT_LE(std::abs(t_conv.evaluate(p) - tf.evaluate(p) * tg.evaluate(p)),
                  1e-6);
        EXPECT_LE(std::abs(t_prod.evaluate(p) - d * conv_t.evaluate(p)), 1e-6);
      }
    }
  }
}

// C7: translation, modulation, and dilation laws.
TEST(Acceptance, C07) {
  Banner banner{"C07 translation-modulation-dilation"};
  Rng rng(107);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pair = random_pair(rng, 2);
    const auto g = random_gaussian(rng, 2);
    const auto probes = random_probes(rng, 2, 4, 1.0);
    Vector h(2), w(2);
    h << rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8);
    w << rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8);
    const double lam = rng.uniform(0.6, 1.8);
    for (Side side : {Side::Left, Side::Right}) {
      const auto base = gaussian_geometric_ft(g, pair, side);
      const auto t_shift = gaussian_geometric_ft(gaussian_translate(g, h), pair, side);
      const auto t_mod = gaussian_geometric_ft(gaussian_modulate(g, w), pair, side);
      const auto t_dil = gaussian_geometric_ft(gaussian_dilate(g, lam), pair, side);
      const Vector mod_shift =
          side == Side::Left ? Vector(pair.B.transpose() * w) : Vector(pair.B * w);
      for (const auto& p : probes) {
        const double phase = side == Side::Left
                                 ? kTwoPi * evaluate(pair.structure, p, h)
                                 : kTwoPi * evaluate(pair.structure, h, p);
        EXPECT_LE(std::abs(t_shift.evaluate(p) -
                           base.evaluate(p) *
                               Complex(std::cos(phase), std::sin(phase))),
                  1e-8);
        EXPECT_LE(std::abs(t_mod.evaluate(p) - base.evaluate(Vector(p - mod_shift))),
                  1e-8);
        EXPECT_LE(std::abs(t_dil.evaluate(p) -
                           std::pow(lam, -2.0) * base.evaluate(Vector(p / lam))),
                  1e-8);
      }
    }
  }
}

// C8: all eight derivative-exchange laws, derivative orders 1 and 2.
TEST(Acceptance, C08) {
  Banner banner{"C08 derivative-exchange"};
  Rng rng(108);
  const auto pair = random_pair(rng, 2, 20);
  const auto g = random_gaussian(rng, 2);
  const auto probes = random_probes(rng, 2, 10, 0.8);
  for (Side side : {Side::Left, Side::Right})
    for (bool inverse : {false, true})
      for (ExchangeForm form : {ExchangeForm::TransformOfDerivative,
                                ExchangeForm::DerivativeOfTransform})
        for (int order : {1, 2})
          for (int axis : {0, 1}) {
            const double gap = derivative_exchange_gap(g, pair, side, inverse,
                                                       form, axis, probes, order);
            EXPECT_LE(gap, 1e-8)
                << "side=" << (side == Side::Left ? "L" : "R")
                << " inverse=" << inverse << " form=" << int(form)
                << " order=" << order << " axis=" << axis;
          }
}

// C9: plane-wave eigenrelation and the multiplier identity for powers of the
//     second-order operator (both transforms and both directions).
TEST(Acceptance, C09) {
  Banner banner{"C09 plane-wave-and-multiplier"};
  Rng rng(109);
  const auto grid = torus(2, 16);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pair = random_pair(rng, 2);
    Vector m(2);
    m << double(rng.uniform_int(-4, 4)), double(rng.uniform_int(-4, 4));
    for (int sign : {+1, -1}) {
      const auto chk =
          plane_wave_eigen_residual(grid, pair, Vector(pair.B * m), sign);
      EXPECT_LE(chk.residual, 1e-10);
    }
    const auto f = random_torus_field(grid, rng);
    for (int power : {1, 2}) {
      for (Side side : {Side::Left, Side::Right}) {
        // forward: transform of Lap^m f equals multiplier times transform of f
        const auto lhs = geometric_ft_fft(b_laplacian(f, pair, power), pair, side);
        const auto base = geometric_ft_fft(f, pair, side);
        double worst = 0, scale = 0;
        for (std::size_t j = 0; j < base.values.size(); ++j) {
          const Vector xi = base.frequency(j);
          const double q = evaluate(pair.structure, xi, xi);
          const Complex want =
              std::pow(-4.0 * kPi * kPi * q, power) * base.values[j];
          worst = std::max(worst, std::abs(lhs.values[j] - want));
          scale = std::max(scale, std::abs(want));
        }
        EXPECT_LE(worst / std::max(1.0, scale), 1e-10);

        // inverse: Lap^m applied to the inverse transform of a spectrum
        auto spec = geometric_ft_fft(f, pair, side);
        const auto inv = inverse_geometric_ft_fft(spec, pair);
        const auto lap_inv = b_laplacian(inv, pair, power);
        auto weighted = spec;
        for (std::size_t j = 0; j < weighted.values.size(); ++j) {
          const Vector xi = weighted.frequency(j);
          const double q = evaluate(pair.structure, xi, xi);
          weighted.values[j] *= std::pow(-4.0 * kPi * kPi * q, power);
        }
        const auto rhs = inverse_geometric_ft_fft(weighted, pair);
        EXPECT_LE(max_abs_diff(lap_inv.values, rhs.values) /
                      std::max(1.0, max_abs_value(rhs.values)),
                  1e-10);
      }
    }
  }
}

// C10: norm identity for operator powers m = 0, 1.
TEST(Acceptance, C10) {
  Banner banner{"C10 sobolev-identity"};
  Rng rng(110);
  for (int trial = 0; trial < 4; ++trial) {
    const auto pair = random_pair(rng, 2);
    const auto f = random_torus_field(torus(2, 16), rng);
    for (int m : {0, 1})
      for (Side side : {Side::Left, Side::Right}) {
        const auto sides = sobolev_identity_sides(f, pair, side, m);
        EXPECT_LE(std::abs(sides.derivative_side - sides.multiplier_side) /
                      std::max(1.0, sides.derivative_side),
                  1e-6);
      }
  }
}

// C11: symmetry-group compatibility of transforms and operators.
TEST(Acceptance, C11) {
  Banner banner{"C11 group-compatibility"};
  Rng rng(111);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pair = random_pair(rng, 2);
    const auto sample = sample_group_element(pair, rng, 0.6);
    if (sample.trivial_algebra) continue;
    EXPECT_LE(group_residual(pair, sample.A), 1e-10);

    const auto g = random_gaussian(rng, 2);
    const auto probes = random_probes(rng, 2, 4, 1.0);
    for (Side side : {Side::Left, Side::Right}) {
      const auto lhs = gaussian_geometric_ft(gaussian_tau(g, sample.A), pair, side);
      const auto rhs = gaussian_tau(gaussian_geometric_ft(g, pair, side), sample.A);
      for (const auto& p : probes)
        EXPECT_LE(std::abs(lhs.evaluate(p) - rhs.evaluate(p)), 1e-8);
    }
    for (int m : {1, 2}) {
      const auto lap_tau =
          b_laplacian(to_poly_gaussian(gaussian_tau(g, sample.A)), pair, m);
      const auto tau_lap =
          poly_gaussian_tau(b_laplacian(to_poly_gaussian(g), pair, m), sample.A);
      for (const auto& p : probes)
        EXPECT_LE(std::abs(lap_tau.evaluate(p) - tau_lap.evaluate(p)), 1e-7);
    }
  }
  // fractional power commutes with the group action (quadrature route)
  const auto pair = random_posdef_pair(rng, 2);
  const auto fp = make_frac_params(pair, 0.45);
  const auto sample = sample_group_element(pair, rng, 0.5);
  const auto g = standard_gaussian(2);
  Vector x(2);
  x << 0.35, -0.2;
  const auto lhs = frac_laplacian_gaussian(gaussian_tau(g, sample.A), fp, {x});
  const auto rhs = frac_laplacian_gaussian(g, fp, {Vector(sample.A.inverse() * x)});
  EXPECT_LE(std::abs(lhs[0] - rhs[0]), 1e-7);
}

// C12: sided transforms agree exactly when the structure is symmetric, and the
//      canonical shear witnesses a genuine gap.
TEST(Acceptance, C12) {
  Banner banner{"C12 symmetry-characterization"};
  Rng rng(112);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix R = random_matrix(rng, 2, -1, 1);
    const auto pair = make_pair(Matrix(R * R.transpose() +
                                       0.8 * Matrix::Identity(2, 2)));
    const auto g = random_gaussian(rng, 2);
    const auto left = gaussian_geometric_ft(g, pair, Side::Left);
    const auto right = gaussian_geometric_ft(g, pair, Side::Right);
    for (const auto& p : random_probes(rng, 2, 5, 1.2))
      EXPECT_LE(std::abs(left.evaluate(p) - right.evaluate(p)), 1e-10);
  }
  Matrix shear(2, 2);
  shear << 2, 1, 0, 1;
  const auto pair = make_pair(shear);
  const auto g = standard_gaussian(2);
  const auto left = gaussian_geometric_ft(g, pair, Side::Left);
  const auto right = gaussian_geometric_ft(g, pair, Side::Right);
  Vector witness(2);
  witness << 0, 1;
  EXPECT_GE(std::abs(left.evaluate(witness) - right.evaluate(witness)), 1e-3);
}

// C13: all seven lattice-summation phrasings with certified truncation.
TEST(Acceptance, C13) {
  Banner banner{"C13 poisson-suite"};
  Rng rng(113);
  const PoissonForm lattice_forms[] = {PoissonForm::Classical,
                                       PoissonForm::LeftFromLattice,
                                       PoissonForm::RightFromOpposite};
  const PoissonForm pair_forms[] = {PoissonForm::LatticeLeft,
                                    PoissonForm::LatticeRight,
                                    PoissonForm::InverseLeft,
                                    PoissonForm::InverseRight};
  int cases = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = random_gaussian(rng, 2);
    Vector x(2);
    x << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
    Matrix G(2, 2);
    G << 1.0, rng.uniform(-0.4, 0.4), 0.0, rng.uniform(0.8, 1.4);
    const auto L = make_lattice(G);
    for (PoissonForm form : lattice_forms) {
      const auto rep = poisson_check(g, x, form, L);
      EXPECT_LE(rep.abs_gap, 1e-10) << to_string(form);
      EXPECT_TRUE(rep.passed);
      EXPECT_LE(rep.spatial_tail, rep.tolerance);
      ++cases;
    }
    const auto pair = random_pair(rng, 2, 10);
    for (PoissonForm form : pair_forms) {
      const auto rep = poisson_check(g, x, form, pair);
      EXPECT_LE(rep.abs_gap, 1e-10) << to_string(form);
      EXPECT_TRUE(rep.passed);
      ++cases;
    }
  }
  EXPECT_GE(cases, 20);
}

// C14: fractional operator: path agreement, algebraic laws, and the skew
//      degenerate case of the underlying second-order operator.
TEST(Acceptance, C14) {
  Banner banner{"C14 fractional-operator"};
  Rng rng(114);
  const auto grid = torus(2, 16);
  const auto pair = random_posdef_pair(rng, 2);
  const auto f = random_torus_field(grid, rng);
  const auto g2 = random_torus_field(grid, rng);

  const auto fp = make_frac_params(pair, 0.4);
  const auto a = frac_laplacian(f, fp, FracPath::Left);
  const auto b = frac_laplacian(f, fp, FracPath::Right);
  const auto c = frac_laplacian(f, fp, FracPath::Classical);
  const double scale = std::max(1.0, max_abs_value(c.values));
  EXPECT_LE(max_abs_diff(a.values, c.values) / scale, 1e-12);
  EXPECT_LE(max_abs_diff(b.values, c.values) / scale, 1e-12);

  // semigroup
  const auto fp1 = make_frac_params(pair, 0.25);
  const auto fp2 = make_frac_params(pair, 0.35);
  const auto fp3 = make_frac_params(pair, 0.6);
  const auto two = frac_laplacian(frac_laplacian(f, fp1), fp2);
  const auto one = frac_laplacian(f, fp3);
  EXPECT_LE(max_abs_diff(two.values, one.values) /
                std::max(1.0, max_abs_value(one.values)),
            1e-10);

  // linearity
  const Complex al(0.7, -0.3), be(-0.2, 0.9);
  SampledField combo{grid, std::vector<Complex>(grid.total_size())};
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    combo.values[i] = al * f.values[i] + be * g2.values[i];
  const auto lhs_lin = frac_laplacian(combo, fp);
  const auto Lf = frac_laplacian(f, fp);
  const auto Lg = frac_laplacian(g2, fp);
  double lin_worst = 0;
  for (std::size_t i = 0; i < combo.values.size(); ++i)
    lin_worst = std::max(lin_worst,
                         std::abs(lhs_lin.values[i] -
                                  (al * Lf.values[i] + be * Lg.values[i])));
  EXPECT_LE(lin_worst / std::max(1.0, max_abs_value(lhs_lin.values)), 1e-12);

  // commutes with derivatives and grid translations
  const auto d_then_L = frac_laplacian(partial_derivative(f, 0), fp);
  const auto L_then_d = partial_derivative(frac_laplacian(f, fp), 0);
  EXPECT_LE(max_abs_diff(d_then_L.values, L_then_d.values) /
                std::max(1.0, max_abs_value(L_then_d.values)),
            1e-11);
  Vector h(2);
  h << 3.0 / 16, -5.0 / 16;
  const auto s_then_L = frac_laplacian(field_translate(f, h), fp);
  const auto L_then_s = field_translate(frac_laplacian(f, fp), h);
  EXPECT_LE(max_abs_diff(s_then_L.values, L_then_s.values) /
                std::max(1.0, max_abs_value(L_then_s.values)),
            1e-12);

  // scaling law via the quadrature route
  const double lam = 1.4, s_exp = 0.4;
  Vector x(2);
  x << 0.3, -0.25;
  const auto gg = standard_gaussian(2);
  const auto dil = frac_laplacian_gaussian(gaussian_dilate(gg, lam), fp, {x});
  const auto at_scaled = frac_laplacian_gaussian(gg, fp, {Vector(lam * x)});
  EXPECT_LE(std::abs(dil[0] - std::pow(lam, 2 * s_exp) * at_scaled[0]), 1e-9);

  // integration by parts (self-adjointness) on the torus
  Complex ip1(0, 0), ip2(0, 0);
  for (std::size_t i = 0; i < grid.total_size(); ++i) {
    ip1 += Lf.values[i] * std::conj(g2.values[i]);
    ip2 += f.values[i] * std::conj(Lg.values[i]);
  }
  EXPECT_LE(std::abs(ip1 - ip2) / std::max(1.0, std::abs(ip1)), 1e-11);

  // norm identity
  const double spatial =
      grid.cell_volume() * pairwise_sum<double>(Lf.values.size(), [&](std::size_t i) {
        return std::norm(Lf.values[i]);
      });
  const auto sp = geometric_ft_fft(f, pair, Side::Left);
  const double dxi =
      std::abs(sp.shear.determinant()) * grid.frequency_cell_volume();
  const double spectral =
      std::abs(pair.det_b) * dxi *
      pairwise_sum<double>(sp.values.size(), [&](std::size_t j) {
        const Vector xi = sp.frequency(j);
        const double q = evaluate(pair.structure, xi, xi);
        return (q > 0 ? std::exp(2 * fp.s * std::log(4 * kPi * kPi * q)) : 0.0) *
               std::norm(sp.values[j]);
      });
  EXPECT_LE(std::abs(spatial - spectral) / std::max(1.0, spatial), 1e-11);

  // skew structure: the second-order operator annihilates everything
  Matrix J(2, 2);
  J << 0, 1, -1, 0;
  const auto skew_pair = make_pair(J);
  const auto lap = b_laplacian(f, skew_pair, 1);
  EXPECT_LE(max_abs_value(lap.values), 1e-10);
}

// C15: byte-identical verification reports across reruns and thread counts.
TEST(Acceptance, C15) {
  Banner banner{"C15 deterministic-verify"};
  const std::string dir = ::testing::TempDir();
  const auto run = [&](const std::string& threads, const std::string& out) {
    const std::string cmd = "GEOFT_THREADS=" + threads + " \"" +
                            GEOFT_CLI_PATH + "\" verify --seed 424242 --out " +
                            out + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const std::string t1 = dir + "geoft_acc_t1.json";
  const std::string t1b = dir + "geoft_acc_t1b.json";
  const std::string t4 = dir + "geoft_acc_t4.json";
  ASSERT_EQ(run("1", t1), 0);
  ASSERT_EQ(run("1", t1b), 0);
  ASSERT_EQ(run("4", t4), 0);
  const std::string a = slurp(t1), b = slurp(t1b), c = slurp(t4);
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}
