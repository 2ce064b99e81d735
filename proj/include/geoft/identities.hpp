#pragma once

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>

#include "geoft/fraclap.hpp"
#include "geoft/lattice.hpp"

namespace geoft {

// ---- check harness --------------------------------------------------------------

struct CheckContext {
  uint64_t seed = 0;
  Rng rng{0};
};

struct CheckReport {
  std::string id;
  std::string statement;
  double tolerance = 0;
  double residual = 0;
  bool passed = false;
  uint64_t seed = 0;
  std::string lhs_summary;
  std::string rhs_summary;
  double runtime_ms = 0;  // informational; excluded from canonical serialization
};

struct CheckSpec {
  std::string id;
  std::string statement;  // plain-ASCII formula of the verified relation
  double tolerance = 0;
  std::function<double(CheckContext&, CheckReport&)> run;
};

namespace checks {

inline std::string num(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(9) << v;
  return os.str();
}

inline std::string num(Complex v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(9) << v.real() << (v.imag() < 0 ? "" : "+")
     << v.imag() << "i";
  return os.str();
}

inline Matrix random_matrix(Rng& rng, int n, double lo, double hi) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

inline Vector random_vector(Rng& rng, int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

inline GeometricPair random_pair(Rng& rng, int n, double max_cond = 50) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Matrix M = random_matrix(rng, n, -2, 2);
    try {
      const auto pair = make_pair(make_structure(M));
      if (pair.cond_estimate < max_cond) return pair;
    } catch (const Error&) {
    }
  }
  fail(ErrorKind::Degenerate, "random_pair: sampling failed");
}

// structure with positive-definite symmetric part (valid for heat flow)
inline GeometricPair random_posdef_pair(Rng& rng, int n) {
  const Matrix R = random_matrix(rng, n, -1, 1);
  Matrix S = R * R.transpose() + (0.6 + rng.uniform(0, 0.5)) * Matrix::Identity(n, n);
  Matrix K = random_matrix(rng, n, -0.8, 0.8);
  K = 0.5 * (K - K.transpose());
  return make_pair(make_structure(S + K));
}

inline GaussianFunction random_gaussian(Rng& rng, int n) {
  const Matrix R = random_matrix(rng, n, -1, 1);
  const Matrix A =
      (0.4 + rng.uniform(0, 0.8)) *
      (R * R.transpose() + (0.5 + rng.uniform(0, 0.5)) * Matrix::Identity(n, n));
  const Vector c = random_vector(rng, n, -0.6, 0.6);
  const Vector w = random_vector(rng, n, -0.8, 0.8);
  const Complex amp(rng.uniform(0.4, 1.2), rng.uniform(-0.6, 0.6));
  return make_gaussian(A, c, amp, w);
}

inline std::vector<Vector> random_probes(Rng& rng, int n, int count,
                                         double radius = 1.2) {
  std::vector<Vector> out;
  out.reserve(std::size_t(count));
  for (int k = 0; k < count; ++k)
    out.push_back(random_vector(rng, n, -radius, radius));
  return out;
}

template <typename L, typename R>
double max_gap(const std::vector<Vector>& pts, L&& lhs, R&& rhs) {
  double w = 0;
  for (const auto& p : pts) w = std::max(w, std::abs(lhs(p) - rhs(p)));
  return w;
}

inline SampledField random_torus_field(const GridSpec& grid, Rng& rng) {
  SampledField f{grid, {}};
  f.values.reserve(grid.total_size());
  for (std::size_t i = 0; i < grid.total_size(); ++i)
    f.values.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return f;
}

inline GridSpec torus(int n, int pts) {
  return make_grid(std::vector<int>(std::size_t(n), pts),
                   Vector::Zero(n), Vector::Constant(n, 1.0 / pts),
                   GridMode::Periodic);
}

}  // namespace checks

// ---- catalog ---------------------------------------------------------------------

inline const std::vector<CheckSpec>& check_catalog() {
  using namespace checks;
  static const std::vector<CheckSpec> catalog = [] {
    std::vector<CheckSpec> v;
    auto add = [&v](const char* id, const char* st, double tol,
                    std::function<double(CheckContext&, CheckReport&)> fn) {
      v.push_back(CheckSpec{id, st, tol, std::move(fn)});
    };

    // ---- pair ------------------------------------------------------------------
    add("pair.defining-relation", "b(x, B y) = <x, y> with B = M^{-1}", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 6; ++trial) {
              const auto pair = random_pair(ctx.rng, n);
              const Vector x = random_vector(ctx.rng, n, -1, 1);
              const Vector y = random_vector(ctx.rng, n, -1, 1);
              worst = std::max(worst, std::abs(evaluate(pair.structure, x,
                                                        Vector(pair.B * y)) -
                                               x.dot(y)));
            }
          rep.lhs_summary = "b(x, B y)";
          rep.rhs_summary = "<x, y>";
          return worst;
        });

    add("pair.det-product", "det(M) * det(B) = 1", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 6; ++trial) {
              const auto pair = random_pair(ctx.rng, n);
              worst = std::max(worst,
                               std::abs(pair.det_b * pair.B.determinant() - 1.0));
            }
          rep.lhs_summary = "det(M) det(B)";
          rep.rhs_summary = "1";
          return worst;
        });

    add("pair.opposite-involution",
        "opposite(opposite(b)) = b and B_op = B^T, det unchanged", 1e-14,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 3);
          const auto op = opposite(pair);
          const auto opop = opposite(op);
          double worst = max_abs(op.B - pair.B.transpose());
          worst = std::max(worst, max_abs(opop.structure.M - pair.structure.M));
          worst = std::max(worst, std::abs(op.det_b - pair.det_b));
          rep.lhs_summary = "opposite twice";
          rep.rhs_summary = "original";
          return worst;
        });

    add("pair.adjoint-left", "b(adjL(A) x, y) = b(x, A y)", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int trial = 0; trial < 10; ++trial) {
            const auto pair = random_pair(ctx.rng, 2 + trial % 2);
            const int n = int(pair.B.rows());
            const Matrix A = random_matrix(ctx.rng, n, -1.5, 1.5);
            const Matrix Adj = adjoint(pair, A, Side::Left);
            const Vector x = random_vector(ctx.rng, n, -1, 1);
            const Vector y = random_vector(ctx.rng, n, -1, 1);
            worst = std::max(
                worst, std::abs(evaluate(pair.structure, Vector(Adj * x), y) -
                                evaluate(pair.structure, x, Vector(A * y))));
          }
          rep.lhs_summary = "b(adjL(A) x, y)";
          rep.rhs_summary = "b(x, A y)";
          return worst;
        });

    add("pair.adjoint-right", "b(x, adjR(A) y) = b(A x, y)", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int trial = 0; trial < 10; ++trial) {
            const auto pair = random_pair(ctx.rng, 2 + trial % 2);
            const int n = int(pair.B.rows());
            const Matrix A = random_matrix(ctx.rng, n, -1.5, 1.5);
            const Matrix Adj = adjoint(pair, A, Side::Right);
            const Vector x = random_vector(ctx.rng, n, -1, 1);
            const Vector y = random_vector(ctx.rng, n, -1, 1);
            worst = std::max(
                worst, std::abs(evaluate(pair.structure, x, Vector(Adj * y)) -
                                evaluate(pair.structure, Vector(A * x), y)));
          }
          rep.lhs_summary = "b(x, adjR(A) y)";
          rep.rhs_summary = "b(A x, y)";
          return worst;
        });

    add("pair.quadratic-symmetric-part",
        "b(x, x) = x . (sym(M) x); zero when M is skew", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          const auto pair = random_pair(ctx.rng, 3);
          const Matrix Msym =
              0.5 * (pair.structure.M + pair.structure.M.transpose());
          for (int t = 0; t < 8; ++t) {
            const Vector x = random_vector(ctx.rng, 3, -1.5, 1.5);
            worst = std::max(worst, std::abs(evaluate(pair.structure, x, x) -
                                             x.dot(Msym * x)));
          }
          Matrix J(2, 2);
          J << 0, 1, -1, 0;
          const auto skew = make_structure(J);
          for (int t = 0; t < 4; ++t) {
            const Vector x = random_vector(ctx.rng, 2, -2, 2);
            worst = std::max(worst, std::abs(evaluate(skew, x, x)));
          }
          rep.lhs_summary = "b(x, x)";
          rep.rhs_summary = "x . sym(M) x";
          return worst;
        });

    // ---- group -----------------------------------------------------------------
    add("group.membership-residual",
        "A = exp(X), X B + B X^T = 0  =>  A B A^T = B", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int trial = 0; trial < 6; ++trial) {
            const auto pair = random_pair(ctx.rng, 2 + trial % 2);
            const auto sample = sample_group_element(pair, ctx.rng, 0.7);
            if (sample.trivial_algebra) continue;
            worst = std::max(worst, group_residual(pair, sample.A));
          }
          rep.lhs_summary = "max |A B A^T - B|";
          rep.rhs_summary = "0";
          return worst;
        });

    add("group.determinant-one", "A in G_b  =>  |det A| = 1", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int trial = 0; trial < 6; ++trial) {
            const auto pair = random_pair(ctx.rng, 2 + trial % 2);
            const auto sample = sample_group_element(pair, ctx.rng, 0.7);
            if (sample.trivial_algebra) continue;
            worst = std::max(worst, std::abs(std::abs(sample.A.determinant()) - 1));
          }
          rep.lhs_summary = "|det A|";
          rep.rhs_summary = "1";
          return worst;
        });

    add("group.algebra-characterization",
        "basis elements X of the algebra satisfy X B + B X^T = 0", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int trial = 0; trial < 6; ++trial) {
            const auto pair = random_pair(ctx.rng, 2 + trial % 2);
            for (const Matrix& X : lie_algebra_basis(pair))
              worst = std::max(worst, lie_algebra_residual(pair, X));
          }
          rep.lhs_summary = "max |X B + B X^T|";
          rep.rhs_summary = "0";
          return worst;
        });

    add("group.adjoint-is-inverse", "A in G_b  =>  adjL(A) = A^{-1}", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          double worst = 0;
          for (int trial = 0; trial < 6; ++trial) {
            const auto pair = random_pair(ctx.rng, 2);
            const auto sample = sample_group_element(pair, ctx.rng, 0.6);
            if (sample.trivial_algebra) continue;
            const Matrix P = adjoint(pair, sample.A, Side::Left) * sample.A;
            worst = std::max(worst, max_abs(P - Matrix::Identity(2, 2)));
          }
          rep.lhs_summary = "adjL(A) A";
          rep.rhs_summary = "identity";
          return worst;
        });

    // ---- gradient ----------------------------------------------------------------
    add("grad.sided-components",
        "left gradient = B^T grad, right gradient = B grad", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto grid = torus(2, 16);
          Vector k(2);
          k << 3, -2;
          const auto wave = sample_plane_wave(grid, k, +1);
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto grad = geometric_gradient(wave, pair, side);
            const Matrix C =
                side == Side::Left ? Matrix(pair.B.transpose()) : pair.B;
            const Vector expo = C * k;
            for (int j = 0; j < 2; ++j)
              for (std::size_t i = 0; i < grid.total_size(); ++i)
                worst = std::max(worst,
                                 std::abs(grad[std::size_t(j)].values[i] -
                                          Complex(0, kTwoPi * expo(j)) *
                                              wave.values[i]));
          }
          rep.lhs_summary = "gradient components";
          rep.rhs_summary = "2 pi i (C k)_j wave";
          return worst;
        });

    add("grad.divergence-gives-laplacian",
        "sum_j d_j (B grad f)_j = sum_{k,l} B_kl d_k d_l f", 1e-9,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto grid = torus(2, 16);
          const auto f = random_torus_field(grid, ctx.rng);
          const auto lap = b_laplacian(f, pair, 1);
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto grad = geometric_gradient(f, pair, side);
            std::vector<Complex> div(grid.total_size(), Complex(0, 0));
            for (int j = 0; j < 2; ++j) {
              const auto dj = partial_derivative(grad[std::size_t(j)], j);
              for (std::size_t i = 0; i < div.size(); ++i) div[i] += dj.values[i];
            }
            const double scale = std::max(1.0, max_abs_value(lap.values));
            worst = std::max(worst, max_abs_diff(div, lap.values) / scale);
          }
          rep.lhs_summary = "div of sided gradient";
          rep.rhs_summary = "second-order operator";
          return worst;
        });

    // ---- transform ----------------------------------------------------------------
    add("transform.scalar-example",
        "M = [2]: FL[e^{-pi x^2}](xi) = e^{-4 pi xi^2}; value e^{-pi/4} at 1/4",
        1e-12, [](CheckContext&, CheckReport& rep) {
          const auto pair = make_pair(Matrix(2 * Matrix::Identity(1, 1)));
          const auto g = standard_gaussian(1);
          const auto closed = gaussian_geometric_ft(g, pair, Side::Left);
          Vector q(1);
          q << 0.25;
          double worst = std::abs(closed.evaluate(q) - 0.45593812776599623677);
          const auto grid = make_grid({256}, Vector::Constant(1, -8.0),
                                      Vector::Constant(1, 1.0 / 16));
          const auto f = sample_gaussian(g, grid);
          const auto vals = geometric_ft_direct(f, pair, Side::Left, {q});
          worst = std::max(worst, std::abs(vals[0] - 0.45593812776599623677));
          rep.lhs_summary = "closed form and quadrature";
          rep.rhs_summary = "e^{ -pi / 4 }";
          return worst;
        });

    add("transform.left-is-sheared-classical", "FL[f](xi) = (F f)(M^T xi)", 1e-9,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto field = sample_gaussian(g, default_gaussian_grid(g, 128));
          const auto probes = random_probes(ctx.rng, 2, 4, 0.9);
          const auto vals = geometric_ft_direct(field, pair, Side::Left, probes);
          const auto cf = gaussian_classical_ft(g);
          double worst = 0;
          for (std::size_t i = 0; i < probes.size(); ++i)
            worst = std::max(
                worst, std::abs(vals[i] - cf.evaluate(Vector(
                                    pair.M().transpose() * probes[i]))));
          rep.lhs_summary = "left transform by quadrature";
          rep.rhs_summary = "classical transform at M^T xi";
          return worst;
        });

    add("transform.right-is-sheared-classical", "FR[f](xi) = (F f)(M xi)", 1e-9,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto field = sample_gaussian(g, default_gaussian_grid(g, 128));
          const auto probes = random_probes(ctx.rng, 2, 4, 0.9);
          const auto vals = geometric_ft_direct(field, pair, Side::Right, probes);
          const auto cf = gaussian_classical_ft(g);
          double worst = 0;
          for (std::size_t i = 0; i < probes.size(); ++i)
            worst = std::max(worst, std::abs(vals[i] - cf.evaluate(Vector(
                                                pair.M() * probes[i]))));
          rep.lhs_summary = "right transform by quadrature";
          rep.rhs_summary = "classical transform at M xi";
          return worst;
        });

    add("transform.fft-matches-direct",
        "sheared-FFT route equals direct quadrature on the whole bin lattice",
        1e-11, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto f = sample_gaussian(g, default_gaussian_grid(g, 24));
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto s = geometric_ft_fft(f, pair, side);
            const auto direct = geometric_ft_direct(f, pair, side, s.frequencies());
            worst = std::max(worst, max_abs_diff(s.values, direct));
          }
          rep.lhs_summary = "fft route";
          rep.rhs_summary = "direct quadrature";
          return worst;
        });

    add("transform.left-right-opposite", "FR_b[f] = FL_{b_op}[f]", 1e-13,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto right = gaussian_geometric_ft(g, pair, Side::Right);
          const auto left_op = gaussian_geometric_ft(g, opposite(pair), Side::Left);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return right.evaluate(p); },
                      [&](const Vector& p) { return left_op.evaluate(p); });
          rep.lhs_summary = "right transform";
          rep.rhs_summary = "left transform of opposite structure";
          return worst;
        });

    add("transform.integral-is-value-at-zero",
        "integral of f = FL[f](0) = FR[f](0)", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto field = sample_gaussian(g, default_gaussian_grid(g, 128));
          const Complex quad =
              field.grid.cell_volume() *
              pairwise_sum<Complex>(field.values.size(),
                                    [&](std::size_t i) { return field.values[i]; });
          const Complex l = gaussian_geometric_ft(g, pair, Side::Left)
                                .evaluate(Vector::Zero(2));
          const Complex r = gaussian_geometric_ft(g, pair, Side::Right)
                                .evaluate(Vector::Zero(2));
          const double worst = std::max(std::abs(quad - l), std::abs(quad - r));
          rep.lhs_summary = num(quad);
          rep.rhs_summary = num(l);
          return worst;
        });

    // ---- composition ----------------------------------------------------------------
    add("compose.right-after-left-reflects",
        "FR_b FL_b f = |det B| f(-x)", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto chain = gaussian_geometric_ft(
              gaussian_geometric_ft(g, pair, Side::Left), pair, Side::Right);
          const double detB = std::abs(1.0 / pair.det_b);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst = max_gap(
              probes, [&](const Vector& p) { return chain.evaluate(p); },
              [&](const Vector& p) { return detB * g.evaluate(Vector(-p)); });
          rep.lhs_summary = "FR(FL f)";
          rep.rhs_summary = "|det B| f(-x)";
          return worst;
        });

    add("compose.left-after-right",
        "FL_b FR_b f = |det B| f(-(B^T B^{-T})^{-1} x)", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto chain = gaussian_geometric_ft(
              gaussian_geometric_ft(g, pair, Side::Right), pair, Side::Left);
          const double detB = std::abs(1.0 / pair.det_b);
          const Matrix C =
              -pair.B.transpose() * pair.M().transpose();  // -B^T B^{-T}
          const auto probes = random_probes(ctx.rng, 2, 6);
          const Matrix Cinv = C.inverse();
          const double worst = max_gap(
              probes, [&](const Vector& p) { return chain.evaluate(p); },
              [&](const Vector& p) { return detB * g.evaluate(Vector(Cinv * p)); });
          rep.lhs_summary = "FL(FR f)";
          rep.rhs_summary = "|det B| pullback of f";
          return worst;
        });

    add("compose.left-squared", "FL_b FL_b f = |det B| f(-(B^T B^{-1})^{-1} x)",
        1e-11, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto chain = gaussian_geometric_ft(
              gaussian_geometric_ft(g, pair, Side::Left), pair, Side::Left);
          const double detB = std::abs(1.0 / pair.det_b);
          const Matrix C = -pair.B.transpose() * pair.M();  // -B^T B^{-1}
          const Matrix Cinv = C.inverse();
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst = max_gap(
              probes, [&](const Vector& p) { return chain.evaluate(p); },
              [&](const Vector& p) { return detB * g.evaluate(Vector(Cinv * p)); });
          rep.lhs_summary = "FL FL f";
          rep.rhs_summary = "|det B| pullback of f";
          return worst;
        });

    add("compose.right-squared", "FR_b FR_b f = |det B| f(-(B B^{-T})^{-1} x)",
        1e-11, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto chain = gaussian_geometric_ft(
              gaussian_geometric_ft(g, pair, Side::Right), pair, Side::Right);
          const double detB = std::abs(1.0 / pair.det_b);
          const Matrix C = -pair.B * pair.M().transpose();  // -B B^{-T}
          const Matrix Cinv = C.inverse();
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst = max_gap(
              probes, [&](const Vector& p) { return chain.evaluate(p); },
              [&](const Vector& p) { return detB * g.evaluate(Vector(Cinv * p)); });
          rep.lhs_summary = "FR FR f";
          rep.rhs_summary = "|det B| pullback of f";
          return worst;
        });

    // ---- inversion ----------------------------------------------------------------
    add("invert.left-formula",
        "FLinv[g](x) = |det b| int g(xi) e^{+2 pi i b(xi, x)} d xi", 1e-9,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto closed = gaussian_inverse_geometric_ft(g, pair, Side::Left);
          const auto grid = default_gaussian_grid(g, 128);
          const auto f = sample_gaussian(g, grid);
          const auto probes = random_probes(ctx.rng, 2, 4, 0.9);
          const auto quad =
              inverse_geometric_ft_direct(f, pair, Side::Left, probes);
          double worst = 0;
          for (std::size_t i = 0; i < probes.size(); ++i)
            worst = std::max(worst, std::abs(quad[i] - closed.evaluate(probes[i])));
          rep.lhs_summary = "quadrature inverse";
          rep.rhs_summary = "closed form";
          return worst;
        });

    add("invert.right-formula",
        "FRinv[g](x) = |det b| int g(xi) e^{+2 pi i b(x, xi)} d xi", 1e-9,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto closed = gaussian_inverse_geometric_ft(g, pair, Side::Right);
          const auto grid = default_gaussian_grid(g, 128);
          const auto f = sample_gaussian(g, grid);
          const auto probes = random_probes(ctx.rng, 2, 4, 0.9);
          const auto quad =
              inverse_geometric_ft_direct(f, pair, Side::Right, probes);
          double worst = 0;
          for (std::size_t i = 0; i < probes.size(); ++i)
            worst = std::max(worst, std::abs(quad[i] - closed.evaluate(probes[i])));
          rep.lhs_summary = "quadrature inverse";
          rep.rhs_summary = "closed form";
          return worst;
        });

    add("invert.left-round-trip", "FLinv[FL[f]] = f", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto round = gaussian_inverse_geometric_ft(
              gaussian_geometric_ft(g, pair, Side::Left), pair, Side::Left);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return round.evaluate(p); },
                      [&](const Vector& p) { return g.evaluate(p); });
          rep.lhs_summary = "inverse of forward";
          rep.rhs_summary = "original";
          return worst;
        });

    add("invert.right-round-trip", "FRinv[FR[f]] = f", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto round = gaussian_inverse_geometric_ft(
              gaussian_geometric_ft(g, pair, Side::Right), pair, Side::Right);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return round.evaluate(p); },
                      [&](const Vector& p) { return g.evaluate(p); });
          rep.lhs_summary = "inverse of forward";
          rep.rhs_summary = "original";
          return worst;
        });

    add("invert.fft-exact",
        "grid transform followed by its inverse reproduces any samples", 1e-13,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          Vector origin(2), spacing(2);
          origin << -1.0, 0.5;
          spacing << 0.21, 0.17;
          const auto grid = make_grid({12, 10}, origin, spacing);
          auto f = SampledField{grid, {}};
          for (std::size_t i = 0; i < grid.total_size(); ++i)
            f.values.emplace_back(ctx.rng.uniform(-1, 1), ctx.rng.uniform(-1, 1));
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto back =
                inverse_geometric_ft_fft(geometric_ft_fft(f, pair, side), pair);
            worst = std::max(worst, max_abs_diff(back.values, f.values));
          }
          rep.lhs_summary = "round trip";
          rep.rhs_summary = "identity";
          return worst;
        });

    // ---- symmetry ----------------------------------------------------------------
    add("sym.symmetric-structure-sides-agree",
        "M = M^T  =>  FL[f] = FR[f]", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          Matrix R = random_matrix(ctx.rng, 2, -1, 1);
          const Matrix M = R * R.transpose() + 0.8 * Matrix::Identity(2, 2);
          const auto pair = make_pair(M);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto left = gaussian_geometric_ft(g, pair, Side::Left);
          const auto right = gaussian_geometric_ft(g, pair, Side::Right);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return left.evaluate(p); },
                      [&](const Vector& p) { return right.evaluate(p); });
          rep.lhs_summary = "left transform";
          rep.rhs_summary = "right transform";
          return worst;
        });

    add("sym.rotation-radial-sides-agree",
        "rotation structure, radial f  =>  FL[f] = FR[f]", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const double th = ctx.rng.uniform(0.3, 1.2);
          Matrix M(2, 2);
          M << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
          const auto pair = make_pair(M);
          const auto g = standard_gaussian(2);
          const auto left = gaussian_geometric_ft(g, pair, Side::Left);
          const auto right = gaussian_geometric_ft(g, pair, Side::Right);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return left.evaluate(p); },
                      [&](const Vector& p) { return right.evaluate(p); });
          rep.lhs_summary = "left transform";
          rep.rhs_summary = "right transform";
          return worst;
        });

    // ---- equivariance ----------------------------------------------------------------
    add("equiv.left-commutes-with-group",
        "A in G_b:  FL[f(A^{-1} .)] = (FL f)(A^{-1} .)", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto sample = sample_group_element(pair, ctx.rng, 0.6);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs =
              gaussian_geometric_ft(gaussian_tau(g, sample.A), pair, Side::Left);
          const auto rhs =
              gaussian_tau(gaussian_geometric_ft(g, pair, Side::Left), sample.A);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return lhs.evaluate(p); },
                      [&](const Vector& p) { return rhs.evaluate(p); });
          rep.lhs_summary = "transform of pullback";
          rep.rhs_summary = "pullback of transform";
          return worst;
        });

    add("equiv.right-commutes-with-group",
        "A in G_b:  FR[f(A^{-1} .)] = (FR f)(A^{-1} .)", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto sample = sample_group_element(pair, ctx.rng, 0.6);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs =
              gaussian_geometric_ft(gaussian_tau(g, sample.A), pair, Side::Right);
          const auto rhs =
              gaussian_tau(gaussian_geometric_ft(g, pair, Side::Right), sample.A);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return lhs.evaluate(p); },
                      [&](const Vector& p) { return rhs.evaluate(p); });
          rep.lhs_summary = "transform of pullback";
          rep.rhs_summary = "pullback of transform";
          return worst;
        });

    add("equiv.general-linear-law",
        "FL[f(A^{-1} .)](xi) = |det A| FL[f](adjL(A) xi)", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          Matrix A = random_matrix(ctx.rng, 2, -1.5, 1.5);
          while (std::abs(A.determinant()) < 0.3)
            A = random_matrix(ctx.rng, 2, -1.5, 1.5);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs = gaussian_geometric_ft(gaussian_tau(g, A), pair, Side::Left);
          const auto base = gaussian_geometric_ft(g, pair, Side::Left);
          const double dA = std::abs(A.determinant());
          const Matrix AdjL = adjoint(pair, A, Side::Left);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst = max_gap(
              probes, [&](const Vector& p) { return lhs.evaluate(p); },
              [&](const Vector& p) { return dA * base.evaluate(Vector(AdjL * p)); });
          rep.lhs_summary = "transform of pullback";
          rep.rhs_summary = "|det A| transform at adjL(A) xi";
          return worst;
        });

    // ---- conjugation / elementary laws ------------------------------------------
    add("conj.conjugation-law", "FL[conj f](xi) = conj(FL[f](-xi))", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs =
              gaussian_geometric_ft(gaussian_conjugate(g), pair, Side::Left);
          const auto base = gaussian_geometric_ft(g, pair, Side::Left);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst = max_gap(
              probes, [&](const Vector& p) { return lhs.evaluate(p); },
              [&](const Vector& p) {
                return std::conj(base.evaluate(Vector(-p)));
              });
          rep.lhs_summary = "transform of conjugate";
          rep.rhs_summary = "conjugate reflected transform";
          return worst;
        });

    add("shift.translation-law",
        "FL[f(. + h)](xi) = e^{2 pi i b(xi, h)} FL[f](xi)", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const Vector h = random_vector(ctx.rng, 2, -0.8, 0.8);
          const auto probes = random_probes(ctx.rng, 2, 6);
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto lhs =
                gaussian_geometric_ft(gaussian_translate(g, h), pair, side);
            const auto base = gaussian_geometric_ft(g, pair, side);
            worst = std::max(
                worst,
                max_gap(probes, [&](const Vector& p) { return lhs.evaluate(p); },
                        [&](const Vector& p) {
                          const double phase =
                              side == Side::Left
                                  ? kTwoPi * evaluate(pair.structure, p, h)
                                  : kTwoPi * evaluate(pair.structure, h, p);
                          return base.evaluate(p) *
                                 Complex(std::cos(phase), std::sin(phase));
                        }));
          }
          rep.lhs_summary = "transform of shifted f";
          rep.rhs_summary = "phase times transform";
          return worst;
        });

    add("shift.modulation-law",
        "FL[e^{2 pi i <w, .>} f](xi) = FL[f](xi - B^T w)", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const Vector w = random_vector(ctx.rng, 2, -0.8, 0.8);
          const auto probes = random_probes(ctx.rng, 2, 6);
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto lhs =
                gaussian_geometric_ft(gaussian_modulate(g, w), pair, side);
            const auto base = gaussian_geometric_ft(g, pair, side);
            const Vector shift = side == Side::Left
                                     ? Vector(pair.B.transpose() * w)
                                     : Vector(pair.B * w);
            worst = std::max(
                worst,
                max_gap(probes, [&](const Vector& p) { return lhs.evaluate(p); },
                        [&](const Vector& p) {
                          return base.evaluate(Vector(p - shift));
                        }));
          }
          rep.lhs_summary = "transform of modulated f";
          rep.rhs_summary = "shifted transform";
          return worst;
        });

    add("shift.dilation-law",
        "FL[f(lambda .)](xi) = lambda^{-n} FL[f](xi / lambda)", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const double lam = ctx.rng.uniform(0.6, 1.8);
          const auto probes = random_probes(ctx.rng, 2, 6);
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto lhs =
                gaussian_geometric_ft(gaussian_dilate(g, lam), pair, side);
            const auto base = gaussian_geometric_ft(g, pair, side);
            worst = std::max(
                worst,
                max_gap(probes, [&](const Vector& p) { return lhs.evaluate(p); },
                        [&](const Vector& p) {
                          return std::pow(lam, -2.0) *
                                 base.evaluate(Vector(p / lam));
                        }));
          }
          rep.lhs_summary = "transform of dilated f";
          rep.rhs_summary = "scaled transform";
          return worst;
        });

    // ---- inner products ------------------------------------------------------------
    add("l2.duality-left-right", "int FL[f] g = int f FR[g]", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const Complex lhs = gaussian_integral(
              gaussian_product(gaussian_geometric_ft(f, pair, Side::Left), g));
          const Complex rhs = gaussian_integral(
              gaussian_product(f, gaussian_geometric_ft(g, pair, Side::Right)));
          rep.lhs_summary = num(lhs);
          rep.rhs_summary = num(rhs);
          return std::abs(lhs - rhs);
        });

    add("l2.duality-right-left", "int FR[f] g = int f FL[g]", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const Complex lhs = gaussian_integral(
              gaussian_product(gaussian_geometric_ft(f, pair, Side::Right), g));
          const Complex rhs = gaussian_integral(
              gaussian_product(f, gaussian_geometric_ft(g, pair, Side::Left)));
          rep.lhs_summary = num(lhs);
          rep.rhs_summary = num(rhs);
          return std::abs(lhs - rhs);
        });

    add("l2.parseval-left", "int f conj(g) = |det b| int FL[f] conj(FL[g])",
        1e-11, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const Complex lhs =
              gaussian_integral(gaussian_product(f, gaussian_conjugate(g)));
          const Complex rhs =
              std::abs(pair.det_b) *
              gaussian_integral(gaussian_product(
                  gaussian_geometric_ft(f, pair, Side::Left),
                  gaussian_conjugate(gaussian_geometric_ft(g, pair, Side::Left))));
          rep.lhs_summary = num(lhs);
          rep.rhs_summary = num(rhs);
          return std::abs(lhs - rhs);
        });

    add("l2.parseval-right", "int f conj(g) = |det b| int FR[f] conj(FR[g])",
        1e-11, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const Complex lhs =
              gaussian_integral(gaussian_product(f, gaussian_conjugate(g)));
          const Complex rhs =
              std::abs(pair.det_b) *
              gaussian_integral(gaussian_product(
                  gaussian_geometric_ft(f, pair, Side::Right),
                  gaussian_conjugate(gaussian_geometric_ft(g, pair, Side::Right))));
          rep.lhs_summary = num(lhs);
          rep.rhs_summary = num(rhs);
          return std::abs(lhs - rhs);
        });

    add("l2.plancherel-left", "||f||^2 = |det b| ||FL[f]||^2", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const double lhs = gaussian_l2_norm_sq(f);
          const double rhs =
              std::abs(pair.det_b) *
              gaussian_l2_norm_sq(gaussian_geometric_ft(f, pair, Side::Left));
          rep.lhs_summary = num(lhs);
          rep.rhs_summary = num(rhs);
          return std::abs(lhs - rhs);
        });

    add("l2.plancherel-right", "||f||^2 = |det b| ||FR[f]||^2", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const double lhs = gaussian_l2_norm_sq(f);
          const double rhs =
              std::abs(pair.det_b) *
              gaussian_l2_norm_sq(gaussian_geometric_ft(f, pair, Side::Right));
          rep.lhs_summary = num(lhs);
          rep.rhs_summary = num(rhs);
          return std::abs(lhs - rhs);
        });

    // ---- convolution ----------------------------------------------------------------
    add("conv.convolution-theorem-left", "FL[f * g] = FL[f] FL[g]", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs =
              gaussian_geometric_ft(gaussian_convolve(f, g), pair, Side::Left);
          const auto tf = gaussian_geometric_ft(f, pair, Side::Left);
          const auto tg = gaussian_geometric_ft(g, pair, Side::Left);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst = max_gap(
              probes, [&](const Vector& p) { return lhs.evaluate(p); },
              [&](const Vector& p) { return tf.evaluate(p) * tg.evaluate(p); });
          rep.lhs_summary = "transform of convolution";
          rep.rhs_summary = "product of transforms";
          return worst;
        });

    add("conv.convolution-theorem-right", "FR[f * g] = FR[f] FR[g]", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs =
              gaussian_geometric_ft(gaussian_convolve(f, g), pair, Side::Right);
          const auto tf = gaussian_geometric_ft(f, pair, Side::Right);
          const auto tg = gaussian_geometric_ft(g, pair, Side::Right);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst = max_gap(
              probes, [&](const Vector& p) { return lhs.evaluate(p); },
              [&](const Vector& p) { return tf.evaluate(p) * tg.evaluate(p); });
          rep.lhs_summary = "transform of convolution";
          rep.rhs_summary = "product of transforms";
          return worst;
        });

    add("conv.product-theorem-left", "FL[f g] = |det b| (FL[f] * FL[g])", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs =
              gaussian_geometric_ft(gaussian_product(f, g), pair, Side::Left);
          const auto conv =
              gaussian_convolve(gaussian_geometric_ft(f, pair, Side::Left),
                                gaussian_geometric_ft(g, pair, Side::Left));
          const double w = std::abs(pair.det_b);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return lhs.evaluate(p); },
                      [&](const Vector& p) { return w * conv.evaluate(p); });
          rep.lhs_summary = "transform of product";
          rep.rhs_summary = "|det b| convolution of transforms";
          return worst;
        });

    add("conv.product-theorem-right", "FR[f g] = |det b| (FR[f] * FR[g])", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_gaussian(ctx.rng, 2);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lhs =
              gaussian_geometric_ft(gaussian_product(f, g), pair, Side::Right);
          const auto conv =
              gaussian_convolve(gaussian_geometric_ft(f, pair, Side::Right),
                                gaussian_geometric_ft(g, pair, Side::Right));
          const double w = std::abs(pair.det_b);
          const auto probes = random_probes(ctx.rng, 2, 6);
          const double worst =
              max_gap(probes, [&](const Vector& p) { return lhs.evaluate(p); },
                      [&](const Vector& p) { return w * conv.evaluate(p); });
          rep.lhs_summary = "transform of product";
          rep.rhs_summary = "|det b| convolution of transforms";
          return worst;
        });

    add("conv.grid-matches-closed-form",
        "grid convolution of sampled Gaussians equals the closed form", 1e-9,
        [](CheckContext&, CheckReport& rep) {
          const auto g = standard_gaussian(1);
          const auto grid = make_grid({256}, Vector::Constant(1, -8.0),
                                      Vector::Constant(1, 1.0 / 16));
          const auto f = sample_gaussian(g, grid);
          const auto c = convolve(f, f);
          const auto closed = gaussian_convolve(g, g);
          double worst = 0;
          for (std::size_t i = 0; i < c.grid.total_size(); ++i)
            worst = std::max(
                worst, std::abs(c.values[i] - closed.evaluate(c.grid.point(i))));
          rep.lhs_summary = "grid convolution";
          rep.rhs_summary = "closed form";
          return worst;
        });

    // ---- derivative exchange ---------------------------------------------------------
    {
      struct DerivCase {
        const char* id;
        const char* st;
        Side side;
        bool inverse;
        ExchangeForm form;
      };
      const DerivCase cases[] = {
          {"deriv.left-forward-multiplier",
           "FL[d_j f](xi) = 2 pi i (M^T xi)_j FL[f](xi)", Side::Left, false,
           ExchangeForm::TransformOfDerivative},
          {"deriv.left-forward-weight",
           "d_j FL[f](xi) = -2 pi i FL[(M x)_j f](xi)", Side::Left, false,
           ExchangeForm::DerivativeOfTransform},
          {"deriv.right-forward-multiplier",
           "FR[d_j f](xi) = 2 pi i (M xi)_j FR[f](xi)", Side::Right, false,
           ExchangeForm::TransformOfDerivative},
          {"deriv.right-forward-weight",
           "d_j FR[f](xi) = -2 pi i FR[(M^T x)_j f](xi)", Side::Right, false,
           ExchangeForm::DerivativeOfTransform},
          {"deriv.left-inverse-multiplier",
           "FLinv[d_j g](x) = -2 pi i (M x)_j FLinv[g](x)", Side::Left, true,
           ExchangeForm::TransformOfDerivative},
          {"deriv.left-inverse-weight",
           "d_j FLinv[g](x) = 2 pi i FLinv[(M^T xi)_j g](x)", Side::Left, true,
           ExchangeForm::DerivativeOfTransform},
          {"deriv.right-inverse-multiplier",
           "FRinv[d_j g](x) = -2 pi i (M^T x)_j FRinv[g](x)", Side::Right, true,
           ExchangeForm::TransformOfDerivative},
          {"deriv.right-inverse-weight",
           "d_j FRinv[g](x) = 2 pi i FRinv[(M xi)_j g](x)", Side::Right, true,
           ExchangeForm::DerivativeOfTransform},
      };
      for (const auto& c : cases) {
        add(c.id, c.st, 1e-7,
            [c](CheckContext& ctx, CheckReport& rep) {
              const auto pair = random_pair(ctx.rng, 2, 20);
              const auto g = random_gaussian(ctx.rng, 2);
              const auto probes = random_probes(ctx.rng, 2, 3, 0.8);
              double worst = 0;
              for (int axis = 0; axis < 2; ++axis)
                worst = std::max(
                    worst, derivative_exchange_gap(g, pair, c.side, c.inverse,
                                                   c.form, axis, probes));
              rep.lhs_summary = "quadrature route";
              rep.rhs_summary = "closed-form route";
              return worst;
            });
      }
    }

    // ---- plane waves and the second-order operator -------------------------------------
    add("wave.plane-eigenrelation",
        "Lap_b e^{+-2 pi i b(x, xi)} = -4 pi^2 b(xi, xi) e^{+-2 pi i b(x, xi)}",
        1e-9, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto grid = torus(2, 16);
          double worst = 0;
          for (int trial = 0; trial < 3; ++trial) {
            Vector m(2);
            m << double(ctx.rng.uniform_int(-4, 4)), double(ctx.rng.uniform_int(-4, 4));
            const Vector xi = pair.B * m;
            for (int sign : {+1, -1})
              worst = std::max(
                  worst, plane_wave_eigen_residual(grid, pair, xi, sign).residual);
          }
          rep.lhs_summary = "operator applied to wave";
          rep.rhs_summary = "eigenvalue times wave";
          return worst;
        });

    add("lap.forward-left", "FL[Lap_b f] = -4 pi^2 b(xi, xi) FL[f]", 1e-7,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto probes = random_probes(ctx.rng, 2, 3, 0.8);
          rep.lhs_summary = "quadrature route";
          rep.rhs_summary = "closed-form route";
          return laplacian_exchange_gap(g, pair, Side::Left, false, 1, probes);
        });

    add("lap.forward-right", "FR[Lap_b f] = -4 pi^2 b(xi, xi) FR[f]", 1e-7,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto probes = random_probes(ctx.rng, 2, 3, 0.8);
          rep.lhs_summary = "quadrature route";
          rep.rhs_summary = "closed-form route";
          return laplacian_exchange_gap(g, pair, Side::Right, false, 1, probes);
        });

    add("lap.inverse-left", "Lap_b FLinv[g] = FLinv[-4 pi^2 b(xi, xi) g]", 1e-7,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto probes = random_probes(ctx.rng, 2, 3, 0.8);
          rep.lhs_summary = "closed-form route";
          rep.rhs_summary = "quadrature route";
          return laplacian_exchange_gap(g, pair, Side::Left, true, 1, probes);
        });

    add("lap.inverse-right", "Lap_b FRinv[g] = FRinv[-4 pi^2 b(xi, xi) g]", 1e-7,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto probes = random_probes(ctx.rng, 2, 3, 0.8);
          rep.lhs_summary = "closed-form route";
          rep.rhs_summary = "quadrature route";
          return laplacian_exchange_gap(g, pair, Side::Right, true, 1, probes);
        });

    add("lap.second-power",
        "FL[Lap_b^2 f] = (4 pi^2 b(xi, xi))^2 FL[f]", 1e-6,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto probes = random_probes(ctx.rng, 2, 3, 0.8);
          const double a =
              laplacian_exchange_gap(g, pair, Side::Left, false, 2, probes);
          const double b =
              laplacian_exchange_gap(g, pair, Side::Right, true, 2, probes);
          rep.lhs_summary = "quadrature route";
          rep.rhs_summary = "closed-form route";
          return std::max(a, b);
        });

    add("lap.gaussian-closed-form",
        "iterated closed-form operator matches finite differences", 1e-4,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2, 20);
          const auto g = random_gaussian(ctx.rng, 2);
          const auto lap = b_laplacian(to_poly_gaussian(g), pair, 1);
          const double h = 1e-4;
          double worst = 0;
          for (const Vector& x : random_probes(ctx.rng, 2, 3, 0.8)) {
            Complex fd(0, 0);
            for (int k = 0; k < 2; ++k)
              for (int l = 0; l < 2; ++l) {
                if (pair.B(k, l) == 0.0) continue;
                Vector xpp = x, xpm = x, xmp = x, xmm = x;
                xpp(k) += h; xpp(l) += h;
                xpm(k) += h; xpm(l) -= h;
                xmp(k) -= h; xmp(l) += h;
                xmm(k) -= h; xmm(l) -= h;
                fd += pair.B(k, l) *
                      (g.evaluate(xpp) - g.evaluate(xpm) - g.evaluate(xmp) +
                       g.evaluate(xmm)) /
                      (4 * h * h);
              }
            worst = std::max(worst, std::abs(lap.evaluate(x) - fd));
          }
          rep.lhs_summary = "closed form";
          rep.rhs_summary = "finite differences";
          return worst;
        });

    add("sobolev.identity-left",
        "||Lap_b^m f||^2 = (2 pi)^{4m} |det b| int b(xi, xi)^{2m} |FL f|^2",
        1e-12, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_torus_field(torus(2, 16), ctx.rng);
          double worst = 0;
          for (int m : {1, 2}) {
            const auto sides = sobolev_identity_sides(f, pair, Side::Left, m);
            const double scale = std::max(sides.derivative_side, 1.0);
            worst = std::max(
                worst,
                std::abs(sides.derivative_side - sides.multiplier_side) / scale);
          }
          rep.lhs_summary = "derivative side";
          rep.rhs_summary = "multiplier side";
          return worst;
        });

    add("sobolev.identity-right",
        "||Lap_b^m f||^2 = (2 pi)^{4m} |det b| int b(xi, xi)^{2m} |FR f|^2",
        1e-12, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_pair(ctx.rng, 2);
          const auto f = random_torus_field(torus(2, 16), ctx.rng);
          double worst = 0;
          for (int m : {1, 2}) {
            const auto sides = sobolev_identity_sides(f, pair, Side::Right, m);
            const double scale = std::max(sides.derivative_side, 1.0);
            worst = std::max(
                worst,
                std::abs(sides.derivative_side - sides.multiplier_side) / scale);
          }
          rep.lhs_summary = "derivative side";
          rep.rhs_summary = "multiplier side";
          return worst;
        });

    // ---- lattice summation ---------------------------------------------------------
    {
      struct PoissonCase {
        const char* id;
        const char* st;
        PoissonForm form;
        bool lattice_input;
      };
      const PoissonCase cases[] = {
          {"poisson.classical",
           "sum_L f(x + p) = (1/vol) sum_{L*} (F f)(q) e^{2 pi i <q, x>}",
           PoissonForm::Classical, true},
          {"poisson.left-from-lattice",
           "sum_L f(x + p) = |det b| sum_{Z^n} FL[f](k) e^{2 pi i b(k, x)}",
           PoissonForm::LeftFromLattice, true},
          {"poisson.right-from-opposite",
           "sum_L f(x + p) = |det b_op| sum_{Z^n} FR_op[f](k) e^{2 pi i b_op(x, k)}",
           PoissonForm::RightFromOpposite, true},
          {"poisson.lattice-left",
           "sum_{B Z^n} f(x + p) = |det b| sum_{Z^n} FL[f](k) e^{2 pi i b(k, x)}",
           PoissonForm::LatticeLeft, false},
          {"poisson.lattice-right",
           "sum_{B^T Z^n} f(x + p) = |det b| sum_{Z^n} FR[f](k) e^{2 pi i b(x, k)}",
           PoissonForm::LatticeRight, false},
          {"poisson.inverse-left",
           "sum_{B Z^n} f(x + p) = sum_{Z^n} FRinv[f](m) e^{-2 pi i b(m, x)}",
           PoissonForm::InverseLeft, false},
          {"poisson.inverse-right",
           "sum_{B Z^n} f(x + p) = sum_{Z^n} FLinv_op[f](m) e^{-2 pi i b_op(x, m)}",
           PoissonForm::InverseRight, false},
      };
      for (const auto& c : cases) {
        add(c.id, c.st, 1e-10, [c](CheckContext& ctx, CheckReport& rep) {
          const auto g = random_gaussian(ctx.rng, 2);
          const Vector x = random_vector(ctx.rng, 2, -0.5, 0.5);
          PoissonReport pr;
          if (c.lattice_input) {
            Matrix G(2, 2);
            G << 1.0, ctx.rng.uniform(-0.4, 0.4), 0.0, ctx.rng.uniform(0.8, 1.4);
            pr = poisson_check(g, x, c.form, make_lattice(G));
          } else {
            const auto pair = random_pair(ctx.rng, 2, 10);
            pr = poisson_check(g, x, c.form, pair);
          }
          rep.lhs_summary = num(pr.lhs);
          rep.rhs_summary = num(pr.rhs);
          return pr.abs_gap;
        });
      }
    }

    // ---- fractional power ------------------------------------------------------------
    add("frac.paths-agree",
        "left / right / classical frequency labels give one operator", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const auto fp = make_frac_params(pair, ctx.rng.uniform(0.2, 0.8));
          const auto f = random_torus_field(torus(2, 16), ctx.rng);
          const auto a = frac_laplacian(f, fp, FracPath::Left);
          const auto b = frac_laplacian(f, fp, FracPath::Right);
          const auto c = frac_laplacian(f, fp, FracPath::Classical);
          const double scale = std::max(1.0, max_abs_value(c.values));
          const double worst = std::max(max_abs_diff(a.values, c.values),
                                        max_abs_diff(b.values, c.values)) /
                               scale;
          rep.lhs_summary = "three label routes";
          rep.rhs_summary = "single operator";
          return worst;
        });

    add("frac.semigroup", "Ls1 Ls2 f = L(s1+s2) f", 1e-10,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const double s1 = ctx.rng.uniform(0.15, 0.45);
          const double s2 = ctx.rng.uniform(0.15, 0.45);
          const auto f = random_torus_field(torus(2, 16), ctx.rng);
          const auto two = frac_laplacian(
              frac_laplacian(f, make_frac_params(pair, s1)),
              make_frac_params(pair, s2));
          const auto one = frac_laplacian(f, make_frac_params(pair, s1 + s2));
          const double scale = std::max(1.0, max_abs_value(one.values));
          rep.lhs_summary = "two applications";
          rep.rhs_summary = "single application";
          return max_abs_diff(two.values, one.values) / scale;
        });

    add("frac.derivative-commute", "d_j Ls f = Ls d_j f", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const auto fp = make_frac_params(pair, ctx.rng.uniform(0.2, 0.8));
          const auto f = random_torus_field(torus(2, 16), ctx.rng);
          const auto a = partial_derivative(frac_laplacian(f, fp), 0);
          const auto b = frac_laplacian(partial_derivative(f, 0), fp);
          const double scale = std::max(1.0, max_abs_value(a.values));
          rep.lhs_summary = "derivative after operator";
          rep.rhs_summary = "operator after derivative";
          return max_abs_diff(a.values, b.values) / scale;
        });

    add("frac.translation-commute", "T_h Ls f = Ls T_h f (grid shifts)", 1e-12,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const auto fp = make_frac_params(pair, ctx.rng.uniform(0.2, 0.8));
          const auto grid = torus(2, 16);
          const auto f = random_torus_field(grid, ctx.rng);
          Vector h(2);
          h << 3.0 / 16, -5.0 / 16;
          const auto a = field_translate(frac_laplacian(f, fp), h);
          const auto b = frac_laplacian(field_translate(f, h), fp);
          const double scale = std::max(1.0, max_abs_value(a.values));
          rep.lhs_summary = "shift after operator";
          rep.rhs_summary = "operator after shift";
          return max_abs_diff(a.values, b.values) / scale;
        });

    add("frac.scaling-law", "Ls[f(lambda .)](x) = lambda^{2s} (Ls f)(lambda x)",
        1e-9, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const double s = ctx.rng.uniform(0.25, 0.75);
          const auto fp = make_frac_params(pair, s);
          const double lam = ctx.rng.uniform(0.7, 1.6);
          const auto g = standard_gaussian(2);
          const Vector x = random_vector(ctx.rng, 2, -0.6, 0.6);
          const auto lhs = frac_laplacian_gaussian(gaussian_dilate(g, lam), fp, {x});
          const auto rhs = frac_laplacian_gaussian(g, fp, {Vector(lam * x)});
          rep.lhs_summary = num(lhs[0]);
          rep.rhs_summary = num(std::pow(lam, 2 * s) * rhs[0]);
          return std::abs(lhs[0] - std::pow(lam, 2 * s) * rhs[0]);
        });

    add("frac.equivariance", "A in G_b:  Ls[f(A^{-1} .)] = (Ls f)(A^{-1} .)",
        1e-9, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const auto fp = make_frac_params(pair, ctx.rng.uniform(0.3, 0.7));
          const auto sample = sample_group_element(pair, ctx.rng, 0.5);
          const auto g = standard_gaussian(2);
          const Vector x = random_vector(ctx.rng, 2, -0.6, 0.6);
          const auto lhs = frac_laplacian_gaussian(gaussian_tau(g, sample.A), fp, {x});
          const auto rhs =
              frac_laplacian_gaussian(g, fp, {Vector(sample.A.inverse() * x)});
          rep.lhs_summary = num(lhs[0]);
          rep.rhs_summary = num(rhs[0]);
          return std::abs(lhs[0] - rhs[0]);
        });

    add("frac.self-adjoint", "<Ls f, g> = <f, Ls g>", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const auto fp = make_frac_params(pair, ctx.rng.uniform(0.2, 0.8));
          const auto grid = torus(2, 16);
          const auto f = random_torus_field(grid, ctx.rng);
          const auto g = random_torus_field(grid, ctx.rng);
          const auto Lf = frac_laplacian(f, fp);
          const auto Lg = frac_laplacian(g, fp);
          Complex left(0, 0), right(0, 0);
          for (std::size_t i = 0; i < grid.total_size(); ++i) {
            left += Lf.values[i] * std::conj(g.values[i]);
            right += f.values[i] * std::conj(Lg.values[i]);
          }
          left *= grid.cell_volume();
          right *= grid.cell_volume();
          rep.lhs_summary = num(left);
          rep.rhs_summary = num(right);
          return std::abs(left - right) / std::max(1.0, std::abs(left));
        });

    add("frac.l2-identity",
        "||Ls f||^2 = |det b| int (4 pi^2 b(xi, xi))^{2s} |FL f|^2", 1e-11,
        [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const auto fp = make_frac_params(pair, ctx.rng.uniform(0.2, 0.8));
          const auto grid = torus(2, 16);
          const auto f = random_torus_field(grid, ctx.rng);
          const auto Lf = frac_laplacian(f, fp);
          const double spatial =
              grid.cell_volume() *
              pairwise_sum<double>(Lf.values.size(), [&](std::size_t i) {
                return std::norm(Lf.values[i]);
              });
          double worst = 0;
          for (Side side : {Side::Left, Side::Right}) {
            const auto sp = geometric_ft_fft(f, pair, side);
            const double dxi = std::abs(sp.shear.determinant()) *
                               grid.frequency_cell_volume();
            const double spectral =
                std::abs(pair.det_b) * dxi *
                pairwise_sum<double>(sp.values.size(), [&](std::size_t j) {
                  const Vector xi = sp.frequency(j);
                  const double q = evaluate(pair.structure, xi, xi);
                  const double sym =
                      q > 0 ? std::exp(2 * fp.s * std::log(4 * kPi * kPi * q))
                            : 0.0;
                  return sym * std::norm(sp.values[j]);
                });
            worst = std::max(worst, std::abs(spatial - spectral) /
                                        std::max(1.0, spatial));
          }
          rep.lhs_summary = "spatial side";
          rep.rhs_summary = "multiplier side";
          return worst;
        });

    add("frac.frozen-values",
        "subordination route reproduces independently computed reference values",
        1e-9, [](CheckContext&, CheckReport& rep) {
          const auto fp1 =
              make_frac_params(make_pair(Matrix(Matrix::Identity(1, 1))), 0.5);
          Vector z0 = Vector::Zero(1), z5 = Vector::Constant(1, 0.5);
          const auto a = frac_laplacian_gaussian(standard_gaussian(1), fp1, {z0, z5});
          double worst = std::abs(a[0] - 2.0);
          worst = std::max(worst, std::abs(a[1] - 0.084868350249138002096));
          Matrix M(2, 2);
          M << 2, 1, 0, 1;
          const auto fp2 = make_frac_params(make_pair(M), 0.6);
          Vector p(2);
          p << 0.3, -0.2;
          const auto b = frac_laplacian_gaussian(standard_gaussian(2), fp2, {p});
          worst = std::max(worst, std::abs(b[0] - 1.5888614544508989674));
          rep.lhs_summary = "subordination values";
          rep.rhs_summary = "frozen references";
          return worst;
        });

    add("frac.half-power-symbol", "sigma_{1/2}(zeta)^2 = 4 pi^2 b-quadratic(zeta)",
        1e-12, [](CheckContext& ctx, CheckReport& rep) {
          const auto pair = random_posdef_pair(ctx.rng, 2);
          const auto fp = make_frac_params(pair, 0.5);
          const Matrix Bsym = 0.5 * (pair.B + pair.B.transpose());
          double worst = 0;
          for (int t = 0; t < 8; ++t) {
            const Vector z = random_vector(ctx.rng, 2, -3, 3);
            const double sym = frac_symbol(fp, z, FracPath::Classical);
            worst = std::max(
                worst, std::abs(sym * sym - 4 * kPi * kPi * z.dot(Bsym * z)));
          }
          rep.lhs_summary = "sigma^2";
          rep.rhs_summary = "full symbol";
          return worst;
        });

    return v;
  }();
  return catalog;
}

// ---- runners ---------------------------------------------------------------------

inline CheckReport run_check(const CheckSpec& spec, uint64_t base_seed) {
  CheckReport rep;
  rep.id = spec.id;
  rep.statement = spec.statement;
  rep.tolerance = spec.tolerance;
  CheckContext ctx;
  ctx.seed = derive_seed(base_seed, spec.id);
  ctx.rng = Rng(ctx.seed);
  rep.seed = ctx.seed;
  const auto t0 = std::chrono::steady_clock::now();
  rep.residual = spec.run(ctx, rep);
  const auto t1 = std::chrono::steady_clock::now();
  rep.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  rep.passed = rep.residual <= spec.tolerance;
  return rep;
}

inline std::vector<CheckReport> run_suite(const std::string& prefix,
                                          uint64_t base_seed) {
  std::vector<CheckReport> out;
  bool matched = false;
  for (const auto& spec : check_catalog()) {
    if (!prefix.empty() && spec.id.compare(0, prefix.size(), prefix) != 0)
      continue;
    matched = true;
    out.push_back(run_check(spec, base_seed));
  }
  if (!matched && !prefix.empty())
    fail(ErrorKind::UnknownCheck, "no check id starts with '" + prefix + "'");
  return out;
}

}  // namespace geoft
