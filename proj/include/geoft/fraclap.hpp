#pragma once

#include "geoft/calculus.hpp"

namespace geoft {

// ---- fractional power of the b-Laplacian ---------------------------------------

struct FracParams {
  GeometricPair pair;
  double s = 0.5;
};

// The symbol (4 pi^2 b(xi, xi))^s is positive only when the symmetric part of
// the structure is positive definite; s must lie in (0, 1).
inline FracParams make_frac_params(const GeometricPair& pair, double s) {
  if (!(s > 0.0 && s < 1.0))
    fail(ErrorKind::ParamOutOfRange, "frac: exponent must lie in (0, 1)");
  if (!classify(pair.structure).positive_definite)
    fail(ErrorKind::NotPositiveDefinite,
         "frac: structure's symmetric part must be positive definite");
  return FracParams{pair, s};
}

enum class FracPath { Left, Right, Classical };

inline const char* to_string(FracPath p) {
  switch (p) {
    case FracPath::Left: return "left";
    case FracPath::Right: return "right";
    case FracPath::Classical: return "classical";
  }
  return "?";
}

// Symbol value at a plain frequency zeta. The three paths evaluate the same
// number through the frequency labels of the left / right / classical
// transforms; they agree up to rounding.
inline double frac_symbol(const FracParams& fp, const Vector& zeta, FracPath path) {
  double q = 0;
  switch (path) {
    case FracPath::Left: {
      const Vector xi = fp.pair.B.transpose() * zeta;
      q = evaluate(fp.pair.structure, xi, xi);
      break;
    }
    case FracPath::Right: {
      const Vector xi = fp.pair.B * zeta;
      q = evaluate(fp.pair.structure, xi, xi);
      break;
    }
    case FracPath::Classical: {
      const Matrix Bsym = 0.5 * (fp.pair.B + fp.pair.B.transpose());
      q = zeta.dot(Bsym * zeta);
      break;
    }
  }
  if (q <= 0.0) return 0.0;
  return std::exp(fp.s * std::log(4.0 * kPi * kPi * q));
}

// Periodic-field operator: one multiplier pass.
inline SampledField frac_laplacian(const SampledField& f, const FracParams& fp,
                                   FracPath path = FracPath::Classical) {
  if (f.grid.mode != GridMode::Periodic)
    fail(ErrorKind::UnsupportedMode, "frac_laplacian: periodic grids only");
  if (fp.pair.B.rows() != f.grid.dim())
    fail(ErrorKind::DimensionMismatch, "frac_laplacian: dim mismatch");
  return apply_multiplier(f, [&](const Vector& zeta) {
    return Complex(frac_symbol(fp, zeta, path), 0);
  });
}

// ---- closed-form heat flow and subordination ------------------------------------

// Heat semigroup of the structure: the transform-side factor is the Gaussian
// e^{-pi zeta^T (4 pi t B_sym) zeta}, so H_t maps Gaussians to Gaussians.
inline GaussianFunction heat_semigroup_gaussian(const GaussianFunction& g,
                                                const GeometricPair& pair,
                                                double t) {
  if (t < 0) fail(ErrorKind::ParamOutOfRange, "heat: t >= 0");
  if (t == 0) return g;
  const int n = g.dim();
  const Matrix Bsym = 0.5 * (pair.B + pair.B.transpose());
  const auto heat_factor = make_gaussian(Matrix(4.0 * kPi * t * Bsym),
                                         Vector::Zero(n), Complex(1, 0),
                                         Vector::Zero(n));
  return gaussian_classical_ift(
      gaussian_product(gaussian_classical_ft(g), heat_factor));
}

// Pointwise values of the fractional operator applied to a Gaussian, through
// the subordination integral
//   (1 / Gamma(-s)) int_0^inf (H_t g(x) - g(x)) t^{-1-s} dt.
// Substituting t = e^u makes the integrand decay exponentially at both ends,
// so the trapezoid rule converges geometrically. For tiny t the closed-form
// difference H_t g - g would cancel catastrophically; there the increment is
// summed from its Taylor series in t (iterated closed-form Laplacians).
inline std::vector<Complex> frac_laplacian_gaussian(
    const GaussianFunction& g, const FracParams& fp,
    const std::vector<Vector>& points) {
  if (points.empty())
    fail(ErrorKind::EmptyFrequencyList, "frac_laplacian_gaussian: no points");
  const double s = fp.s;
  const double t0 = 1e-4;     // below this, use the series for H_t g - g
  const int taylor_order = 8; // remainder ~ (t0 |Lap|)^9 / 9!, far below 1e-16
  const double u_lo = -50.0 / (1.0 - s);
  const double u_hi = 40.0 / s;
  const double h = 0.05;
  const int n_steps = int(std::ceil((u_hi - u_lo) / h));

  // Taylor coefficients of H_t g - g at each probe: c_k(x) = Lap^k g(x) / k!
  std::vector<std::vector<Complex>> taylor{std::size_t(taylor_order)};
  {
    PolyGaussian lap = to_poly_gaussian(g);
    double factorial = 1.0;
    for (int k = 1; k <= taylor_order; ++k) {
      lap = b_laplacian(lap, fp.pair, 1);
      factorial *= k;
      auto& row = taylor[std::size_t(k - 1)];
      row.resize(points.size());
      for (std::size_t p = 0; p < points.size(); ++p)
        row[p] = lap.evaluate(points[p]) / factorial;
    }
  }

  std::vector<Complex> acc(points.size(), Complex(0, 0));
  const double du = (u_hi - u_lo) / n_steps;
  for (int i = 0; i <= n_steps; ++i) {
    const double u = u_lo + du * i;
    const double w = (i == 0 || i == n_steps) ? 0.5 * du : du;
    const double t = std::exp(u);
    const double damp = w * std::exp(-s * u);
    if (t < t0) {
      for (std::size_t p = 0; p < points.size(); ++p) {
        Complex d(0, 0);
        double tk = 1.0;
        for (int k = 0; k < taylor_order; ++k) {
          tk *= t;
          d += tk * taylor[std::size_t(k)][p];
        }
        acc[p] += damp * d;
      }
    } else {
      const auto Ht = heat_semigroup_gaussian(g, fp.pair, t);
      for (std::size_t p = 0; p < points.size(); ++p)
        acc[p] += damp * (Ht.evaluate(points[p]) - g.evaluate(points[p]));
    }
  }

  // analytic tail beyond u_hi, where H_t g is negligible and -g(x) remains
  const double tail = std::exp(-s * u_hi) / s;
  const double gamma = std::tgamma(-s);
  std::vector<Complex> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    out[p] = (acc[p] - tail * g.evaluate(points[p])) / gamma;
  return out;
}

}  // namespace geoft
