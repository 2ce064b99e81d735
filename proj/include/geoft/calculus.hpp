#pragma once

#include "geoft/gaussian.hpp"
#include "geoft/spectral.hpp"

namespace geoft {

// ---- differential operators on sampled fields -------------------------------

namespace detail {

// second-order finite difference along one axis of a truncated grid
inline SampledField fd_derivative_axis(const SampledField& f, int axis) {
  const GridSpec& g = f.grid;
  const int n = g.shape[axis];
  if (n < 3) fail(ErrorKind::DimensionMismatch, "derivative: axis too short");
  const double h = g.spacing(axis);
  std::size_t stride = 1;
  for (int d = g.dim() - 1; d > axis; --d) stride *= std::size_t(g.shape[d]);
  const std::size_t total = g.total_size();
  SampledField out{g, std::vector<Complex>(total)};
  for (std::size_t flat = 0; flat < total; ++flat) {
    const int i = int((flat / stride) % std::size_t(n));
    if (i == 0) {
      out.values[flat] = (-3.0 * f.values[flat] + 4.0 * f.values[flat + stride] -
                          f.values[flat + 2 * stride]) / (2 * h);
    } else if (i == n - 1) {
      out.values[flat] = (3.0 * f.values[flat] - 4.0 * f.values[flat - stride] +
                          f.values[flat - 2 * stride]) / (2 * h);
    } else {
      out.values[flat] =
          (f.values[flat + stride] - f.values[flat - stride]) / (2 * h);
    }
  }
  return out;
}

}  // namespace detail

// order-th partial derivative. Periodic grids: exact spectral multiplier
// (2 pi i zeta_axis)^order. Truncated grids: second-order finite differences.
inline SampledField partial_derivative(const SampledField& f, int axis,
                                       int order = 1) {
  if (axis < 0 || axis >= f.grid.dim())
    fail(ErrorKind::AxisOutOfRange, "partial_derivative: bad axis");
  if (order < 1) fail(ErrorKind::ParamOutOfRange, "partial_derivative: order >= 1");
  if (f.grid.mode == GridMode::Periodic) {
    return apply_multiplier(f, [&](const Vector& zeta) {
      return std::pow(Complex(0, kTwoPi * zeta(axis)), order);
    });
  }
  SampledField out = f;
  for (int k = 0; k < order; ++k) out = detail::fd_derivative_axis(out, axis);
  return out;
}

// Geometric gradient: component j of the left gradient is (B^T grad f)_j,
// of the right gradient (B grad f)_j.
inline std::vector<SampledField> geometric_gradient(const SampledField& f,
                                                    const GeometricPair& pair,
                                                    Side side) {
  const int dim = f.grid.dim();
  if (pair.B.rows() != dim)
    fail(ErrorKind::DimensionMismatch, "geometric_gradient: dim mismatch");
  std::vector<SampledField> partials;
  partials.reserve(dim);
  for (int k = 0; k < dim; ++k) partials.push_back(partial_derivative(f, k));
  const Matrix C = side == Side::Left ? Matrix(pair.B.transpose()) : pair.B;
  std::vector<SampledField> out;
  out.reserve(dim);
  for (int j = 0; j < dim; ++j) {
    SampledField comp{f.grid, std::vector<Complex>(f.values.size(), Complex(0, 0))};
    for (int k = 0; k < dim; ++k) {
      const double c = C(j, k);
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < comp.values.size(); ++i)
        comp.values[i] += c * partials[k].values[i];
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// m-th power of the second-order operator sum_{k,l} B_kl d_k d_l.
// Periodic grids: one multiplier pass with (-4 pi^2 zeta^T B_sym zeta)^m.
// Truncated grids: iterated finite differences.
inline SampledField b_laplacian(const SampledField& f, const GeometricPair& pair,
                                int m = 1) {
  const int dim = f.grid.dim();
  if (pair.B.rows() != dim)
    fail(ErrorKind::DimensionMismatch, "b_laplacian: dim mismatch");
  if (m < 0) fail(ErrorKind::ParamOutOfRange, "b_laplacian: m >= 0");
  if (f.grid.mode == GridMode::Periodic) {
    const Matrix Bsym = 0.5 * (pair.B + pair.B.transpose());
    return apply_multiplier(f, [&](const Vector& zeta) {
      const double q = zeta.dot(Bsym * zeta);
      return Complex(std::pow(-4.0 * kPi * kPi * q, m), 0);
    });
  }
  SampledField out = f;
  for (int pass = 0; pass < m; ++pass) {
    SampledField acc{out.grid, std::vector<Complex>(out.values.size(), Complex(0, 0))};
    for (int k = 0; k < dim; ++k) {
      const SampledField dk = detail::fd_derivative_axis(out, k);
      for (int l = 0; l < dim; ++l) {
        const double c = pair.B(k, l);
        if (c == 0.0) continue;
        const SampledField dkl = detail::fd_derivative_axis(dk, l);
        for (std::size_t i = 0; i < acc.values.size(); ++i)
          acc.values[i] += c * dkl.values[i];
      }
    }
    out = std::move(acc);
  }
  return out;
}

// ---- plane-wave eigenrelation ------------------------------------------------

struct PlaneWaveCheck {
  double eigenvalue = 0;  // -4 pi^2 b(xi, xi)
  double residual = 0;    // max |Lap_b w - eigenvalue * w| over the grid
};

// The wave x -> e^{sign 2 pi i b(x, xi)} has frequency vector sign * M xi; it
// must be commensurate with the periodic grid to be representable.
inline PlaneWaveCheck plane_wave_eigen_residual(const GridSpec& grid,
                                                const GeometricPair& pair,
                                                const Vector& xi, int sign = +1) {
  if (grid.mode != GridMode::Periodic)
    fail(ErrorKind::UnsupportedMode, "plane_wave_eigen_residual: periodic only");
  if (xi.size() != grid.dim())
    fail(ErrorKind::DimensionMismatch, "plane_wave_eigen_residual: dim mismatch");
  const Vector k = double(sign) * (pair.M() * xi);
  if (!is_commensurate(grid, k))
    fail(ErrorKind::IncommensurateWave,
         "plane_wave_eigen_residual: wave vector not on the grid's torus");
  const auto wave = sample_plane_wave(grid, k, +1);
  const auto lap = b_laplacian(wave, pair, 1);
  PlaneWaveCheck out;
  out.eigenvalue = -4.0 * kPi * kPi * evaluate(pair.structure, xi, xi);
  double worst = 0;
  for (std::size_t i = 0; i < wave.values.size(); ++i)
    worst = std::max(worst,
                     std::abs(lap.values[i] - out.eigenvalue * wave.values[i]));
  out.residual = worst;
  return out;
}

// ---- transform/derivative exchange laws --------------------------------------

enum class ExchangeForm {
  TransformOfDerivative,  // transform applied to d_j f
  DerivativeOfTransform   // d_j applied to the transformed function
};

namespace detail {

inline std::vector<Complex> poly_gaussian_ft_quadrature(
    const PolyGaussian& f, const GeometricPair& pair, Side side,
    const std::vector<Vector>& probes, int n_quad) {
  const auto grid = default_gaussian_grid(f.core, n_quad, 1.5);
  const auto field = sample_poly_gaussian(f, grid);
  return geometric_ft_direct(field, pair, side, probes);
}

inline std::vector<Complex> poly_gaussian_inverse_ft_quadrature(
    const PolyGaussian& g, const GeometricPair& pair, Side side,
    const std::vector<Vector>& probes, int n_quad) {
  const auto grid = default_gaussian_grid(g.core, n_quad, 1.5);
  const auto field = sample_poly_gaussian(g, grid);
  std::vector<Vector> freqs;
  freqs.reserve(grid.total_size());
  for (std::size_t i = 0; i < grid.total_size(); ++i) freqs.push_back(grid.point(i));
  return inverse_geometric_ft_direct(field.values, freqs, grid.cell_volume(), pair,
                                     side, probes);
}

}  // namespace detail

// Largest pointwise gap, over the probe set, of one of the eight exchange laws
// between coordinate derivatives and the (inverse) geometric transform of a
// Gaussian. The transformed side is computed by quadrature; the multiplier
// side uses the closed form, so the two routes are independent.
inline double derivative_exchange_gap(const GaussianFunction& g,
                                      const GeometricPair& pair, Side side,
                                      bool inverse, ExchangeForm form, int axis,
                                      const std::vector<Vector>& probes,
                                      int order = 1, int n_quad = 128) {
  if (axis < 0 || axis >= g.dim())
    fail(ErrorKind::AxisOutOfRange, "derivative_exchange_gap: bad axis");
  if (order < 1)
    fail(ErrorKind::ParamOutOfRange, "derivative_exchange_gap: order >= 1");
  if (probes.empty())
    fail(ErrorKind::EmptyFrequencyList, "derivative_exchange_gap: no probes");
  const Matrix& M = pair.M();
  const Matrix MT = M.transpose();
  // polynomial ((K x)_axis)^order, the coordinate weight of the iterated law
  const auto weight_pow = [&](const Matrix& K) {
    const Polynomial base =
        Polynomial::affine(K.row(axis).transpose(), Complex(0, 0));
    Polynomial w = base;
    for (int k = 1; k < order; ++k) w = w * base;
    return w;
  };
  double worst = 0;
  if (!inverse && form == ExchangeForm::TransformOfDerivative) {
    // T(d_j^a f)(xi) = (2 pi i (K xi)_j)^a T f(xi),  K = M^T (left) / M (right)
    const auto lhs = detail::poly_gaussian_ft_quadrature(
        derivative(to_poly_gaussian(g), axis, order), pair, side, probes, n_quad);
    const auto closed = gaussian_geometric_ft(g, pair, side);
    const Matrix& K = side == Side::Left ? MT : M;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const Complex rhs =
          std::pow(Complex(0, kTwoPi) * (K * probes[p])(axis), order) *
          closed.evaluate(probes[p]);
      worst = std::max(worst, std::abs(lhs[p] - rhs));
    }
  } else if (!inverse && form == ExchangeForm::DerivativeOfTransform) {
    // d_j^a (T f) = (-2 pi i)^a T(((K x)_j)^a f),  K = M (left) / M^T (right)
    const auto closed = to_poly_gaussian(gaussian_geometric_ft(g, pair, side));
    const auto lhs_poly = derivative(closed, axis, order);
    const Matrix& K = side == Side::Left ? M : MT;
    PolyGaussian weighted = to_poly_gaussian(g);
    weighted.poly = weight_pow(K);
    const auto rhs = detail::poly_gaussian_ft_quadrature(weighted, pair, side,
                                                         probes, n_quad);
    const Complex scale = std::pow(Complex(0, -kTwoPi), order);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      worst = std::max(worst,
                       std::abs(lhs_poly.evaluate(probes[p]) - scale * rhs[p]));
    }
  } else if (inverse && form == ExchangeForm::TransformOfDerivative) {
    // Tinv(d_j^a G)(x) = (-2 pi i (K x)_j)^a Tinv G(x), K = M (left) / M^T (right)
    const auto lhs = detail::poly_gaussian_inverse_ft_quadrature(
        derivative(to_poly_gaussian(g), axis, order), pair, side, probes, n_quad);
    const auto closed = gaussian_inverse_geometric_ft(g, pair, side);
    const Matrix& K = side == Side::Left ? M : MT;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const Complex rhs =
          std::pow(Complex(0, -kTwoPi) * (K * probes[p])(axis), order) *
          closed.evaluate(probes[p]);
      worst = std::max(worst, std::abs(lhs[p] - rhs));
    }
  } else {
    // d_j^a (Tinv G) = (2 pi i)^a Tinv(((K xi)_j)^a G), K = M^T (left) / M (right)
    const auto closed = to_poly_gaussian(gaussian_inverse_geometric_ft(g, pair, side));
    const auto lhs_poly = derivative(closed, axis, order);
    const Matrix& K = side == Side::Left ? MT : M;
    PolyGaussian weighted = to_poly_gaussian(g);
    weighted.poly = weight_pow(K);
    const auto rhs = detail::poly_gaussian_inverse_ft_quadrature(weighted, pair,
                                                                 side, probes,
                                                                 n_quad);
    const Complex scale = std::pow(Complex(0, kTwoPi), order);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      worst = std::max(worst,
                       std::abs(lhs_poly.evaluate(probes[p]) - scale * rhs[p]));
    }
  }
  return worst;
}

// Exchange law for the m-th power of the second-order operator:
//   forward:  T(Lap_b^m f)(xi)   = (-4 pi^2 b(xi,xi))^m T f(xi)
//   inverse:  Lap_b^m (Tinv G)(x) = Tinv((-4 pi^2 b(.,.))^m G)(x)
inline double laplacian_exchange_gap(const GaussianFunction& g,
                                     const GeometricPair& pair, Side side,
                                     bool inverse, int m,
                                     const std::vector<Vector>& probes,
                                     int n_quad = 128) {
  if (m < 1) fail(ErrorKind::ParamOutOfRange, "laplacian_exchange_gap: m >= 1");
  if (probes.empty())
    fail(ErrorKind::EmptyFrequencyList, "laplacian_exchange_gap: no probes");
  double worst = 0;
  if (!inverse) {
    const auto lhs = detail::poly_gaussian_ft_quadrature(
        b_laplacian(to_poly_gaussian(g), pair, m), pair, side, probes, n_quad);
    const auto closed = gaussian_geometric_ft(g, pair, side);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const double q = evaluate(pair.structure, probes[p], probes[p]);
      const Complex rhs =
          std::pow(-4.0 * kPi * kPi * q, m) * closed.evaluate(probes[p]);
      worst = std::max(worst, std::abs(lhs[p] - rhs));
    }
  } else {
    const auto lhs_poly =
        b_laplacian(to_poly_gaussian(gaussian_inverse_geometric_ft(g, pair, side)),
                    pair, m);
    // multiply the spectrum by (-4 pi^2 b(xi,xi))^m as a polynomial weight
    PolyGaussian weighted = to_poly_gaussian(g);
    Polynomial q = Polynomial::constant(g.dim(), Complex(0, 0));
    const Matrix Msym = 0.5 * (pair.M() + pair.M().transpose());
    for (int k = 0; k < g.dim(); ++k)
      for (int l = 0; l < g.dim(); ++l)
        if (Msym(k, l) != 0.0)
          q += Polynomial::coordinate(g.dim(), k) *
               Polynomial::coordinate(g.dim(), l) * Complex(Msym(k, l), 0);
    Polynomial factor = Polynomial::constant(g.dim(), Complex(1, 0));
    for (int pass = 0; pass < m; ++pass)
      factor = factor * q * Complex(-4.0 * kPi * kPi, 0);
    weighted.poly = factor;
    const auto rhs = detail::poly_gaussian_inverse_ft_quadrature(weighted, pair,
                                                                 side, probes,
                                                                 n_quad);
    for (std::size_t p = 0; p < probes.size(); ++p)
      worst = std::max(worst, std::abs(lhs_poly.evaluate(probes[p]) - rhs[p]));
  }
  return worst;
}

// ---- norm identity ------------------------------------------------------------

struct SobolevSides {
  double derivative_side = 0;  // cell * sum |Lap_b^m f|^2
  double multiplier_side = 0;  // (2 pi)^{4m} |det b| sum b(xi,xi)^{2m} |T f|^2 dxi
};

// Both sides of the norm identity for the m-th operator power of a periodic
// field, with the spectral side summed over the sheared reciprocal lattice.
inline SobolevSides sobolev_identity_sides(const SampledField& f,
                                           const GeometricPair& pair, Side side,
                                           int m) {
  if (f.grid.mode != GridMode::Periodic)
    fail(ErrorKind::UnsupportedMode, "sobolev_identity_sides: periodic only");
  if (m < 0) fail(ErrorKind::ParamOutOfRange, "sobolev_identity_sides: m >= 0");
  SobolevSides out;
  const auto lap = b_laplacian(f, pair, m);
  out.derivative_side =
      f.grid.cell_volume() *
      pairwise_sum<double>(lap.values.size(),
                           [&](std::size_t i) { return std::norm(lap.values[i]); });
  const auto s = geometric_ft_fft(f, pair, side);
  const double dxi =
      std::abs(s.shear.determinant()) * f.grid.frequency_cell_volume();
  const double sum = pairwise_sum<double>(s.values.size(), [&](std::size_t j) {
    const Vector xi = s.frequency(j);
    const double q = evaluate(pair.structure, xi, xi);
    return std::pow(q, 2 * m) * std::norm(s.values[j]);
  });
  out.multiplier_side =
      std::pow(kTwoPi, 4.0 * m) * std::abs(pair.det_b) * sum * dxi;
  return out;
}

}  // namespace geoft
