#pragma once

// Uniform rectangular grids (row-major storage, last axis fastest) and
// complex sampled fields. Truncated grids stand for compactly-supported
// quadrature of R^n integrals; Periodic grids are one period of a torus.

#include <Eigen/Dense>

#include <vector>

#include "geoft/core.hpp"

namespace geoft {

enum class GridMode { Truncated, Periodic };

struct GridSpec {
  std::vector<int> shape;
  Eigen::VectorXd origin;
  Eigen::VectorXd spacing;
  GridMode mode = GridMode::Truncated;

  int dim() const { return static_cast<int>(shape.size()); }

  std::size_t total_size() const {
    std::size_t t = 1;
    for (int n : shape) t *= static_cast<std::size_t>(n);
    return t;
  }

  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim(); ++d) v *= spacing(d);
    return v;
  }

  double period(int axis) const { return shape[axis] * spacing(axis); }

  std::vector<int> unflatten(std::size_t flat) const {
    std::vector<int> idx(shape.size());
    for (int d = dim() - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(flat % shape[d]);
      flat /= shape[d];
    }
    return idx;
  }

  std::size_t flatten(const std::vector<int>& idx) const {
    std::size_t flat = 0;
    for (int d = 0; d < dim(); ++d)
      flat = flat * shape[d] + static_cast<std::size_t>(idx[d]);
    return flat;
  }

  Eigen::VectorXd point(const std::vector<int>& idx) const {
    Eigen::VectorXd x(dim());
    for (int d = 0; d < dim(); ++d) x(d) = origin(d) + idx[d] * spacing(d);
    return x;
  }

  Eigen::VectorXd point(std::size_t flat) const { return point(unflatten(flat)); }

  // Signed DFT bin index: {0,...,N-1} -> {-floor(N/2),...,ceil(N/2)-1},
  // with the unpaired Nyquist bin of even N mapped to -N/2.
  static int signed_bin(int j, int n) { return 2 * j < n ? j : j - n; }

  // Reciprocal (frequency) lattice point for a flat DFT bin:
  // zeta_d = m_d / (N_d h_d) with m_d the signed bin.
  Eigen::VectorXd frequency(std::size_t flat_bin) const {
    const std::vector<int> idx = unflatten(flat_bin);
    Eigen::VectorXd zeta(dim());
    for (int d = 0; d < dim(); ++d)
      zeta(d) = static_cast<double>(signed_bin(idx[d], shape[d])) / period(d);
    return zeta;
  }

  double frequency_cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim(); ++d) v *= 1.0 / period(d);
    return v;
  }

  bool same_layout(const GridSpec& o) const {
    if (shape != o.shape || mode != o.mode) return false;
    return (origin - o.origin).cwiseAbs().maxCoeff() <= 1e-12 &&
           (spacing - o.spacing).cwiseAbs().maxCoeff() <= 1e-12;
  }
};

inline GridSpec make_grid(std::vector<int> shape, Eigen::VectorXd origin,
                          Eigen::VectorXd spacing,
                          GridMode mode = GridMode::Truncated) {
  if (shape.empty()) fail(ErrorKind::DimensionMismatch, "grid: empty shape");
  if (origin.size() != static_cast<int>(shape.size()) ||
      spacing.size() != static_cast<int>(shape.size()))
    fail(ErrorKind::DimensionMismatch, "grid: origin/spacing size mismatch");
  for (std::size_t d = 0; d < shape.size(); ++d) {
    if (shape[d] < 2) fail(ErrorKind::ParamOutOfRange, "grid: need >= 2 points per axis");
    if (!(spacing(static_cast<int>(d)) > 0.0))
      fail(ErrorKind::ParamOutOfRange, "grid: spacing must be positive");
  }
  return GridSpec{std::move(shape), std::move(origin), std::move(spacing), mode};
}

// Symmetric truncated grid covering [-extent, extent)^n with N points/axis.
inline GridSpec symmetric_grid(int dim, double extent, int n,
                               GridMode mode = GridMode::Truncated) {
  const double h = 2.0 * extent / n;
  return make_grid(std::vector<int>(dim, n),
                   Eigen::VectorXd::Constant(dim, -extent),
                   Eigen::VectorXd::Constant(dim, h), mode);
}

struct SampledField {
  GridSpec grid;
  std::vector<Complex> values;
};

template <typename F>
SampledField sample(const GridSpec& grid, const F& fn) {
  SampledField out{grid, std::vector<Complex>(grid.total_size())};
  const std::size_t total = grid.total_size();
  for (std::size_t i = 0; i < total; ++i) out.values[i] = Complex(fn(grid.point(i)));
  return out;
}

inline SampledField sample_plane_wave(const GridSpec& grid,
                                      const Eigen::VectorXd& k, int sign = +1) {
  return sample(grid, [&](const Eigen::VectorXd& x) {
    const double phase = sign * kTwoPi * k.dot(x);
    return Complex(std::cos(phase), std::sin(phase));
  });
}

// A classical frequency vector k is realizable on a periodic grid iff every
// k_d * period_d is an integer (the wave closes up over the torus).
inline bool is_commensurate(const GridSpec& grid, const Eigen::VectorXd& k,
                            double tol = 1e-9) {
  for (int d = 0; d < grid.dim(); ++d) {
    const double kp = k(d) * grid.period(d);
    if (std::abs(kp - std::round(kp)) > tol) return false;
  }
  return true;
}

// ---- pointwise / index-space field maps ------------------------------------

inline SampledField field_conjugate(const SampledField& f) {
  SampledField out{f.grid, f.values};
  for (auto& v : out.values) v = std::conj(v);
  return out;
}

// g(x) = f(-x). Needs every negated grid point to land back on the grid:
// per axis, -(o + k h) = o + k' h with integer k' (wrapped when periodic).
inline SampledField field_negate_argument(const SampledField& f) {
  const GridSpec& g = f.grid;
  std::vector<double> shift(g.dim());
  for (int d = 0; d < g.dim(); ++d) {
    shift[d] = -2.0 * g.origin(d) / g.spacing(d);
    if (std::abs(shift[d] - std::round(shift[d])) > 1e-9)
      fail(ErrorKind::NotGridRealizable, "negate_argument: grid not symmetric");
    shift[d] = std::round(shift[d]);
  }
  SampledField out{g, std::vector<Complex>(f.values.size())};
  const std::size_t total = g.total_size();
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<int> idx = g.unflatten(i);
    for (int d = 0; d < g.dim(); ++d) {
      long k = static_cast<long>(shift[d]) - idx[d];
      if (g.mode == GridMode::Periodic) {
        k %= g.shape[d];
        if (k < 0) k += g.shape[d];
      } else if (k < 0 || k >= g.shape[d]) {
        fail(ErrorKind::NotGridRealizable, "negate_argument: image leaves grid");
      }
      idx[d] = static_cast<int>(k);
    }
    out.values[g.flatten(idx)] = f.values[i];
  }
  return out;
}

// g(x) = f(x + h), sample-level: only integer-multiple shifts on periodic
// grids are realizable (values would have to enter from outside otherwise).
inline SampledField field_translate(const SampledField& f,
                                    const Eigen::VectorXd& h) {
  const GridSpec& g = f.grid;
  if (h.size() != g.dim())
    fail(ErrorKind::DimensionMismatch, "translate: offset size mismatch");
  if (g.mode != GridMode::Periodic)
    fail(ErrorKind::NotGridRealizable, "translate: needs a periodic grid");
  std::vector<long> steps(g.dim());
  for (int d = 0; d < g.dim(); ++d) {
    const double s = h(d) / g.spacing(d);
    if (std::abs(s - std::round(s)) > 1e-9)
      fail(ErrorKind::NotGridRealizable, "translate: offset not a grid multiple");
    steps[d] = static_cast<long>(std::round(s));
  }
  SampledField out{g, std::vector<Complex>(f.values.size())};
  const std::size_t total = g.total_size();
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<int> idx = g.unflatten(i);
    for (int d = 0; d < g.dim(); ++d) {
      long k = (idx[d] + steps[d]) % g.shape[d];
      if (k < 0) k += g.shape[d];
      idx[d] = static_cast<int>(k);
    }
    out.values[i] = f.values[g.flatten(idx)];
  }
  return out;
}

// g(x) = f(lambda x), sample-level: integer lambda on periodic grids with
// origin 0 (index map k -> lambda k mod N).
inline SampledField field_dilate(const SampledField& f, double lambda) {
  const GridSpec& g = f.grid;
  if (g.mode != GridMode::Periodic || g.origin.cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorKind::NotGridRealizable, "dilate: needs a periodic grid at origin 0");
  if (std::abs(lambda - std::round(lambda)) > 1e-9 || std::round(lambda) == 0.0)
    fail(ErrorKind::NotGridRealizable, "dilate: lambda must be a nonzero integer");
  const long lam = static_cast<long>(std::round(lambda));
  SampledField out{g, std::vector<Complex>(f.values.size())};
  const std::size_t total = g.total_size();
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<int> idx = g.unflatten(i);
    for (int d = 0; d < g.dim(); ++d) {
      long k = (lam * idx[d]) % g.shape[d];
      if (k < 0) k += g.shape[d];
      idx[d] = static_cast<int>(k);
    }
    out.values[i] = f.values[g.flatten(idx)];
  }
  return out;
}

// g(x) = f(x) e^{2 pi i <k, x>} (pointwise, always realizable).
inline SampledField field_modulate(const SampledField& f,
                                   const Eigen::VectorXd& k) {
  if (k.size() != f.grid.dim())
    fail(ErrorKind::DimensionMismatch, "modulate: frequency size mismatch");
  SampledField out{f.grid, std::vector<Complex>(f.values.size())};
  const std::size_t total = f.grid.total_size();
  for (std::size_t i = 0; i < total; ++i) {
    const double phase = kTwoPi * k.dot(f.grid.point(i));
    out.values[i] = f.values[i] * Complex(std::cos(phase), std::sin(phase));
  }
  return out;
}

inline double max_abs_diff(const std::vector<Complex>& a,
                           const std::vector<Complex>& b) {
  if (a.size() != b.size())
    fail(ErrorKind::DimensionMismatch, "max_abs_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_value(const std::vector<Complex>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace geoft
