#pragma once

// Transforms attached to a geometric pair (b, B):
//
//   (F_L f)(xi) = int f(x) e^{-2 pi i b(xi, x)} dx = (F f)(B^{-T} xi)
//   (F_R f)(xi) = int f(x) e^{-2 pi i b(x, xi)} dx = (F f)(B^{-1} xi)
//
// with inverses carrying the |det b| factor:
//
//   (F_L^{-1} F)(x) = |det b| int F(xi) e^{+2 pi i b(xi, x)} d xi
//   (F_R^{-1} F)(x) = |det b| int F(xi) e^{+2 pi i b(x, xi)} d xi
//
// Two independent evaluation routes are kept deliberately separate:
//  * Direct: rectangle quadrature over the sample grid with the exact kernel;
//    O(points * frequencies), arbitrary frequency sets.
//  * FFTSheared: one FFT plus origin phase factors; frequencies live on the
//    sheared reciprocal lattice xi_j = S zeta_j (S = B^T left, B right).
// Tests cross-check the two; neither is ever implemented in terms of the other.

#include <Eigen/Dense>

#include <vector>

#include "geoft/core.hpp"
#include "geoft/fft.hpp"
#include "geoft/forms.hpp"
#include "geoft/grid.hpp"

namespace geoft {

enum class TransformMethod { Direct, FftSheared };

namespace detail {

// weight * cell * sum_k f_k exp(sign * 2 pi i <u_p, x_k>) for each output p,
// with u_p = K * p. Fixed row-major pairwise reduction per output; outputs
// are independent, so the loop parallelizes without changing any value.
inline std::vector<Complex> kernel_sum(const SampledField& f,
                                       const std::vector<Vector>& outputs,
                                       const Matrix& K, int sign,
                                       double weight) {
  const GridSpec& g = f.grid;
  const double cell = g.cell_volume();
  std::vector<Complex> out(outputs.size());
  parallel_for(outputs.size(), [&](std::size_t p) {
    const Vector u = K * outputs[p];
    const Complex s = pairwise_sum<Complex>(f.values.size(), [&](std::size_t k) {
      const double phase = sign * kTwoPi * u.dot(g.point(k));
      return f.values[k] * Complex(std::cos(phase), std::sin(phase));
    });
    out[p] = weight * cell * s;
  });
  return out;
}

}  // namespace detail

// Quadrature Fourier transform of a truncated field at arbitrary frequencies:
//   weight * sum_x f(x) e^{-+2 pi i <x, zeta>} * prod h_i
inline std::vector<Complex> dft_direct(const SampledField& f,
                                       const std::vector<Vector>& freqs,
                                       int sign = -1, double weight = 1.0) {
  if (f.grid.mode != GridMode::Truncated)
    fail(ErrorKind::UnsupportedMode, "dft_direct: truncated grids only");
  if (freqs.empty()) fail(ErrorKind::EmptyFrequencyList, "dft_direct: no frequencies");
  for (const auto& z : freqs)
    if (z.size() != f.grid.dim())
      fail(ErrorKind::DimensionMismatch, "dft_direct: frequency dim mismatch");
  return detail::kernel_sum(f, freqs, Matrix::Identity(f.grid.dim(), f.grid.dim()),
                            sign, weight);
}

// Forward geometric transform by quadrature at arbitrary frequencies.
inline std::vector<Complex> geometric_ft_direct(const SampledField& f,
                                                const GeometricPair& pair,
                                                Side side,
                                                const std::vector<Vector>& freqs) {
  if (f.grid.mode != GridMode::Truncated)
    fail(ErrorKind::UnsupportedMode, "geometric_ft_direct: truncated grids only");
  if (freqs.empty())
    fail(ErrorKind::EmptyFrequencyList, "geometric_ft_direct: no frequencies");
  // phase b(xi, x) = <M^T xi, x>   (left);  b(x, xi) = <M xi, x>   (right)
  const Matrix K = side == Side::Left ? Matrix(pair.M().transpose()) : pair.M();
  return detail::kernel_sum(f, freqs, K, -1, 1.0);
}

// Inverse geometric transform by quadrature: spectrum samples on an arbitrary
// frequency point set with known quadrature cell volume, evaluated at points.
inline std::vector<Complex> inverse_geometric_ft_direct(
    const std::vector<Complex>& spectrum, const std::vector<Vector>& freqs,
    double freq_cell_volume, const GeometricPair& pair, Side side,
    const std::vector<Vector>& points) {
  if (spectrum.size() != freqs.size())
    fail(ErrorKind::DimensionMismatch, "inverse direct: values/frequencies mismatch");
  if (freqs.empty()) fail(ErrorKind::EmptyFrequencyList, "inverse direct: no frequencies");
  // phase b(xi, x) = <xi, M x>   (left);  b(x, xi) = <M^T x, xi>   (right)
  const Matrix K = side == Side::Left ? pair.M() : Matrix(pair.M().transpose());
  const double w = std::abs(pair.det_b) * freq_cell_volume;
  std::vector<Complex> out(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    const Vector u = K * points[p];
    const Complex s = pairwise_sum<Complex>(freqs.size(), [&](std::size_t k) {
      const double phase = kTwoPi * u.dot(freqs[k]);
      return spectrum[k] * Complex(std::cos(phase), std::sin(phase));
    });
    out[p] = w * s;
  });
  return out;
}

// Convenience overload: spectrum sampled on a rectangular frequency grid.
inline std::vector<Complex> inverse_geometric_ft_direct(
    const SampledField& spectrum, const GeometricPair& pair, Side side,
    const std::vector<Vector>& points) {
  std::vector<Vector> freqs;
  freqs.reserve(spectrum.grid.total_size());
  for (std::size_t i = 0; i < spectrum.grid.total_size(); ++i)
    freqs.push_back(spectrum.grid.point(i));
  return inverse_geometric_ft_direct(spectrum.values, freqs,
                                     spectrum.grid.cell_volume(), pair, side,
                                     points);
}

// ---- FFT-sheared route ------------------------------------------------------

// Values live on the sheared reciprocal lattice of the source grid:
//   xi_j = shear * zeta_j,  zeta_j the signed DFT frequency of bin j.
struct ShearedSpectrum {
  GridSpec source_grid;
  Side side = Side::Left;
  Matrix shear;                  // B^T (left) or B (right)
  std::vector<Complex> values;   // row-major over DFT bins

  Vector frequency(std::size_t flat_bin) const {
    return shear * source_grid.frequency(flat_bin);
  }
  std::vector<Vector> frequencies() const {
    std::vector<Vector> out;
    out.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) out.push_back(frequency(j));
    return out;
  }
  // integer-combination generator of the frequency lattice (for serialization)
  Matrix lattice_generator() const {
    Matrix D = Matrix::Zero(source_grid.dim(), source_grid.dim());
    for (int d = 0; d < source_grid.dim(); ++d) D(d, d) = 1.0 / source_grid.period(d);
    return shear * D;
  }
};

// One FFT + per-bin phase: the quadrature transform at lattice frequencies is
//   prod(h) * e^{-2 pi i <origin, zeta_j>} * DFT(f)[j],
// relabeled to xi_j = shear * zeta_j. On periodic grids this is the
// single-period quadrature (Fourier coefficient times the period volume).
inline ShearedSpectrum geometric_ft_fft(const SampledField& f,
                                        const GeometricPair& pair, Side side) {
  const GridSpec& g = f.grid;
  ShearedSpectrum s;
  s.source_grid = g;
  s.side = side;
  s.shear = side == Side::Left ? Matrix(pair.B.transpose()) : pair.B;
  s.values = f.values;
  fft_nd(s.values, g.shape, -1);
  const double cell = g.cell_volume();
  const std::size_t total = g.total_size();
  for (std::size_t j = 0; j < total; ++j) {
    const double phase = -kTwoPi * g.origin.dot(g.frequency(j));
    s.values[j] *= cell * Complex(std::cos(phase), std::sin(phase));
  }
  return s;
}

// Exact inverse of geometric_ft_fft on the same lattice. The quadrature cell
// in xi-space is |det shear| * prod(1/(N h)); together with |det b| the
// |det shear| collapses to 1/|det B^{-1}| ... kept explicit below.
inline SampledField inverse_geometric_ft_fft(const ShearedSpectrum& s,
                                             const GeometricPair& pair) {
  const GridSpec& g = s.source_grid;
  std::vector<Complex> work(s.values.size());
  const std::size_t total = g.total_size();
  for (std::size_t j = 0; j < total; ++j) {
    const double phase = kTwoPi * g.origin.dot(g.frequency(j));
    work[j] = s.values[j] * Complex(std::cos(phase), std::sin(phase));
  }
  fft_nd(work, g.shape, +1);
  const double scale = std::abs(pair.det_b) * std::abs(s.shear.determinant()) *
                       g.frequency_cell_volume();
  for (auto& v : work) v *= scale;
  return SampledField{g, std::move(work)};
}

// ---- convolution ------------------------------------------------------------

// Truncated: full linear convolution as quadrature of the convolution
// integral; output grid has origin o_f + o_g and N_f + N_g - 1 points/axis.
// Periodic: circular convolution over the shared torus, same grid out.
inline SampledField convolve(const SampledField& f, const SampledField& g) {
  const GridSpec& gf = f.grid;
  const GridSpec& gg = g.grid;
  if (gf.mode != gg.mode)
    fail(ErrorKind::GridMismatch, "convolve: mixed grid modes");
  if (gf.dim() != gg.dim() ||
      (gf.spacing - gg.spacing).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorKind::GridMismatch, "convolve: incompatible spacings");
  const double cell = gf.cell_volume();
  const int dim = gf.dim();

  if (gf.mode == GridMode::Periodic) {
    if (gf.shape != gg.shape ||
        (gf.origin - gg.origin).cwiseAbs().maxCoeff() > 1e-12)
      fail(ErrorKind::GridMismatch, "convolve: periodic fields must share the grid");
    SampledField out{gf, std::vector<Complex>(f.values.size())};
    parallel_for(f.values.size(), [&](std::size_t kf) {
      const std::vector<int> kidx = gf.unflatten(kf);
      const Complex s = pairwise_sum<Complex>(f.values.size(), [&](std::size_t jf) {
        const std::vector<int> jidx = gf.unflatten(jf);
        std::vector<int> m(dim);
        for (int d = 0; d < dim; ++d) {
          int v = (kidx[d] - jidx[d]) % gf.shape[d];
          if (v < 0) v += gf.shape[d];
          m[d] = v;
        }
        return f.values[jf] * g.values[gf.flatten(m)];
      });
      out.values[kf] = cell * s;
    });
    return out;
  }

  std::vector<int> out_shape(dim);
  for (int d = 0; d < dim; ++d) out_shape[d] = gf.shape[d] + gg.shape[d] - 1;
  GridSpec og = make_grid(out_shape, gf.origin + gg.origin, gf.spacing,
                          GridMode::Truncated);
  SampledField out{og, std::vector<Complex>(og.total_size())};
  parallel_for(out.values.size(), [&](std::size_t pf) {
    const std::vector<int> pidx = og.unflatten(pf);
    const Complex s = pairwise_sum<Complex>(f.values.size(), [&](std::size_t jf) {
      const std::vector<int> jidx = gf.unflatten(jf);
      std::vector<int> m(dim);
      for (int d = 0; d < dim; ++d) {
        m[d] = pidx[d] - jidx[d];
        if (m[d] < 0 || m[d] >= gg.shape[d]) return Complex(0, 0);
      }
      return f.values[jf] * g.values[gg.flatten(m)];
    });
    out.values[pf] = cell * s;
  });
  return out;
}

// ---- periodic spectral multiplier engine -------------------------------------
// f -> IFFT( sigma(zeta_j) * FFT(f) ) / N. The workhorse for periodic
// derivatives, the b-Laplacian, and the fractional operator.
template <typename Sigma>
SampledField apply_multiplier(const SampledField& f, const Sigma& sigma) {
  if (f.grid.mode != GridMode::Periodic)
    fail(ErrorKind::UnsupportedMode, "apply_multiplier: periodic grids only");
  std::vector<Complex> work = f.values;
  fft_nd(work, f.grid.shape, -1);
  const std::size_t total = f.grid.total_size();
  for (std::size_t j = 0; j < total; ++j) work[j] *= Complex(sigma(f.grid.frequency(j)));
  fft_nd(work, f.grid.shape, +1);
  const double inv_n = 1.0 / static_cast<double>(total);
  for (auto& v : work) v *= inv_n;
  return SampledField{f.grid, std::move(work)};
}

}  // namespace geoft
