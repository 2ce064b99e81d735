#pragma once

// Modulated Gaussians
//
//   g(x) = amp * e^{2 pi i <w, x>} * exp(-pi (x-c)^T A (x-c)),   A SPD,
//
// closed under every operation this library cares about: the classical
// Fourier transform, both geometric transforms and their inverses, linear
// pullbacks tau_A f = f(A^{-1} .), translation, dilation, modulation,
// conjugation, products and convolution. That closure is what all the
// quadrature-vs-closed-form cross checks lean on.
//
// Transform convention: (F f)(xi) = int f(x) e^{-2 pi i <x, xi>} dx, so
//   F g = Gaussian(shape A^{-1}, center w, modulation -c,
//                  amp' = amp det(A)^{-1/2} e^{2 pi i <c, w>}).

#include <Eigen/Dense>

#include "geoft/core.hpp"
#include "geoft/forms.hpp"
#include "geoft/grid.hpp"
#include "geoft/polynomial.hpp"

namespace geoft {

struct GaussianFunction {
  Matrix shape;       // A, symmetric positive definite
  Vector center;      // c
  Complex amp;        // amp
  Vector modulation;  // w

  int dim() const { return static_cast<int>(shape.rows()); }

  Complex evaluate(const Vector& x) const {
    const Vector d = x - center;
    const double quad = d.dot(shape * d);
    const double phase = kTwoPi * modulation.dot(x);
    return amp * std::exp(-kPi * quad) * Complex(std::cos(phase), std::sin(phase));
  }

  Complex operator()(const Vector& x) const { return evaluate(x); }
};

inline GaussianFunction make_gaussian(const Matrix& A, const Vector& c,
                                      Complex amp, const Vector& w) {
  if (A.rows() != A.cols() || c.size() != A.rows() || w.size() != A.rows())
    fail(ErrorKind::DimensionMismatch, "gaussian: inconsistent dimensions");
  const double scale = std::max(1.0, max_abs(A));
  if (max_abs(A - A.transpose()) > 1e-12 * scale)
    fail(ErrorKind::NotSymmetric, "gaussian: shape must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (A + A.transpose()));
  if (!(es.eigenvalues().minCoeff() > 0.0))
    fail(ErrorKind::NotPositiveDefinite, "gaussian: shape must be positive definite");
  return GaussianFunction{0.5 * (A + A.transpose()), c, amp, w};
}

inline GaussianFunction standard_gaussian(int dim) {
  return GaussianFunction{Matrix::Identity(dim, dim), Vector::Zero(dim),
                          Complex(1, 0), Vector::Zero(dim)};
}

inline double min_shape_eigenvalue(const GaussianFunction& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.shape);
  return es.eigenvalues().minCoeff();
}

// ---- parameter-level operations --------------------------------------------

inline GaussianFunction gaussian_scale(const GaussianFunction& g, Complex s) {
  GaussianFunction r = g;
  r.amp *= s;
  return r;
}

// tau_A g = g(A^{-1} x): shape A^{-T} S A^{-1}, center A c, modulation A^{-T} w.
inline GaussianFunction gaussian_tau(const GaussianFunction& g, const Matrix& A) {
  if (A.rows() != g.dim() || A.cols() != g.dim())
    fail(ErrorKind::DimensionMismatch, "tau: matrix size mismatch");
  const Matrix Ainv = A.inverse();
  GaussianFunction r;
  r.shape = Ainv.transpose() * g.shape * Ainv;
  r.shape = 0.5 * (r.shape + r.shape.transpose());
  r.center = A * g.center;
  r.modulation = Ainv.transpose() * g.modulation;
  r.amp = g.amp;
  return r;
}

// T_h g = g(x + h)
inline GaussianFunction gaussian_translate(const GaussianFunction& g,
                                           const Vector& h) {
  GaussianFunction r = g;
  r.center = g.center - h;
  const double phase = kTwoPi * g.modulation.dot(h);
  r.amp = g.amp * Complex(std::cos(phase), std::sin(phase));
  return r;
}

// delta_lambda g = g(lambda x), lambda != 0
inline GaussianFunction gaussian_dilate(const GaussianFunction& g, double lambda) {
  if (lambda == 0.0) fail(ErrorKind::ParamOutOfRange, "dilate: lambda must be nonzero");
  GaussianFunction r = g;
  r.shape = (lambda * lambda) * g.shape;
  r.center = g.center / lambda;
  r.modulation = lambda * g.modulation;
  return r;
}

// g(x) e^{2 pi i <k, x>}
inline GaussianFunction gaussian_modulate(const GaussianFunction& g,
                                          const Vector& k) {
  GaussianFunction r = g;
  r.modulation = g.modulation + k;
  return r;
}

inline GaussianFunction gaussian_conjugate(const GaussianFunction& g) {
  GaussianFunction r = g;
  r.amp = std::conj(g.amp);
  r.modulation = -g.modulation;
  return r;
}

inline GaussianFunction gaussian_negate_argument(const GaussianFunction& g) {
  GaussianFunction r = g;
  r.center = -g.center;
  r.modulation = -g.modulation;
  return r;
}

inline GaussianFunction gaussian_product(const GaussianFunction& f,
                                         const GaussianFunction& g) {
  if (f.dim() != g.dim())
    fail(ErrorKind::DimensionMismatch, "product: dimension mismatch");
  const Matrix A3 = f.shape + g.shape;
  const Vector rhs = f.shape * f.center + g.shape * g.center;
  const Vector c3 = A3.ldlt().solve(rhs);
  const double k = f.center.dot(f.shape * f.center) +
                   g.center.dot(g.shape * g.center) - c3.dot(A3 * c3);
  GaussianFunction r;
  r.shape = A3;
  r.center = c3;
  r.modulation = f.modulation + g.modulation;
  r.amp = f.amp * g.amp * std::exp(-kPi * k);
  return r;
}

// ---- transforms -------------------------------------------------------------

inline GaussianFunction gaussian_classical_ft(const GaussianFunction& g) {
  Eigen::LLT<Matrix> llt(g.shape);
  const Matrix L = llt.matrixL();
  double det_sqrt = 1.0;
  for (int i = 0; i < g.dim(); ++i) det_sqrt *= L(i, i);
  GaussianFunction r;
  r.shape = g.shape.inverse();
  r.shape = 0.5 * (r.shape + r.shape.transpose());
  r.center = g.modulation;
  r.modulation = -g.center;
  const double phase = kTwoPi * g.center.dot(g.modulation);
  r.amp = g.amp / det_sqrt * Complex(std::cos(phase), std::sin(phase));
  return r;
}

// F^{-1} = tau_{-I} o F
inline GaussianFunction gaussian_classical_ift(const GaussianFunction& g) {
  return gaussian_negate_argument(gaussian_classical_ft(g));
}

// Left:  (F_L f)(xi) = (F f)(B^{-T} xi) = tau_{B^T}(F f)
// Right: (F_R f)(xi) = (F f)(B^{-1} xi) = tau_B  (F f)
inline GaussianFunction gaussian_geometric_ft(const GaussianFunction& g,
                                              const GeometricPair& pair,
                                              Side side) {
  const GaussianFunction cf = gaussian_classical_ft(g);
  return gaussian_tau(cf, side == Side::Left ? Matrix(pair.B.transpose())
                                             : pair.B);
}

// (F_L)^{-1} = |det b| tau_{-B}   o F
// (F_R)^{-1} = |det b| tau_{-B^T} o F
inline GaussianFunction gaussian_inverse_geometric_ft(const GaussianFunction& g,
                                                      const GeometricPair& pair,
                                                      Side side) {
  const GaussianFunction cf = gaussian_classical_ft(g);
  const Matrix T = side == Side::Left ? Matrix(-pair.B) : Matrix(-pair.B.transpose());
  return gaussian_scale(gaussian_tau(cf, T), Complex(std::abs(pair.det_b), 0));
}

inline GaussianFunction gaussian_convolve(const GaussianFunction& f,
                                          const GaussianFunction& g) {
  return gaussian_classical_ift(
      gaussian_product(gaussian_classical_ft(f), gaussian_classical_ft(g)));
}

// int |g|^2 = |amp|^2 2^{-n/2} det(A)^{-1/2}
inline double gaussian_l2_norm_sq(const GaussianFunction& g) {
  const double a2 = std::norm(g.amp);
  return a2 * std::pow(2.0, -0.5 * g.dim()) / std::sqrt(g.shape.determinant());
}

// int g = (F g)(0)
inline Complex gaussian_integral(const GaussianFunction& g) {
  return gaussian_classical_ft(g).evaluate(Vector::Zero(g.dim()));
}

// Truncated grid on which the tail of |g| is below e^{-64 pi} per axis:
// per-axis extent 8 / sqrt(lambda_min(A)) around the center (inflated by
// `pad` for derived integrands that grow polynomially).
inline GridSpec default_gaussian_grid(const GaussianFunction& g, int n,
                                      double pad = 0.0,
                                      GridMode mode = GridMode::Truncated) {
  const double extent = 8.0 / std::sqrt(min_shape_eigenvalue(g)) + pad;
  const int dim = g.dim();
  const double h = 2.0 * extent / n;
  Vector origin(dim), spacing(dim);
  for (int d = 0; d < dim; ++d) {
    origin(d) = g.center(d) - extent;
    spacing(d) = h;
  }
  return make_grid(std::vector<int>(dim, n), origin, spacing, mode);
}

inline SampledField sample_gaussian(const GaussianFunction& g,
                                    const GridSpec& grid) {
  return sample(grid, [&](const Vector& x) { return g.evaluate(x); });
}

// ---- polynomial x Gaussian --------------------------------------------------

struct PolyGaussian {
  Polynomial poly;
  GaussianFunction core;

  Complex evaluate(const Vector& x) const {
    return poly.evaluate(x) * core.evaluate(x);
  }
  Complex operator()(const Vector& x) const { return evaluate(x); }
};

inline PolyGaussian to_poly_gaussian(const GaussianFunction& g) {
  return PolyGaussian{Polynomial::constant(g.dim(), Complex(1, 0)), g};
}

// d/dx_j (p * g) = (dp/dx_j + p * [2 pi i w_j + 2 pi (A c)_j - 2 pi A_j. x]) g
inline PolyGaussian derivative(const PolyGaussian& f, int axis) {
  if (axis < 0 || axis >= f.core.dim())
    fail(ErrorKind::AxisOutOfRange, "derivative: bad axis");
  const Vector a = -kTwoPi * f.core.shape.row(axis).transpose();
  const Complex c0 =
      Complex(0, kTwoPi) * f.core.modulation(axis) +
      kTwoPi * (f.core.shape * f.core.center)(axis);
  const Polynomial log_deriv = Polynomial::affine(a, c0);
  return PolyGaussian{f.poly.derivative(axis) + f.poly * log_deriv, f.core};
}

inline PolyGaussian derivative(const PolyGaussian& f, int axis, int order) {
  PolyGaussian r = f;
  for (int k = 0; k < order; ++k) r = derivative(r, axis);
  return r;
}

// Laplacian-type operator sum_{k,l} C_{kl} d_k d_l applied once.
inline PolyGaussian quadratic_differential(const PolyGaussian& f,
                                           const Matrix& C) {
  const int n = f.core.dim();
  PolyGaussian acc{Polynomial(n), f.core};
  for (int k = 0; k < n; ++k) {
    const PolyGaussian dk = derivative(f, k);
    for (int l = 0; l < n; ++l) {
      if (C(k, l) == 0.0) continue;
      const PolyGaussian dkl = derivative(dk, l);
      acc.poly += dkl.poly * Complex(C(k, l), 0);
    }
  }
  return acc;
}

// m-fold b-Laplacian (Delta_b = sum b_kl d_k d_l, coefficients = entries of B).
inline PolyGaussian b_laplacian(const PolyGaussian& f, const GeometricPair& pair,
                                int m = 1) {
  if (m < 0) fail(ErrorKind::ParamOutOfRange, "b_laplacian: m must be >= 0");
  PolyGaussian r = f;
  for (int k = 0; k < m; ++k) r = quadratic_differential(r, pair.B);
  return r;
}

inline PolyGaussian poly_gaussian_tau(const PolyGaussian& f, const Matrix& A) {
  const Matrix Ainv = A.inverse();
  return PolyGaussian{f.poly.compose_linear(Ainv), gaussian_tau(f.core, A)};
}

inline SampledField sample_poly_gaussian(const PolyGaussian& f,
                                         const GridSpec& grid) {
  return sample(grid, [&](const Vector& x) { return f.evaluate(x); });
}

}  // namespace geoft
