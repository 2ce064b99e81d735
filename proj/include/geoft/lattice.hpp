#pragma once

#include <optional>

#include "geoft/gaussian.hpp"

namespace geoft {

// ---- full-rank lattices -------------------------------------------------------

// Points are integer combinations of the generator's columns: p = G m, m in Z^n.
struct Lattice {
  Matrix generator;
  int dim() const { return static_cast<int>(generator.rows()); }
};

inline Lattice make_lattice(const Matrix& G) {
  if (G.rows() != G.cols()) fail(ErrorKind::NonSquare, "lattice: square generator");
  const double scale = std::max(max_abs(G), 1e-300);
  if (std::abs(G.determinant()) <= 1e-12 * std::pow(scale, G.rows()))
    fail(ErrorKind::Degenerate, "lattice: generator is singular");
  return Lattice{G};
}

inline double covolume(const Lattice& L) { return std::abs(L.generator.determinant()); }

// Dual lattice: the set of q with <q, p> integer for all p; generator G^{-T}.
inline Lattice dual_lattice(const Lattice& L) {
  return Lattice{L.generator.inverse().transpose()};
}

// The structure whose pair matrix equals the generator (M = G^{-1}, B = G).
inline GeometricPair structure_from_lattice(const Lattice& L) {
  GeometricPair out;
  out.structure = make_structure(L.generator.inverse());
  out.B = L.generator;
  out.det_b = 1.0 / L.generator.determinant();
  out.cond_estimate =
      max_abs(out.structure.M) * max_abs(out.B) * double(L.dim());
  return out;
}

// All lattice points with |p|_2 <= radius, ordered lexicographically by the
// integer coordinate vector.
inline std::vector<Vector> enumerate_points(const Lattice& L, double radius) {
  if (radius < 0) fail(ErrorKind::ParamOutOfRange, "enumerate_points: radius >= 0");
  const int n = L.dim();
  const Matrix Ginv = L.generator.inverse();
  std::vector<long> lo(n), hi(n);
  double box = 1;
  for (int d = 0; d < n; ++d) {
    const double bound = Ginv.row(d).norm() * radius;
    lo[d] = long(std::floor(-bound));
    hi[d] = long(std::ceil(bound));
    box *= double(hi[d] - lo[d] + 1);
  }
  if (box > 1e7) fail(ErrorKind::RadiusTooLarge, "enumerate_points: index box too large");
  std::vector<Vector> out;
  std::vector<long> m(lo);
  const double r2 = radius * radius * (1 + 1e-12) + 1e-300;
  while (true) {
    Vector mi(n);
    for (int d = 0; d < n; ++d) mi(d) = double(m[d]);
    Vector p = L.generator * mi;
    if (p.squaredNorm() <= r2) out.push_back(std::move(p));
    int d = n - 1;
    while (d >= 0) {
      if (++m[d] <= hi[d]) break;
      m[d] = lo[d];
      --d;
    }
    if (d < 0) break;
  }
  return out;
}

// ---- certified Gaussian lattice sums -------------------------------------------

namespace detail {

// One truncated sum  weight * sum_{m in Z^n, |m - center| <= R} fn(P m + shift) e^{2 pi i <m, phase>}
// with a certified bound on the discarded tail.
struct LatticeSumSpec {
  Matrix point_map;      // P
  GaussianFunction fn;
  Vector shift;
  Vector phase;
  double weight = 1.0;
};

struct LatticeSumResult {
  Complex value;
  double radius = 0;        // index-space truncation radius
  std::size_t terms = 0;    // points inside the ball
  double tail_bound = 0;    // certified bound on |discarded part|
};

// Envelope of the summand in index space: |term(m)| <= amp e^{-pi lambda |m - center|^2}.
struct IndexEnvelope {
  double amp = 0;
  double lambda = 0;
  Vector center;
};

inline IndexEnvelope index_envelope(const LatticeSumSpec& spec) {
  IndexEnvelope env;
  const Matrix shape_m =
      spec.point_map.transpose() * spec.fn.shape * spec.point_map;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (shape_m + shape_m.transpose()));
  env.lambda = es.eigenvalues().minCoeff();
  if (env.lambda <= 0)
    fail(ErrorKind::NotPositiveDefinite, "lattice sum: flat summand envelope");
  env.center = spec.point_map.inverse() * (spec.fn.center - spec.shift);
  env.amp = std::abs(spec.fn.amp) * std::abs(spec.weight);
  return env;
}

// Shell bound: at most (2r + 3)^n integer points within distance r of any
// center; each shell [R + j, R + j + 1) contributes with the envelope decay.
inline double lattice_tail_bound(const IndexEnvelope& env, int n, double R) {
  double tail = 0;
  for (int j = 0; j < 2000; ++j) {
    const double r = R + j;
    const double term =
        std::pow(2 * (r + 1) + 3, n) * env.amp * std::exp(-kPi * env.lambda * r * r);
    tail += term;
    if (term < 1e-280) break;
  }
  return tail;
}

inline LatticeSumResult certified_lattice_sum(const LatticeSumSpec& spec,
                                              double tail_target,
                                              std::optional<double> fixed_radius) {
  const int n = static_cast<int>(spec.point_map.rows());
  const IndexEnvelope env = index_envelope(spec);
  LatticeSumResult out;
  if (fixed_radius) {
    out.radius = *fixed_radius;
    out.tail_bound = lattice_tail_bound(env, n, out.radius);
    if (out.tail_bound > tail_target)
      fail(ErrorKind::TailBoundViolated,
           "lattice sum: requested radius does not certify the tolerance");
  } else {
    double R = 2.0;
    while (true) {
      const double tail = lattice_tail_bound(env, n, R);
      if (tail <= tail_target) {
        out.radius = R;
        out.tail_bound = tail;
        break;
      }
      R += 1.0;
      if (R > 300.0)
        fail(ErrorKind::RadiusTooLarge, "lattice sum: no certifiable radius");
    }
  }
  std::vector<long> lo(n), hi(n);
  double box = 1;
  for (int d = 0; d < n; ++d) {
    lo[d] = long(std::floor(env.center(d) - out.radius));
    hi[d] = long(std::ceil(env.center(d) + out.radius));
    box *= double(hi[d] - lo[d] + 1);
  }
  if (box > 2e7) fail(ErrorKind::RadiusTooLarge, "lattice sum: index box too large");
  std::vector<long> span(n);
  std::size_t total = 1;
  for (int d = 0; d < n; ++d) {
    span[d] = hi[d] - lo[d] + 1;
    total *= std::size_t(span[d]);
  }
  const double r2 = out.radius * out.radius;
  std::size_t kept = 0;
  const Complex sum = pairwise_sum<Complex>(total, [&](std::size_t flat) {
    std::size_t rest = flat;
    Vector m(n);
    for (int d = n - 1; d >= 0; --d) {
      m(d) = double(lo[d] + long(rest % std::size_t(span[d])));
      rest /= std::size_t(span[d]);
    }
    if ((m - env.center).squaredNorm() > r2) return Complex(0, 0);
    ++kept;
    const double ph = kTwoPi * m.dot(spec.phase);
    return spec.fn.evaluate(Vector(spec.point_map * m + spec.shift)) *
           Complex(std::cos(ph), std::sin(ph));
  });
  out.value = spec.weight * sum;
  out.terms = kept;
  return out;
}

}  // namespace detail

// ---- summation identities over a lattice ----------------------------------------

enum class PoissonForm {
  Classical,          // dual-lattice sum of the classical transform
  LeftFromLattice,    // structure built from the generator; left transform
  RightFromOpposite,  // same, phrased through the opposite structure
  LatticeLeft,        // lattice B Z^n from a given structure; left transform
  LatticeRight,       // lattice B^T Z^n; right transform
  InverseLeft,        // lattice B Z^n; right-inverse transform at integer points
  InverseRight        // same content phrased through the opposite structure
};

inline const char* to_string(PoissonForm f) {
  switch (f) {
    case PoissonForm::Classical: return "classical";
    case PoissonForm::LeftFromLattice: return "left-from-lattice";
    case PoissonForm::RightFromOpposite: return "right-from-opposite";
    case PoissonForm::LatticeLeft: return "lattice-left";
    case PoissonForm::LatticeRight: return "lattice-right";
    case PoissonForm::InverseLeft: return "inverse-left";
    case PoissonForm::InverseRight: return "inverse-right";
  }
  return "?";
}

struct PoissonOptions {
  double tolerance = 1e-10;
  std::optional<double> spatial_radius;
  std::optional<double> frequency_radius;
};

struct PoissonReport {
  PoissonForm form = PoissonForm::Classical;
  Complex lhs{0, 0};
  Complex rhs{0, 0};
  double abs_gap = 0;
  double tolerance = 0;
  bool passed = false;
  double spatial_radius = 0, frequency_radius = 0;
  std::size_t spatial_terms = 0, frequency_terms = 0;
  double spatial_tail = 0, frequency_tail = 0;
};

namespace detail {

inline PoissonReport poisson_check_impl(const GaussianFunction& f, const Vector& x,
                                        PoissonForm form, const GeometricPair& pair,
                                        const Matrix& spatial_generator,
                                        const PoissonOptions& opt) {
  const int n = f.dim();
  if (x.size() != n || pair.B.rows() != n)
    fail(ErrorKind::DimensionMismatch, "poisson_check: dimension mismatch");
  PoissonReport rep;
  rep.form = form;
  rep.tolerance = opt.tolerance;

  LatticeSumSpec lhs;
  lhs.point_map = spatial_generator;
  lhs.fn = f;
  lhs.shift = x;
  lhs.phase = Vector::Zero(n);
  lhs.weight = 1.0;

  LatticeSumSpec rhs;
  rhs.shift = Vector::Zero(n);
  rhs.point_map = Matrix::Identity(n, n);
  switch (form) {
    case PoissonForm::Classical:
      rhs.fn = gaussian_classical_ft(f);
      rhs.point_map = spatial_generator.inverse().transpose();
      rhs.phase = rhs.point_map.transpose() * x;
      rhs.weight = 1.0 / std::abs(spatial_generator.determinant());
      break;
    case PoissonForm::LeftFromLattice:
    case PoissonForm::LatticeLeft:
      rhs.fn = gaussian_geometric_ft(f, pair, Side::Left);
      rhs.phase = pair.M() * x;
      rhs.weight = std::abs(pair.det_b);
      break;
    case PoissonForm::RightFromOpposite:
      rhs.fn = gaussian_geometric_ft(f, opposite(pair), Side::Right);
      rhs.phase = pair.M() * x;
      rhs.weight = std::abs(pair.det_b);
      break;
    case PoissonForm::LatticeRight:
      rhs.fn = gaussian_geometric_ft(f, pair, Side::Right);
      rhs.phase = pair.M().transpose() * x;
      rhs.weight = std::abs(pair.det_b);
      break;
    case PoissonForm::InverseLeft:
      rhs.fn = gaussian_inverse_geometric_ft(f, pair, Side::Right);
      rhs.phase = -(pair.M() * x);
      rhs.weight = 1.0;
      break;
    case PoissonForm::InverseRight:
      rhs.fn = gaussian_inverse_geometric_ft(f, opposite(pair), Side::Left);
      rhs.phase = -(pair.M() * x);
      rhs.weight = 1.0;
      break;
  }

  const double target = opt.tolerance / 8.0;
  const auto ls = certified_lattice_sum(lhs, target, opt.spatial_radius);
  const auto rs = certified_lattice_sum(rhs, target, opt.frequency_radius);
  rep.lhs = ls.value;
  rep.rhs = rs.value;
  rep.abs_gap = std::abs(ls.value - rs.value);
  rep.passed = rep.abs_gap <= opt.tolerance;
  rep.spatial_radius = ls.radius;
  rep.frequency_radius = rs.radius;
  rep.spatial_terms = ls.terms;
  rep.frequency_terms = rs.terms;
  rep.spatial_tail = ls.tail_bound;
  rep.frequency_tail = rs.tail_bound;
  return rep;
}

}  // namespace detail

// Lattice-input forms: the sum runs over the generator's lattice.
inline PoissonReport poisson_check(const GaussianFunction& f, const Vector& x,
                                   PoissonForm form, const Lattice& L,
                                   const PoissonOptions& opt = {}) {
  if (form != PoissonForm::Classical && form != PoissonForm::LeftFromLattice &&
      form != PoissonForm::RightFromOpposite)
    fail(ErrorKind::UnsupportedMode, "poisson_check: form needs a structure input");
  const GeometricPair pair = structure_from_lattice(L);
  return detail::poisson_check_impl(f, x, form, pair, L.generator, opt);
}

// Structure-input forms: the lattice is B Z^n (left/inverse) or B^T Z^n (right).
inline PoissonReport poisson_check(const GaussianFunction& f, const Vector& x,
                                   PoissonForm form, const GeometricPair& pair,
                                   const PoissonOptions& opt = {}) {
  Matrix gen;
  switch (form) {
    case PoissonForm::LatticeLeft:
    case PoissonForm::InverseLeft:
    case PoissonForm::InverseRight:
      gen = pair.B;
      break;
    case PoissonForm::LatticeRight:
      gen = pair.B.transpose();
      break;
    default:
      fail(ErrorKind::UnsupportedMode, "poisson_check: form needs a lattice input");
  }
  return detail::poisson_check_impl(f, x, form, pair, gen, opt);
}

}  // namespace geoft
