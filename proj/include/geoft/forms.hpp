#pragma once

// Nondegenerate bilinear structures b(x,y) = x^T M y on R^n, the attached
// pair matrix B = M^{-1} (so <x,y> = b(x, By)), adjoints, and the symmetry
// group G_b = { A : A B A^T = B } with Lie algebra g_b = { X : XB = -B X^T }.
//
// Convention fixed throughout: det b := det M = (det B)^{-1}.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <vector>

#include "geoft/core.hpp"

namespace geoft {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct GeometricStructure {
  Matrix M;
  int dim() const { return static_cast<int>(M.rows()); }
};

struct Classification {
  bool symmetric = false;
  bool skew = false;
  bool positive_definite = false;
};

struct GeometricPair {
  GeometricStructure structure;
  Matrix B;               // M^{-1}
  double det_b = 0.0;     // det M
  double cond_estimate = 0.0;
  int dim() const { return structure.dim(); }
  const Matrix& M() const { return structure.M; }
};

inline double max_abs(const Matrix& A) {
  return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

// Degeneracy test is scale-aware: |det M| <= 1e-12 * (max|M_ij|)^n is flagged.
inline GeometricStructure make_structure(const Matrix& M) {
  if (M.rows() != M.cols() || M.rows() == 0)
    fail(ErrorKind::NonSquare, "structure matrix must be square and nonempty");
  const double scale = max_abs(M);
  const double det = M.determinant();
  const double floor = 1e-12 * std::pow(scale, static_cast<double>(M.rows()));
  if (std::abs(det) <= floor)
    fail(ErrorKind::Degenerate, "structure matrix is (numerically) degenerate");
  return GeometricStructure{M};
}

inline double evaluate(const GeometricStructure& b, const Vector& x,
                       const Vector& y) {
  if (x.size() != b.dim() || y.size() != b.dim())
    fail(ErrorKind::DimensionMismatch, "evaluate: vector size mismatch");
  return x.dot(b.M * y);
}

// Symmetrized quadratic form b(x,x) = x^T ((M + M^T)/2) x. All Laplacian and
// fractional multipliers evaluate quadratic forms through this path so the
// skew part cancels exactly rather than to roundoff.
inline double quadratic_form(const GeometricStructure& b, const Vector& x) {
  const Matrix S = 0.5 * (b.M + b.M.transpose());
  return x.dot(S * x);
}

inline GeometricStructure opposite(const GeometricStructure& b) {
  return GeometricStructure{b.M.transpose()};
}

inline GeometricStructure negate(const GeometricStructure& b) {
  return make_structure(-b.M);
}

inline GeometricPair make_pair(const GeometricStructure& b) {
  Eigen::PartialPivLU<Matrix> lu(b.M);
  const double det = lu.determinant();
  const double scale = max_abs(b.M);
  const double floor = 1e-12 * std::pow(scale, static_cast<double>(b.dim()));
  if (std::abs(det) <= floor)
    fail(ErrorKind::Degenerate, "structure matrix is (numerically) degenerate");
  GeometricPair pair;
  pair.structure = b;
  pair.B = lu.inverse();
  pair.det_b = det;
  pair.cond_estimate = max_abs(b.M) * max_abs(pair.B) * b.dim();
  return pair;
}

inline GeometricPair make_pair(const Matrix& M) {
  return make_pair(make_structure(M));
}

inline GeometricPair opposite(const GeometricPair& pair) {
  GeometricPair op;
  op.structure = opposite(pair.structure);
  op.B = pair.B.transpose();
  op.det_b = pair.det_b;
  op.cond_estimate = pair.cond_estimate;
  return op;
}

enum class Side { Left, Right };

// Adjoints w.r.t. b:  b(adj_L(A) x, y) = b(x, A y),  b(x, adj_R(A) y) = b(A x, y).
// Closed forms:       adj_L(A) = B^T A^T B^{-T} = B^T A^T M^T
//                     adj_R(A) = B   A^T B^{-1} = B   A^T M
inline Matrix adjoint(const GeometricPair& pair, const Matrix& A, Side side) {
  if (A.rows() != pair.dim() || A.cols() != pair.dim())
    fail(ErrorKind::DimensionMismatch, "adjoint: operator size mismatch");
  if (side == Side::Left)
    return pair.B.transpose() * A.transpose() * pair.M().transpose();
  return pair.B * A.transpose() * pair.M();
}

inline double group_residual(const GeometricPair& pair, const Matrix& A) {
  return max_abs(A * pair.B * A.transpose() - pair.B);
}

inline bool in_group(const GeometricPair& pair, const Matrix& A,
                     double tol = 1e-10) {
  return group_residual(pair, A) <= tol;
}

inline double lie_algebra_residual(const GeometricPair& pair, const Matrix& X) {
  return max_abs(X * pair.B + pair.B * X.transpose());
}

inline bool in_lie_algebra(const GeometricPair& pair, const Matrix& X,
                           double tol = 1e-10) {
  return lie_algebra_residual(pair, X) <= tol;
}

// Basis of g_b via SVD of the vectorized linear map X -> X B + B X^T.
// Right singular vectors whose singular value falls below 1e-10 * sigma_max
// span the (numerical) null space.
inline std::vector<Matrix> lie_algebra_basis(const GeometricPair& pair) {
  const int n = pair.dim();
  const int n2 = n * n;
  Matrix K(n2, n2);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Matrix E = Matrix::Zero(n, n);
      E(p, q) = 1.0;
      const Matrix L = E * pair.B + pair.B * E.transpose();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) K(i * n + j, p * n + q) = L(i, j);
    }
  Eigen::JacobiSVD<Matrix> svd(K, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-10 * (sv.size() > 0 ? sv(0) : 0.0);
  std::vector<Matrix> basis;
  for (int k = 0; k < n2; ++k) {
    if (sv(k) <= thresh) {
      Matrix X(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = svd.matrixV()(i * n + j, k);
      basis.push_back(X);
    }
  }
  return basis;
}

struct GroupSample {
  Matrix A;                      // element of G_b (identity when trivial)
  Matrix X;                      // algebra element with A = exp(X)
  bool trivial_algebra = false;  // g_b = {0}; only discrete elements exist
};

// Random group element: seeded coefficients over the algebra basis, rescaled
// to `scale` in Frobenius norm, then a scaling-and-squaring matrix
// exponential (accuracy well below the 1e-13 target at these sizes).
inline GroupSample sample_group_element(const GeometricPair& pair, Rng& rng,
                                        double scale = 1.0) {
  const int n = pair.dim();
  GroupSample out;
  out.X = Matrix::Zero(n, n);
  auto basis = lie_algebra_basis(pair);
  if (basis.empty()) {
    out.A = Matrix::Identity(n, n);
    out.trivial_algebra = true;
    return out;
  }
  for (const auto& Xb : basis) out.X += rng.uniform(-1.0, 1.0) * Xb;
  const double nrm = out.X.norm();
  if (scale == 0.0 || nrm == 0.0) {
    out.X.setZero();
    out.A = Matrix::Identity(n, n);
    return out;
  }
  out.X *= scale / nrm;
  out.A = out.X.exp();
  return out;
}

// symmetric  <=> max|M - M^T|     <= 1e-12 * max(1, max|M|)
// skew       <=> max|M + M^T|     <= same floor
// pos. def.  <=> lambda_min((M+M^T)/2) > same floor
inline Classification classify(const GeometricStructure& b) {
  const double tol = 1e-12 * std::max(1.0, max_abs(b.M));
  Classification c;
  c.symmetric = max_abs(b.M - b.M.transpose()) <= tol;
  c.skew = max_abs(b.M + b.M.transpose()) <= tol;
  const Matrix S = 0.5 * (b.M + b.M.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(S);
  c.positive_definite = es.eigenvalues().minCoeff() > tol;
  return c;
}

inline Classification classify(const GeometricPair& pair) {
  return classify(pair.structure);
}

}  // namespace geoft
