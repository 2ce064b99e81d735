#pragma once

// Small multivariate polynomials with complex coefficients, used to keep
// derivative and Laplacian images of Gaussians in closed form
// (polynomial x Gaussian is closed under d/dx_j, coordinate products, and
// composition with linear maps).

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "geoft/core.hpp"

namespace geoft {

class Polynomial {
 public:
  using Expo = std::vector<int>;

  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, Complex c) {
    Polynomial p(dim);
    if (c != Complex(0, 0)) p.terms_[Expo(dim, 0)] = c;
    return p;
  }

  // coordinate monomial x_axis
  static Polynomial coordinate(int dim, int axis) {
    Polynomial p(dim);
    Expo e(dim, 0);
    e[axis] = 1;
    p.terms_[e] = Complex(1, 0);
    return p;
  }

  // affine form c0 + <a, x>
  static Polynomial affine(const Eigen::VectorXd& a, Complex c0) {
    Polynomial p(static_cast<int>(a.size()));
    p = constant(p.dim_, c0);
    for (int d = 0; d < p.dim_; ++d) {
      if (a(d) != 0.0) {
        Expo e(p.dim_, 0);
        e[d] = 1;
        p.terms_[e] += Complex(a(d), 0);
      }
    }
    p.prune();
    return p;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    prune();
    return *this;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
  }

  Polynomial operator*(Complex s) const {
    Polynomial r(dim_);
    if (s == Complex(0, 0)) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    Polynomial r(dim_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Expo e(dim_);
        for (int d = 0; d < dim_; ++d) e[d] = e1[d] + e2[d];
        r.terms_[e] += c1 * c2;
      }
    r.prune();
    return r;
  }

  Polynomial derivative(int axis) const {
    Polynomial r(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[axis] == 0) continue;
      Expo d = e;
      d[axis] -= 1;
      r.terms_[d] += c * static_cast<double>(e[axis]);
    }
    r.prune();
    return r;
  }

  Complex evaluate(const Eigen::VectorXd& x) const {
    Complex acc(0, 0);
    for (const auto& [e, c] : terms_) {
      double mono = 1.0;
      for (int d = 0; d < dim_; ++d)
        for (int k = 0; k < e[d]; ++k) mono *= x(d);
      acc += c * mono;
    }
    return acc;
  }

  // q(x) = p(L x)
  Polynomial compose_linear(const Eigen::MatrixXd& L) const {
    Polynomial r(dim_);
    for (const auto& [e, c] : terms_) {
      Polynomial mono = constant(dim_, c);
      for (int d = 0; d < dim_; ++d)
        for (int k = 0; k < e[d]; ++k)
          mono = mono * affine(L.row(d).transpose(), Complex(0, 0));
      r += mono;
    }
    return r;
  }

 private:
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) == 0.0)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  int dim_;
  std::map<Expo, Complex> terms_;
};

}  // namespace geoft
