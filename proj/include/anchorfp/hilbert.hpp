#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>

#include "anchorfp/errors.hpp"

namespace anchorfp {

/// A point of the ambient space R^d.
using Vector = Eigen::VectorXd;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class A, class B>
void require_same_dim(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y,
                      const char* where) {
  if (x.size() != y.size()) {
    throw ContractViolation(std::string(where) + ": dimension mismatch (" +
                            std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
}

template <class A>
bool all_finite(const Eigen::MatrixBase<A>& x) {
  return x.allFinite();
}

template <class A, class B>
typename A::Scalar inner(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  require_same_dim(x, y, "inner");
  return x.dot(y);
}

template <class A>
typename A::Scalar norm(const Eigen::MatrixBase<A>& x) {
  using std::sqrt;
  return sqrt(x.dot(x));
}

template <class A>
typename A::Scalar squared_norm(const Eigen::MatrixBase<A>& x) {
  return x.dot(x);
}

template <class A, class B>
typename A::Scalar distance(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y) {
  require_same_dim(x, y, "distance");
  return norm(x - y);
}

/// lambda * x + (1 - lambda) * y, componentwise. Every convex blend in the
/// library goes through here so runs share one rounding policy.
template <class A, class B>
VectorX<typename A::Scalar> combine(typename A::Scalar lambda, const Eigen::MatrixBase<A>& x,
                                    const Eigen::MatrixBase<B>& y) {
  require_same_dim(x, y, "combine");
  const typename A::Scalar mu = typename A::Scalar(1) - lambda;
  return (lambda * x + mu * y).eval();
}

/// Absolute gap between the two sides of
///   ||lx + (1-l)y||^2 = l||x||^2 + (1-l)||y||^2 - l(1-l)||x-y||^2,
/// which is zero in exact arithmetic for every real l.
template <class A, class B>
typename A::Scalar convexity_identity_residual(typename A::Scalar lambda,
                                               const Eigen::MatrixBase<A>& x,
                                               const Eigen::MatrixBase<B>& y) {
  using std::abs;
  require_same_dim(x, y, "convexity_identity_residual");
  const typename A::Scalar mu = typename A::Scalar(1) - lambda;
  const auto lhs = squared_norm(combine(lambda, x, y));
  const auto rhs = lambda * squared_norm(x) + mu * squared_norm(y) -
                   lambda * mu * squared_norm((x - y).eval());
  return abs(lhs - rhs);
}

}  // namespace anchorfp
