#pragma once

// Perron eigen-data of primitive nonnegative matrices by power iteration.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "gibbsloss/error.hpp"

namespace gibbsloss {

template <typename Scalar>
struct PerronResult {
  Scalar lambda{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> right;  // normalized to unit 1-norm
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> left;   // normalized to unit 1-norm
  Scalar residual{};                               // ||A v - lambda v||_inf for the right vector
  int iterations = 0;
};

struct PerronOptions {
  double tolerance = 1e-12;
  int max_iterations = 100000;
};

/// Primitivity of the support pattern, decided by boolean powers up to the
/// Wielandt bound (n-1)^2 + 1.
template <typename Derived>
bool is_primitive(const Eigen::MatrixBase<Derived>& a) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) return false;
  using Pattern = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
  const Pattern base = (a.array() > 0).template cast<int>().matrix();
  Pattern power = base;
  const Eigen::Index bound = (n - 1) * (n - 1) + 1;
  for (Eigen::Index k = 1; k <= bound; ++k) {
    if ((power.array() > 0).all()) return true;
    power = ((power * base).array() > 0).template cast<int>().matrix();
  }
  return false;
}

namespace detail {

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> power_iterate(const Eigen::MatrixBase<Derived>& a,
                                                                        const PerronOptions& options,
                                                                        typename Derived::Scalar& lambda,
                                                                        typename Derived::Scalar& residual,
                                                                        int& iterations) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector v = Vector::Ones(a.rows()) / static_cast<Scalar>(a.rows());
  for (iterations = 1; iterations <= options.max_iterations; ++iterations) {
    Vector w = a * v;
    lambda = w.template lpNorm<1>() / v.template lpNorm<1>();
    residual = (w - lambda * v).template lpNorm<Eigen::Infinity>();
    if (residual <= static_cast<Scalar>(options.tolerance)) return v;
    v = w / w.template lpNorm<1>();
  }
  throw Error(ErrorCode::NoConvergence, "power iteration did not reach the residual tolerance");
}

}  // namespace detail

/// Perron root and vectors. Throws NotPrimitive when the support is not a
/// primitive pattern and NoConvergence after `max_iterations`.
template <typename Derived>
PerronResult<typename Derived::Scalar> perron(const Eigen::MatrixBase<Derived>& a, const PerronOptions& options = {}) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "perron needs a square matrix");
  if ((a.array() < 0).any()) throw Error(ErrorCode::InvalidArgument, "perron needs a nonnegative matrix");
  if (!is_primitive(a)) throw Error(ErrorCode::NotPrimitive, "matrix support is not primitive");
  PerronResult<typename Derived::Scalar> out;
  typename Derived::Scalar left_lambda{}, left_residual{};
  int left_iterations = 0;
  out.right = detail::power_iterate(a, options, out.lambda, out.residual, out.iterations);
  out.left = detail::power_iterate(a.transpose(), options, left_lambda, left_residual, left_iterations);
  out.right /= out.right.template lpNorm<1>();
  out.left /= out.left.template lpNorm<1>();
  return out;
}

/// Largest eigenvalue modulus; used where primitivity may fail (e.g. at the
/// boundary of a parameter family).
template <typename Derived>
typename Derived::Scalar spectral_radius(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() == 0) return Scalar(0);
  Eigen::EigenSolver<Matrix> solver(Matrix(a), false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace gibbsloss
