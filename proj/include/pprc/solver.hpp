#pragma once

#include "pprc/consistency.hpp"
#include "pprc/errors.hpp"
#include "pprc/sampling.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pprc {

template <class Op>
concept LinearOperator = requires(const Op &a, std::span<const double> x, std::span<double> y) {
  { a.rows() } -> std::convertible_to<std::size_t>;
  { a.cols() } -> std::convertible_to<std::size_t>;
  a.apply(x, y);
  a.apply_adjoint(x, y);
};

enum class StopReason {
  converged,      ///< relative residual <= tol
  max_iterations,
  zero_target,    ///< g = 0: the zero iterate is exact
  stationary,     ///< A^T r vanished: least-squares solution reached
};

std::string to_string(StopReason r);

struct CgneProgress {
  int iteration = 0;
  double relative_residual = 0.0;
};

struct CgneOptions {
  int max_iter = 2000;
  double tol = 1e-3;
  /// Called every `callback_every` iterations when both are set.
  int callback_every = 0;
  std::function<void(const CgneProgress &)> callback;
};

struct CgneState {
  std::vector<double> iterate;
  /// ||g - A x_k|| / ||g|| for k = 0 .. iterations.
  std::vector<double> residual_history;
  int iterations = 0;
  StopReason reason = StopReason::max_iterations;
};

namespace detail {
inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}
} // namespace detail

/// Conjugate gradients on the normal equations A^T A x = A^T g from x = 0, in
/// the residual-updating form (CGLS), so ||g - A x_k|| decreases monotonically
/// and the limit is the minimum-norm least-squares solution.
template <LinearOperator Op>
CgneState cgne_solve(const Op &A, std::span<const double> g, const CgneOptions &opt = {}) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (g.size() != m)
    throw ConfigurationError("cgne_solve: data size does not match the operator");
  CgneState st;
  st.iterate.assign(n, 0.0);
  const double gnorm = std::sqrt(detail::dot(g, g));
  if (!std::isfinite(gnorm))
    throw DivergenceError("cgne_solve: non-finite target", 0);
  if (gnorm == 0.0) {
    st.residual_history = {0.0};
    st.reason = StopReason::zero_target;
    return st;
  }
  std::vector<double> r(g.begin(), g.end()), s(n), p(n), q(m);
  A.apply_adjoint(r, s);
  p = s;
  double gamma = detail::dot(s, s);
  st.residual_history.push_back(1.0);
  if (opt.tol >= 1.0) {
    st.reason = StopReason::converged;
    return st;
  }
  for (int k = 1; k <= opt.max_iter; ++k) {
    if (gamma == 0.0) {
      st.reason = StopReason::stationary;
      return st;
    }
    A.apply(p, q);
    const double qq = detail::dot(q, q);
    if (qq == 0.0) {
      st.reason = StopReason::stationary;
      return st;
    }
    const double alpha = gamma / qq;
    for (std::size_t i = 0; i < n; ++i)
      st.iterate[i] += alpha * p[i];
    for (std::size_t i = 0; i < m; ++i)
      r[i] -= alpha * q[i];
    A.apply_adjoint(r, s);
    const double gamma_next = detail::dot(s, s);
    const double rel = std::sqrt(detail::dot(r, r)) / gnorm;
    if (!std::isfinite(rel) || !std::isfinite(gamma_next))
      throw DivergenceError("cgne_solve: non-finite value", k);
    const double beta = gamma_next / gamma;
    for (std::size_t i = 0; i < n; ++i)
      p[i] = s[i] + beta * p[i];
    gamma = gamma_next;
    st.residual_history.push_back(rel);
    st.iterations = k;
    if (opt.callback && opt.callback_every > 0 && k % opt.callback_every == 0)
      opt.callback({k, rel});
    if (rel <= opt.tol) {
      st.reason = StopReason::converged;
      return st;
    }
  }
  st.reason = StopReason::max_iterations;
  return st;
}

/// Dense row-major matrix satisfying LinearOperator.
class MatrixOperator {
public:
  MatrixOperator(std::size_t rows, std::size_t cols, std::vector<double> data);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  void apply(std::span<const double> x, std::span<double> y) const;
  void apply_adjoint(std::span<const double> y, std::span<double> x) const;

private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
};

/// Distance |<g, W>| / ||W|| from g to the hyperplane W^perp, where
/// W = (step1 V1(r1_k), -step2 V2(r2_k)) is the discrete kernel pairing.
/// Throws DegenerateKernelError if ||W|| = 0.
double predicted_residual_floor(const DataPair &g, const KernelPair &k);

} // namespace pprc
