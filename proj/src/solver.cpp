#include "pprc/solver.hpp"

namespace pprc {

std::string to_string(StopReason r) {
  switch (r) {
  case StopReason::converged:
    return "converged";
  case StopReason::max_iterations:
    return "max_iterations";
  case StopReason::zero_target:
    return "zero_target";
  case StopReason::stationary:
    return "stationary";
  }
  return "unknown";
}

MatrixOperator::MatrixOperator(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), a_(std::move(data)) {
  if (a_.size() != rows * cols)
    throw ConfigurationError("MatrixOperator: data size does not match rows * cols");
}

void MatrixOperator::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j)
      s += a_[i * cols_ + j] * x[j];
    y[i] = s;
  }
}

void MatrixOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
  for (std::size_t j = 0; j < cols_; ++j)
    x[j] = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      x[j] += a_[i * cols_ + j] * y[i];
}

double predicted_residual_floor(const DataPair &g, const KernelPair &k) {
  double gw = 0.0, ww = 0.0;
  auto add = [&](const ProjectionData &d, const std::function<double(double)> &V, double sgn) {
    const double h = d.grid.step();
    for (int i = 0; i < d.grid.n_bins; ++i) {
      const double w = sgn * h * V(d.grid.sample(i));
      if (!std::isfinite(w))
        throw EvaluationError("non-finite kernel value", static_cast<std::size_t>(i));
      gw += d.values[i] * w;
      ww += w * w;
    }
  };
  add(g.first, k.first, 1.0);
  add(g.second, k.second, -1.0);
  if (!(ww > 0.0))
    throw DegenerateKernelError("predicted_residual_floor: kernel vector vanishes on the grids");
  return std::abs(gw) / std::sqrt(ww);
}

} // namespace pprc
