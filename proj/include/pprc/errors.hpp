#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pprc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A point coincides with a fan vertex.
class SingularPointError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Two rays are (numerically) parallel, so their intersection is undefined.
class ParallelRaysError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Geometry, grid or file configuration is unusable.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// A kernel or data value is not finite at some sample.
class EvaluationError : public Error {
public:
  EvaluationError(const std::string &what, std::size_t sample)
      : Error(what + " (sample " + std::to_string(sample) + ")"), sample_(sample) {}
  std::size_t sample() const noexcept { return sample_; }

private:
  std::size_t sample_;
};

/// Principal value quadrature cannot resolve a singular point on the data grid.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature hit its depth cap before reaching the tolerance.
class AccuracyError : public Error {
public:
  AccuracyError(const std::string &what, double estimate, double achieved,
                std::optional<std::size_t> ray = std::nullopt)
      : Error(what), estimate_(estimate), achieved_(achieved), ray_(ray) {}

  double estimate() const noexcept { return estimate_; }
  double achieved_tolerance() const noexcept { return achieved_; }
  std::optional<std::size_t> ray_index() const noexcept { return ray_; }

private:
  double estimate_;
  double achieved_;
  std::optional<std::size_t> ray_;
};

/// An iterative solver produced a non-finite value.
class DivergenceError : public Error {
public:
  DivergenceError(const std::string &what, int iteration)
      : Error(what + " at iteration " + std::to_string(iteration)), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

private:
  int iteration_;
};

/// A kernel pair vanishes on the sampling grid.
class DegenerateKernelError : public Error {
public:
  using Error::Error;
};

} // namespace pprc
