#pragma once

#include "pprc/geometry.hpp"
#include "pprc/sampling.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pprc {

/// Projection kernels (V1, V2) on the ray parameters of the two views.
struct KernelPair {
  std::function<double(double)> first;
  std::function<double(double)> second;
  std::string name;
  /// Common sign of both components, +1 or -1.
  int sign = 1;

  KernelPair scaled(double c) const;
};

/// Closed-form kernels for par-par, par-fan and classical fan-fan pairs;
/// std::nullopt when a fan view carries a non-zero attenuation.
/// Throws ConfigurationError if the pair is inadmissible.
std::optional<KernelPair> known_kernels(const PairGeometry &pg);

struct PprcTerms {
  double first = 0.0;  ///< integral of g1 V1
  double second = 0.0; ///< integral of g2 V2
  double residual() const { return first - second; }
};

/// Trapezoid quadrature of g_i V_i over the sample nodes of each grid.
/// Throws EvaluationError at the first non-finite kernel value; samples of the
/// second view are numbered after those of the first.
PprcTerms pprc_terms(const DataPair &g, const KernelPair &k);
double pprc_residual(const DataPair &g, const KernelPair &k);

/// (rho1 |det dgamma1^-1/dx| / rho2 |det dgamma2^-1/dx|)(X(r1, r2)).
/// Throws DomainError if X(r1, r2) is not a forward intersection inside the domain.
double kernel_condition_lhs(const PairGeometry &pg, double r1, double r2);
/// Natural logarithm of kernel_condition_lhs.
double kernel_lhs_log(const PairGeometry &pg, double r1, double r2);

/// (r1(x), r2(x)) for the active points x of an n x n grid over the domain
/// bounding box; n grows until at least `min_count` samples are produced.
std::vector<std::pair<double, double>> sample_intersecting_set(const PairGeometry &pg,
                                                               std::size_t min_count);

/// Largest relative difference between kernel_condition_lhs and V2/V1 over the samples.
double kernel_condition_residual(const PairGeometry &pg, const KernelPair &k,
                                 const std::vector<std::pair<double, double>> &samples);

struct PvResult {
  std::vector<double> eps;       ///< exclusion radii actually used
  std::vector<double> residuals; ///< first - second side for each eps
  double extrapolated = 0.0;
  bool first_singular = false;
  bool second_singular = false;
  double first_singularity = 0.0;
  double second_singularity = 0.0;
};

/// Principal-value version of the par-fan condition: each side integrates the
/// piecewise-linear interpolant of g (r - s) V against 1/(r - s) exactly, with
/// the interval (s - eps, s + eps) removed around a singular point s inside
/// the node span. Extrapolates eps -> 0 by Richardson on the last three radii.
/// An empty eps list uses 1/4, 1/8, 1/16 of the distance from s to the
/// nearest node. Throws ResolutionError when a singular point lies inside a
/// grid but outside its node span (the outer half bins) or on a node.
PvResult pv_hilbert_residual(const DataPair &g, const PairGeometry &pg,
                             std::vector<double> eps = {});

/// Closed-form double difference of expo_lhs_log.
/// Throws DomainError if a denominator normal(a) . direction(b) vanishes.
double eval_G(double r1, double r1t, double r2, double r2t, double mu, Vec2 delta_lambda);

/// mu ((normal(r1) - normal(r2)) . dl) / (normal(r1) . direction(r2)).
double expo_lhs_log(double r1, double r2, double mu, Vec2 lambda1, Vec2 lambda2);

/// Counterexample angles (theta0 + 5pi/4, theta0 + 7pi/6, theta0 + pi, theta0 + 5pi/6).
std::array<double, 4> counterexample_tuple(double theta0);

/// The constant (-8 - sqrt2 + 4 sqrt3 + sqrt6) quoted for G at the counterexample.
double quoted_G_constant();

/// L(r1_i, r2_j) on a tensor grid; invalid entries are outside the intersecting set.
struct SampledSurface {
  std::vector<double> r1;
  std::vector<double> r2;
  std::vector<double> values; ///< row-major: values[i * r2.size() + j]
  std::vector<std::uint8_t> valid;

  double at(std::size_t i, std::size_t j) const { return values[i * r2.size() + j]; }
  bool ok(std::size_t i, std::size_t j) const { return valid[i * r2.size() + j] != 0; }
};

/// Evaluates L on n1 x n2 midpoint samples of the two ray ranges, merged with
/// the extra abscissae, keeping the points whose rays meet inside the domain.
SampledSurface sample_surface(const PairGeometry &pg, int n1, int n2,
                              const std::function<double(double, double)> &L,
                              std::vector<double> extra_r1 = {},
                              std::vector<double> extra_r2 = {});

struct SeparabilityReport {
  double max_abs_D = 0.0;
  std::array<double, 4> argmax{}; ///< (r1, r1~, r2, r2~)
  double threshold = 0.0;
  double scale = 0.0; ///< max |L| over valid samples
  std::size_t quadruples = 0;
  bool separable = true;
};

struct SeparabilityOptions {
  /// Verdict threshold relative to scale; a negative value means absolute_threshold is used.
  double relative_threshold = 1e-8;
  double absolute_threshold = 0.0;
  std::size_t max_quadruples = 50'000'000;
  int threads = 1;
};

/// max |L(r1,r2) - L(r1~,r2) - L(r1,r2~) + L(r1~,r2~)| over sampled quadruples
/// with all four corners valid. Ties go to the lexicographically smallest
/// index tuple. Throws DomainError if no quadruple is admissible.
SeparabilityReport separability_test(const SampledSurface &L, const SeparabilityOptions &opt = {});

} // namespace pprc
