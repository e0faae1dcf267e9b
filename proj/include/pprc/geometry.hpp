#pragma once

#include "pprc/domain.hpp"
#include "pprc/vec.hpp"

#include <string>
#include <variant>
#include <vector>

namespace pprc {

/// Parallel-beam family: lines {x : x . direction(theta) = r}, traversed along normal(theta).
struct ParGeometry {
  double theta = 0.0;
};

/// Fanbeam family: rays vertex + t direction(r), t > 0, optionally weighted by exp(mu t).
/// Ray angles are reported in the branch [theta0, theta0 + 2 pi).
struct FanGeometry {
  Vec2 vertex{};
  double theta0 = -kPi;
  double mu = 0.0;
};

using ViewGeometry = std::variant<ParGeometry, FanGeometry>;

/// Curve coordinates of a point: ray parameter r and arc parameter t.
struct RayCoords {
  double r = 0.0;
  double t = 0.0;
};

Vec2 par_point(const ParGeometry &g, double r, double t);
RayCoords par_inverse(const ParGeometry &g, Vec2 x);

/// Throws DomainError for t <= 0.
Vec2 fan_point(const FanGeometry &g, double r, double t);
/// Throws SingularPointError when x is within 1e-14 of the vertex.
RayCoords fan_inverse(const FanGeometry &g, Vec2 x);
/// |det d(fan_inverse)/dx| = 1 / |x - vertex|.
double fan_jacobian_inv(const FanGeometry &g, Vec2 x);

inline constexpr double kParallelThreshold = 1e-12;

/// Arc parameters (t1, t2) at which the rays (lambda1, r1) and (lambda2, r2) meet.
/// Throws ParallelRaysError if |normal(r1) . direction(r2)| < 1e-12.
RayCoords fanfan_tau(double r1, double r2, Vec2 lambda1, Vec2 lambda2);
Vec2 fanfan_X(double r1, double r2, Vec2 lambda1, Vec2 lambda2);
/// Intersection of the parallel line with offset r1 and the fan ray of angle r2.
Vec2 parfan_X(double theta, double r1, double r2, Vec2 lambda);

// View-generic helpers.
bool is_fan(const ViewGeometry &g);
double attenuation(const ViewGeometry &g);
Vec2 point(const ViewGeometry &g, double r, double t);
RayCoords inverse(const ViewGeometry &g, Vec2 x);
/// |det d(inverse)/dx|: 1 for parallel views.
double jacobian_inv(const ViewGeometry &g, Vec2 x);
/// Line weight rho(r, t): exp(mu t) for fan views, 1 for parallel views.
double weight(const ViewGeometry &g, double t);
std::string describe(const ViewGeometry &g);

enum class PairKind { par_par, par_fan, fan_par, fan_fan };
std::string to_string(PairKind kind);

struct PairGeometry {
  ViewGeometry first;
  ViewGeometry second;
  ImageDomain domain = ImageDomain::rectangle({-1, -1}, {1, 1});

  PairKind kind() const;
  /// Intersection point X(r1, r2) of the curve r1 of the first view with the
  /// curve r2 of the second view.
  Vec2 intersection(double r1, double r2) const;
};

/// +1 if the domain lies in the right half-plane of the line from lambda1 to
/// lambda2 (i.e. normal . (lambda2 - lambda1) > 0 along rays from lambda1),
/// -1 if it lies in the left one. Decided at the domain centroid.
int fan_orientation(Vec2 lambda1, Vec2 lambda2, const ImageDomain &domain);

/// Branch angle arg_0(s * perp(lambda2 - lambda1)) for orientation s; both
/// angular ranges then lie inside (theta0 + pi/2, theta0 + 3 pi/2).
double default_theta0(Vec2 lambda1, Vec2 lambda2, int orientation);

/// Fan-fan pair with the default branch angle for both views.
PairGeometry make_fan_pair(Vec2 lambda1, Vec2 lambda2, double mu, ImageDomain domain);

struct AdmissibilityReport {
  PairKind kind = PairKind::fan_fan;
  bool admissible = false;
  double threshold = 1e-6;
  int orientation = 0; ///< fan-fan only
  /// Smallest margin of every checked condition; admissible iff > threshold.
  double margin = 0.0;
  /// fan-fan: min s * normal(r_i) . dlambda over the domain.
  double epsilon_baseline = 0.0;
  /// fan-fan: min -s * normal(r1) . direction(r2) over the domain.
  double epsilon_crossing = 0.0;
  /// par-fan: min |direction(theta) . direction(r2(x))| over the domain.
  double delta_angle = 0.0;
  /// par-fan: distance from lambda . direction(theta) to the offset range.
  double delta_offset = 0.0;
  /// par-par: |sin(theta1 - theta2)|.
  double angle_separation = 0.0;
  /// Smallest distance of a fan vertex to the closed domain.
  double vertex_distance = 0.0;
  std::vector<std::string> failures;
};

AdmissibilityReport check_pair_admissible(const PairGeometry &pg, int boundary_samples = 1024,
                                          double threshold = 1e-6);

/// Range of ray parameters whose curves meet the domain: offsets for parallel
/// views, lifted angles for fan views.
Interval ray_range(const ViewGeometry &g, const ImageDomain &domain);

/// Midpoint of ray_range; the reference ray for relative angles.
double central_parameter(const ViewGeometry &g, const ImageDomain &domain);

} // namespace pprc
