#include "pprc/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace pprc {
namespace {

struct Rule {
  std::vector<double> nodes;   // in [-1, 1]
  std::vector<double> weights;
};

// Boost stores the non-negative half of the symmetric rule.
template <unsigned N> Rule expand_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto &x = G::abscissa();
  const auto &w = G::weights();
  Rule r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(0.0);
      r.weights.push_back(w[i]);
      continue;
    }
    r.nodes.push_back(-x[i]);
    r.weights.push_back(w[i]);
    r.nodes.push_back(x[i]);
    r.weights.push_back(w[i]);
  }
  return r;
}

const Rule &rule(int order) {
  static const Rule r8 = expand_rule<8>();
  static const Rule r16 = expand_rule<16>();
  static const Rule r32 = expand_rule<32>();
  switch (order) {
  case 8:
    return r8;
  case 16:
    return r16;
  case 32:
    return r32;
  default:
    throw std::invalid_argument("unsupported Gauss-Legendre order " + std::to_string(order));
  }
}

double composite(const std::function<double(double)> &f, double a, double b, int panels,
                 const Rule &r) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      panel += r.weights[i] * f(mid + 0.5 * h * r.nodes[i]);
    sum += panel;
  }
  return 0.5 * h * sum;
}

} // namespace

QuadratureResult integrate(const std::function<double(double)> &f, double a, double b,
                           const QuadratureSpec &spec) {
  const Rule &r = rule(spec.order);
  if (a == b)
    return {0.0, 0.0, 0, true};
  int panels = 1;
  double previous = composite(f, a, b, panels, r);
  QuadratureResult out{previous, std::numeric_limits<double>::infinity(), panels, false};
  for (int depth = 0; depth < spec.max_depth; ++depth) {
    panels *= 2;
    const double current = composite(f, a, b, panels, r);
    const double diff = std::abs(current - previous);
    out = {current, diff, panels, false};
    if (diff < std::max(spec.abs_tol, spec.rel_floor * std::abs(current))) {
      out.converged = true;
      return out;
    }
    previous = current;
  }
  return out;
}

double integrate_fixed(const std::function<double(double)> &f, double a, double b, int panels,
                       int order) {
  return composite(f, a, b, panels, rule(order));
}

} // namespace pprc
