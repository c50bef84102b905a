#include "inner/unit_point.hpp"

#include <algorithm>
#include <cmath>

namespace inner {

double canonical_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angle_diff(double a, double b) {
  double d = canonical_angle(a - b);
  if (d > kPi) d -= kTwoPi;
  return d;
}

double ccw_distance(double from, double to) { return canonical_angle(to - from); }

double angular_distance(double a, double b) { return std::abs(angle_diff(a, b)); }

bool Arc::contains_interior(double theta) const {
  const double d = ccw_distance(lo, theta);
  return d > 0.0 && d < length;
}

double Arc::distance_to(double theta) const {
  const double d = ccw_distance(lo, theta);
  if (d <= length) return 0.0;
  return std::min(d - length, kTwoPi - d);
}

Arc Arc::between(double lo, double hi) {
  double len = ccw_distance(lo, hi);
  if (len == 0.0) len = kTwoPi;
  return Arc{canonical_angle(lo), len};
}

}  // namespace inner
