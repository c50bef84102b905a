#pragma once

#include <complex>
#include <numbers>

namespace inner {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2π).
double canonical_angle(double theta);

/// Signed difference a - b reduced to (-π, π].
double angle_diff(double a, double b);

/// Counterclockwise distance travelled from `from` to `to`, in [0, 2π).
double ccw_distance(double from, double to);

/// Shortest angular distance between two angles, in [0, π].
double angular_distance(double a, double b);

/// A point e^{iθ} of the unit circle, stored by its canonical angle.
class UnitPoint {
 public:
  UnitPoint() = default;
  explicit UnitPoint(double theta) : theta_(canonical_angle(theta)) {}

  double theta() const { return theta_; }
  std::complex<double> value() const { return std::polar(1.0, theta_); }

  friend bool operator==(UnitPoint, UnitPoint) = default;
  friend auto operator<=>(UnitPoint a, UnitPoint b) { return a.theta_ <=> b.theta_; }

 private:
  double theta_ = 0.0;
};

/// Counterclockwise arc starting at `lo` and sweeping `length` radians.
/// Interpreted as open when it is bounded by singularities. A length of 0
/// denotes a single point (used by error bounds).
struct Arc {
  double lo = 0.0;
  double length = kTwoPi;

  double hi() const { return canonical_angle(lo + length); }
  /// True when theta lies strictly inside the arc.
  bool contains_interior(double theta) const;
  /// Shortest angular distance from theta to the closed arc (0 inside).
  double distance_to(double theta) const;

  static Arc between(double lo, double hi);
};

}  // namespace inner
