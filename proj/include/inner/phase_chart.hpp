#pragma once

#include <memory>
#include <vector>

#include "inner/evaluate.hpp"

namespace inner {

inline constexpr double kDefaultWindow = 8.0 * kPi;

/// Continuous argument Φ of Θ along an open arc (lo, lo + length), as a
/// function of u = θ - lo. Each factor contributes its principal phase plus
/// 2π for every zero crossing between the arc midpoint and u, so Φ is
/// continuous on the whole arc and needs no unwrapping.
class ArcPhase {
 public:
  ArcPhase(std::shared_ptr<const InnerFunction> fn, double lo, double length);

  double lo() const { return lo_; }
  double length() const { return length_; }
  double u_ref() const { return 0.5 * length_; }
  const InnerFunction& function() const { return *fn_; }
  std::shared_ptr<const InnerFunction> function_ptr() const { return fn_; }

  double operator()(double u) const;
  double derivative(double u) const;

 private:
  struct ZeroSlot {
    double ra;  // anchor position relative to lo, shifted so ra + offset ∈ [0, 2π)
    double offset;
    double comod;
    int multiplicity;
    bool ref_positive;
  };
  struct AtomSlot {
    double ra;
    double mass;
  };

  std::shared_ptr<const InnerFunction> fn_;
  double lo_;
  double length_;
  std::vector<ZeroSlot> zeros_;
  std::vector<AtomSlot> atoms_;
};

/// Sampled, certified phase chart of one arc.
struct PhaseChart {
  std::shared_ptr<const ArcPhase> phase;
  /// Strictly increasing u grid and Φ(u) values.
  std::vector<double> u;
  std::vector<double> phi;
  /// Full-circle chart of a function without singularities: Φ(u + 2π) = Φ(u) + period.
  bool periodic = false;
  double period = 0.0;
  bool lo_singular = false;
  bool hi_singular = false;
  double window = kDefaultWindow;
  TruncationPolicy truncation;
  /// Truncation bound over the covered sub-arc.
  double truncation_bound = 0.0;

  double lo() const { return phase->lo(); }
  double length() const { return phase->length(); }
  double u_min() const { return u.front(); }
  double u_max() const { return u.back(); }
  double phi_min() const { return phi.front(); }
  double phi_max() const { return phi.back(); }
  double phi_ref() const { return (*phase)(phase->u_ref()); }
  Arc covered() const { return Arc{canonical_angle(lo() + u_min()), u_max() - u_min()}; }
  /// Φ at the angle θ, which must lie in the covered range.
  double phase_at(double theta) const;
};

/// Builds a chart on `arc`, whose interior must be free of singularities.
/// Toward a singular endpoint where solutions accumulate, the chart is clipped
/// once Φ moves `window` away from its midpoint value; other endpoints are
/// reached exactly. Ends are pulled in until the truncation bound is below
/// trunc.phase_tol.
PhaseChart build_phase_chart(std::shared_ptr<const InnerFunction> fn, const Arc& arc,
                             double window = kDefaultWindow);
PhaseChart build_phase_chart(const InnerFunctionSpec& spec, const Arc& arc,
                             const TruncationPolicy& trunc = {}, double window = kDefaultWindow);

/// u ∈ [u_min, u_max] with Φ(u) = target. Periodic charts reduce the target
/// modulo the period first. Throws PhaseRangeError outside the covered range.
double phase_inverse_u(const PhaseChart& chart, double target);
UnitPoint phase_inverse(const PhaseChart& chart, double target);

}  // namespace inner
