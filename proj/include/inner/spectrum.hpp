#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "inner/phase_chart.hpp"

namespace inner {

enum class SingularityType { Type1a, Type1b, Type2 };
enum class IntervalType { Type0, Type1a, Type1b, Type2 };
enum class Cause { Atom, StolzTail, TangentialTail };

std::string to_string(SingularityType t);
std::string to_string(IntervalType t);
std::string to_string(Cause c);

/// Unimodular one-sided boundary value with its certificate radius (in phase).
struct OneSidedLimit {
  std::complex<double> value;
  double arg = 0.0;     // phase of the truncated model at the point
  double radius = 0.0;  // |arg of true limit - arg| <= radius
};

struct SingularityRecord {
  double theta = 0.0;
  SingularityType type = SingularityType::Type2;
  /// Present for Type1a (limit from below) and Type1b (limit from above).
  std::optional<OneSidedLimit> limit;
  std::vector<Cause> causes;
};

struct Type0Solution {
  double theta = 0.0;
  int multiplicity = 1;
};

struct IntervalRecord {
  double lo = 0.0;
  double hi = 0.0;
  double length = 0.0;
  IntervalType type = IntervalType::Type0;
  std::optional<OneSidedLimit> lo_limit;  // limit at lo from inside the arc
  std::optional<OneSidedLimit> hi_limit;
  /// Solutions of Θ = 1 inside a Type0 arc, in increasing angle.
  std::vector<Type0Solution> type0_image;
  /// False when the chart could not certify the whole arc, so the image may be incomplete.
  bool image_certified = true;
};

struct SpectrumReport {
  std::vector<SingularityRecord> singularities;
  /// intervals[j] runs from singularities[j] to singularities[j + 1] (cyclically).
  /// With an empty spectrum there is one full-circle Type0 record.
  std::vector<IntervalRecord> intervals;
  int degree = 0;
};

std::vector<UnitPoint> spectrum(const InnerFunctionSpec& spec);

/// |e^{iθ0} - z| < α(1 - |z|). Throws InvalidArgument unless α > 1 and |z| < 1.
bool stolz_contains(UnitPoint anchor, double alpha, std::complex<double> z);

struct AngularDerivative {
  bool finite = false;
  double value = 0.0;       // partial sum over the kept terms
  double tail_bound = 0.0;  // bound on the discarded terms
};

/// Σ (1 - |a_n|^2)/|ξ - a_n|^2 plus the zero order and atom contributions.
AngularDerivative angular_derivative_series(const InnerFunctionSpec& spec, UnitPoint xi,
                                            const TruncationPolicy& trunc = {});

/// Boundary value of Θ at ξ approached from `side`. Throws NoLimitError when
/// solutions accumulate on that side.
OneSidedLimit one_sided_limit(const InnerFunctionSpec& spec, UnitPoint xi, Side side,
                              const TruncationPolicy& trunc = {});

/// Throws NotSingularError if ξ is not in the spectrum.
SingularityRecord classify_singularity(const InnerFunctionSpec& spec, UnitPoint xi,
                                       const TruncationPolicy& trunc = {});

SpectrumReport classify_intervals(const InnerFunctionSpec& spec, const TruncationPolicy& trunc = {},
                                  double window = kDefaultWindow);

/// Number of solutions of Θ = e^{i·lambda_arg} with u in (u_a, u_b] of the
/// arc, counted from the continuous phase. With `frostman` set, counts
/// solutions of φ_a∘Θ = e^{i·lambda_arg} instead.
long long count_solutions(const ArcPhase& phase, double u_a, double u_b, double lambda_arg,
                          std::optional<std::complex<double>> frostman = std::nullopt);

/// Per-side accumulation of solutions read off truncated models at
/// tail_terms 8 and 64: a side accumulates when the count near ξ grows by 3
/// or more. Independent numeric corroboration of the analytic rule.
struct Corroboration {
  bool above = false;
  bool below = false;
  long long count_above_small = 0, count_above_large = 0;
  long long count_below_small = 0, count_below_large = 0;
};
Corroboration corroborate_singularity(const InnerFunctionSpec& spec, double xi,
                                      std::optional<std::complex<double>> frostman = std::nullopt);

/// Interval types predicted from corroborated side accumulation.
std::vector<IntervalType> corroborate_types(const InnerFunctionSpec& spec,
                                            std::optional<std::complex<double>> frostman = std::nullopt);

}  // namespace inner
