#include "inner/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "inner/errors.hpp"

namespace inner {

std::string to_string(SingularityType t) {
  switch (t) {
    case SingularityType::Type1a: return "1a";
    case SingularityType::Type1b: return "1b";
    case SingularityType::Type2: return "2";
  }
  return "?";
}

std::string to_string(IntervalType t) {
  switch (t) {
    case IntervalType::Type0: return "0";
    case IntervalType::Type1a: return "1a";
    case IntervalType::Type1b: return "1b";
    case IntervalType::Type2: return "2";
  }
  return "?";
}

std::string to_string(Cause c) {
  switch (c) {
    case Cause::Atom: return "atom";
    case Cause::StolzTail: return "stolz";
    case Cause::TangentialTail: return "tangential";
  }
  return "?";
}

std::vector<UnitPoint> spectrum(const InnerFunctionSpec& spec) {
  std::vector<UnitPoint> out;
  for (double s : singular_angles(spec)) out.emplace_back(s);
  return out;
}

bool stolz_contains(UnitPoint anchor, double alpha, std::complex<double> z) {
  if (!(alpha > 1.0)) throw InvalidArgument("stolz_contains: alpha must exceed 1");
  const double r = std::abs(z);
  if (!(r < 1.0)) throw InvalidArgument("stolz_contains: z must lie in the open disk");
  return std::abs(anchor.value() - z) < alpha * (1.0 - r);
}

namespace {

bool same_point(double a, double b) { return angular_distance(a, b) < kSameSingularity; }

}  // namespace

AngularDerivative angular_derivative_series(const InnerFunctionSpec& spec, UnitPoint xi,
                                            const TruncationPolicy& trunc) {
  validate(spec);
  const double x = xi.theta();
  AngularDerivative out;
  for (const auto& a : spec.atoms)
    if (same_point(a.theta, x)) return out;
  for (const auto& t : spec.tails)
    if (same_point(t.anchor_theta, x) && t.kind == TailKind::StolzGeometric) return out;

  out.finite = true;
  double sum = spec.zero_order;
  for (const auto& z : expand_zeros(spec, trunc.tail_terms))
    sum += z.multiplicity * poisson_kernel(z.comod, reduce_angle(angle_diff(x, z.anchor) - z.offset));
  for (const auto& a : spec.atoms) {
    const double s = std::sin(0.5 * angle_diff(x, a.theta));
    sum += 0.5 * a.mass / (s * s);
  }
  out.value = sum;

  const int N = trunc.tail_terms;
  double tail = 0.0;
  for (const auto& t : spec.tails) {
    if (same_point(t.anchor_theta, x)) {
      // Tangential at ξ: each term is at most 2.18 (n+1)^{2-ρ} for n >= 1.
      tail += 2.18 * std::pow(N + 1.0, 3.0 - t.rho) / (t.rho - 3.0);
      continue;
    }
    const double delta = angular_distance(t.anchor_theta, x);
    const ZeroTerm first = t.term(N + 1);
    const double g = std::min(delta - std::abs(first.offset), kPi);
    if (g <= 0.0) {
      tail = std::numeric_limits<double>::infinity();
      continue;
    }
    const double s = std::sin(0.5 * g);
    tail += 2.0 * t.comod_tail_sum(N + 1) / (4.0 * (1.0 - first.comod) * s * s);
  }
  out.tail_bound = tail;
  return out;
}

OneSidedLimit one_sided_limit(const InnerFunctionSpec& spec, UnitPoint xi, Side side,
                              const TruncationPolicy& trunc) {
  validate(spec);
  if (accumulates(spec, xi.theta(), side))
    throw NoLimitError("solutions accumulate on the requested side");
  const InnerFunction fn(spec, trunc);
  OneSidedLimit out;
  out.arg = fn.phase_unchecked(xi.theta());
  out.value = std::polar(1.0, out.arg);
  out.radius = truncation_error_bound(spec, Arc{xi.theta(), 0.0}, trunc.tail_terms);
  return out;
}

SingularityRecord classify_singularity(const InnerFunctionSpec& spec, UnitPoint xi,
                                       const TruncationPolicy& trunc) {
  validate(spec);
  const double x = xi.theta();
  SingularityRecord rec;
  rec.theta = x;
  for (const auto& a : spec.atoms)
    if (same_point(a.theta, x)) rec.causes.push_back(Cause::Atom);
  for (const auto& t : spec.tails)
    if (same_point(t.anchor_theta, x))
      rec.causes.push_back(t.kind == TailKind::StolzGeometric ? Cause::StolzTail : Cause::TangentialTail);
  if (rec.causes.empty()) throw NotSingularError("point is not in the spectrum");

  const bool above = accumulates(spec, x, Side::Above);
  const bool below = accumulates(spec, x, Side::Below);
  if (above && below) {
    rec.type = SingularityType::Type2;
  } else if (above) {
    rec.type = SingularityType::Type1a;
    rec.limit = one_sided_limit(spec, xi, Side::Below, trunc);
  } else {
    rec.type = SingularityType::Type1b;
    rec.limit = one_sided_limit(spec, xi, Side::Above, trunc);
  }
  return rec;
}

namespace {

// Solutions of Φ ≡ 0 (mod 2π) strictly inside the chart's open arc.
std::vector<Type0Solution> unit_solutions(const PhaseChart& chart) {
  std::vector<Type0Solution> out;
  const double lo_phi = chart.phi_min();
  const double hi_phi = chart.periodic ? lo_phi + chart.period : chart.phi_max();
  long long m = static_cast<long long>(std::ceil(lo_phi / kTwoPi));
  for (; kTwoPi * m <= hi_phi; ++m) {
    const double target = kTwoPi * m;
    if (chart.periodic && target >= hi_phi) break;
    const double u = phase_inverse_u(chart, target);
    if (!chart.periodic && ((chart.lo_singular && u <= 0.0) || (chart.hi_singular && u >= chart.length())))
      continue;
    out.push_back({canonical_angle(chart.lo() + u), 1});
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.theta < b.theta; });
  return out;
}

}  // namespace

SpectrumReport classify_intervals(const InnerFunctionSpec& spec, const TruncationPolicy& trunc,
                                  double window) {
  auto fn = std::make_shared<const InnerFunction>(spec, trunc);
  SpectrumReport rep;
  rep.degree = fn->degree();
  const auto& sing = fn->singularities();
  const std::size_t n = sing.size();

  if (n == 0) {
    IntervalRecord rec;
    rec.lo = 0.0;
    rec.hi = 0.0;
    rec.length = kTwoPi;
    rec.type = IntervalType::Type0;
    if (rep.degree > 0)
      rec.type0_image = unit_solutions(build_phase_chart(fn, Arc{0.0, kTwoPi}, window));
    else
      rec.image_certified = false;
    rep.intervals.push_back(rec);
    return rep;
  }

  for (double s : sing) rep.singularities.push_back(classify_singularity(spec, UnitPoint(s), trunc));

  for (std::size_t j = 0; j < n; ++j) {
    IntervalRecord rec;
    rec.lo = sing[j];
    rec.hi = sing[(j + 1) % n];
    rec.length = n == 1 ? kTwoPi : ccw_distance(rec.lo, rec.hi);
    const bool lo_acc = accumulates(spec, rec.lo, Side::Above);
    const bool hi_acc = accumulates(spec, rec.hi, Side::Below);
    if (lo_acc && hi_acc)
      rec.type = IntervalType::Type2;
    else if (lo_acc)
      rec.type = IntervalType::Type1a;
    else if (hi_acc)
      rec.type = IntervalType::Type1b;
    else
      rec.type = IntervalType::Type0;
    if (!lo_acc) rec.lo_limit = one_sided_limit(spec, UnitPoint(rec.lo), Side::Above, trunc);
    if (!hi_acc) rec.hi_limit = one_sided_limit(spec, UnitPoint(rec.hi), Side::Below, trunc);

    if (rec.type == IntervalType::Type0) {
      try {
        const PhaseChart chart = build_phase_chart(fn, Arc{rec.lo, rec.length}, window);
        rec.type0_image = unit_solutions(chart);
        rec.image_certified = chart.u_min() == 0.0 && chart.u_max() == rec.length;
      } catch (const TruncationError&) {
        rec.image_certified = false;
      }
    }
    rep.intervals.push_back(rec);
  }
  return rep;
}

long long count_solutions(const ArcPhase& phase, double u_a, double u_b, double lambda_arg,
                          std::optional<std::complex<double>> frostman) {
  auto g = [&](double u) {
    const double p = phase(u);
    return frostman ? frostman_phase_lift(p, *frostman) : p;
  };
  const double ga = g(u_a) - lambda_arg;
  const double gb = g(u_b) - lambda_arg;
  return static_cast<long long>(std::floor(gb / kTwoPi) - std::floor(ga / kTwoPi));
}

Corroboration corroborate_singularity(const InnerFunctionSpec& spec, double xi,
                                      std::optional<std::complex<double>> frostman) {
  const auto sing = singular_angles(spec);
  auto it = std::find_if(sing.begin(), sing.end(), [&](double s) { return same_point(s, xi); });
  if (it == sing.end()) throw NotSingularError("point is not in the spectrum");
  const std::size_t n = sing.size();
  const std::size_t i = static_cast<std::size_t>(it - sing.begin());
  const double next = sing[(i + 1) % n];
  const double prev = sing[(i + n - 1) % n];
  const double len_above = n == 1 ? kTwoPi : ccw_distance(*it, next);
  const double len_below = n == 1 ? kTwoPi : ccw_distance(prev, *it);
  const double eps = std::min(0.5, 0.45 * std::min(len_above, len_below));

  Corroboration out;
  for (int N : {8, 64}) {
    auto fn = std::make_shared<const InnerFunction>(spec, TruncationPolicy{N, 1e-9});
    const double delta = 1e-2 / (static_cast<double>(N) * N * N);
    const ArcPhase above(fn, *it, len_above);
    const ArcPhase below(fn, n == 1 ? *it : prev, len_below);
    const long long ca = count_solutions(above, delta, eps, 0.0, frostman);
    const long long cb = count_solutions(below, len_below - eps, len_below - delta, 0.0, frostman);
    if (N == 8) {
      out.count_above_small = ca;
      out.count_below_small = cb;
    } else {
      out.count_above_large = ca;
      out.count_below_large = cb;
    }
  }
  out.above = out.count_above_large - out.count_above_small >= 3;
  out.below = out.count_below_large - out.count_below_small >= 3;
  return out;
}

std::vector<IntervalType> corroborate_types(const InnerFunctionSpec& spec,
                                            std::optional<std::complex<double>> frostman) {
  const auto sing = singular_angles(spec);
  const std::size_t n = sing.size();
  if (n == 0) return {IntervalType::Type0};
  std::vector<Corroboration> c;
  for (double s : sing) c.push_back(corroborate_singularity(spec, s, frostman));
  std::vector<IntervalType> out;
  for (std::size_t j = 0; j < n; ++j) {
    const bool lo_acc = c[j].above;
    const bool hi_acc = c[(j + 1) % n].below;
    out.push_back(lo_acc && hi_acc ? IntervalType::Type2
                  : lo_acc         ? IntervalType::Type1a
                  : hi_acc         ? IntervalType::Type1b
                                   : IntervalType::Type0);
  }
  return out;
}

}  // namespace inner
