#include "inner/phase_chart.hpp"

#include <algorithm>
#include <cmath>

#include "inner/errors.hpp"

namespace inner {

ArcPhase::ArcPhase(std::shared_ptr<const InnerFunction> fn, double lo, double length)
    : fn_(std::move(fn)), lo_(canonical_angle(lo)), length_(length) {
  const double uref = u_ref();
  for (const auto& z : fn_->zeros()) {
    ZeroSlot s{ccw_distance(lo_, z.anchor), z.offset, z.comod, z.multiplicity, false};
    const double v = s.ra + s.offset;
    if (v < 0.0) s.ra += kTwoPi;
    if (v >= kTwoPi) s.ra -= kTwoPi;
    s.ref_positive = (uref - s.ra) - s.offset > 0.0;
    zeros_.push_back(s);
  }
  for (const auto& a : fn_->spec().atoms) atoms_.push_back({ccw_distance(lo_, a.theta), a.mass});
}

double ArcPhase::operator()(double u) const {
  const auto& spec = fn_->spec();
  double sum = spec.constant_arg + spec.zero_order * (lo_ + u);
  for (const auto& z : zeros_) {
    const double raw = (u - z.ra) - z.offset;
    double c = factor_phase(z.comod, reduce_angle(raw));
    if ((raw > 0.0) != z.ref_positive) c += raw > 0.0 ? kTwoPi : -kTwoPi;
    sum += z.multiplicity * c;
  }
  for (const auto& a : atoms_) sum -= a.mass / std::tan(0.5 * (u - a.ra));
  return sum;
}

double ArcPhase::derivative(double u) const {
  double sum = fn_->spec().zero_order;
  for (const auto& z : zeros_)
    sum += z.multiplicity * poisson_kernel(z.comod, reduce_angle((u - z.ra) - z.offset));
  for (const auto& a : atoms_) {
    const double s = std::sin(0.5 * (u - a.ra));
    sum += 0.5 * a.mass / (s * s);
  }
  return sum;
}

double PhaseChart::phase_at(double theta) const {
  double uu = ccw_distance(lo(), theta);
  if (periodic) return (*phase)(uu);
  if (uu < u_min() || uu > u_max()) throw DomainError("angle outside the chart");
  return (*phase)(uu);
}

namespace {

constexpr double kEndGuard = 1e-10;
constexpr double kMaxStep = kPi / 2;
constexpr double kMinStep = kPi / 8;

struct March {
  std::vector<double> u, phi;
};

// Walks from u_ref toward one end. `dir` is +1 (toward length) or -1 (toward 0).
// With `exact` the end point itself is included; otherwise the walk stops
// when Φ leaves the window or the end is closer than kEndGuard.
March march(const ArcPhase& ph, int dir, bool exact, double window) {
  const double L = ph.length();
  const double end = dir > 0 ? L : 0.0;
  const double uref = ph.u_ref();
  const double fref = ph(uref);
  March m;
  double u = uref, f = fref;
  double h = L / 64.0;
  while (true) {
    const double room = std::abs(end - u);
    if (room == 0.0) break;
    if (!exact) {
      if (room < kEndGuard) break;
      h = std::min(h, 0.5 * room);
    }
    double cand = (exact && h >= room) ? end : u + dir * h;
    double fc = ph(cand);
    if (std::abs(fc - f) >= kMaxStep && h > 1e-15 * L) {
      h *= 0.5;
      continue;
    }
    if (!exact && std::abs(fc - fref) > window) {
      // Locate Φ - Φ_ref = ±window between u and cand.
      double a = u, b = cand;
      const double goal = fref + dir * window;
      for (int it = 0; it < 200 && std::abs(b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = ph(mid);
        if ((fm - goal) * dir < 0.0)
          a = mid;
        else
          b = mid;
      }
      if (a != u) {
        m.u.push_back(a);
        m.phi.push_back(ph(a));
      }
      break;
    }
    m.u.push_back(cand);
    m.phi.push_back(fc);
    const double df = std::abs(fc - f);
    u = cand;
    f = fc;
    if (cand == end) break;
    if (df < kMinStep) h *= 2.0;
  }
  return m;
}

bool near(double a, double b) { return angular_distance(a, b) < kSameSingularity; }

}  // namespace

PhaseChart build_phase_chart(std::shared_ptr<const InnerFunction> fn, const Arc& arc, double window) {
  if (!(window > 0.0)) throw InvalidArgument("phase window must be positive");
  if (!(arc.length > 0.0 && arc.length <= kTwoPi)) throw InvalidArcError("arc length must lie in (0, 2π]");
  const auto& spec = fn->spec();
  const double lo = canonical_angle(arc.lo);
  const double L = arc.length;

  bool lo_sing = false, hi_sing = false;
  for (double s : fn->singularities()) {
    if (near(s, lo)) {
      lo_sing = true;
      if (L >= kTwoPi) hi_sing = true;
      continue;
    }
    if (L < kTwoPi && near(s, lo + L)) {
      hi_sing = true;
      continue;
    }
    if (Arc{lo, L}.contains_interior(s)) throw InvalidArcError("arc contains a singularity");
  }
  const bool periodic = L >= kTwoPi && !lo_sing;
  if (periodic && fn->degree() == 0) throw InvalidArgument("a constant function has no phase chart");

  PhaseChart chart;
  chart.phase = std::make_shared<const ArcPhase>(fn, lo, L);
  chart.periodic = periodic;
  chart.period = periodic ? kTwoPi * fn->degree() : 0.0;
  chart.lo_singular = lo_sing;
  chart.hi_singular = hi_sing;
  chart.window = window;
  chart.truncation = fn->truncation();

  const ArcPhase& ph = *chart.phase;
  // An end is reached exactly unless solutions accumulate there.
  const bool lo_exact = !lo_sing || !accumulates(spec, lo, Side::Above);
  const bool hi_exact = !hi_sing || !accumulates(spec, lo + L, Side::Below);

  March left = march(ph, -1, lo_exact, window);
  March right = march(ph, +1, hi_exact, window);
  std::vector<double> u(left.u.rbegin(), left.u.rend());
  std::vector<double> phi(left.phi.rbegin(), left.phi.rend());
  const std::size_t ref = u.size();
  u.push_back(ph.u_ref());
  phi.push_back(ph(ph.u_ref()));
  u.insert(u.end(), right.u.begin(), right.u.end());
  phi.insert(phi.end(), right.phi.begin(), right.phi.end());

  for (std::size_t i = 1; i < u.size(); ++i)
    if (!(u[i] > u[i - 1] && phi[i] > phi[i - 1]))
      throw InvalidArcError("phase is not strictly increasing on the grid");

  // Pull the ends in until the truncation bound over the covered arc holds.
  const int N = fn->truncation().tail_terms;
  const double tol = fn->truncation().phase_tol;
  auto bound = [&](std::size_t i, std::size_t j) {
    return truncation_error_bound(spec, Arc{lo + u[i], u[j] - u[i]}, N);
  };
  if (bound(ref, ref) > tol)
    throw TruncationError("truncation bound exceeds phase_tol even at the arc midpoint");
  std::size_t a = 0, b = ref;  // smallest admissible left index in [a, b]
  while (a < b) {
    const std::size_t m = (a + b) / 2;
    if (bound(m, ref) <= tol)
      b = m;
    else
      a = m + 1;
  }
  const std::size_t first = a;
  a = ref;
  b = u.size() - 1;  // largest admissible right index in [a, b]
  while (a < b) {
    const std::size_t m = (a + b + 1) / 2;
    if (bound(first, m) <= tol)
      a = m;
    else
      b = m - 1;
  }
  const std::size_t last = a;
  if ((!lo_sing && first > 0) || (!hi_sing && last + 1 < u.size()))
    throw TruncationError("truncation bound exceeds phase_tol on the requested arc");

  chart.u.assign(u.begin() + first, u.begin() + last + 1);
  chart.phi.assign(phi.begin() + first, phi.begin() + last + 1);
  chart.truncation_bound = bound(first, last);
  return chart;
}

PhaseChart build_phase_chart(const InnerFunctionSpec& spec, const Arc& arc,
                             const TruncationPolicy& trunc, double window) {
  return build_phase_chart(std::make_shared<const InnerFunction>(spec, trunc), arc, window);
}

double phase_inverse_u(const PhaseChart& chart, double target) {
  const auto& u = chart.u;
  const auto& phi = chart.phi;
  if (chart.periodic) {
    const double base = phi.front();
    target -= chart.period * std::floor((target - base) / chart.period);
    if (target >= base + chart.period) target = base;
  }
  const double slack = 1e-12 * std::max(1.0, std::abs(target));
  if (target < phi.front() - slack || target > phi.back() + slack)
    throw PhaseRangeError("target phase outside the chart range");
  if (target <= phi.front()) return u.front();
  if (target >= phi.back()) return u.back();

  const auto it = std::upper_bound(phi.begin(), phi.end(), target);
  const std::size_t j = static_cast<std::size_t>(it - phi.begin());
  double a = u[j - 1], b = u[j];
  double fa = phi[j - 1];
  const ArcPhase& ph = *chart.phase;
  for (int it2 = 0; it2 < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it2) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = ph(mid);
    if (fm < target) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  // Newton polish inside the bracket.
  double x = a;
  double fx = fa;
  for (int k = 0; k < 2; ++k) {
    const double d = ph.derivative(x);
    if (!(d > 0.0)) break;
    const double nx = x - (fx - target) / d;
    if (!(nx >= a && nx <= b)) break;
    x = nx;
    fx = ph(x);
  }
  return x;
}

UnitPoint phase_inverse(const PhaseChart& chart, double target) {
  return UnitPoint(chart.lo() + phase_inverse_u(chart, target));
}

}  // namespace inner
