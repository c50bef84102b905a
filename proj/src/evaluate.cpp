#include "inner/evaluate.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "inner/errors.hpp"

namespace inner {

double reduce_angle(double x) {
  if (x > kPi || x <= -kPi) x = angle_diff(x, 0.0);
  return x;
}

double factor_phase(double comod, double psi) {
  if (psi == 0.0) return kPi;
  const double half = 0.5 * psi;
  const double v = 2.0 * std::atan2(comod * std::cos(half), (2.0 - comod) * std::abs(std::sin(half)));
  return psi > 0.0 ? -v : v;
}

double poisson_kernel(double comod, double psi) {
  const double s = std::sin(0.5 * psi);
  return comod * (2.0 - comod) / (comod * comod + 4.0 * (1.0 - comod) * s * s);
}

std::complex<double> eval_factor(const DiskZero& zero, UnitPoint point) {
  if (zero.modulus == 0.0)
    throw InvalidArgument("eval_factor: a zero at the origin is expressed through zero_order");
  if (!(zero.modulus > 0.0 && zero.modulus < 1.0))
    throw InvalidArgument("eval_factor: modulus must lie in (0, 1)");
  const double psi = angle_diff(point.theta(), zero.argument);
  return std::polar(1.0, factor_phase(1.0 - zero.modulus, psi));
}

double poisson_arc_mass(const DiskZero& zero, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= kTwoPi))
    throw InvalidArgument("poisson_arc_mass: epsilon must lie in [0, 2π]");
  if (!(zero.modulus >= 0.0 && zero.modulus < 1.0))
    throw InvalidArgument("poisson_arc_mass: modulus must lie in [0, 1)");
  if (epsilon == 0.0) return 0.0;
  const std::complex<double> a = std::polar(zero.modulus, zero.argument);
  const std::complex<double> w = (std::polar(1.0, epsilon) - a) / (1.0 - a);
  // The harmonic measure lies in (0, 1), which pins α to (ε/2, π + ε/2).
  const double center = 0.5 * (kPi + epsilon);
  double alpha = std::arg(w);
  alpha += kTwoPi * std::round((center - alpha) / kTwoPi);
  return alpha / kPi - epsilon / kTwoPi;
}

double poisson_arc_mass_quadrature(const DiskZero& zero, double epsilon) {
  if (epsilon <= 0.0) return 0.0;
  const double comod = 1.0 - zero.modulus;
  auto f = [&](double theta) { return poisson_kernel(comod, angle_diff(theta, zero.argument)); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  // Split at the kernel peak so each piece is smooth and monotone.
  const double peak = canonical_angle(zero.argument);
  double v = 0.0;
  if (peak > 0.0 && peak < epsilon)
    v = GK::integrate(f, 0.0, peak, 15, 1e-13) + GK::integrate(f, peak, epsilon, 15, 1e-13);
  else
    v = GK::integrate(f, 0.0, epsilon, 15, 1e-13);
  return v / kTwoPi;
}

std::complex<double> frostman_transform(std::complex<double> w, std::complex<double> a) {
  if (!(std::abs(a) < 1.0)) throw InvalidArgument("frostman_transform: |a| must be < 1");
  return (w - a) / (1.0 - std::conj(a) * w);
}

double frostman_phase_lift(double phi, std::complex<double> a) {
  if (!(std::abs(a) < 1.0)) throw InvalidArgument("frostman_phase_lift: |a| must be < 1");
  const double r = std::abs(a);
  const double beta = r > 0.0 ? std::arg(a) : 0.0;
  // (w - a)/(1 - ā w) = -(a/|a|) · factor_a(w)
  const double psi = phi - beta;
  const double k = std::ceil((psi - kPi) / kTwoPi);
  const double red = psi - kTwoPi * k;
  return kPi + beta + factor_phase(1.0 - r, red) + (red > 0.0 ? kTwoPi : 0.0) + kTwoPi * k;
}

InnerFunction::InnerFunction(InnerFunctionSpec spec, TruncationPolicy trunc)
    : spec_(std::move(spec)), trunc_(trunc) {
  validate(spec_);
  validate(trunc_);
  zeros_ = expand_zeros(spec_, trunc_.tail_terms);
  singular_ = singular_angles(spec_);
}

bool InnerFunction::is_singular(double theta, double tol) const {
  for (double s : singular_)
    if (angular_distance(s, theta) < tol) return true;
  return false;
}

double InnerFunction::phase_unchecked(double theta) const {
  const double t = canonical_angle(theta);
  double sum = spec_.constant_arg + spec_.zero_order * t;
  for (const auto& z : zeros_) {
    const double psi = reduce_angle(angle_diff(t, z.anchor) - z.offset);
    sum += z.multiplicity * factor_phase(z.comod, psi);
  }
  for (const auto& a : spec_.atoms) {
    const double d = angle_diff(t, a.theta);
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    sum -= a.mass / std::tan(0.5 * d);
  }
  return sum;
}

double InnerFunction::phase(double theta) const {
  if (is_singular(theta)) throw SingularPointError("point lies in the spectrum");
  return phase_unchecked(theta);
}

std::complex<double> InnerFunction::value(double theta) const { return std::polar(1.0, phase(theta)); }

double InnerFunction::derivative(double theta) const {
  if (is_singular(theta)) throw SingularPointError("point lies in the spectrum");
  const double t = canonical_angle(theta);
  double sum = spec_.zero_order;
  for (const auto& z : zeros_) {
    const double psi = reduce_angle(angle_diff(t, z.anchor) - z.offset);
    sum += z.multiplicity * poisson_kernel(z.comod, psi);
  }
  for (const auto& a : spec_.atoms) {
    const double s = std::sin(0.5 * angle_diff(t, a.theta));
    sum += 0.5 * a.mass / (s * s);
  }
  return sum;
}

std::complex<double> eval_inner(const InnerFunctionSpec& spec, UnitPoint point,
                                const TruncationPolicy& trunc) {
  return InnerFunction(spec, trunc).value(point.theta());
}

double phase_derivative(const InnerFunctionSpec& spec, UnitPoint point, const TruncationPolicy& trunc) {
  return InnerFunction(spec, trunc).derivative(point.theta());
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxExplicitTerms = 2'000'000;

// Bound for the factors n >= tail_terms + 1 of one family.
double tail_truncation_bound(const TailFamily& tf, const Arc& arc, int tail_terms) {
  const double delta = arc.distance_to(tf.anchor_theta);

  // With the anchor on the arc, only a tangential family whose zeros lie on
  // the far side of an arc endpoint stays bounded.
  bool away = false;
  if (delta == 0.0) {
    if (tf.kind == TailKind::StolzGeometric) return kInf;
    const double at = ccw_distance(arc.lo, tf.anchor_theta);
    const bool at_lo = at < kSameSingularity || kTwoPi - at < kSameSingularity;
    const bool at_hi = std::abs(at - arc.length) < kSameSingularity;
    if (arc.length == 0.0)
      away = true;
    else if (arc.length < kTwoPi)
      away = (at_lo && tf.side == TailSide::Lower) || (at_hi && tf.side == TailSide::Upper);
    if (!away) return kInf;
  }

  // Closed-form bound on the sum of terms m >= n. Each is a majorant series
  // summed exactly or by an integral, so partial sums telescope consistently.
  auto remainder = [&](int n) {
    if (away) return 4.0 * std::pow(static_cast<double>(n), 2.0 - tf.rho) / (tf.rho - 2.0);
    const double gap = delta - std::abs(tf.term(n).offset);
    if (gap <= 0.0) return kInf;
    const double h = std::min(0.5 * gap, 0.5 * kPi);
    return 2.0 * tf.comod_tail_sum(n) * std::cos(h) / std::sin(h);
  };

  double sum = 0.0;
  int n = tail_terms + 1;
  for (int it = 0; it < kMaxExplicitTerms; ++it, ++n) {
    const double r = remainder(n);
    if (r <= 1e-7 * sum || r < 1e-250) return sum + r;
    const ZeroTerm z = tf.term(n);
    const double gap = std::min(arc.distance_to(z.anchor + z.offset), kPi);
    sum += std::abs(factor_phase(z.comod, gap));
  }
  return sum + remainder(n);
}

}  // namespace

double truncation_error_bound(const InnerFunctionSpec& spec, const Arc& arc, int tail_terms) {
  double total = 0.0;
  for (const auto& tf : spec.tails) {
    total += tail_truncation_bound(tf, arc, std::max(tail_terms, 0));
    if (total == kInf) break;
  }
  return total;
}

}  // namespace inner
