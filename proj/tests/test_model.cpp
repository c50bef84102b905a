#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "inner/errors.hpp"
#include "inner/phase_chart.hpp"

using namespace inner;
using cd = std::complex<double>;

namespace {

InnerFunctionSpec one_atom() {
  InnerFunctionSpec s;
  s.atoms = {{0.0, 1.0}};
  return s;
}

InnerFunctionSpec one_zero(double r = 0.5, double arg = 0.0) {
  InnerFunctionSpec s;
  s.zeros = {{r, arg, 1}};
  return s;
}

InnerFunctionSpec power(int p) {
  InnerFunctionSpec s;
  s.zero_order = p;
  return s;
}

TailFamily stolz(double anchor, double c = 0.5, double q = 0.5, double t = 0.0) {
  TailFamily f;
  f.kind = TailKind::StolzGeometric;
  f.anchor_theta = anchor;
  f.c = c;
  f.q = q;
  f.t = t;
  return f;
}

TailFamily tangential(double anchor, TailSide side, double rho) {
  TailFamily f;
  f.kind = TailKind::TangentialSummable;
  f.anchor_theta = anchor;
  f.side = side;
  f.rho = rho;
  return f;
}

// Oracle: the textbook product formula with complex arithmetic.
cd naive_value(const InnerFunctionSpec& s, double theta, int tail_terms) {
  const cd z = std::polar(1.0, theta);
  cd v = std::polar(1.0, s.constant_arg) * std::pow(z, s.zero_order);
  auto factor = [&](cd a) { return (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z); };
  for (const auto& zr : s.zeros)
    for (int m = 0; m < zr.multiplicity; ++m) v *= factor(std::polar(zr.modulus, zr.argument));
  for (const auto& t : s.tails)
    for (int n = 1; n <= tail_terms; ++n) {
      const ZeroTerm term = t.term(n);
      v *= factor(std::polar(term.modulus(), term.angle()));
    }
  for (const auto& a : s.atoms) {
    const cd zeta = std::polar(1.0, a.theta);
    v *= std::exp(-a.mass * (zeta + z) / (zeta - z));
  }
  return v;
}

}  // namespace

TEST_CASE("unit point canonicalization") {
  CHECK(UnitPoint(-kPi / 2).theta() == doctest::Approx(3 * kPi / 2));
  CHECK(UnitPoint(kTwoPi).theta() == 0.0);
  CHECK(UnitPoint(1.0) == UnitPoint(1.0 + 4 * kPi));
  CHECK(angle_diff(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
  CHECK(ccw_distance(6.0, 0.5) == doctest::Approx(0.5 + kTwoPi - 6.0));
  const Arc a{6.0, 1.0};
  CHECK(a.contains_interior(0.2));
  CHECK_FALSE(a.contains_interior(6.0));
  CHECK(a.distance_to(1.0) == doctest::Approx(1.0 - (7.0 - kTwoPi)));
}

TEST_CASE("validation rejects malformed specs") {
  CHECK_THROWS_AS(validate(one_zero(1.0)), RangeError);
  CHECK_THROWS_AS(validate(one_zero(-0.1)), RangeError);
  InnerFunctionSpec s = one_atom();
  s.atoms[0].mass = 0.0;
  CHECK_THROWS_AS(validate(s), RangeError);
  s = one_atom();
  s.atoms.push_back({kTwoPi, 2.0});
  CHECK_THROWS_AS(validate(s), DuplicateSingularityError);
  // Different sources may share a singular point; the same family twice may not.
  s = one_atom();
  s.tails = {stolz(0.0)};
  CHECK_NOTHROW(validate(s));
  s.tails = {stolz(0.0), stolz(kTwoPi, 0.3)};
  CHECK_THROWS_AS(validate(s), DuplicateSingularityError);
  s = one_atom();
  s.atoms.push_back({1e-10, 1.0});
  CHECK_THROWS_AS(validate(s), DuplicateSingularityError);
  s = {};
  s.tails = {tangential(0.0, TailSide::Upper, 3.0)};
  CHECK_THROWS_AS(validate(s), RangeError);
  s.tails = {stolz(0.0, 1.5)};
  CHECK_THROWS_AS(validate(s), RangeError);
  CHECK_THROWS_AS(validate(TruncationPolicy{0, 1e-9}), RangeError);
  CHECK_THROWS_AS(validate(TruncationPolicy{64, 0.0}), RangeError);
  CHECK_NOTHROW(validate(power(3)));
}

TEST_CASE("stolz family stays inside its aperture") {
  for (double t : {-3.0, 0.0, 0.7, 9.0}) {
    const TailFamily f = stolz(1.0, 0.4, 0.6, t);
    const double alpha = f.stolz_aperture();
    CHECK(alpha > 1.0);
    for (int n = 1; n <= 200; ++n) {
      const ZeroTerm z = f.term(n);
      const cd a = std::polar(z.modulus(), z.angle());
      CHECK(std::abs(std::polar(1.0, 1.0) - a) <= alpha * z.comod * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("comod tail sums match direct summation") {
  const TailFamily s = stolz(0.0, 0.3, 0.7);
  const TailFamily t = tangential(0.0, TailSide::Lower, 5.0);
  for (int n : {1, 5, 40}) {
    double ds = 0, dt = 0;
    for (int m = n; m < n + 200000; ++m) {
      ds += s.term(m).comod;
      dt += t.term(m).comod;
    }
    CHECK(s.comod_tail_sum(n) == doctest::Approx(ds).epsilon(1e-10));
    // The tangential tail sum is an integral bound: it dominates and tightens as n grows.
    CHECK(t.comod_tail_sum(n) >= dt * (1 - 1e-12));
    if (n == 40) CHECK(t.comod_tail_sum(n) <= dt * 1.2);
  }
}

TEST_CASE("eval_factor examples") {
  CHECK(std::abs(eval_factor({0.5, 0.0, 1}, UnitPoint(0.0)) - cd(-1, 0)) < 1e-15);
  CHECK(std::abs(eval_factor({0.5, 0.0, 1}, UnitPoint(kPi)) - cd(1, 0)) < 1e-15);
  CHECK(std::abs(eval_factor({0.5, 0.0, 1}, UnitPoint(kPi / 2)) - cd(0.8, -0.6)) < 1e-15);
  CHECK_THROWS_AS(eval_factor({0.0, 0.0, 1}, UnitPoint(0.0)), InvalidArgument);
}

TEST_CASE("eval_inner examples") {
  CHECK(std::abs(eval_inner(power(3), UnitPoint(kPi / 3)) - cd(-1, 0)) < 1e-14);
  CHECK(std::abs(eval_inner(one_atom(), UnitPoint(kPi)) - cd(1, 0)) < 1e-15);
  CHECK(std::abs(eval_inner(one_zero(), UnitPoint(0.0)) - cd(-1, 0)) < 1e-15);
  CHECK_THROWS_AS(eval_inner(one_atom(), UnitPoint(0.0)), SingularPointError);
}

TEST_CASE("phase-sum evaluation agrees with the product formula and is unimodular") {
  InnerFunctionSpec s;
  s.constant_arg = 0.3;
  s.zero_order = 2;
  s.zeros = {{0.3, 1.0, 2}, {0.9, 4.0, 1}};
  s.tails = {stolz(2.0, 0.5, 0.5, 1.0), tangential(5.0, TailSide::Lower, 6.0)};
  s.atoms = {{0.5, 0.2}};
  const TruncationPolicy tp{20, 1e-9};
  const InnerFunction fn(s, tp);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const double th = U(rng);
    if (fn.is_singular(th, 1e-2)) continue;
    const cd v = fn.value(th);
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-14);
    CHECK(std::abs(v - naive_value(s, th, tp.tail_terms)) < 1e-9);
  }
}

TEST_CASE("phase derivative examples") {
  CHECK(phase_derivative(one_zero(), UnitPoint(0.0)) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(phase_derivative(one_zero(), UnitPoint(kPi)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(phase_derivative(one_atom(), UnitPoint(kPi)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(phase_derivative(power(1), UnitPoint(2.0)) == 1.0);
  CHECK_THROWS_AS(phase_derivative(one_atom(), UnitPoint(0.0)), SingularPointError);
}

TEST_CASE("factor phase stays accurate for tiny comodulus") {
  // Oracle: the exact half-angle form arg = π - 2 atan((2-c)/c tan(ψ/2)) for ψ > 0.
  for (double c : {1e-3, 1e-9, 1e-15}) {
    for (double psi : {1e-16, 1e-12, 1e-6, 0.5}) {
      const double exact = -2.0 * std::atan2(c * std::cos(psi / 2), (2 - c) * std::sin(psi / 2));
      CHECK(factor_phase(c, psi) == doctest::Approx(exact).epsilon(1e-13));
    }
  }
  CHECK(factor_phase(0.5, 0.0) == doctest::Approx(kPi));
}

TEST_CASE("poisson arc mass examples and quadrature agreement") {
  CHECK(poisson_arc_mass({0.0, 0.0, 1}, kPi / 2) == doctest::Approx(0.25).epsilon(1e-15));
  // α = π - atan 2 from the explicit closed form.
  const double expect = (kPi - std::atan(2.0)) / kPi - 0.25;
  CHECK(poisson_arc_mass({0.5, 0.0, 1}, kPi / 2) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(poisson_arc_mass({0.5, 0.0, 1}, kPi / 2) == doctest::Approx(0.39758).epsilon(1e-5));
  CHECK(std::abs(poisson_arc_mass({0.5, 0.0, 1}, 1e-12)) < 1e-11);
  CHECK(std::abs(poisson_arc_mass_quadrature({0.5, 0.0, 1}, kPi / 2) - expect) < 1e-12);
  CHECK(std::abs(poisson_arc_mass({0.95, 6.0, 1}, 5.5) - poisson_arc_mass_quadrature({0.95, 6.0, 1}, 5.5)) < 1e-10);
}

TEST_CASE("frostman transform examples") {
  const cd v = std::polar(1.0, 0.7);
  CHECK(std::abs(frostman_transform(v, 0.0) - v) < 1e-16);
  CHECK(std::abs(frostman_transform(1.0, 0.5) - cd(1, 0)) < 1e-16);
  CHECK(std::abs(frostman_transform(-1.0, 0.5) - cd(-1, 0)) < 1e-16);
  CHECK_THROWS_AS(frostman_transform(1.0, 1.0), InvalidArgument);
  // The lift is continuous, increasing and winds once.
  const cd a(0.3, -0.6);
  CHECK(frostman_phase_lift(kTwoPi, a) - frostman_phase_lift(0.0, a) == doctest::Approx(kTwoPi));
  double prev = frostman_phase_lift(0.0, a);
  for (int i = 1; i <= 1000; ++i) {
    const double phi = kTwoPi * i / 1000;
    const double cur = frostman_phase_lift(phi, a);
    CHECK(cur > prev);
    CHECK(std::abs(std::polar(1.0, cur) - frostman_transform(std::polar(1.0, phi), a)) < 1e-12);
    prev = cur;
  }
}

TEST_CASE("phase chart of z") {
  auto fn = std::make_shared<const InnerFunction>(power(1));
  const PhaseChart c = build_phase_chart(fn, Arc{0.1, 6.1});
  CHECK(c.u_min() == 0.0);
  CHECK(c.u_max() == doctest::Approx(6.1));
  for (std::size_t i = 0; i < c.u.size(); ++i) CHECK(c.phi[i] - c.phi[0] == doctest::Approx(c.u[i]).epsilon(1e-14));
  CHECK(c.phi[0] == doctest::Approx(0.1));
  CHECK(phase_inverse(c, 1.0).theta() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("phase chart of z^3 over a third of the circle") {
  const PhaseChart c = build_phase_chart(power(3), Arc{0.0, kTwoPi / 3});
  CHECK(c.phi_max() - c.phi_min() == doctest::Approx(kTwoPi).epsilon(1e-14));
}

TEST_CASE("chart invariants: increasing, small steps, agrees with evaluation") {
  InnerFunctionSpec s;
  s.zeros = {{0.99, 1.0, 1}, {0.5, 3.0, 2}};
  s.atoms = {{4.0, 0.5}};
  s.tails = {stolz(5.5, 0.5, 0.5, 0.3)};
  auto fn = std::make_shared<const InnerFunction>(s);
  const PhaseChart c = build_phase_chart(fn, Arc::between(4.0, 5.5));
  for (std::size_t i = 1; i < c.u.size(); ++i) {
    CHECK(c.u[i] > c.u[i - 1]);
    CHECK(c.phi[i] > c.phi[i - 1]);
    CHECK(c.phi[i] - c.phi[i - 1] < kPi / 2);
  }
  for (std::size_t i = 0; i < c.u.size(); ++i) {
    const cd v = fn->value(c.lo() + c.u[i]);
    CHECK(std::abs(angle_diff(std::arg(v), c.phi[i])) < 1e-9);
  }
  CHECK(c.truncation_bound <= fn->truncation().phase_tol);
  CHECK(c.phi_max() - c.phi_ref() <= c.window + 1e-9);
  CHECK(c.phi_ref() - c.phi_min() <= c.window + 1e-9);
}

TEST_CASE("one-atom chart follows -cot(θ/2) out to the window") {
  const PhaseChart c = build_phase_chart(one_atom(), Arc{0.0, kTwoPi});
  CHECK(c.phi_ref() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(c.phi_max() == doctest::Approx(8 * kPi).epsilon(1e-9));
  CHECK(c.phi_min() == doctest::Approx(-8 * kPi).epsilon(1e-9));
  for (double th : {0.2, 1.0, 3.0, 6.0}) CHECK(c.phase_at(th) == doctest::Approx(-1.0 / std::tan(th / 2)).epsilon(1e-13));
  // Closed-form inverse: θ = 2 acot(-target).
  auto inv = [](double target) { return kTwoPi - 2 * std::atan2(1.0, target); };
  CHECK(phase_inverse(c, kTwoPi).theta() == doctest::Approx(inv(kTwoPi)).epsilon(1e-14));
  CHECK(phase_inverse(c, kTwoPi).theta() == doctest::Approx(5.9675229266032686).epsilon(1e-14));
  CHECK(phase_inverse(c, 0.0).theta() == doctest::Approx(kPi).epsilon(1e-15));
  CHECK_THROWS_AS(phase_inverse(c, 9 * kPi), PhaseRangeError);
}

TEST_CASE("chart construction errors") {
  CHECK_THROWS_AS(build_phase_chart(one_atom(), Arc{6.0, 1.0}), InvalidArcError);
  CHECK_THROWS_AS(build_phase_chart(one_atom(), Arc{0.0, kTwoPi}, {}, -1.0), InvalidArgument);
  // A tangential tail with few kept terms cannot certify an arc ending at its anchor from the zeros' side.
  InnerFunctionSpec s;
  s.tails = {tangential(0.0, TailSide::Upper, 4.0)};
  CHECK_THROWS_AS(build_phase_chart(s, Arc{0.0, kTwoPi}, TruncationPolicy{2, 1e-12}), TruncationError);
}

TEST_CASE("winding of finite Blaschke products") {
  InnerFunctionSpec s;
  s.zero_order = 1;
  s.zeros = {{0.2, 0.0, 1}, {0.97, 2.0, 2}, {0.6, 5.0, 1}};
  const PhaseChart c = build_phase_chart(s, Arc{0.0, kTwoPi});
  CHECK(c.periodic);
  CHECK(c.period == doctest::Approx(kTwoPi * 5).epsilon(1e-15));
  CHECK(c.phi_max() - c.phi_min() == doctest::Approx(kTwoPi * 5).epsilon(1e-12));
}

TEST_CASE("constant functions have no phase chart") {
  InnerFunctionSpec s;
  s.constant_arg = 1.0;
  CHECK_THROWS_AS(build_phase_chart(s, Arc{0.0, kTwoPi}), InvalidArgument);
}

TEST_CASE("truncation bound examples") {
  CHECK(truncation_error_bound(one_zero(), Arc{1.0, 2.0}, 5) == 0.0);
  InnerFunctionSpec s;
  s.tails = {stolz(0.0)};
  const Arc far = Arc::between(1.1, kTwoPi - 1.1);
  double geometric = 0.0;
  for (int n = 41; n < 200; ++n) geometric += 2 * 0.5 * std::pow(0.5, n);
  const double b40 = truncation_error_bound(s, far, 40);
  CHECK(b40 <= 9.1e-13);
  CHECK(b40 > 0.0);
  // With nothing kept the bound dominates the whole phase contribution of the tail.
  double full = 0.0;
  for (int n = 1; n < 200; ++n) full += std::abs(factor_phase(s.tails[0].term(n).comod, kPi));
  CHECK(truncation_error_bound(s, far, 0) >= full);
  CHECK(geometric < 1e-12);
}

TEST_CASE("truncation bound is non-increasing in N") {
  InnerFunctionSpec s;
  s.tails = {stolz(0.0, 0.5, 0.8, 2.0), tangential(3.0, TailSide::Upper, 6.0)};
  for (const Arc arc : {Arc::between(0.5, 2.5), Arc::between(3.0, 6.0), Arc::between(0.2, 2.9)}) {
    double prev = truncation_error_bound(s, arc, 0);
    for (int n = 1; n <= 300; ++n) {
      const double b = truncation_error_bound(s, arc, n);
      CHECK(b <= prev);
      prev = b;
    }
  }
}

TEST_CASE("truncation bound dominates the true phase error") {
  InnerFunctionSpec s;
  s.tails = {stolz(0.0, 0.5, 0.7, 1.0)};
  const Arc arc = Arc::between(0.6, 5.0);
  const InnerFunction coarse(s, {10, 1e-9}), fine(s, {400, 1e-9});
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double th = arc.lo + arc.length * i / 100;
    worst = std::max(worst, std::abs(angle_diff(coarse.phase(th), fine.phase(th))));
  }
  CHECK(worst <= truncation_error_bound(s, arc, 10));
  CHECK(worst > 0.0);
}
