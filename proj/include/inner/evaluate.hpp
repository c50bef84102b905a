#pragma once

#include <complex>
#include <vector>

#include "inner/model.hpp"
#include "inner/unit_point.hpp"

namespace inner {

/// Argument of the boundary value of the Blaschke factor for a zero with
/// comodulus `comod` = 1 - |a|, at angular separation psi = θ - arg a in (-π, π].
/// Evaluated as an angle, never as a quotient, so it stays accurate when
/// comod and psi are both tiny. Jumps by -2π at psi = 0 (value π there).
double factor_phase(double comod, double psi);

/// (1 - |a|^2) / |e^{iθ} - a|^2, the derivative of factor_phase in psi.
double poisson_kernel(double comod, double psi);

/// Reduces x to (-π, π].
double reduce_angle(double x);

/// Single factor (|a|/a)(a - z)/(1 - conj(a) z) at z = e^{iθ}.
std::complex<double> eval_factor(const DiskZero& zero, UnitPoint point);

/// Closed form of (1/2π)∫_0^ε P_a(θ) dθ: α/π - ε/2π with α = arg((e^{iε} - a)/(1 - a)).
/// The zero may sit at the origin.
double poisson_arc_mass(const DiskZero& zero, double epsilon);

/// Same integral by adaptive Gauss-Kronrod quadrature.
double poisson_arc_mass_quadrature(const DiskZero& zero, double epsilon);

/// w ↦ (w - a)/(1 - conj(a) w).
std::complex<double> frostman_transform(std::complex<double> w, std::complex<double> a);

/// Continuous increasing lift of arg frostman_transform(e^{iφ}, a) as a function of φ.
double frostman_phase_lift(double phi, std::complex<double> a);

/// Truncated model of an inner function, ready for pointwise evaluation.
class InnerFunction {
 public:
  explicit InnerFunction(InnerFunctionSpec spec, TruncationPolicy trunc = {});

  const InnerFunctionSpec& spec() const { return spec_; }
  const TruncationPolicy& truncation() const { return trunc_; }
  const std::vector<ZeroTerm>& zeros() const { return zeros_; }
  const std::vector<double>& singularities() const { return singular_; }
  int degree() const { return finite_degree(spec_); }

  /// True if theta is within tol of a spectrum point.
  bool is_singular(double theta, double tol = kSameSingularity) const;

  /// Sum of the factor arguments at θ (not reduced mod 2π).
  /// Throws SingularPointError at spectrum points.
  double phase(double theta) const;
  /// As phase() but without the singularity check. Finite at tail anchors
  /// (the truncated product is analytic there), infinite at atoms.
  double phase_unchecked(double theta) const;
  std::complex<double> value(double theta) const;
  /// d/dθ of the phase; strictly positive.
  double derivative(double theta) const;

 private:
  InnerFunctionSpec spec_;
  TruncationPolicy trunc_;
  std::vector<ZeroTerm> zeros_;
  std::vector<double> singular_;
};

std::complex<double> eval_inner(const InnerFunctionSpec& spec, UnitPoint point,
                                const TruncationPolicy& trunc = {});
double phase_derivative(const InnerFunctionSpec& spec, UnitPoint point,
                        const TruncationPolicy& trunc = {});

/// Upper bound on |arg Θ - arg Θ_N| uniformly on the closed arc, where Θ_N
/// keeps `tail_terms` terms per tail. Infinite when discarded zeros can
/// approach the arc. Non-increasing in tail_terms.
double truncation_error_bound(const InnerFunctionSpec& spec, const Arc& arc, int tail_terms);

}  // namespace inner
