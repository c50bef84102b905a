#pragma once

#include <cstddef>
#include <vector>

#include "inner/unit_point.hpp"

namespace inner {

/// A zero a = modulus·e^{i·argument} of the Blaschke part, |a| in (0, 1).
struct DiskZero {
  double modulus = 0.5;
  double argument = 0.0;
  int multiplicity = 1;
};

enum class TailKind { StolzGeometric, TangentialSummable };
enum class TailSide { Upper, Lower };

/// One zero of the expanded model. The angle is split into the anchor and a
/// small offset, and the modulus is carried as comod = 1 - |a|, so that zeros
/// far down a tail (comod ~ 1e-20) keep full relative precision.
struct ZeroTerm {
  double anchor = 0.0;
  double offset = 0.0;
  double comod = 1.0;
  int multiplicity = 1;
  int source = -1;  // -1 for listed zeros, else the tail index

  double modulus() const { return 1.0 - comod; }
  double angle() const { return anchor + offset; }
};

/// Parametric zero sequence accumulating at e^{i·anchor_theta}.
///
/// StolzGeometric:      a_n = (1 - c q^n) e^{i(anchor + t c q^n)},        n >= 1
/// TangentialSummable:  a_n = (1 - (n+1)^-rho) e^{i(anchor ± 1/(n+1))},  n >= 1
///
/// The tangential family approaches the anchor from above (Upper, angles
/// larger than the anchor) or below.
struct TailFamily {
  TailKind kind = TailKind::StolzGeometric;
  double anchor_theta = 0.0;
  TailSide side = TailSide::Upper;
  double c = 0.5;
  double q = 0.5;
  double t = 0.0;
  double rho = 4.0;

  ZeroTerm term(int n) const;
  /// Sum of comod_m over m >= n, in closed form.
  double comod_tail_sum(int n) const;
  /// Aperture alpha > 1 of a Stolz region containing every zero (Stolz kind).
  double stolz_aperture() const;
};

/// Compares the fields that are meaningful for the family's kind.
bool operator==(const TailFamily& a, const TailFamily& b);

inline constexpr double kMaxStolzSlope = 10.0;
inline constexpr double kMinTangentialExponent = 4.0;

/// Point mass of the singular measure.
struct Atom {
  double theta = 0.0;
  double mass = 1.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

inline bool operator==(const DiskZero& a, const DiskZero& b) {
  return a.modulus == b.modulus && a.argument == b.argument &&
         a.multiplicity == b.multiplicity;
}

/// λ z^p · Π (finite zeros) · Π (tail zeros) · exp(-Σ m_k (ζ_k + z)/(ζ_k - z)).
struct InnerFunctionSpec {
  double constant_arg = 0.0;
  int zero_order = 0;
  std::vector<DiskZero> zeros;
  std::vector<TailFamily> tails;
  std::vector<Atom> atoms;

  friend bool operator==(const InnerFunctionSpec&, const InnerFunctionSpec&) = default;
};

struct TruncationPolicy {
  int tail_terms = 64;
  double phase_tol = 1e-9;
};

/// Throws RangeError, SchemaError or DuplicateSingularityError.
void validate(const InnerFunctionSpec& spec);
void validate(const TruncationPolicy& trunc);

/// zero_order + Σ multiplicities; the degree when the spectrum is empty.
int finite_degree(const InnerFunctionSpec& spec);

/// Sorted, deduplicated singular angles (tail anchors and atoms).
std::vector<double> singular_angles(const InnerFunctionSpec& spec);

/// Tolerance under which two declared singular angles denote the same point.
inline constexpr double kSameSingularity = 1e-12;

enum class Side { Below, Above };

/// Whether solutions of Θ = λ accumulate at xi when approached from `side`.
/// Decided from the family kinds: atoms and Stolz tails accumulate on both
/// sides, tangential tails only on the side their zeros lie.
bool accumulates(const InnerFunctionSpec& spec, double xi, Side side);

/// Zeros of the model truncated to `tail_terms` terms per tail.
std::vector<ZeroTerm> expand_zeros(const InnerFunctionSpec& spec, int tail_terms);

}  // namespace inner
