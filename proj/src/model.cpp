#include "inner/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "inner/errors.hpp"

namespace inner {

ZeroTerm TailFamily::term(int n) const {
  ZeroTerm z;
  z.anchor = canonical_angle(anchor_theta);
  z.source = 0;
  if (kind == TailKind::StolzGeometric) {
    z.comod = c * std::pow(q, n);
    z.offset = t * z.comod;
  } else {
    const double m = n + 1.0;
    z.comod = std::pow(m, -rho);
    z.offset = (side == TailSide::Upper ? 1.0 : -1.0) / m;
  }
  return z;
}

double TailFamily::comod_tail_sum(int n) const {
  if (kind == TailKind::StolzGeometric) return c * std::pow(q, n) / (1.0 - q);
  // Σ_{m>=n} (m+1)^-rho <= ∫_n^∞ x^-rho dx
  const double x = std::max(n, 1);
  return std::pow(x, 1.0 - rho) / (rho - 1.0);
}

double TailFamily::stolz_aperture() const { return std::sqrt(1.0 + t * t) + 0.5; }

bool operator==(const TailFamily& a, const TailFamily& b) {
  if (a.kind != b.kind || a.anchor_theta != b.anchor_theta) return false;
  if (a.kind == TailKind::StolzGeometric) return a.c == b.c && a.q == b.q && a.t == b.t;
  return a.side == b.side && a.rho == b.rho;
}

namespace {

bool finite(double x) { return std::isfinite(x); }

std::string field(const char* list, std::size_t i, const char* name) {
  std::ostringstream os;
  os << list << "[" << i << "]." << name;
  return os.str();
}

}  // namespace

void validate(const InnerFunctionSpec& spec) {
  if (!finite(spec.constant_arg)) throw RangeError("constant_arg: must be finite");
  if (spec.zero_order < 0) throw RangeError("zero_order: must be >= 0");

  for (std::size_t i = 0; i < spec.zeros.size(); ++i) {
    const auto& z = spec.zeros[i];
    if (!finite(z.modulus) || z.modulus >= 1.0 || z.modulus < 0.0)
      throw RangeError(field("zeros", i, "modulus") + ": must lie in [0, 1)");
    if (z.modulus == 0.0)
      throw RangeError(field("zeros", i, "modulus") + ": zeros at the origin belong in zero_order");
    if (!finite(z.argument)) throw RangeError(field("zeros", i, "argument") + ": must be finite");
    if (z.multiplicity < 1) throw RangeError(field("zeros", i, "multiplicity") + ": must be >= 1");
  }

  for (std::size_t i = 0; i < spec.tails.size(); ++i) {
    const auto& t = spec.tails[i];
    if (!finite(t.anchor_theta))
      throw RangeError(field("tails", i, "anchor_theta") + ": must be finite");
    if (t.kind == TailKind::StolzGeometric) {
      if (!(t.c > 0.0 && t.c < 1.0)) throw RangeError(field("tails", i, "c") + ": must lie in (0, 1)");
      if (!(t.q > 0.0 && t.q < 1.0)) throw RangeError(field("tails", i, "q") + ": must lie in (0, 1)");
      if (!(std::abs(t.t) <= kMaxStolzSlope))
        throw RangeError(field("tails", i, "t") + ": |t| must not exceed 10");
    } else {
      if (!(t.rho >= kMinTangentialExponent) || !finite(t.rho))
        throw RangeError(field("tails", i, "rho") + ": must be finite and >= 4");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = spec.tails[j];
      const bool same_family =
          o.kind == t.kind && (t.kind == TailKind::StolzGeometric || o.side == t.side);
      if (same_family && angular_distance(o.anchor_theta, t.anchor_theta) < kSameSingularity)
        throw DuplicateSingularityError(field("tails", i, "anchor_theta") +
                                        ": duplicates the family of tails[" + std::to_string(j) + "]");
    }
  }

  for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
    const auto& a = spec.atoms[i];
    if (!finite(a.theta)) throw RangeError(field("atoms", i, "theta") + ": must be finite");
    if (!(a.mass > 0.0) || !finite(a.mass))
      throw RangeError(field("atoms", i, "mass") + ": must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (angular_distance(spec.atoms[j].theta, a.theta) < kSameSingularity)
        throw DuplicateSingularityError(field("atoms", i, "theta") + ": duplicates atoms[" +
                                        std::to_string(j) + "]");
  }

  // Distinct singular points must be separated; coincident sources are merged.
  std::vector<double> raw;
  for (const auto& t : spec.tails) raw.push_back(canonical_angle(t.anchor_theta));
  for (const auto& a : spec.atoms) raw.push_back(canonical_angle(a.theta));
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double d = angular_distance(raw[i], raw[j]);
      if (d >= kSameSingularity && d < 1e-9)
        throw DuplicateSingularityError("singular angles closer than 1e-9 are not isolated");
    }
}

void validate(const TruncationPolicy& trunc) {
  if (trunc.tail_terms < 1) throw RangeError("truncation.tail_terms: must be >= 1");
  if (!(trunc.phase_tol > 0.0) || !finite(trunc.phase_tol))
    throw RangeError("truncation.phase_tol: must be positive");
}

int finite_degree(const InnerFunctionSpec& spec) {
  int m = spec.zero_order;
  for (const auto& z : spec.zeros) m += z.multiplicity;
  return m;
}

std::vector<double> singular_angles(const InnerFunctionSpec& spec) {
  std::vector<double> out;
  auto add = [&](double theta) {
    const double c = canonical_angle(theta);
    for (double s : out)
      if (angular_distance(s, c) < kSameSingularity) return;
    out.push_back(c);
  };
  for (const auto& t : spec.tails) add(t.anchor_theta);
  for (const auto& a : spec.atoms) add(a.theta);
  std::sort(out.begin(), out.end());
  return out;
}

bool accumulates(const InnerFunctionSpec& spec, double xi, Side side) {
  for (const auto& a : spec.atoms)
    if (angular_distance(a.theta, xi) < kSameSingularity) return true;
  for (const auto& t : spec.tails) {
    if (angular_distance(t.anchor_theta, xi) >= kSameSingularity) continue;
    if (t.kind == TailKind::StolzGeometric) return true;
    if ((t.side == TailSide::Upper) == (side == Side::Above)) return true;
  }
  return false;
}

std::vector<ZeroTerm> expand_zeros(const InnerFunctionSpec& spec, int tail_terms) {
  std::vector<ZeroTerm> out;
  out.reserve(spec.zeros.size() + spec.tails.size() * static_cast<std::size_t>(tail_terms));
  for (const auto& z : spec.zeros) {
    ZeroTerm t;
    t.anchor = canonical_angle(z.argument);
    t.offset = 0.0;
    t.comod = 1.0 - z.modulus;
    t.multiplicity = z.multiplicity;
    t.source = -1;
    out.push_back(t);
  }
  for (std::size_t i = 0; i < spec.tails.size(); ++i)
    for (int n = 1; n <= tail_terms; ++n) {
      ZeroTerm t = spec.tails[i].term(n);
      t.source = static_cast<int>(i);
      out.push_back(t);
    }
  return out;
}

}  // namespace inner
