#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "inner/kernels.hpp"

namespace inner {

struct CheckReport {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  long long samples = 0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::vector<std::string> details;  // worst cases and notes
};

/// Samples stay this far from singular points and from certified-domain edges.
inline constexpr double kGuardBand = 1e-3;

/// Stratified random angles inside the certified domain of `map`.
std::vector<double> sample_domain(const CircleMap& map, int n_samples, std::uint64_t seed,
                                  double guard = kGuardBand);

CheckReport check_invariance(const InnerFunction& fn, const CircleMap& map, int n_samples, double tol,
                             std::uint64_t seed = 1, Exec exec = Exec::Parallel);

/// Strict monotonicity of the lift on sorted samples, total increase 2π, and
/// singular points sent to singular points.
CheckReport check_bijection(const CircleMap& map, int n_samples, std::uint64_t seed = 1);

/// Map-level check of y^d = e, x_a x_b = x_b x_a and y x_j y⁻¹ = x_{ρ(j)},
/// plus additivity of the rotation part.
CheckReport check_relations(std::shared_ptr<const MapAtlas> atlas, double tol, int n_samples_per_arc = 64,
                            std::uint64_t seed = 1);

/// realize(a·b) against realize(a)∘realize(b) for random pairs.
CheckReport check_homomorphism(std::shared_ptr<const MapAtlas> atlas, int pairs, int samples_per_arc,
                               double tol, std::uint64_t seed = 1);

/// Poisson-sum derivative against Richardson-extrapolated central
/// differences of the arc phase, relative error.
CheckReport check_phase_derivative(const InnerFunction& fn, int n_points, std::uint64_t seed = 1,
                                   double tol = 1e-6);

/// Closed-form arc mass of the Poisson kernel against quadrature.
CheckReport check_garnett_identity(int n_cases, std::uint64_t seed = 1, double tol = 1e-8);

}  // namespace inner
