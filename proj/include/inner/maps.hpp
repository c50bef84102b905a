#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "inner/group.hpp"

namespace inner {

/// Solutions z_m of Θ = e^{i·lambda_arg} on one chart, indexed relative to
/// the solution whose phase is nearest the chart midpoint.
struct SolutionGrid {
  double lambda_arg = 0.0;
  int arc = 0;
  long long base = 0;  // solution m has phase lambda_arg + 2π(base + m)
  std::vector<long long> index;
  std::vector<double> theta;
  std::vector<double> residual;  // |Φ(θ_m) - target| from re-evaluation
};

SolutionGrid enumerate_solutions(const PhaseChart& chart, double lambda_arg, int window_m, int arc = 0);

/// Everything the map builders share: the classified function, its group,
/// one chart per arc, and the finite end phases.
struct MapAtlas {
  std::shared_ptr<const InnerFunction> fn;
  SpectrumReport report;
  IntervalLabelSequence labels;
  GroupDescriptor group;
  double window = kDefaultWindow;
  std::vector<double> singular;  // sorted, same order as report.singularities
  std::vector<std::shared_ptr<const PhaseChart>> charts;
  std::vector<std::string> chart_errors;
  std::vector<std::optional<double>> lo_phase, hi_phase;
  /// Phase offsets of the rotation generator, one per arc; empty when d = 1.
  std::vector<long long> rotation_offsets;
  std::string rotation_error;

  int arcs() const { return static_cast<int>(charts.size()); }
  bool periodic() const { return singular.empty(); }
  double arc_lo(int j) const;
  double arc_length(int j) const;
  /// Arc containing θ, or -1 if θ is a singular point.
  int arc_of(double theta) const;
  int singular_index(double theta) const;
  const ArcPhase& phase(int j) const;
};

std::shared_ptr<const MapAtlas> build_atlas(const InnerFunctionSpec& spec, const TruncationPolicy& trunc = {},
                                            double window = kDefaultWindow);

/// Self-map of the circle. Either a transfer map θ ↦ Φ_{j+s}⁻¹(Φ_j(θ) + 2π k_j)
/// on every arc j, or an explicit formula (used for negative controls).
class CircleMap {
 public:
  static CircleMap identity(std::shared_ptr<const MapAtlas> atlas);
  static CircleMap transfer(std::shared_ptr<const MapAtlas> atlas, int shift, std::vector<long long> offsets);
  static CircleMap explicit_map(std::string name, std::function<double(double)> f,
                                std::vector<double> singular = {});

  /// Throws DomainError outside the certified domain.
  double apply(double theta) const;

  bool is_transfer() const { return atlas_ != nullptr; }
  int shift() const { return shift_; }
  const std::vector<long long>& offsets() const { return offsets_; }
  const std::shared_ptr<const MapAtlas>& atlas() const { return atlas_; }
  const std::string& name() const { return name_; }
  CircleMap& rename(std::string n) {
    name_ = std::move(n);
    return *this;
  }
  /// Points that must go to singular points.
  std::vector<double> singular_points() const;
  /// Certified source interval (u_lo, u_hi) relative to arc_lo(j), or an empty
  /// interval. Identity arcs report the whole open arc.
  std::pair<double, double> domain(int j) const;
  /// Arc count seen by the sampler (1 for explicit maps).
  int domain_arcs() const;
  double domain_lo(int j) const;

 private:
  std::shared_ptr<const MapAtlas> atlas_;
  int shift_ = 0;
  std::vector<long long> offsets_;
  std::function<double(double)> fn_;
  std::vector<double> explicit_singular_;
  std::string name_;
};

CircleMap invert_map(const CircleMap& m);
/// a∘b (b applied first).
CircleMap compose_maps(const CircleMap& a, const CircleMap& b);

/// x_j: advances every solution on Type2 arc `arc` by one, fixes everything
/// else. With no singularities, the generator θ ↦ Φ⁻¹(Φ(θ) + 2π).
CircleMap build_shift_map(std::shared_ptr<const MapAtlas> atlas, int arc);
/// y^{r/g} for a valid rotation r ≠ 0 (arc steps). Throws RotationUnavailableError.
CircleMap build_rotation_map(std::shared_ptr<const MapAtlas> atlas, int r);
/// x^v ∘ y^rot for the element (v, rot).
CircleMap realize(std::shared_ptr<const MapAtlas> atlas, const GroupElement& element);

/// θ ↦ θ + π + delta: an invariant of the antipodal two-atom function, perturbed.
CircleMap perturbed_rotation(double delta, std::vector<double> singular = {});
/// θ ↦ θ(1 - eps·sin θ), not monotone for eps = 0.3.
CircleMap folded_map(double eps);

}  // namespace inner
