#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inner/spectrum.hpp"

namespace inner {

/// Matching data of one arc. Two arcs can be exchanged by an invariant map
/// only if their labels match.
struct IntervalLabel {
  IntervalType type = IntervalType::Type2;
  std::optional<double> lo_arg;  // finite limit phase at lo, if any
  std::optional<double> hi_arg;
  long long image_count = 0;  // Type0 only
  bool image_certified = true;

  static IntervalLabel type2() { return {}; }
  static IntervalLabel type1a(double limit_arg) { return {IntervalType::Type1a, std::nullopt, limit_arg, 0, true}; }
  static IntervalLabel type1b(double limit_arg) { return {IntervalType::Type1b, limit_arg, std::nullopt, 0, true}; }
  static IntervalLabel type0(double lo_arg, double hi_arg, long long count) {
    return {IntervalType::Type0, lo_arg, hi_arg, count, true};
  }
};

/// Unimodular limits compare equal within this angular distance.
inline constexpr double kLimitMatchTol = 1e-7;

bool labels_match(const IntervalLabel& a, const IntervalLabel& b);

struct IntervalLabelSequence {
  std::vector<IntervalLabel> labels;  // cyclic, one per arc
  int degree = 0;                     // used when there are no singularities

  std::size_t n() const { return labels.size(); }
};

IntervalLabelSequence labels_from_report(const SpectrumReport& report);

/// All r in [0, n) with label(j + r) matching label(j) for every j, ascending.
std::vector<int> valid_rotations(const IntervalLabelSequence& seq);

struct GroupDescriptor {
  int n = 0;
  int k = 0;  // number of Type2 arcs
  int d = 1;  // order of the rotation part
  int g = 0;  // minimal valid rotation in arc steps (n / d); 0 when n = 0
  std::vector<int> type2_indices;
  /// rotation_action[j] = index of the Type2 arc that arc type2_indices[j] moves to under +g.
  std::vector<int> rotation_action;
  std::string presentation;
  std::string iso_label;
};

GroupDescriptor compute_group(const IntervalLabelSequence& seq);

struct GroupElement {
  std::vector<long long> shift;
  int rot = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity(const GroupDescriptor& desc);
/// x_j (0-based) and y.
GroupElement shift_generator(const GroupDescriptor& desc, int j);
GroupElement rotation_generator(const GroupDescriptor& desc);

/// a·b, where b acts first: (v1, r1)(v2, r2) = (v1 + ρ^{r1} v2, r1 + r2 mod d).
GroupElement compose(const GroupDescriptor& desc, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupDescriptor& desc, const GroupElement& a);
GroupElement power(const GroupDescriptor& desc, const GroupElement& a, long long e);
/// Least m >= 1 with a^m = e, or nullopt when the order is infinite.
std::optional<long long> element_order(const GroupDescriptor& desc, const GroupElement& a);
int rotation_part(const GroupDescriptor& desc, const GroupElement& a);

/// Applies ρ^r to a shift vector: (ρv)_{ρ(j)} = v_j.
std::vector<long long> act(const GroupDescriptor& desc, int r, const std::vector<long long>& v);

std::string to_string(const GroupElement& a);

}  // namespace inner
