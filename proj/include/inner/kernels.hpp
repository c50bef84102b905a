#pragma once

#include <vector>

#include "inner/maps.hpp"

namespace inner {

/// Serial is the reference path; Parallel splits the batch with OpenMP.
enum class Exec { Serial, Parallel };

/// Phase sum at each angle; NaN at spectrum points.
std::vector<double> eval_phase_batch(const InnerFunction& fn, const std::vector<double>& thetas,
                                     Exec exec = Exec::Parallel);

/// map.apply at each angle; NaN where the map is not certified.
std::vector<double> apply_batch(const CircleMap& map, const std::vector<double>& thetas,
                                Exec exec = Exec::Parallel);

/// |Θ(x(θ)) - Θ(θ)| at each angle; NaN where undefined.
std::vector<double> invariance_errors(const InnerFunction& fn, const CircleMap& map,
                                      const std::vector<double>& thetas, Exec exec = Exec::Parallel);

/// Largest non-NaN entry (0 for none) and the number of non-NaN entries.
struct MaxResult {
  double value = 0.0;
  long long count = 0;
  long long argmax = -1;
};
MaxResult max_finite(const std::vector<double>& v);

}  // namespace inner
