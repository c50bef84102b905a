#include "inner/kernels.hpp"

#include <cmath>
#include <limits>

#include "inner/errors.hpp"

namespace inner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs f(i) for every index; exceptions are turned into NaN by f itself.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < m; ++i) f(static_cast<std::size_t>(i));
}

double safe_phase(const InnerFunction& fn, double t) {
  try {
    return fn.phase(t);
  } catch (const Error&) {
    return kNaN;
  }
}

double safe_apply(const CircleMap& map, double t) {
  try {
    return map.apply(t);
  } catch (const Error&) {
    return kNaN;
  }
}

}  // namespace

std::vector<double> eval_phase_batch(const InnerFunction& fn, const std::vector<double>& thetas, Exec exec) {
  std::vector<double> out(thetas.size());
  for_each_index(thetas.size(), exec, [&](std::size_t i) { out[i] = safe_phase(fn, thetas[i]); });
  return out;
}

std::vector<double> apply_batch(const CircleMap& map, const std::vector<double>& thetas, Exec exec) {
  std::vector<double> out(thetas.size());
  for_each_index(thetas.size(), exec, [&](std::size_t i) { out[i] = safe_apply(map, thetas[i]); });
  return out;
}

std::vector<double> invariance_errors(const InnerFunction& fn, const CircleMap& map,
                                      const std::vector<double>& thetas, Exec exec) {
  std::vector<double> out(thetas.size());
  for_each_index(thetas.size(), exec, [&](std::size_t i) {
    const double x = safe_apply(map, thetas[i]);
    if (std::isnan(x)) {
      out[i] = kNaN;
      return;
    }
    const double a = safe_phase(fn, thetas[i]);
    const double b = safe_phase(fn, x);
    out[i] = 2.0 * std::abs(std::sin(0.5 * (b - a)));
  });
  return out;
}

MaxResult max_finite(const std::vector<double>& v) {
  MaxResult r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) continue;
    ++r.count;
    if (r.argmax < 0 || v[i] > r.value) {
      r.value = v[i];
      r.argmax = static_cast<long long>(i);
    }
  }
  return r;
}

}  // namespace inner
