#include "inner/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "inner/errors.hpp"

namespace inner {

namespace {

std::string fmt(const char* label, double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << label << " theta=" << a << " error=" << b;
  return os.str();
}

void finish(CheckReport& r) { r.passed = r.samples > 0 && r.max_error < r.tolerance; }

double near_singular(const std::vector<double>& sing, double theta) {
  double d = std::numeric_limits<double>::infinity();
  for (double s : sing) d = std::min(d, angular_distance(s, theta));
  return d;
}

}  // namespace

std::vector<double> sample_domain(const CircleMap& map, int n_samples, std::uint64_t seed, double guard) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  const auto sing = map.singular_points();
  const int arcs = map.domain_arcs();
  std::vector<std::pair<double, double>> dom(arcs);
  double total = 0.0;
  for (int j = 0; j < arcs; ++j) {
    auto [a, b] = map.domain(j);
    a += guard;
    b -= guard;
    dom[j] = {a, b};
    if (b > a) total += b - a;
  }
  if (total <= 0.0) return out;
  for (int j = 0; j < arcs; ++j) {
    const auto [a, b] = dom[j];
    if (!(b > a)) continue;
    const int m = std::max(1, static_cast<int>(std::lround(n_samples * (b - a) / total)));
    std::uniform_real_distribution<double> U(a, b);
    for (int i = 0; i < m;) {
      const double t = canonical_angle(map.domain_lo(j) + U(rng));
      if (near_singular(sing, t) < guard) continue;
      out.push_back(t);
      ++i;
    }
  }
  return out;
}

CheckReport check_invariance(const InnerFunction& fn, const CircleMap& map, int n_samples, double tol,
                             std::uint64_t seed, Exec exec) {
  CheckReport r;
  r.name = "invariance[" + map.name() + "]";
  r.tolerance = tol;
  r.seed = seed;
  std::vector<double> pts = sample_domain(map, n_samples, seed);
  // Explicit maps carry no domain of their own: keep away from the function's spectrum too.
  const auto& sing = fn.singularities();
  pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double t) { return near_singular(sing, t) < kGuardBand; }),
            pts.end());
  const auto err = invariance_errors(fn, map, pts, exec);
  const MaxResult m = max_finite(err);
  r.max_error = m.value;
  r.samples = m.count;
  if (m.argmax >= 0) r.details.push_back(fmt("worst", pts[m.argmax], m.value));
  finish(r);
  return r;
}

CheckReport check_bijection(const CircleMap& map, int n_samples, std::uint64_t seed) {
  CheckReport r;
  r.name = "bijection[" + map.name() + "]";
  r.tolerance = 1e-9;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> pts;
  for (int i = 0; i < n_samples; ++i) pts.push_back(kTwoPi * (i + U(rng)) / n_samples);
  const auto sing = map.singular_points();
  pts.insert(pts.end(), sing.begin(), sing.end());
  std::sort(pts.begin(), pts.end());

  const auto img = apply_batch(map, pts, Exec::Serial);
  std::vector<double> xs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!std::isnan(img[i])) xs.push_back(img[i]);
  r.samples = static_cast<long long>(xs.size());

  double total = 0.0;
  long long stalls = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = ccw_distance(xs[i], xs[(i + 1) % xs.size()]);
    if (d == 0.0 && xs.size() > 1) ++stalls;
    total += d;
  }
  double err = std::abs(total - kTwoPi);
  if (stalls) {
    err = std::max(err, 1.0);
    r.details.push_back("non-increasing steps: " + std::to_string(stalls));
  }
  std::ostringstream os;
  os.precision(17);
  os << "total lift increase " << total;
  r.details.push_back(os.str());

  for (double s : sing) {
    try {
      const double e = near_singular(sing, map.apply(s));
      if (e > err) r.details.push_back(fmt("singular point not preserved", s, e));
      err = std::max(err, e);
    } catch (const Error&) {
      err = std::max(err, 1.0);
    }
  }
  // Where Θ has a one-sided limit at an arc end, a continuous bijection must
  // carry that end onto the matching end of the image arc with the same phase.
  if (map.is_transfer() && !map.atlas()->periodic()) {
    const MapAtlas& at = *map.atlas();
    const int n = at.arcs();
    for (int j = 0; j < n; ++j) {
      const int t = (j + map.shift()) % n;
      const double k = kTwoPi * static_cast<double>(map.offsets()[j]);
      auto end_error = [&](const std::optional<double>& from, const std::optional<double>& to) {
        if (!from && !to) return 0.0;
        if (!from || !to) return 1.0;
        return std::abs(*from + k - *to);
      };
      const double e = std::max(end_error(at.lo_phase[j], at.lo_phase[t]), end_error(at.hi_phase[j], at.hi_phase[t]));
      if (e > 1e-9) {
        std::ostringstream d;
        d.precision(17);
        d << "arc " << j << " end phase mismatch " << e;
        r.details.push_back(d.str());
      }
      err = std::max(err, e);
    }
  }
  r.max_error = err;
  finish(r);
  return r;
}

namespace {

// Samples per arc from the chart cores, for relation-type checks.
std::vector<double> arc_samples(const MapAtlas& at, int per_arc, std::mt19937_64& rng) {
  std::vector<double> out;
  for (int j = 0; j < at.arcs(); ++j) {
    double a = 0.0, b = at.arc_length(j);
    if (at.charts[j]) {
      a = at.charts[j]->u_min();
      b = at.charts[j]->u_max();
    }
    a += kGuardBand;
    b -= kGuardBand;
    if (!(b > a)) continue;
    std::uniform_real_distribution<double> U(a, b);
    for (int i = 0; i < per_arc; ++i) out.push_back(canonical_angle(at.arc_lo(j) + U(rng)));
  }
  return out;
}

double apply_word(const std::vector<const CircleMap*>& word, double t) {
  // Rightmost map acts first.
  for (auto it = word.rbegin(); it != word.rend(); ++it) t = (*it)->apply(t);
  return t;
}

struct RelationResult {
  double max_error = 0.0;
  long long samples = 0;
};

RelationResult compare_words(const std::vector<const CircleMap*>& lhs, const std::vector<const CircleMap*>& rhs,
                             const std::vector<double>& pts) {
  RelationResult res;
  for (double t : pts) {
    try {
      const double a = apply_word(lhs, t);
      const double b = apply_word(rhs, t);
      res.max_error = std::max(res.max_error, angular_distance(a, b));
      ++res.samples;
    } catch (const Error&) {
    }
  }
  return res;
}

}  // namespace

CheckReport check_relations(std::shared_ptr<const MapAtlas> atlas, double tol, int n_samples_per_arc,
                            std::uint64_t seed) {
  CheckReport r;
  r.name = "relations";
  r.tolerance = tol;
  r.seed = seed;
  const GroupDescriptor& desc = atlas->group;
  std::mt19937_64 rng(seed);
  const auto pts = arc_samples(*atlas, n_samples_per_arc, rng);

  std::vector<CircleMap> xs;
  for (int t : desc.type2_indices) xs.push_back(build_shift_map(atlas, t));
  const bool has_y = desc.d > 1;
  const CircleMap id = CircleMap::identity(atlas);
  CircleMap y = id, yinv = id;
  if (has_y) {
    y = atlas->periodic() ? build_rotation_map(atlas, 1) : build_rotation_map(atlas, desc.g);
    yinv = invert_map(y);
  }

  bool any_relation = false;
  auto record = [&](const std::string& label, const RelationResult& res) {
    any_relation = true;
    r.max_error = std::max(r.max_error, res.max_error);
    r.samples += res.samples;
    std::ostringstream os;
    os.precision(3);
    os << label << " max=" << res.max_error << " samples=" << res.samples;
    r.details.push_back(os.str());
    if (res.samples == 0) r.max_error = std::numeric_limits<double>::infinity();
  };

  if (has_y) {
    std::vector<const CircleMap*> word(desc.d, &y);
    record("y^" + std::to_string(desc.d) + "=e", compare_words(word, {&id}, pts));
  }
  for (int a = 0; a < desc.k; ++a)
    for (int b = a + 1; b < desc.k; ++b)
      record("x" + std::to_string(a + 1) + "x" + std::to_string(b + 1) + "=x" + std::to_string(b + 1) + "x" +
                 std::to_string(a + 1),
             compare_words({&xs[a], &xs[b]}, {&xs[b], &xs[a]}, pts));
  if (has_y)
    for (int j = 0; j < desc.k; ++j)
      record("y·x" + std::to_string(j + 1) + "·y^-1=x" + std::to_string(desc.rotation_action[j] + 1),
             compare_words({&y, &xs[j], &yinv}, {&xs[desc.rotation_action[j]]}, pts));

  // Rotation part is a homomorphism onto Z_d.
  if (desc.n > 0 && desc.d > 1) {
    std::uniform_int_distribution<int> R(0, desc.d - 1);
    std::uniform_int_distribution<int> S(-3, 3);
    long long bad = 0;
    for (int i = 0; i < 200; ++i) {
      GroupElement a = identity(desc), b = identity(desc);
      for (auto& v : a.shift) v = S(rng);
      for (auto& v : b.shift) v = S(rng);
      a.rot = R(rng);
      b.rot = R(rng);
      if (rotation_part(desc, compose(desc, a, b)) != (a.rot + b.rot) % desc.d) ++bad;
    }
    r.details.push_back("rotation part additivity failures: " + std::to_string(bad));
    if (bad) r.max_error = std::max(r.max_error, 1.0);
  }

  if (!any_relation) {
    r.details.push_back("no relations");
    r.passed = true;
    return r;
  }
  finish(r);
  return r;
}

CheckReport check_homomorphism(std::shared_ptr<const MapAtlas> atlas, int pairs, int samples_per_arc, double tol,
                               std::uint64_t seed) {
  CheckReport r;
  r.name = "homomorphism";
  r.tolerance = tol;
  r.seed = seed;
  const GroupDescriptor& desc = atlas->group;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> S(-1, 1);
  std::uniform_int_distribution<int> R(0, desc.d - 1);
  for (int p = 0; p < pairs; ++p) {
    GroupElement a = identity(desc), b = identity(desc);
    for (auto& v : a.shift) v = S(rng);
    for (auto& v : b.shift) v = S(rng);
    a.rot = R(rng);
    b.rot = R(rng);
    const CircleMap ab = realize(atlas, compose(desc, a, b));
    const CircleMap ma = realize(atlas, a);
    const CircleMap mb = realize(atlas, b);
    const auto pts = arc_samples(*atlas, samples_per_arc, rng);
    const RelationResult res = compare_words({&ab}, {&ma, &mb}, pts);
    r.samples += res.samples;
    if (res.max_error > r.max_error) {
      r.max_error = res.max_error;
      r.details.push_back("worst pair " + to_string(a) + "·" + to_string(b));
    }
  }
  finish(r);
  return r;
}

CheckReport check_phase_derivative(const InnerFunction& fn, int n_points, std::uint64_t seed, double tol) {
  CheckReport r;
  r.name = "phase_derivative";
  r.tolerance = tol;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, kTwoPi);
  const auto& sing = fn.singularities();
  std::shared_ptr<const InnerFunction> shared(&fn, [](const InnerFunction*) {});

  // Arc phase functions, one per arc.
  std::vector<ArcPhase> arcs;
  if (sing.empty()) {
    arcs.emplace_back(shared, 0.0, kTwoPi);
  } else {
    for (std::size_t j = 0; j < sing.size(); ++j) {
      const double L = sing.size() == 1 ? kTwoPi : ccw_distance(sing[j], sing[(j + 1) % sing.size()]);
      arcs.emplace_back(shared, sing[j], L);
    }
  }

  while (r.samples < n_points) {
    const double t = U(rng);
    const double dist = near_singular(sing, t);
    if (dist < kGuardBand) continue;
    std::size_t j = 0;
    for (std::size_t i = 0; i < arcs.size(); ++i)
      if (sing.empty() || ccw_distance(arcs[i].lo(), t) < arcs[i].length()) {
        j = i;
        break;
      }
    const ArcPhase& ph = arcs[j];
    const double u = ccw_distance(ph.lo(), t);

    // Local feature scale: distance to the nearest zero or singular point.
    double scale = std::min(1.0, dist);
    for (const auto& z : fn.zeros()) {
      const double gap = std::abs(reduce_angle(angle_diff(t, z.anchor) - z.offset));
      scale = std::min(scale, std::hypot(z.comod, gap));
    }
    const double h = 1e-3 * scale;
    auto D = [&](double hh) { return (ph(u + hh) - ph(u - hh)) / (2.0 * hh); };
    const double fd = (4.0 * D(0.5 * h) - D(h)) / 3.0;
    const double exact = fn.derivative(t);
    const double rel = std::abs(fd - exact) / std::abs(exact);
    if (rel > r.max_error) {
      r.max_error = rel;
      r.details.assign(1, fmt("worst", t, rel));
    }
    ++r.samples;
  }
  finish(r);
  return r;
}

CheckReport check_garnett_identity(int n_cases, std::uint64_t seed, double tol) {
  CheckReport r;
  r.name = "garnett_identity";
  r.tolerance = tol;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> M(0.0, 0.95), A(0.0, kTwoPi), E(0.01, kTwoPi - 0.01);
  for (int i = 0; i < n_cases; ++i) {
    const DiskZero z{M(rng), A(rng), 1};
    const double eps = E(rng);
    const double err = std::abs(poisson_arc_mass(z, eps) - poisson_arc_mass_quadrature(z, eps));
    if (err > r.max_error || i == 0) {
      r.max_error = std::max(r.max_error, err);
      std::ostringstream os;
      os.precision(17);
      os << "worst modulus=" << z.modulus << " argument=" << z.argument << " epsilon=" << eps << " error=" << err;
      r.details.assign(1, os.str());
    }
    ++r.samples;
  }
  finish(r);
  return r;
}

}  // namespace inner
