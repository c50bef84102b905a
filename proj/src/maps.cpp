#include "inner/maps.hpp"

#include <algorithm>
#include <cmath>

#include "inner/errors.hpp"

namespace inner {

SolutionGrid enumerate_solutions(const PhaseChart& chart, double lambda_arg, int window_m, int arc) {
  if (window_m < 1) throw InvalidArgument("solution window must be >= 1");
  SolutionGrid g;
  g.lambda_arg = lambda_arg;
  g.arc = arc;
  const ArcPhase& ph = *chart.phase;
  long long m_lo, m_hi;
  if (chart.periodic) {
    g.base = static_cast<long long>(std::ceil((chart.phi_min() - lambda_arg) / kTwoPi));
    m_lo = 0;
    m_hi = static_cast<long long>(std::llround(chart.period / kTwoPi)) - 1;
    if (lambda_arg + kTwoPi * (g.base + m_hi) >= chart.phi_min() + chart.period) --m_hi;
  } else {
    g.base = std::llround((chart.phi_ref() - lambda_arg) / kTwoPi);
    m_lo = static_cast<long long>(std::ceil((chart.phi_min() - lambda_arg) / kTwoPi)) - g.base;
    m_hi = static_cast<long long>(std::floor((chart.phi_max() - lambda_arg) / kTwoPi)) - g.base;
  }
  m_lo = std::max<long long>(m_lo, -window_m);
  m_hi = std::min<long long>(m_hi, window_m);
  for (long long m = m_lo; m <= m_hi; ++m) {
    const double target = lambda_arg + kTwoPi * static_cast<double>(g.base + m);
    const double u = phase_inverse_u(chart, target);
    if (!chart.periodic && ((chart.lo_singular && u <= 0.0) || (chart.hi_singular && u >= chart.length())))
      continue;
    g.index.push_back(m);
    g.theta.push_back(canonical_angle(chart.lo() + u));
    g.residual.push_back(std::abs(ph(u) - target));
  }
  return g;
}

double MapAtlas::arc_lo(int j) const { return periodic() ? 0.0 : singular[j]; }

double MapAtlas::arc_length(int j) const {
  const int n = static_cast<int>(singular.size());
  if (n <= 1) return kTwoPi;
  return ccw_distance(singular[j], singular[(j + 1) % n]);
}

int MapAtlas::singular_index(double theta) const {
  for (std::size_t i = 0; i < singular.size(); ++i)
    if (angular_distance(singular[i], theta) < kSameSingularity) return static_cast<int>(i);
  return -1;
}

int MapAtlas::arc_of(double theta) const {
  if (periodic()) return 0;
  if (singular_index(theta) >= 0) return -1;
  const double t = canonical_angle(theta);
  const auto it = std::upper_bound(singular.begin(), singular.end(), t);
  if (it == singular.begin()) return static_cast<int>(singular.size()) - 1;
  return static_cast<int>(it - singular.begin()) - 1;
}

const ArcPhase& MapAtlas::phase(int j) const {
  if (!charts[j]) throw DomainError("no certified chart on arc " + std::to_string(j) + ": " + chart_errors[j]);
  return *charts[j]->phase;
}

namespace {

constexpr double kIntegerTol = 1e-6;

// Offset that carries the finite end phase of `from` onto that of `to`.
long long forced_offset(const MapAtlas& at, int from, int to) {
  const IntervalType type = at.report.intervals[from].type;
  double diff = 0.0;
  if (type == IntervalType::Type1a)
    diff = *at.hi_phase[to] - *at.hi_phase[from];
  else
    diff = *at.lo_phase[to] - *at.lo_phase[from];
  const double q = diff / kTwoPi;
  const double k = std::round(q);
  if (std::abs(q - k) > kIntegerTol) throw RotationUnavailableError("finite end limits of the arcs differ");
  if (type == IntervalType::Type0) {
    const double q2 = (*at.hi_phase[to] - *at.hi_phase[from]) / kTwoPi;
    if (std::abs(q2 - k) > kIntegerTol) throw RotationUnavailableError("type-0 arc images differ");
  }
  return static_cast<long long>(k);
}

void build_rotation_offsets(MapAtlas& at) {
  const auto& desc = at.group;
  if (at.periodic() || desc.d <= 1) return;
  const int n = desc.n;
  std::vector<long long> k(n, 0);
  for (int start = 0; start < desc.g; ++start) {
    long long total = 0;
    for (int i = 0; i < desc.d; ++i) {
      const int s = start + i * desc.g;
      const int t = (s + desc.g) % n;
      if (i == desc.d - 1) {
        k[s] = -total;  // closes the orbit so that y^d = e
        if (at.report.intervals[s].type != IntervalType::Type2 && forced_offset(at, s, t) != k[s])
          throw RotationUnavailableError("finite end limits are inconsistent around the orbit");
        break;
      }
      if (at.report.intervals[s].type == IntervalType::Type2) {
        const ArcPhase& ps = at.phase(s);
        const ArcPhase& pt = at.phase(t);
        k[s] = std::llround((pt(pt.u_ref()) - ps(ps.u_ref())) / kTwoPi);
      } else {
        k[s] = forced_offset(at, s, t);
      }
      total += k[s];
    }
  }
  at.rotation_offsets = std::move(k);
}

}  // namespace

std::shared_ptr<const MapAtlas> build_atlas(const InnerFunctionSpec& spec, const TruncationPolicy& trunc,
                                            double window) {
  auto at = std::make_shared<MapAtlas>();
  at->fn = std::make_shared<const InnerFunction>(spec, trunc);
  at->window = window;
  at->report = classify_intervals(spec, trunc, window);
  at->labels = labels_from_report(at->report);
  at->group = compute_group(at->labels);
  at->singular = at->fn->singularities();

  const int arcs = at->periodic() ? 1 : static_cast<int>(at->singular.size());
  at->charts.resize(arcs);
  at->chart_errors.resize(arcs);
  at->lo_phase.resize(arcs);
  at->hi_phase.resize(arcs);
  for (int j = 0; j < arcs; ++j) {
    const Arc arc{at->arc_lo(j), at->arc_length(j)};
    try {
      at->charts[j] = std::make_shared<const PhaseChart>(build_phase_chart(at->fn, arc, window));
    } catch (const TruncationError& e) {
      at->chart_errors[j] = e.what();
    }
    if (at->periodic()) continue;
    const ArcPhase ph(at->fn, arc.lo, arc.length);
    if (at->report.intervals[j].lo_limit) at->lo_phase[j] = ph(0.0);
    if (at->report.intervals[j].hi_limit) at->hi_phase[j] = ph(arc.length);
  }
  try {
    build_rotation_offsets(*at);
  } catch (const Error& e) {
    at->rotation_error = e.what();
  }
  return at;
}

CircleMap CircleMap::identity(std::shared_ptr<const MapAtlas> atlas) {
  const int arcs = atlas->arcs();
  return transfer(std::move(atlas), 0, std::vector<long long>(arcs, 0));
}

CircleMap CircleMap::transfer(std::shared_ptr<const MapAtlas> atlas, int shift, std::vector<long long> offsets) {
  if (!atlas) throw InvalidArgument("transfer map needs an atlas");
  if (static_cast<int>(offsets.size()) != atlas->arcs()) throw InvalidArgument("one offset per arc required");
  CircleMap m;
  const int n = atlas->arcs();
  m.shift_ = atlas->periodic() ? 0 : ((shift % n) + n) % n;
  if (atlas->periodic()) {
    const long long deg = atlas->fn->degree();
    offsets[0] = ((offsets[0] % deg) + deg) % deg;
  }
  m.offsets_ = std::move(offsets);
  m.atlas_ = std::move(atlas);
  m.name_ = "map";
  return m;
}

CircleMap CircleMap::explicit_map(std::string name, std::function<double(double)> f, std::vector<double> singular) {
  CircleMap m;
  m.fn_ = std::move(f);
  m.explicit_singular_ = std::move(singular);
  m.name_ = std::move(name);
  return m;
}

double CircleMap::apply(double theta) const {
  if (!atlas_) return canonical_angle(fn_(theta));
  const MapAtlas& at = *atlas_;
  if (at.periodic()) {
    if (offsets_[0] == 0) return canonical_angle(theta);
    const PhaseChart& c = *at.charts[0];
    const double u = ccw_distance(c.lo(), theta);
    const double target = (*c.phase)(u) + kTwoPi * static_cast<double>(offsets_[0]);
    return canonical_angle(c.lo() + phase_inverse_u(c, target));
  }
  const int n = at.arcs();
  const int si = at.singular_index(theta);
  if (si >= 0) return at.singular[(si + shift_) % n];
  const int j = at.arc_of(theta);
  if (shift_ == 0 && offsets_[j] == 0) return canonical_angle(theta);
  const int t = (j + shift_) % n;
  if (!at.charts[j] || !at.charts[t]) throw DomainError("arc has no certified chart");
  const PhaseChart& cs = *at.charts[j];
  const double u = ccw_distance(at.arc_lo(j), theta);
  if (u < cs.u_min() || u > cs.u_max()) throw DomainError("angle outside the source chart");
  const double target = (*cs.phase)(u) + kTwoPi * static_cast<double>(offsets_[j]);
  try {
    return canonical_angle(at.arc_lo(t) + phase_inverse_u(*at.charts[t], target));
  } catch (const PhaseRangeError&) {
    throw DomainError("image phase outside the target chart");
  }
}

std::vector<double> CircleMap::singular_points() const {
  return atlas_ ? atlas_->singular : explicit_singular_;
}

int CircleMap::domain_arcs() const { return atlas_ ? atlas_->arcs() : 1; }

double CircleMap::domain_lo(int j) const { return atlas_ ? atlas_->arc_lo(j) : 0.0; }

std::pair<double, double> CircleMap::domain(int j) const {
  if (!atlas_) return {0.0, kTwoPi};
  const MapAtlas& at = *atlas_;
  const double L = at.arc_length(j);
  if (at.periodic()) return {0.0, kTwoPi};
  if (shift_ == 0 && offsets_[j] == 0) return {0.0, L};
  const int t = (j + shift_) % at.arcs();
  if (!at.charts[j] || !at.charts[t]) return {1.0, 0.0};
  const PhaseChart& cs = *at.charts[j];
  const PhaseChart& ct = *at.charts[t];
  const double shift = kTwoPi * static_cast<double>(offsets_[j]);
  const double lo_phi = std::max(cs.phi_min(), ct.phi_min() - shift);
  const double hi_phi = std::min(cs.phi_max(), ct.phi_max() - shift);
  if (!(lo_phi < hi_phi)) return {1.0, 0.0};
  return {phase_inverse_u(cs, lo_phi), phase_inverse_u(cs, hi_phi)};
}

CircleMap invert_map(const CircleMap& m) {
  if (!m.is_transfer()) throw InvalidArgument("only transfer maps can be inverted");
  const int n = m.atlas()->arcs();
  std::vector<long long> k(n, 0);
  for (int j = 0; j < n; ++j) k[(j + m.shift()) % n] = -m.offsets()[j];
  return CircleMap::transfer(m.atlas(), -m.shift(), std::move(k)).rename(m.name() + "^-1");
}

CircleMap compose_maps(const CircleMap& a, const CircleMap& b) {
  if (!a.is_transfer() || !b.is_transfer()) throw InvalidArgument("only transfer maps can be composed");
  if (a.atlas() != b.atlas()) throw InvalidArgument("maps belong to different functions");
  const int n = a.atlas()->arcs();
  std::vector<long long> k(n, 0);
  for (int j = 0; j < n; ++j) k[j] = b.offsets()[j] + a.offsets()[(j + b.shift()) % n];
  return CircleMap::transfer(a.atlas(), a.shift() + b.shift(), std::move(k)).rename(a.name() + "∘" + b.name());
}

CircleMap build_shift_map(std::shared_ptr<const MapAtlas> atlas, int arc) {
  const int n = atlas->arcs();
  if (arc < 0 || arc >= n) throw InvalidArgument("arc index out of range");
  std::vector<long long> k(n, 0);
  if (!atlas->periodic() && atlas->report.intervals[arc].type != IntervalType::Type2)
    throw NotShiftableError("only Type2 arcs carry a shift");
  k[arc] = 1;
  return CircleMap::transfer(std::move(atlas), 0, std::move(k)).rename("x@" + std::to_string(arc));
}

CircleMap build_rotation_map(std::shared_ptr<const MapAtlas> atlas, int r) {
  const MapAtlas& at = *atlas;
  if (at.periodic()) {
    const int deg = at.fn->degree();
    if (r % deg == 0) throw RotationUnavailableError("rotation must be non-trivial");
    std::vector<long long> k{r};
    return CircleMap::transfer(std::move(atlas), 0, std::move(k)).rename("y^" + std::to_string(r));
  }
  const int n = at.arcs();
  const int rr = ((r % n) + n) % n;
  const auto rots = valid_rotations(at.labels);
  if (rr == 0 || std::find(rots.begin(), rots.end(), rr) == rots.end())
    throw RotationUnavailableError("rotation by " + std::to_string(r) + " arcs does not preserve the labels");
  if (at.rotation_offsets.empty()) throw RotationUnavailableError(at.rotation_error);
  CircleMap y = CircleMap::transfer(atlas, at.group.g, at.rotation_offsets);
  CircleMap out = y;
  for (int i = 1; i < rr / at.group.g; ++i) out = compose_maps(y, out);
  return out.rename("y^" + std::to_string(rr / at.group.g));
}

CircleMap realize(std::shared_ptr<const MapAtlas> atlas, const GroupElement& element) {
  const MapAtlas& at = *atlas;
  const GroupDescriptor& desc = at.group;
  if (static_cast<int>(element.shift.size()) != desc.k || element.rot < 0 || element.rot >= desc.d)
    throw InvalidArgument("element does not belong to the group");
  std::vector<long long> k(at.arcs(), 0);
  for (int i = 0; i < desc.k; ++i) k[desc.type2_indices[i]] = element.shift[i];
  CircleMap x = CircleMap::transfer(atlas, 0, std::move(k));
  CircleMap out = x;
  if (element.rot != 0) {
    if (at.periodic()) {
      out = CircleMap::transfer(atlas, 0, std::vector<long long>{element.rot});
    } else {
      out = compose_maps(x, build_rotation_map(atlas, element.rot * desc.g));
    }
  }
  return out.rename(to_string(element));
}

CircleMap perturbed_rotation(double delta, std::vector<double> singular) {
  return CircleMap::explicit_map(
      "perturbed", [delta](double t) { return t + kPi + delta; }, std::move(singular));
}

CircleMap folded_map(double eps) {
  return CircleMap::explicit_map("folded", [eps](double t) {
    const double c = canonical_angle(t);
    return c * (1.0 - eps * std::sin(c));
  });
}

}  // namespace inner
