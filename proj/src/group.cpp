#include "inner/group.hpp"

#include <numeric>
#include <sstream>

#include "inner/errors.hpp"

namespace inner {

namespace {

bool args_match(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || angular_distance(*a, *b) < kLimitMatchTol;
}

}  // namespace

bool labels_match(const IntervalLabel& a, const IntervalLabel& b) {
  if (a.type != b.type) return false;
  switch (a.type) {
    case IntervalType::Type2: return true;
    case IntervalType::Type1a: return args_match(a.hi_arg, b.hi_arg);
    case IntervalType::Type1b: return args_match(a.lo_arg, b.lo_arg);
    case IntervalType::Type0:
      return a.image_certified && b.image_certified && a.image_count == b.image_count &&
             args_match(a.lo_arg, b.lo_arg) && args_match(a.hi_arg, b.hi_arg);
  }
  return false;
}

IntervalLabelSequence labels_from_report(const SpectrumReport& report) {
  IntervalLabelSequence seq;
  seq.degree = report.degree;
  if (report.singularities.empty()) return seq;
  for (const auto& iv : report.intervals) {
    IntervalLabel l;
    l.type = iv.type;
    if (iv.lo_limit) l.lo_arg = iv.lo_limit->arg;
    if (iv.hi_limit) l.hi_arg = iv.hi_limit->arg;
    l.image_count = static_cast<long long>(iv.type0_image.size());
    l.image_certified = iv.image_certified;
    seq.labels.push_back(l);
  }
  return seq;
}

std::vector<int> valid_rotations(const IntervalLabelSequence& seq) {
  const int n = static_cast<int>(seq.n());
  if (n == 0) throw InvalidArgument("valid_rotations needs at least one arc");
  auto valid = [&](int r) {
    for (int j = 0; j < n; ++j)
      if (!labels_match(seq.labels[(j + r) % n], seq.labels[j])) return false;
    return true;
  };
  // The valid set is a subgroup of Z_n, so it is generated by its least
  // positive element, which divides n.
  for (int g = 1; g <= n; ++g) {
    if (n % g != 0 || !valid(g % n)) continue;
    std::vector<int> out;
    for (int r = 0; r < n; r += g) out.push_back(r);
    return out;
  }
  return {0};
}

namespace {

std::string presentation_text(const GroupDescriptor& d) {
  std::vector<std::string> gens, rels;
  for (int j = 1; j <= d.k; ++j) gens.push_back("x" + std::to_string(j));
  if (d.d > 1) gens.push_back("y");
  if (d.d > 1) rels.push_back("y^" + std::to_string(d.d) + "=e");
  for (int a = 1; a <= d.k; ++a)
    for (int b = a + 1; b <= d.k; ++b)
      rels.push_back("x" + std::to_string(a) + "x" + std::to_string(b) + "=x" + std::to_string(b) + "x" +
                     std::to_string(a));
  if (d.d > 1)
    for (int j = 0; j < d.k; ++j)
      rels.push_back("y·x" + std::to_string(j + 1) + "=x" + std::to_string(d.rotation_action[j] + 1) + "·y");

  std::ostringstream os;
  os << "⟨";
  for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? "," : "") << gens[i];
  if (!rels.empty()) {
    os << " | ";
    for (std::size_t i = 0; i < rels.size(); ++i) os << (i ? ", " : "") << rels[i];
  }
  os << "⟩";
  return os.str();
}

std::string iso_text(int k, int d) {
  const std::string zk = k == 1 ? "Z" : "Z^" + std::to_string(k);
  if (k == 0 && d == 1) return "trivial";
  if (k == 0) return "Z_" + std::to_string(d);
  if (d == 1) return zk;
  return zk + " ⋊ Z_" + std::to_string(d);
}

}  // namespace

GroupDescriptor compute_group(const IntervalLabelSequence& seq) {
  GroupDescriptor desc;
  desc.n = static_cast<int>(seq.n());
  if (desc.n == 0) {
    if (seq.degree < 1) throw InvalidArgument("a constant function has no invariant group");
    desc.k = 0;
    desc.d = seq.degree;
    desc.g = 0;
    desc.presentation = presentation_text(desc);
    desc.iso_label = "Z_" + std::to_string(seq.degree);
    return desc;
  }
  const auto rots = valid_rotations(seq);
  desc.d = static_cast<int>(rots.size());
  desc.g = desc.n / desc.d;
  for (int j = 0; j < desc.n; ++j)
    if (seq.labels[j].type == IntervalType::Type2) desc.type2_indices.push_back(j);
  desc.k = static_cast<int>(desc.type2_indices.size());
  for (int t : desc.type2_indices) {
    const int target = (t + desc.g) % desc.n;
    int idx = -1;
    for (int i = 0; i < desc.k; ++i)
      if (desc.type2_indices[i] == target) idx = i;
    if (idx < 0) throw Error("rotation does not preserve the Type2 arcs");
    desc.rotation_action.push_back(idx);
  }
  desc.presentation = presentation_text(desc);
  desc.iso_label = iso_text(desc.k, desc.d);
  return desc;
}

namespace {

void check(const GroupDescriptor& desc, const GroupElement& a) {
  if (static_cast<int>(a.shift.size()) != desc.k) throw InvalidArgument("shift vector length differs from k");
  if (a.rot < 0 || a.rot >= desc.d) throw InvalidArgument("rotation class out of range");
}

int mod(long long a, int m) { return static_cast<int>(((a % m) + m) % m); }

}  // namespace

GroupElement identity(const GroupDescriptor& desc) { return {std::vector<long long>(desc.k, 0), 0}; }

GroupElement shift_generator(const GroupDescriptor& desc, int j) {
  if (j < 0 || j >= desc.k) throw InvalidArgument("shift generator index out of range");
  GroupElement e = identity(desc);
  e.shift[j] = 1;
  return e;
}

GroupElement rotation_generator(const GroupDescriptor& desc) {
  GroupElement e = identity(desc);
  e.rot = desc.d > 1 ? 1 : 0;
  return e;
}

std::vector<long long> act(const GroupDescriptor& desc, int r, const std::vector<long long>& v) {
  std::vector<long long> cur = v;
  const int steps = mod(r, desc.d);
  for (int s = 0; s < steps; ++s) {
    std::vector<long long> next(cur.size(), 0);
    for (int j = 0; j < desc.k; ++j) next[desc.rotation_action[j]] = cur[j];
    cur.swap(next);
  }
  return cur;
}

GroupElement compose(const GroupDescriptor& desc, const GroupElement& a, const GroupElement& b) {
  check(desc, a);
  check(desc, b);
  GroupElement out;
  out.shift = act(desc, a.rot, b.shift);
  for (int j = 0; j < desc.k; ++j) out.shift[j] += a.shift[j];
  out.rot = mod(a.rot + b.rot, desc.d);
  return out;
}

GroupElement inverse(const GroupDescriptor& desc, const GroupElement& a) {
  check(desc, a);
  GroupElement out;
  out.shift = act(desc, -a.rot, a.shift);
  for (auto& x : out.shift) x = -x;
  out.rot = mod(-a.rot, desc.d);
  return out;
}

GroupElement power(const GroupDescriptor& desc, const GroupElement& a, long long e) {
  GroupElement base = e < 0 ? inverse(desc, a) : a;
  unsigned long long m = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  GroupElement acc = identity(desc);
  while (m) {
    if (m & 1) acc = compose(desc, acc, base);
    base = compose(desc, base, base);
    m >>= 1;
  }
  return acc;
}

std::optional<long long> element_order(const GroupDescriptor& desc, const GroupElement& a) {
  check(desc, a);
  const GroupElement e = identity(desc);
  GroupElement cur = a;
  for (long long m = 1; m <= desc.d; ++m) {
    if (cur == e) return m;
    cur = compose(desc, cur, a);
  }
  return std::nullopt;
}

int rotation_part(const GroupDescriptor& desc, const GroupElement& a) {
  check(desc, a);
  return a.rot;
}

std::string to_string(const GroupElement& a) {
  std::ostringstream os;
  os << "((";
  for (std::size_t i = 0; i < a.shift.size(); ++i) os << (i ? "," : "") << a.shift[i];
  os << ")," << a.rot << ")";
  return os.str();
}

}  // namespace inner
