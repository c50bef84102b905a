#include <doctest.h>

#include <map>
#include <random>

#include "inner/errors.hpp"
#include "inner/group.hpp"

using namespace inner;

namespace {

// Small alphabet of labels with integer codes; equal codes mean matching labels.
// Limits L = 0.3 and M = 1.9 are far apart; the Type0 codes differ in image count.
IntervalLabel label_of(int code) {
  switch (code) {
    case 0: return IntervalLabel::type2();
    case 1: return IntervalLabel::type1a(0.3);
    case 2: return IntervalLabel::type1a(1.9);
    case 3: return IntervalLabel::type1b(0.3);
    case 4: return IntervalLabel::type1b(1.9);
    case 5: return IntervalLabel::type0(0.3, 1.9, 2);
    default: return IntervalLabel::type0(0.3, 1.9, 3);
  }
}
constexpr int kCodes = 7;

IntervalLabelSequence seq_of(const std::vector<int>& codes) {
  IntervalLabelSequence s;
  for (int c : codes) s.labels.push_back(label_of(c));
  return s;
}

std::vector<int> brute_rotations(const std::vector<int>& codes) {
  const int n = static_cast<int>(codes.size());
  std::vector<int> out;
  for (int r = 0; r < n; ++r) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = codes[(j + r) % n] == codes[j];
    if (ok) out.push_back(r);
  }
  return out;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// Oracle for the group law: the element (v, r) acts on Z^k as w ↦ P^r w + v with
// (P w)_{ρ(j)} = w_j. Composition of these affine maps is the group product.
struct Affine {
  std::vector<std::vector<long long>> m;
  std::vector<long long> t;
};

Affine affine_of(const GroupDescriptor& d, const GroupElement& e) {
  const int k = d.k;
  Affine a;
  a.m.assign(k, std::vector<long long>(k, 0));
  std::vector<int> perm(k);
  for (int j = 0; j < k; ++j) perm[j] = j;
  for (int s = 0; s < e.rot; ++s)
    for (int j = 0; j < k; ++j) perm[j] = d.rotation_action[perm[j]];
  for (int j = 0; j < k; ++j) a.m[perm[j]][j] = 1;
  a.t = e.shift;
  return a;
}

Affine then(const Affine& a, const Affine& b) {  // a∘b
  const std::size_t k = a.t.size();
  Affine c;
  c.m.assign(k, std::vector<long long>(k, 0));
  c.t = a.t;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) c.m[i][j] += a.m[i][l] * b.m[l][j];
      c.t[i] += a.m[i][j] * b.t[j];
    }
  return c;
}

bool same(const Affine& a, const Affine& b) { return a.m == b.m && a.t == b.t; }

GroupElement random_element(const GroupDescriptor& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> S(-5, 5);
  std::uniform_int_distribution<int> R(0, d.d - 1);
  GroupElement e;
  for (int j = 0; j < d.k; ++j) e.shift.push_back(S(rng));
  e.rot = R(rng);
  return e;
}

}  // namespace

TEST_CASE("label matching") {
  CHECK(labels_match(IntervalLabel::type2(), IntervalLabel::type2()));
  CHECK(labels_match(IntervalLabel::type1a(1.0), IntervalLabel::type1a(1.0 + 5e-8)));
  CHECK_FALSE(labels_match(IntervalLabel::type1a(1.0), IntervalLabel::type1a(1.0 + 2e-7)));
  CHECK(labels_match(IntervalLabel::type1a(0.0), IntervalLabel::type1a(kTwoPi - 1e-9)));
  CHECK_FALSE(labels_match(IntervalLabel::type1a(1.0), IntervalLabel::type1b(1.0)));
  CHECK_FALSE(labels_match(IntervalLabel::type0(0, 1, 2), IntervalLabel::type0(0, 1, 3)));
  CHECK_FALSE(labels_match(IntervalLabel::type0(0, 1, 2), IntervalLabel::type0(0, 1.5, 2)));
}

TEST_CASE("valid_rotations examples") {
  CHECK(valid_rotations(seq_of({0, 0, 0, 0})) == std::vector<int>{0, 1, 2, 3});
  CHECK(valid_rotations(seq_of({0, 1, 0, 1})) == std::vector<int>{0, 2});
  CHECK(valid_rotations(seq_of({1, 4})) == std::vector<int>{0});
}

TEST_CASE("valid_rotations matches brute force for every sequence up to length 6") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> codes(n, 0);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= kCodes;
    for (long long idx = 0; idx < total; ++idx) {
      long long x = idx;
      for (int i = 0; i < n; ++i) {
        codes[i] = static_cast<int>(x % kCodes);
        x /= kCodes;
      }
      const auto seq = seq_of(codes);
      const auto got = valid_rotations(seq);
      REQUIRE(got == brute_rotations(codes));
      const auto g = compute_group(seq);
      REQUIRE(n % g.d == 0);
      if (is_prime(n)) REQUIRE((g.d == 1 || g.d == n));
    }
  }
}

TEST_CASE("valid rotations form a subgroup for random sequences up to length 12") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 12;
    std::uniform_int_distribution<int> C(0, trial % 3 == 0 ? 1 : kCodes - 1);
    std::vector<int> codes(n);
    // Periodic sequences exercise the non-trivial subgroups.
    const int period = 1 + static_cast<int>(rng() % n);
    for (int j = 0; j < period; ++j) codes[j] = C(rng);
    for (int j = period; j < n; ++j) codes[j] = codes[j % period];
    const auto got = valid_rotations(seq_of(codes));
    REQUIRE(got == brute_rotations(codes));
    REQUIRE(got.front() == 0);
    for (int a : got)
      for (int b : got) CHECK(std::find(got.begin(), got.end(), (a + b) % n) != got.end());
  }
}

TEST_CASE("rotations preserve the Type2 index set; k = 3 with d = 2 on n = 4 cannot occur") {
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> codes;
    for (int j = 0; j < 4; ++j) codes.push_back(mask >> j & 1 ? 0 : 5);
    const auto g = compute_group(seq_of(codes));
    if (g.k == 3) CHECK(g.d == 1);
    for (int j = 0; j < g.k; ++j) {
      const int moved = (g.type2_indices[j] + g.g) % 4;
      CHECK(g.type2_indices[g.rotation_action[j]] == moved);
    }
  }
}

TEST_CASE("compute_group examples") {
  IntervalLabelSequence z5;
  z5.degree = 5;
  auto g = compute_group(z5);
  CHECK(g.n == 0);
  CHECK(g.k == 0);
  CHECK(g.d == 5);
  CHECK(g.iso_label == "Z_5");
  CHECK(g.presentation == "⟨y | y^5=e⟩");

  g = compute_group(seq_of({0}));
  CHECK(g.k == 1);
  CHECK(g.d == 1);
  CHECK(g.iso_label == "Z");

  g = compute_group(seq_of({0, 0}));
  CHECK(g.k == 2);
  CHECK(g.d == 2);
  CHECK(g.g == 1);
  CHECK(g.iso_label == "Z^2 ⋊ Z_2");
  CHECK(g.presentation.rfind("⟨x1,x2,y | y^2=e, x1x2=x2x1, y·x1=x2·y", 0) == 0);
  CHECK(g.rotation_action == std::vector<int>{1, 0});

  CHECK(compute_group(seq_of({1, 1})).iso_label == "Z_2");
  CHECK(compute_group(seq_of({1, 2})).iso_label == "trivial");
  CHECK(compute_group(seq_of({0, 5})).iso_label == "Z");
  CHECK(compute_group(seq_of({0, 5, 0, 5})).iso_label == "Z^2 ⋊ Z_2");
  CHECK(compute_group(seq_of({0, 0, 5})).iso_label == "Z^2");
  CHECK_THROWS_AS(compute_group(IntervalLabelSequence{}), InvalidArgument);
}

TEST_CASE("compose examples in Z^2 ⋊ Z_2") {
  const auto d = compute_group(seq_of({0, 0}));
  const auto y = rotation_generator(d);
  const auto x1 = shift_generator(d, 0);
  const auto x2 = shift_generator(d, 1);
  CHECK(compose(d, identity(d), y) == y);
  CHECK(compose(d, y, x1) == GroupElement{{0, 1}, 1});
  CHECK(compose(d, y, x1) == compose(d, x2, y));
  CHECK(compose(d, y, y) == identity(d));
  CHECK_THROWS_AS(compose(d, GroupElement{{1}, 0}, y), InvalidArgument);
}

TEST_CASE("inverse, order and rotation part") {
  const auto z = compute_group(seq_of({0}));
  CHECK(inverse(z, GroupElement{{3}, 0}) == GroupElement{{-3}, 0});
  CHECK(inverse(z, identity(z)) == identity(z));

  const auto d = compute_group(seq_of({0, 0}));
  const GroupElement e1y{{1, 0}, 1};
  CHECK(inverse(d, e1y) == GroupElement{{0, -1}, 1});
  CHECK(compose(d, e1y, inverse(d, e1y)) == identity(d));
  CHECK(element_order(d, rotation_generator(d)) == 2);
  CHECK_FALSE(element_order(d, shift_generator(d, 0)).has_value());
  CHECK(element_order(d, GroupElement{{1, -1}, 1}) == 2);
  CHECK(element_order(d, identity(d)) == 1);
  CHECK(rotation_part(d, identity(d)) == 0);
  CHECK(rotation_part(d, rotation_generator(d)) == 1);
  CHECK(rotation_part(d, compose(d, rotation_generator(d), rotation_generator(d))) == 0);
  CHECK(power(d, shift_generator(d, 1), -3) == GroupElement{{0, -3}, 0});
}

TEST_CASE("group law agrees with the affine representation and satisfies the axioms") {
  std::mt19937_64 rng(9);
  for (const auto& codes : std::vector<std::vector<int>>{{0}, {0, 0}, {0, 0, 0, 0}, {0, 5, 0, 5}, {0, 0, 0, 0, 0, 0},
                                                         {0, 0, 5, 0, 0, 5}, {1, 1, 1}}) {
    const auto d = compute_group(seq_of(codes));
    for (int i = 0; i < 1000; ++i) {
      const auto a = random_element(d, rng), b = random_element(d, rng), c = random_element(d, rng);
      const auto ab = compose(d, a, b);
      REQUIRE(same(affine_of(d, ab), then(affine_of(d, a), affine_of(d, b))));
      REQUIRE(compose(d, ab, c) == compose(d, a, compose(d, b, c)));
      REQUIRE(compose(d, a, identity(d)) == a);
      REQUIRE(compose(d, identity(d), a) == a);
      REQUIRE(compose(d, a, inverse(d, a)) == identity(d));
      REQUIRE(compose(d, inverse(d, a), a) == identity(d));
      REQUIRE(rotation_part(d, ab) == (rotation_part(d, a) + rotation_part(d, b)) % d.d);
    }
    if (d.d > 1) {
      const auto y = rotation_generator(d);
      CHECK(power(d, y, d.d) == identity(d));
      for (int j = 0; j < d.k; ++j)
        CHECK(compose(d, y, shift_generator(d, j)) == compose(d, shift_generator(d, d.rotation_action[j]), y));
    }
  }
}

TEST_CASE("element order by brute force") {
  std::mt19937_64 rng(2);
  const auto d = compute_group(seq_of({0, 0, 0, 0}));
  for (int i = 0; i < 300; ++i) {
    const auto a = random_element(d, rng);
    std::optional<long long> brute;
    GroupElement p = a;
    for (long long m = 1; m <= 8; ++m) {
      if (p == identity(d)) {
        brute = m;
        break;
      }
      p = compose(d, a, p);
    }
    CHECK(element_order(d, a) == brute);
  }
}

TEST_CASE("element text") {
  CHECK(to_string(GroupElement{{1, -2}, 1}) == "((1,-2),1)");
}
