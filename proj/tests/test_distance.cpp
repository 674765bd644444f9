#include <doctest.h>

#include "fqdist/distance.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/random.hpp"
#include "oracle.hpp"

using namespace fqdist;

namespace {

Vector vec(std::initializer_list<std::uint32_t> xs) {
  Vector v;
  for (auto x : xs) v.push_back(Elem{x});
  return v;
}

std::vector<std::uint32_t> indices(const DistanceSet& d) {
  std::vector<std::uint32_t> out;
  for (auto e : d.values()) out.push_back(e.index);
  return out;
}

PointSet line(std::initializer_list<std::uint32_t> xs) {
  std::vector<Vector> pts;
  for (auto x : xs) pts.push_back(vec({x}));
  return PointSet(1, pts);
}

}  // namespace

TEST_CASE("delta examples") {
  const Field f5 = Field::make(5, 1);
  const PointSet single(2, {vec({3, 1})});
  CHECK(indices(delta(f5, single, single)) == std::vector<std::uint32_t>{0});
  CHECK(indices(delta(f5, line({0, 1, 2, 3, 4}), line({0}))) == std::vector<std::uint32_t>{0, 1, 4});

  CHECK_THROWS_AS(delta(f5, single, line({0})), ConfigError);
  CHECK_THROWS_AS(delta(f5, PointSet(2), single), ConfigError);
}

TEST_CASE("delta under the canonical odd form") {
  const Field f5 = Field::make(5, 1);
  std::vector<Vector> pts;
  for (std::uint32_t t = 0; t < 5; ++t)
    for (std::uint32_t w = 0; w < 3; ++w) pts.push_back(vec({t, t, w}));
  const PointSet a(3, pts);
  CHECK(a.size() == 15);
  const auto Q = QuadraticForm::canonical(f5, 3, f5.neg(f5.one()));
  CHECK(indices(delta(f5, a, a, Q)) == std::vector<std::uint32_t>{0, 1, 4});
}

TEST_CASE("delta matches a naive scan") {
  const Field f = Field::make(3, 2);
  const oracle::NaiveField o(3, 2, f.modulus());
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const PointSet a = random_subset(f, 2, 1 + rng.below(12), rng);
    const PointSet b = random_subset(f, 2, 1 + rng.below(12), rng);
    std::vector<bool> seen(f.q(), false);
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = 0; y < b.size(); ++y) {
        std::uint32_t n = 0;
        for (std::size_t j = 0; j < 2; ++j) {
          const auto diff = o.sub(a[x][j].index, b[y][j].index);
          n = o.add(n, o.mul(diff, diff));
        }
        seen[n] = true;
      }
    }
    std::vector<std::uint32_t> expected;
    for (std::uint32_t t = 0; t < f.q(); ++t)
      if (seen[t]) expected.push_back(t);
    REQUIRE(indices(delta(f, a, b)) == expected);
  }
}

TEST_CASE("delta is symmetric, isometry invariant and contains 0 for A = B") {
  for (auto [p, ell, d] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::size_t>>{
           {5, 1, 2}, {7, 1, 3}, {3, 2, 2}, {13, 1, 2}}) {
    const Field f = Field::make(p, ell);
    Rng rng(43 + p * d);
    for (int i = 0; i < 25; ++i) {
      const PointSet a = random_subset(f, d, 1 + rng.below(20), rng);
      const PointSet b = random_subset(f, d, 1 + rng.below(20), rng);
      REQUIRE(delta(f, a, b) == delta(f, b, a));
      const AffineMap g = random_rigid_motion(f, d, rng);
      REQUIRE(delta(f, apply_map(f, g, a), apply_map(f, g, b)) == delta(f, a, b));
      REQUIRE(delta(f, a).contains(f.zero()));
    }
  }
}

TEST_CASE("box_set examples") {
  const Field f5 = Field::make(5, 1);
  CHECK(indices(box_set(f5, line({0, 1}))) == std::vector<std::uint32_t>{1});
  // (x, y, z) = (0, 0, 2) gives 0 + 4 = 4, so 4 is attained as well.
  CHECK(indices(box_set(f5, line({0, 1, 2}))) == std::vector<std::uint32_t>{0, 1, 2, 4});
  CHECK_THROWS_AS(box_set(f5, line({3})), ConfigError);
}

TEST_CASE("delta_size_check") {
  const Field f = Field::make(5, 1);
  const PointSet all = full_space(f, 2);
  const auto full = delta_size_check(f, all, all, 2.5);
  CHECK(full.holds);
  CHECK(full.margin == doctest::Approx(2.5));
  const PointSet single(2, {vec({1, 1})});
  const auto s = delta_size_check(f, single, single, 2.0);
  CHECK_FALSE(s.holds);
  CHECK(s.margin == doctest::Approx(-1.0));
}

TEST_CASE("threshold helpers") {
  CHECK(half_q_threshold(3) == 2);
  CHECK(half_q_threshold(25) == 13);
  CHECK(shparlinski_bound(5, 25, 25, 2) == doctest::Approx(2.5));
  CHECK(shparlinski_bound(5, 5, 5, 2) == doctest::Approx(0.5));
  CHECK(coordinatable_bound(5, 10, 5, 2) == doctest::Approx(2.5));
  CHECK(coordinatable_bound(5, 5, 5, 2) == doctest::Approx(1.25));
}

TEST_CASE("DistanceSet merge and includes") {
  DistanceSet a(5, "a"), b(5, "b");
  a.insert(Elem{1});
  b.insert(Elem{1});
  b.insert(Elem{3});
  CHECK(b.includes(a));
  CHECK_FALSE(a.includes(b));
  a.merge(b);
  CHECK(a == b);
  CHECK(a.size() == 2);
}
