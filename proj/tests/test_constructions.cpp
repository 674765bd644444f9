#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fqdist/constructions.hpp"
#include "fqdist/distance.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/random.hpp"

using namespace fqdist;

namespace {

std::vector<std::uint32_t> indices(const PointSet& s) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s[i][0].index);
  return out;
}

PointSet subset_of_field(std::uint32_t mask, std::uint32_t q) {
  std::vector<Vector> pts;
  for (std::uint32_t x = 0; x < q; ++x)
    if (mask & (1u << x)) pts.push_back({Elem{x}});
  return PointSet(1, pts);
}

}  // namespace

TEST_CASE("C_delta examples") {
  CHECK(c_delta_size(5, 0.5) == 3);
  CHECK(c_delta_size(7, 0.9) == 2);
  CHECK(c_delta_size(9, 0.5) == 3);  // exact square root, no rounding up
  const Field f5 = Field::make(5, 1);
  CHECK(indices(make_C_delta(f5, 0.5)) == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(difference_set(f5, make_C_delta(f5, 0.5)).size() == 5);
  CHECK_THROWS_AS(c_delta_size(5, 0.0), ConfigError);
  CHECK_THROWS_AS(c_delta_size(5, 1.0), ConfigError);
}

TEST_CASE("Omega_delta sizes") {
  const Field f9 = Field::make(3, 2);
  CHECK(make_Omega_delta(f9, 0.5).size() == 4);
  CHECK(difference_set(f9, make_Omega_delta(f9, 0.5)).size() == 9);
  const Field f25 = Field::make(5, 2);
  CHECK(make_Omega_delta(f25, 0.5).size() == 9);
  CHECK(difference_set(f25, make_Omega_delta(f25, 0.5)).size() == 25);
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
    const Field f = Field::make(p, ell);
    for (double d : {0.2, 0.3, 0.5, 0.7, 0.9}) {
      const std::size_t c = c_delta_size(p, d);
      const auto omega = make_Omega_delta(f, d);
      CHECK(omega.size() == static_cast<std::size_t>(std::pow(c, ell)));
      // C - C wraps around once 2|C| - 1 exceeds p.
      const std::size_t diff = std::min<std::size_t>(2 * c - 1, p);
      CHECK(difference_set(f, omega).size() == static_cast<std::size_t>(std::pow(diff, ell)));
    }
  }
}

TEST_CASE("H and Lambda") {
  const Field f5 = Field::make(5, 1), f3 = Field::make(3, 1);
  CHECK(make_H(f5, 3).size() == 5);
  CHECK(make_H(f3, 5).size() == 9);
  const auto h = make_H(f3, 5);
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(h[i][0] == h[i][1]);
    CHECK(h[i][2] == h[i][3]);
  }
  CHECK(make_Lambda(f5, 4).size() == 5);
  CHECK(make_Lambda(f5, 2).size() == 1);
  CHECK(make_Lambda(f5, 2).dim() == 0);
  CHECK(make_Lambda(f3, 6).size() == 9);
  CHECK_THROWS_AS(make_H(f5, 4), ConfigError);
  CHECK_THROWS_AS(make_Lambda(f5, 3), ConfigError);
}

TEST_CASE("counterexample examples") {
  const Field f5 = Field::make(5, 1);
  const auto r = counterexample(f5, 3, 0.5);
  CHECK(r.parity == Parity::odd);
  CHECK(r.A.size() == 15);
  CHECK(delta(f5, r.A, r.A, r.Q).size() == 3);
  CHECK(r.predicted.size() == 3);

  const Field f9 = Field::make(3, 2);
  const auto r9 = counterexample(f9, 3, 0.5);
  CHECK(r9.A.size() == 36);
  CHECK(delta(f9, r9.A, r9.A, r9.Q) == r9.predicted);

  const auto e = counterexample(f5, 2, 0.5);
  CHECK(e.parity == Parity::even);
  CHECK(e.A.size() == 3);
  CHECK(delta(f5, e.A, e.A, e.Q) == e.predicted);
  CHECK_THROWS_AS(counterexample(f5, 1, 0.5), ConfigError);
}

TEST_CASE("counterexample identity holds exactly") {
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const Field f = Field::make(p, ell);
    for (std::size_t d : {2, 3, 4, 5}) {
      for (double dl : {0.3, 0.5, 0.7}) {
        const auto r = counterexample(f, d, dl);
        REQUIRE(r.A.size() == r.base_size * r.omega_size);
        REQUIRE(delta(f, r.A, r.A, r.Q) == r.predicted);
      }
    }
  }
}

TEST_CASE("slice_extract") {
  const Field f5 = Field::make(5, 1);
  const auto all = full_space(f5, 2);
  const auto s = slice_extract(f5, all);
  CHECK(s.level == Elem{0});
  CHECK(s.points.size() == 5);
  const PointSet one(2, {{Elem{1}, Elem{3}}});
  CHECK(slice_extract(f5, one).level == Elem{3});
  CHECK_THROWS_AS(slice_extract(f5, PointSet(2)), ConfigError);

  Rng rng(47);
  for (int i = 0; i < 50; ++i) {
    const PointSet a = random_subset(f5, 2 + rng.below(2), 1 + rng.below(25), rng);
    const auto sl = slice_extract(f5, a);
    REQUIRE(sl.points.size() * f5.q() >= a.size());
    const CoordinatePlane plane(std::vector<std::size_t>{0}, 2);
    for (std::size_t j = 0; j < sl.points.size(); ++j) {
      REQUIRE(a.contains(sl.points[j]));
      const auto moved = sl.witness.apply(f5, sl.points[j]);
      REQUIRE(moved.back() == f5.zero());
    }
  }
}

TEST_CASE("box_reduction examples") {
  const Field f7 = Field::make(7, 1);
  const auto r = box_reduction(f7, subset_of_field(0b1111, 7));
  CHECK(indices(r.E1) == std::vector<std::uint32_t>{0, 2});
  CHECK(indices(r.E2) == std::vector<std::uint32_t>{1, 3});
  CHECK(r.A.size() == 4);
  CHECK(r.B.size() == 4);
  const auto r3 = box_reduction(f7, subset_of_field(0b111, 7));
  CHECK(r3.E1.size() == 2);
  CHECK(r3.E2.size() == 1);
  CHECK_THROWS_AS(box_reduction(f7, subset_of_field(0b1, 7)), ConfigError);
  // ||x - y|| + ||x - z|| = ||(x, x) - (y, z)||
  const Vector xx{Elem{2}, Elem{2}}, yz{Elem{0}, Elem{1}};
  CHECK(norm_diff(f7, xx, yz) == Elem{5});
}

TEST_CASE("box reduction: split rules, sizes and inclusion for all E in F_7") {
  const Field f7 = Field::make(7, 1);
  int tested = 0;
  for (std::uint32_t mask = 0; mask < 128; ++mask) {
    const int n = __builtin_popcount(mask);
    if (n < 2 || n > 5) continue;
    const PointSet e = subset_of_field(mask, 7);
    const auto r = box_reduction(f7, e);
    REQUIRE(split_is_valid(r));
    const double es = static_cast<double>(e.size());
    REQUIRE(static_cast<double>(r.A.size()) * r.B.size() >= es * es * (es - 1) / 4.0);
    REQUIRE(box_set(f7, e).includes(delta(f7, r.A, r.B)));
    ++tested;
  }
  CHECK(tested == 21 + 35 + 35 + 21);
}
