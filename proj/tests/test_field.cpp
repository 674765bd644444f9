#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fqdist/errors.hpp"
#include "fqdist/field.hpp"
#include "fqdist/random.hpp"
#include "oracle.hpp"

using namespace fqdist;

namespace {

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kFields = {
    {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}};

oracle::NaiveField naive(const Field& f) { return {f.p(), f.ell(), f.modulus()}; }

}  // namespace

TEST_CASE("field_make picks the smallest irreducible modulus") {
  CHECK(Field::make(5, 1).modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(Field::make(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(Field::make(5, 2).modulus() == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(Field::make(5, 2).q() == 25);

  // Every candidate below the chosen one (by encoding order) is reducible.
  for (auto [p, ell] : kFields) {
    if (ell == 1) continue;
    const Field f = Field::make(p, ell);
    const auto& m = f.modulus();
    CHECK_FALSE(oracle::reducible(p, m));
    std::uint64_t code = 0, place = 1;
    for (std::uint32_t i = 0; i < ell; ++i, place *= p) code += m[i] * place;
    for (std::uint64_t c = 0; c < code; ++c) {
      std::vector<std::uint32_t> cand(ell + 1, 0);
      cand[ell] = 1;
      std::uint64_t v = c;
      for (std::uint32_t i = 0; i < ell; ++i, v /= p) cand[i] = v % p;
      CHECK(oracle::reducible(p, cand));
    }
  }
}

TEST_CASE("field_make rejects bad parameters") {
  CHECK_THROWS_AS(Field::make(2, 1), ConfigError);
  CHECK_THROWS_AS(Field::make(9, 1), ConfigError);
  CHECK_THROWS_AS(Field::make(15, 1), ConfigError);
  CHECK_THROWS_AS(Field::make(3, 0), ConfigError);
  CHECK_THROWS_AS(Field::make(3, 13), ConfigError);  // 3^13 > 10^6
  FieldOptions reducible;
  reducible.modulus = {1, 0, 1};  // x^2 + 1 has the root 2 in F_5
  CHECK_THROWS_AS(Field::make(5, 2, reducible), ConfigError);
}

TEST_CASE("field_arith examples") {
  const Field f5 = Field::make(5, 1);
  CHECK(f5.mul(Elem{3}, Elem{4}) == Elem{2});
  const Field f9 = Field::make(3, 2);
  const Elem xi{3};  // coefficients (0, 1)
  CHECK(f9.mul(xi, xi) == Elem{2});
  const Field f7 = Field::make(7, 1);
  CHECK(f7.inv(Elem{3}) == Elem{5});
  CHECK(f7.arith(Elem{3}, Elem{0}, ArithOp::inv) == Elem{5});
  CHECK_THROWS_AS(f7.inv(Elem{0}), DomainError);
  CHECK_THROWS_AS(f7.div(Elem{1}, Elem{0}), DomainError);
}

TEST_CASE("table arithmetic matches schoolbook polynomial arithmetic") {
  for (auto [p, ell] : kFields) {
    const Field f = Field::make(p, ell);
    const auto o = naive(f);
    for (std::uint32_t a = 0; a < f.q(); ++a) {
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        REQUIRE(f.add(Elem{a}, Elem{b}).index == o.add(a, b));
        REQUIRE(f.mul(Elem{a}, Elem{b}).index == o.mul(a, b));
      }
      if (a != 0) REQUIRE(o.mul(a, f.inv(Elem{a}).index) == 1);
    }
  }
}

TEST_CASE("large fields use the log/exp path consistently") {
  const Field f = Field::make(3, 7);  // q = 2187, above the dense-table cutoff
  const auto o = naive(f);
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto a = static_cast<std::uint32_t>(rng.below(f.q()));
    const auto b = static_cast<std::uint32_t>(rng.below(f.q()));
    REQUIRE(f.mul(Elem{a}, Elem{b}).index == o.mul(a, b));
    REQUIRE(f.add(Elem{a}, Elem{b}).index == o.add(a, b));
  }
}

TEST_CASE("field axioms and Frobenius on random elements") {
  for (auto [p, ell] : kFields) {
    const Field f = Field::make(p, ell);
    Rng rng(1000 + f.q());
    auto draw = [&] { return Elem{static_cast<std::uint32_t>(rng.below(f.q()))}; };
    for (int i = 0; i < 1000; ++i) {
      const Elem a = draw(), b = draw(), c = draw();
      REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      REQUIRE(f.add(a, b) == f.add(b, a));
      REQUIRE(f.mul(a, b) == f.mul(b, a));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.add(a, f.neg(a)) == f.zero());
      if (a.index != 0) REQUIRE(f.mul(a, f.inv(a)) == f.one());
    }
    for (int i = 0; i < 200; ++i) {
      const Elem a = draw(), b = draw();
      REQUIRE(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
    }
  }
}

TEST_CASE("eta examples and tables") {
  CHECK(Field::make(5, 1).eta(Elem{4}) == 1);
  CHECK(Field::make(5, 1).eta(Elem{2}) == -1);
  CHECK(Field::make(7, 1).eta(Elem{2}) == 1);
  for (auto [p, ell] : kFields) {
    const Field f = Field::make(p, ell);
    const auto o = naive(f);
    int plus = 0, minus = 0;
    for (std::uint32_t t = 0; t < f.q(); ++t) {
      REQUIRE(f.eta(Elem{t}) == o.eta(t));
      if (f.eta(Elem{t}) == 1) {
        ++plus;
        const auto r = f.sqrt(Elem{t});
        REQUIRE(r.has_value());
        REQUIRE(f.square(*r) == Elem{t});
        // smaller-index root
        REQUIRE(r->index <= f.neg(*r).index);
      } else if (t != 0) {
        ++minus;
        REQUIRE_FALSE(f.sqrt(Elem{t}).has_value());
      }
    }
    CHECK(f.eta(f.zero()) == 0);
    CHECK(plus == static_cast<int>(f.q() - 1) / 2);
    CHECK(minus == static_cast<int>(f.q() - 1) / 2);
  }
}

TEST_CASE("eta is multiplicative, exhaustively for q <= 49") {
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}, {7, 2}}) {
    const Field f = Field::make(p, ell);
    for (std::uint32_t a = 1; a < f.q(); ++a)
      for (std::uint32_t b = 1; b < f.q(); ++b)
        REQUIRE(f.eta(f.mul(Elem{a}, Elem{b})) == f.eta(Elem{a}) * f.eta(Elem{b}));
  }
}

TEST_CASE("trace examples and linearity") {
  const Field f5 = Field::make(5, 1);
  CHECK(f5.trace(Elem{3}) == Elem{3});
  const Field f9 = Field::make(3, 2);
  CHECK(f9.trace(Elem{3}) == Elem{0});  // Tr(xi) = xi + xi^3 = 0
  CHECK(f9.trace(Elem{1}) == Elem{2});
  for (auto [p, ell] : kFields) {
    const Field f = Field::make(p, ell);
    const auto o = naive(f);
    for (std::uint32_t a = 0; a < f.q(); ++a) {
      REQUIRE(f.trace(Elem{a}).index == o.trace(a));
      REQUIRE(f.trace(Elem{a}).index < p);
    }
  }
}

TEST_CASE("chi examples") {
  const Field f5 = Field::make(5, 1);
  CHECK(std::abs(f5.chi(Elem{0}) - CharacterValue(1.0, 0.0)) < 1e-12);
  CHECK(f5.chi(Elem{1}).real() == doctest::Approx(0.309017).epsilon(1e-6));
  CHECK(f5.chi(Elem{1}).imag() == doctest::Approx(0.951057).epsilon(1e-6));
  const Field f9 = Field::make(3, 2);
  CHECK(std::abs(f9.chi(Elem{3}) - CharacterValue(1.0, 0.0)) < 1e-12);
}

TEST_CASE("chi is a character and satisfies orthogonality, exhaustively for q <= 49") {
  for (auto [p, ell] : kFields) {
    const Field f = Field::make(p, ell);
    const auto o = naive(f);
    const double tol = sum_tolerance(f.q());
    for (std::uint32_t a = 0; a < f.q(); ++a) {
      REQUIRE(std::abs(std::abs(f.chi(Elem{a})) - 1.0) < 1e-12);
      REQUIRE(std::abs(f.chi(Elem{a}) - o.chi(a)) < 1e-12);
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        REQUIRE(std::abs(f.chi(Elem{a}) * f.chi(Elem{b}) - f.chi(f.add(Elem{a}, Elem{b}))) < 1e-12);
      }
    }
    for (std::uint32_t c = 0; c < f.q(); ++c) {
      CharacterValue s{0.0, 0.0};
      for (std::uint32_t t = 0; t < f.q(); ++t) s += f.chi(f.mul(Elem{c}, Elem{t}));
      if (c == 0) {
        CHECK(std::abs(s - CharacterValue(f.q(), 0.0)) < tol);
      } else {
        REQUIRE(std::abs(s) < tol);
      }
    }
  }
}

TEST_CASE("gauss_sum examples") {
  const Field f5 = Field::make(5, 1);
  const auto g = f5.gauss_sum(Elem{1});
  CHECK(g.real() == doctest::Approx(2.2360680).epsilon(1e-7));
  CHECK(std::abs(g.imag()) < 1e-9);
  CHECK(std::abs(f5.gauss_sum(Elem{2}) + std::sqrt(5.0)) < 1e-9);
  const Field f7 = Field::make(7, 1);
  const auto g7 = f7.gauss_sum(Elem{1});
  CHECK(std::abs(g7 * g7 - CharacterValue(-7.0, 0.0)) < 1e-9);
  CHECK_THROWS_AS(f7.gauss_sum(Elem{0}), DomainError);
}

TEST_CASE("Gauss sum identities in every configured field") {
  for (auto [p, ell] : kFields) {
    const Field f = Field::make(p, ell);
    const auto o = naive(f);
    const double tol = sum_tolerance(f.q());
    const CharacterValue g1 = f.gauss_sum(f.one());
    // Independent evaluation of G_1 from the oracle.
    CharacterValue g1_oracle{0.0, 0.0};
    for (std::uint32_t s = 1; s < f.q(); ++s) g1_oracle += static_cast<double>(o.eta(s)) * o.chi(s);
    CHECK(std::abs(g1 - g1_oracle) < tol);
    const double eta_m1 = f.eta(f.neg(f.one()));
    CHECK(std::abs(g1 * g1 - CharacterValue(eta_m1 * f.q(), 0.0)) < tol);
    for (std::uint32_t a = 1; a < f.q(); ++a) {
      const auto ga = f.gauss_sum(Elem{a});
      REQUIRE(std::abs(std::norm(ga) - f.q()) < tol);
      REQUIRE(std::abs(ga - static_cast<double>(f.eta(Elem{a})) * g1) < tol);
    }
  }
}

TEST_CASE("complete_square_sum examples") {
  const Field f5 = Field::make(5, 1);
  CHECK(std::abs(f5.complete_square_sum(Elem{1}, Elem{0}) - std::sqrt(5.0)) < 1e-9);
  // a=2, b=1: -chi(3) sqrt(5)
  const auto v = f5.complete_square_sum(Elem{2}, Elem{1});
  CHECK(std::abs(v + f5.chi(Elem{3}) * std::sqrt(5.0)) < 1e-9);
  const Field f7 = Field::make(7, 1);
  const auto w = f7.complete_square(Elem{1}, Elem{2});
  CHECK(std::abs(w.closed_form - f7.chi(Elem{6}) * f7.gauss_sum(Elem{1})) < 1e-9);
  CHECK(std::abs(w.direct - w.closed_form) < 1e-9);
  CHECK_THROWS_AS(f7.complete_square_sum(Elem{0}, Elem{1}), DomainError);
}

TEST_CASE("complete-square closed form matches direct sums for q <= 25") {
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}}) {
    const Field f = Field::make(p, ell);
    const auto o = naive(f);
    for (std::uint32_t a = 1; a < f.q(); ++a) {
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        CharacterValue direct{0.0, 0.0};
        for (std::uint32_t s = 0; s < f.q(); ++s) direct += o.chi(o.add(o.mul(a, o.mul(s, s)), o.mul(b, s)));
        REQUIRE(std::abs(f.complete_square_sum(Elem{a}, Elem{b}) - direct) < sum_tolerance(f.q()));
      }
    }
  }
}

TEST_CASE("results do not depend on the additive character (chi(2t))") {
  FieldOptions opts;
  opts.character_scale = 2;
  for (auto [p, ell] : kFields) {
    const Field f = Field::make(p, ell, opts);
    const double tol = sum_tolerance(f.q());
    const auto g1 = f.gauss_sum(f.one());
    CHECK(std::abs(g1 * g1 - CharacterValue(f.eta(f.neg(f.one())) * 1.0 * f.q(), 0.0)) < tol);
    for (std::uint32_t a = 1; a < f.q(); ++a) {
      for (std::uint32_t b = 0; b < f.q(); b += 3) {
        const auto r = f.complete_square(Elem{a}, Elem{b});
        REQUIRE(std::abs(r.direct - r.closed_form) < tol);
      }
    }
  }
}

TEST_CASE("field descriptor round trip") {
  const Field f = Field::make(5, 2);
  const auto j = f.descriptor();
  CHECK(j.dump() == R"({"ell":2,"modulus":[2,0,1],"p":5})");
  const Field g = Field::from_descriptor(j);
  CHECK(g.q() == 25);
  CHECK(g.modulus() == f.modulus());
  CHECK_THROWS_AS(Field::from_descriptor(nlohmann::json{{"p", 5}}), ConfigError);
}

TEST_CASE("prime power factoring") {
  CHECK(prime_power(25) == std::make_pair(5u, 2u));
  CHECK(prime_power(7) == std::make_pair(7u, 1u));
  CHECK_FALSE(prime_power(12).has_value());
}
