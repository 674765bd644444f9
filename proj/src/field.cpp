#include "fqdist/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"

namespace fqdist {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, entries in [0, p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  trim(a);
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = lead * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool poly_is_irreducible(const Poly& m, std::uint32_t p) {
  const std::size_t deg = m.size() - 1;
  if (deg <= 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t e = 1; e <= deg / 2; ++e) {
    const std::uint64_t count = checked_pow(p, static_cast<unsigned>(e));
    Poly f(e + 1, 0);
    f[e] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < e; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_rem(m, f, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t ell = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++ell;
  }
  if (r != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), ell);
}

Field Field::make(std::uint32_t p, std::uint32_t ell, const FieldOptions& opts) {
  if (p == 2 || !is_prime(p)) {
    throw ConfigError("characteristic must be an odd prime, got " + std::to_string(p));
  }
  if (ell == 0) throw ConfigError("extension degree must be at least 1");
  const std::uint64_t q = checked_pow(p, ell);
  if (q > kMaxFieldOrder) {
    throw ConfigError("field order " + std::to_string(p) + "^" + std::to_string(ell) +
                      " exceeds the ceiling " + std::to_string(kMaxFieldOrder));
  }

  Field f;
  f.p_ = p;
  f.ell_ = ell;
  f.q_ = static_cast<std::uint32_t>(q);

  if (!opts.modulus.empty()) {
    const Poly& m = opts.modulus;
    if (m.size() != ell + 1 || m.back() != 1) {
      throw ConfigError("modulus must be monic of degree " + std::to_string(ell));
    }
    for (auto c : m) {
      if (c >= p) throw ConfigError("modulus coefficient out of range");
    }
    if (!poly_is_irreducible(m, p)) throw ConfigError("modulus is reducible over F_p");
    f.modulus_ = m;
  } else {
    // Smallest by encoding sum c_i p^i of the low coefficients.
    Poly m(ell + 1, 0);
    m[ell] = 1;
    const std::uint64_t count = checked_pow(p, ell);
    bool found = false;
    for (std::uint64_t code = 0; code < count && !found; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < ell; ++i) {
        m[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      found = poly_is_irreducible(m, p);
    }
    // An irreducible of every degree exists over F_p.
    f.modulus_ = m;
  }

  if (opts.character_scale == 0 || opts.character_scale >= q) {
    throw ConfigError("character scale must be a nonzero element index");
  }
  f.char_scale_ = Elem{opts.character_scale};
  f.build_tables();
  return f;
}

Elem Field::add_digits(Elem a, Elem b) const {
  std::uint32_t x = a.index, y = b.index, out = 0, place = 1;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    out += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return Elem{out};
}

void Field::build_tables() {
  const std::uint32_t q = q_;
  const std::uint32_t p = p_;

  auto to_poly = [&](std::uint32_t idx) {
    Poly a(ell_, 0);
    for (std::uint32_t i = 0; i < ell_; ++i) {
      a[i] = idx % p;
      idx /= p;
    }
    return a;
  };
  auto from_poly = [&](const Poly& a) {
    std::uint32_t idx = 0, place = 1;
    for (std::uint32_t i = 0; i < ell_; ++i) {
      if (i < a.size()) idx += a[i] * place;
      place *= p;
    }
    return idx;
  };
  auto slow_mul = [&](std::uint32_t x, std::uint32_t y) {
    const Poly a = to_poly(x), b = to_poly(y);
    Poly prod(2 * ell_ - 1, 0);
    for (std::uint32_t i = 0; i < ell_; ++i) {
      for (std::uint32_t j = 0; j < ell_; ++j) {
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
      }
    }
    return from_poly(poly_rem(prod, modulus_, p));
  };
  auto slow_pow = [&](std::uint32_t x, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e > 0) {
      if (e & 1) r = slow_mul(r, x);
      x = slow_mul(x, x);
      e >>= 1;
    }
    return r;
  };

  // Primitive element for the log/exp tables.
  const auto factors = prime_factors(q - 1);
  std::uint32_t gen = 0;
  for (std::uint32_t g = 1; g < q && gen == 0; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, (q - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) gen = g;
  }
  exp_.assign(q - 1, 0);
  log_.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i + 1 < q; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = slow_mul(x, gen);
  }

  neg_tab_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t v = a, out = 0, place = 1;
    for (std::uint32_t i = 0; i < ell_; ++i) {
      out += ((p - v % p) % p) * place;
      v /= p;
      place *= p;
    }
    neg_tab_[a] = out;
  }

  small_ = false;
  if (q <= 1024) {
    add_tab_.resize(static_cast<std::size_t>(q) * q);
    mul_tab_.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        add_tab_[a * q + b] = add_digits(Elem{a}, Elem{b}).index;
        mul_tab_[a * q + b] = mul(Elem{a}, Elem{b}).index;
      }
    }
    small_ = true;
  }

  sq_tab_.resize(q);
  inv_tab_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    sq_tab_[a] = mul(Elem{a}, Elem{a}).index;
    if (a != 0) inv_tab_[a] = exp_[(q - 1 - log_[a]) % (q - 1)];
  }

  eta_tab_.assign(q, -1);
  eta_tab_[0] = 0;
  sqrt_tab_.assign(q, -1);
  for (std::uint32_t r = 0; r < q; ++r) {
    const std::uint32_t s = sq_tab_[r];
    if (sqrt_tab_[s] < 0) sqrt_tab_[s] = r;  // ascending r keeps the smaller root
    if (s != 0) eta_tab_[s] = 1;
  }

  trace_tab_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    Elem acc{0}, term{a};
    for (std::uint32_t i = 0; i < ell_; ++i) {
      acc = add(acc, term);
      term = pow(term, p);
    }
    trace_tab_[a] = acc.index;
  }

  roots_.resize(p);
  for (std::uint32_t k = 0; k < p; ++k) {
    roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / p);
  }
  chi_tab_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    chi_tab_[a] = roots_[trace_tab_[mul(char_scale_, Elem{a}).index]];
  }
}

Elem Field::from_int(std::int64_t n) const {
  const std::int64_t pp = p_;
  return Elem{static_cast<std::uint32_t>(((n % pp) + pp) % pp)};
}

Elem Field::element(std::uint64_t index) const {
  if (index >= q_) {
    throw ConfigError("element index " + std::to_string(index) + " out of range for q=" +
                      std::to_string(q_));
  }
  return Elem{static_cast<std::uint32_t>(index)};
}

Elem Field::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() > ell_) throw ConfigError("too many coefficients for F_q");
  std::uint32_t idx = 0, place = 1;
  for (auto c : coeffs) {
    if (c >= p_) throw ConfigError("coefficient out of range");
    idx += c * place;
    place *= p_;
  }
  return Elem{idx};
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const {
  std::vector<std::uint32_t> out(ell_);
  std::uint32_t v = a.index;
  for (auto& c : out) {
    c = v % p_;
    v /= p_;
  }
  return out;
}

Elem Field::inv(Elem a) const {
  if (a.index == 0) throw DomainError("inverse of zero");
  return Elem{inv_tab_[a.index]};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::arith(Elem a, Elem b, ArithOp op) const {
  switch (op) {
    case ArithOp::add: return add(a, b);
    case ArithOp::sub: return sub(a, b);
    case ArithOp::mul: return mul(a, b);
    case ArithOp::div: return div(a, b);
    case ArithOp::neg: return neg(a);
    case ArithOp::inv: return inv(a);
  }
  throw ConfigError("unknown arithmetic op");
}

std::optional<Elem> Field::sqrt(Elem t) const {
  const auto r = sqrt_tab_[t.index];
  if (r < 0) return std::nullopt;
  return Elem{static_cast<std::uint32_t>(r)};
}

CharacterValue Field::gauss_sum(Elem a) const {
  if (a.index == 0) throw DomainError("Gauss sum needs a nonzero argument");
  CharacterValue g{0.0, 0.0};
  for (std::uint32_t s = 1; s < q_; ++s) {
    g += static_cast<double>(eta(Elem{s})) * chi(mul(a, Elem{s}));
  }
  return g;
}

Field::CompleteSquare Field::complete_square(Elem a, Elem b) const {
  if (a.index == 0) throw DomainError("complete-square sum needs a nonzero quadratic coefficient");
  CharacterValue direct{0.0, 0.0};
  for (std::uint32_t s = 0; s < q_; ++s) {
    const Elem e{s};
    direct += chi(add(mul(a, square(e)), mul(b, e)));
  }
  const Elem shift = div(square(b), mul(from_int(-4), a));
  const CharacterValue closed = static_cast<double>(eta(a)) * chi(shift) * gauss_sum(one());
  return {direct, closed};
}

CharacterValue Field::complete_square_sum(Elem a, Elem b) const {
  const auto r = complete_square(a, b);
  if (std::abs(r.direct - r.closed_form) > sum_tolerance(q_)) {
    throw ConsistencyError("complete-square closed form disagrees with direct summation");
  }
  return r.closed_form;
}

nlohmann::json Field::descriptor() const {
  return {{"p", p_}, {"ell", ell_}, {"modulus", modulus_}};
}

Field Field::from_descriptor(const nlohmann::json& j) {
  try {
    FieldOptions opts;
    if (j.contains("modulus")) opts.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
    return make(j.at("p").get<std::uint32_t>(), j.at("ell").get<std::uint32_t>(), opts);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed field descriptor: ") + e.what());
  }
}

}  // namespace fqdist
