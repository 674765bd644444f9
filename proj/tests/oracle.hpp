#pragma once

// Test-only reference computations. Nothing here calls into the library's
// table machinery: arithmetic is schoolbook polynomial multiplication over
// F_p and characters are evaluated from the definition.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

struct NaiveField {
  std::uint32_t p = 0, ell = 0, q = 0;
  std::vector<std::uint32_t> modulus;  // low degree first, monic

  NaiveField(std::uint32_t p_, std::uint32_t ell_, std::vector<std::uint32_t> m)
      : p(p_), ell(ell_), modulus(std::move(m)) {
    q = 1;
    for (std::uint32_t i = 0; i < ell; ++i) q *= p;
  }

  std::vector<std::uint32_t> digits(std::uint32_t a) const {
    std::vector<std::uint32_t> d(ell);
    for (auto& c : d) {
      c = a % p;
      a /= p;
    }
    return d;
  }
  std::uint32_t index(const std::vector<std::uint32_t>& d) const {
    std::uint32_t idx = 0, place = 1;
    for (std::uint32_t i = 0; i < ell; ++i) {
      idx += (d[i] % p) * place;
      place *= p;
    }
    return idx;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    for (std::uint32_t i = 0; i < ell; ++i) x[i] = (x[i] + y[i]) % p;
    return index(x);
  }
  std::uint32_t neg(std::uint32_t a) const {
    auto x = digits(a);
    for (auto& c : x) c = (p - c) % p;
    return index(x);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * ell, 0);
    for (std::uint32_t i = 0; i < ell; ++i)
      for (std::uint32_t j = 0; j < ell; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    // reduce with x^ell = -(m_0 + ... + m_{ell-1} x^{ell-1})
    for (std::size_t k = 2 * ell - 1; k >= ell; --k) {
      const std::uint64_t c = prod[k];
      prod[k] = 0;
      for (std::uint32_t i = 0; i < ell; ++i) {
        prod[k - ell + i] = (prod[k - ell + i] + (p - modulus[i]) * c) % p;
      }
    }
    std::vector<std::uint32_t> out(ell);
    for (std::uint32_t i = 0; i < ell; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return index(out);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  int eta(std::uint32_t t) const {
    if (t == 0) return 0;
    for (std::uint32_t r = 1; r < q; ++r)
      if (mul(r, r) == t) return 1;
    return -1;
  }

  std::uint32_t trace(std::uint32_t t) const {
    std::uint32_t acc = 0, term = t;
    for (std::uint32_t i = 0; i < ell; ++i) {
      acc = add(acc, term);
      term = pow(term, p);
    }
    return acc;
  }

  std::complex<double> chi(std::uint32_t t) const {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(trace(t)) / p;
    return std::exp(std::complex<double>(0.0, angle));
  }

  std::uint32_t from_int(long long n) const { return static_cast<std::uint32_t>(((n % p) + p) % p); }
};

/// Polynomial of degree `ell` (monic, low first) reducible over F_p: checks
/// every product of two monic factors of complementary degree.
inline bool reducible(std::uint32_t p, const std::vector<std::uint32_t>& m) {
  const std::size_t ell = m.size() - 1;
  auto all_monic = [&](std::size_t deg) {
    std::vector<std::vector<std::uint32_t>> out;
    std::size_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<std::uint32_t> f(deg + 1, 0);
      f[deg] = 1;
      std::size_t v = c;
      for (std::size_t i = 0; i < deg; ++i) {
        f[i] = v % p;
        v /= p;
      }
      out.push_back(f);
    }
    return out;
  };
  for (std::size_t e = 1; e <= ell / 2; ++e) {
    for (const auto& a : all_monic(e)) {
      for (const auto& b : all_monic(ell - e)) {
        std::vector<std::uint32_t> prod(ell + 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        if (prod == m) return true;
      }
    }
  }
  return false;
}

}  // namespace oracle
