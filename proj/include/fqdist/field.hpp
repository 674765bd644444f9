#pragma once

// Exact arithmetic in F_q, q = p^ell with p an odd prime.
//
// Elements are encoded by their integer index in [0, q): the coefficient
// vector (c_0, ..., c_{ell-1}) of the polynomial representative over F_p,
// index = sum c_i p^i. Index 0 is zero and index 1 is one. The prime
// subfield F_p occupies indices [0, p).
//
// A Field is immutable after construction; every member function is const
// and safe to call concurrently.

#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fqdist {

/// Element of F_q by canonical index.
struct Elem {
  std::uint32_t index = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Elem, Elem) = default;
};

/// A point on (or a sum of points on) the complex unit circle.
using CharacterValue = std::complex<double>;

enum class ArithOp { add, sub, mul, div, neg, inv };

struct FieldOptions {
  // Use t -> chi(c * t) as the additive character. Must be nonzero. All
  // results in this library are independent of the choice.
  std::uint32_t character_scale = 1;
  // Explicit modulus (ell+1 coefficients, low degree first, monic). When
  // empty the smallest irreducible by encoding order is used.
  std::vector<std::uint32_t> modulus;
};

class Field {
 public:
  /// Builds F_{p^ell}. Throws ConfigError for even/composite p, ell == 0, a
  /// reducible or malformed explicit modulus, or q above kMaxFieldOrder.
  static Field make(std::uint32_t p, std::uint32_t ell, const FieldOptions& opts = {});

  std::uint32_t p() const { return p_; }
  std::uint32_t ell() const { return ell_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem character_scale() const { return char_scale_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t n) const;
  /// Range-checked index -> element.
  Elem element(std::uint64_t index) const;
  /// Element with the given base-p coefficients (low degree first).
  Elem from_coefficients(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> coefficients(Elem a) const;

  Elem add(Elem a, Elem b) const {
    if (small_) return Elem{add_tab_[a.index * q_ + b.index]};
    return add_digits(a, b);
  }
  Elem neg(Elem a) const { return Elem{neg_tab_[a.index]}; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (small_) return Elem{mul_tab_[a.index * q_ + b.index]};
    if (a.index == 0 || b.index == 0) return Elem{0};
    std::uint32_t l = log_[a.index] + log_[b.index];
    if (l >= q_ - 1) l -= q_ - 1;
    return Elem{exp_[l]};
  }
  Elem square(Elem a) const { return Elem{sq_tab_[a.index]}; }
  /// Throws DomainError for a == 0.
  Elem inv(Elem a) const;
  /// Throws DomainError for b == 0.
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem arith(Elem a, Elem b, ArithOp op) const;

  /// Quadratic character: +1 nonzero square, -1 nonsquare, 0 at zero.
  int eta(Elem t) const { return eta_tab_[t.index]; }
  /// The square root with the smaller index, if t is a square.
  std::optional<Elem> sqrt(Elem t) const;
  /// Absolute trace F_q -> F_p (result lies in the prime subfield).
  Elem trace(Elem t) const { return Elem{trace_tab_[t.index]}; }
  /// chi(t) = exp(2 pi i lift(Tr(c t)) / p) with c the character scale.
  CharacterValue chi(Elem t) const { return chi_tab_[t.index]; }
  /// Unscaled root of unity exp(2 pi i k / p), k in [0, p).
  CharacterValue root_of_unity(std::uint32_t k) const { return roots_[k]; }

  /// G_a = sum_{s != 0} eta(s) chi(a s). Throws DomainError for a == 0.
  CharacterValue gauss_sum(Elem a) const;

  struct CompleteSquare {
    CharacterValue direct;
    CharacterValue closed_form;
  };
  /// sum_s chi(a s^2 + b s) by direct summation and by the closed form
  /// eta(a) chi(b^2 / (-4a)) G_1. Throws DomainError for a == 0.
  CompleteSquare complete_square(Elem a, Elem b) const;
  /// Closed form of complete_square, after checking agreement with the
  /// direct sum (DomainError on mismatch beyond tolerance).
  CharacterValue complete_square_sum(Elem a, Elem b) const;

  /// Descriptor {p, ell, modulus}.
  nlohmann::json descriptor() const;
  static Field from_descriptor(const nlohmann::json& j);

 private:
  Field() = default;
  Elem add_digits(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_ = 0, ell_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem char_scale_{1};
  bool small_ = false;

  std::vector<std::uint32_t> add_tab_, mul_tab_;
  std::vector<std::uint32_t> log_, exp_;
  std::vector<std::uint32_t> neg_tab_, sq_tab_, inv_tab_, trace_tab_;
  std::vector<std::int8_t> eta_tab_;
  std::vector<std::int64_t> sqrt_tab_;
  std::vector<CharacterValue> chi_tab_, roots_;
};

/// Absolute tolerance for a character sum with `terms` summands.
inline double sum_tolerance(std::uint64_t terms) {
  return 1e-9 * static_cast<double>(terms == 0 ? 1 : terms);
}

bool is_prime(std::uint64_t n);

/// Factors q = p^ell with p prime; returns nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

}  // namespace fqdist
