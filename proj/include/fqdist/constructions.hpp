#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "fqdist/distance.hpp"
#include "fqdist/field.hpp"
#include "fqdist/geometry.hpp"

namespace fqdist {

/// |C_delta| = ceil(p^{1 - delta}). Throws ConfigError unless 0 < delta < 1.
std::uint32_t c_delta_size(std::uint32_t p, double delta);

/// Arithmetic progression {0, 1, ..., |C_delta| - 1} in the prime subfield.
PointSet make_C_delta(const Field& f, double delta);
/// {c_0 + c_1 xi + ... + c_{ell-1} xi^{ell-1} : c_i in C_delta}.
PointSet make_Omega_delta(const Field& f, double delta);
/// {a - b : a, b in S} for a one-dimensional set.
std::vector<Elem> difference_set(const Field& f, const PointSet& s);

/// Pairs of equal coordinates (t_1, t_1, ..., t_m, t_m) in F_q^{d-1}, d odd >= 3.
PointSet make_H(const Field& f, std::size_t d);
/// The same pattern in F_q^{d-2}, d even >= 2; d = 2 gives the one empty tuple.
PointSet make_Lambda(const Field& f, std::size_t d);

enum class Parity { odd, even };

struct CounterexampleRecipe {
  std::size_t d = 0;
  double delta = 0.0;
  Parity parity = Parity::odd;
  std::uint32_t q = 0;
  PointSet A;
  QuadraticForm Q;
  std::size_t c_size = 0;
  std::size_t omega_size = 0;
  std::size_t omega_diff_size = 0;
  std::size_t base_size = 0;  // |H| or |Lambda|
  /// Closed-form value set: {eps c^2 : c in Omega - Omega} (odd) or
  /// {(a - b)^2 : a, b in Omega} (even).
  DistanceSet predicted;
  /// q^{(d+1)/2 - delta} (odd) or q^{d/2 - delta} (even), for ratio reports.
  double reference_size = 0.0;

  nlohmann::json to_json() const;
};

CounterexampleRecipe counterexample(const Field& f, std::size_t d, double delta);

struct Slice {
  Elem level;
  PointSet points;
  /// Translation by -level e_d, taking the slice into the coordinate plane
  /// spanned by the first d-1 axes.
  AffineMap witness;
};

/// Level j of the last coordinate with the most points of A (smallest j on
/// ties) and the corresponding slice. Throws ConfigError for empty A.
Slice slice_extract(const Field& f, const PointSet& a);

struct BoxReduction {
  PointSet E{1}, E1{1}, E2{1};
  PointSet A{2};  // E1 x E2
  PointSet B{2};  // {(x, x) : x in E}
};

/// Splits E (d = 1) alternately by sorted index, E1 taking the first element.
BoxReduction box_reduction(const Field& f, const PointSet& e);
/// The three split conditions: disjoint, covering, 0 <= |E1| - |E2| <= 1.
bool split_is_valid(const BoxReduction& r);

}  // namespace fqdist
