#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fqdist/field.hpp"

namespace fqdist {

using Vector = std::vector<Elem>;
using VectorView = std::span<const Elem>;

/// Finite subset of F_q^d. Points are deduplicated and kept in lexicographic
/// order of their coordinate vectors.
class PointSet {
 public:
  explicit PointSet(std::size_t dim = 1) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<Vector> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? count_ : coords_.size() / dim_; }
  bool empty() const { return size() == 0; }
  VectorView operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  bool contains(VectorView x) const;
  std::vector<Vector> points() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::size_t count_ = 0;  // only used for dim 0 (the nullary product)
  std::vector<Elem> coords_;
};

/// Cartesian product; coordinates of `a` come first.
PointSet product(const PointSet& a, const PointSet& b);
/// Points of a, viewed as one-dimensional F_q elements.
PointSet points_1d(std::span<const Elem> values);

/// Universe index of x: coordinates read as base-q digits, x_1 most significant.
std::uint64_t encode_point(const Field& f, VectorView x);
Vector decode_point(const Field& f, std::size_t dim, std::uint64_t index);
/// All of F_q^d (checked against the scan ceiling).
PointSet full_space(const Field& f, std::size_t dim);

enum class FormKind { standard, canonical_even, canonical_odd, pair_star };

/// The norm in force for distance computations.
struct QuadraticForm {
  FormKind kind = FormKind::standard;
  std::size_t dim = 0;  // for pair_star: the half dimension d of F_q^d x F_q^d
  Elem epsilon{1};

  static QuadraticForm standard(std::size_t d) { return {FormKind::standard, d, Elem{1}}; }
  /// Canonical alternating form. Throws ConfigError if the parity of d does
  /// not match or the side condition eta((-1)^{floor(d/2)} eps) = 1 fails.
  static QuadraticForm canonical(const Field& f, std::size_t d, Elem epsilon);
  static QuadraticForm pair_star(std::size_t d) { return {FormKind::pair_star, d, Elem{1}}; }

  /// Length of vectors the form accepts.
  std::size_t input_dim() const { return kind == FormKind::pair_star ? 2 * dim : dim; }
};

/// sum x_i^2.
Elem norm(const Field& f, VectorView x);
/// ||x - y|| without materialising the difference.
Elem norm_diff(const Field& f, VectorView x, VectorView y);
/// Evaluate a quadratic form; throws ConfigError on dimension mismatch.
Elem norm_form(const Field& f, VectorView x, const QuadraticForm& Q);
Elem norm_form_diff(const Field& f, VectorView x, VectorView y, const QuadraticForm& Q);
Elem dot(const Field& f, VectorView x, VectorView y);

/// 1 if d mod 4 is 0 or 1, else -1.
Elem epsilon_for_dimension(const Field& f, std::size_t d);

/// {x in F_q^d : ||x|| = t} by exhaustive scan.
PointSet sphere_enumerate(const Field& f, Elem t, std::size_t d);
/// |S_t^{d-1}| for every t at once, by exhaustive scan (index = t).
std::vector<std::uint64_t> sphere_counts(const Field& f, std::size_t d);
/// Closed-form |S_t^{d-1}|, d >= 1.
std::int64_t sphere_cardinality(const Field& f, Elem t, std::size_t d);

/// P_{i_1..i_k}: axes vary freely, other coordinates are zero. Axes are
/// zero-based and kept sorted.
class CoordinatePlane {
 public:
  CoordinatePlane(std::vector<std::size_t> axes, std::size_t dim);

  const std::vector<std::size_t>& axes() const { return axes_; }
  std::size_t dim() const { return dim_; }
  std::size_t k() const { return axes_.size(); }
  std::uint64_t point_count(const Field& f) const;
  bool contains(VectorView x) const;
  /// The point whose free coordinates are `free` (length k).
  Vector embed(std::span<const Elem> free) const;
  PointSet enumerate(const Field& f) const;

 private:
  std::vector<std::size_t> axes_;
  std::size_t dim_;
};

/// x -> matrix x + shift.
class AffineMap {
 public:
  explicit AffineMap(std::size_t dim);  // identity
  AffineMap(std::vector<Vector> matrix, Vector shift, bool rotation_flag);

  static AffineMap identity(std::size_t dim) { return AffineMap(dim); }
  static AffineMap translation(const Vector& shift);

  std::size_t dim() const { return shift_.size(); }
  const std::vector<Vector>& matrix() const { return matrix_; }
  const Vector& shift() const { return shift_; }
  /// True when built as a composition of rotations and translations.
  bool is_rigid() const { return rigid_; }

  Vector apply(const Field& f, VectorView x) const;
  /// (this o other)(x) = this(other(x)).
  AffineMap compose(const Field& f, const AffineMap& other) const;
  /// Inverse of a rigid motion (matrix transposed).
  AffineMap rigid_inverse(const Field& f) const;

 private:
  std::vector<Vector> matrix_;
  Vector shift_;
  bool rigid_ = true;
};

bool is_orthogonal(const Field& f, const std::vector<Vector>& m);
Elem determinant(const Field& f, std::vector<Vector> m);
/// M^T M = I and det M = 1.
bool is_special_orthogonal(const Field& f, const std::vector<Vector>& m);

/// L_lambda(a, b) = {(x + a, lambda x + b)}.
PointSet line_L(const Field& f, Elem lambda, Elem a, Elem b);

/// [[1/s, lambda/s], [-lambda/s, 1/s]] with s the smaller-index root of
/// 1 + lambda^2. Throws DomainError unless eta(1 + lambda^2) = 1.
AffineMap rotation_R(const Field& f, Elem lambda);
/// rotation_R embedded in the (i, j) coordinate plane of F_q^d, i < j.
AffineMap givens_rotation(const Field& f, std::size_t dim, std::size_t i, std::size_t j,
                          Elem lambda);
/// The quarter turn e_i -> e_j, e_j -> -e_i; in SO_d over every field.
AffineMap quarter_turn(const Field& f, std::size_t dim, std::size_t i, std::size_t j);

/// Image {m x : x in S}.
PointSet apply_map(const Field& f, const AffineMap& m, const PointSet& s);

}  // namespace fqdist
