#include "fqdist/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"

namespace fqdist {

PointSet::PointSet(std::size_t dim, std::vector<Vector> points) : dim_(dim) {
  for (const auto& v : points) {
    if (v.size() != dim) {
      throw ConfigError("point of length " + std::to_string(v.size()) + " in a " +
                        std::to_string(dim) + "-dimensional set");
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (dim == 0) {
    count_ = points.size();
    return;
  }
  coords_.reserve(points.size() * dim);
  for (const auto& v : points) coords_.insert(coords_.end(), v.begin(), v.end());
}

bool PointSet::contains(VectorView x) const {
  if (x.size() != dim_) return false;
  if (dim_ == 0) return count_ > 0;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto p = (*this)[mid];
    if (std::lexicographical_compare(p.begin(), p.end(), x.begin(), x.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::equal(x.begin(), x.end(), (*this)[lo].begin());
}

std::vector<Vector> PointSet::points() const {
  std::vector<Vector> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const auto p = (*this)[i];
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

PointSet product(const PointSet& a, const PointSet& b) {
  std::vector<Vector> pts;
  pts.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      Vector v(a[i].begin(), a[i].end());
      v.insert(v.end(), b[j].begin(), b[j].end());
      pts.push_back(std::move(v));
    }
  }
  return PointSet(a.dim() + b.dim(), std::move(pts));
}

PointSet points_1d(std::span<const Elem> values) {
  std::vector<Vector> pts;
  for (auto v : values) pts.push_back({v});
  return PointSet(1, std::move(pts));
}

std::uint64_t encode_point(const Field& f, VectorView x) {
  std::uint64_t idx = 0;
  for (auto c : x) idx = idx * f.q() + c.index;
  return idx;
}

Vector decode_point(const Field& f, std::size_t dim, std::uint64_t index) {
  Vector v(dim);
  for (std::size_t i = dim; i-- > 0;) {
    v[i] = Elem{static_cast<std::uint32_t>(index % f.q())};
    index /= f.q();
  }
  return v;
}

PointSet full_space(const Field& f, std::size_t dim) {
  const std::uint64_t n = checked_pow(f.q(), static_cast<unsigned>(dim));
  require_within_limit(n, "full space enumeration");
  std::vector<Vector> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) pts.push_back(decode_point(f, dim, i));
  return PointSet(dim, std::move(pts));
}

QuadraticForm QuadraticForm::canonical(const Field& f, std::size_t d, Elem epsilon) {
  if (d == 0) throw ConfigError("canonical form needs d >= 1");
  if (epsilon.index == 0) throw ConfigError("epsilon must be nonzero");
  const bool even = d % 2 == 0;
  // (-1)^{d/2} for even d, (-1)^{(d-1)/2} for odd d.
  const std::size_t half = even ? d / 2 : (d - 1) / 2;
  const Elem sign = half % 2 == 0 ? f.one() : f.neg(f.one());
  if (f.eta(f.mul(sign, epsilon)) != 1) {
    throw ConfigError("epsilon violates the canonical-form side condition for d=" +
                      std::to_string(d));
  }
  return {even ? FormKind::canonical_even : FormKind::canonical_odd, d, epsilon};
}

Elem norm(const Field& f, VectorView x) {
  Elem acc = f.zero();
  for (auto c : x) acc = f.add(acc, f.square(c));
  return acc;
}

Elem norm_diff(const Field& f, VectorView x, VectorView y) {
  Elem acc = f.zero();
  for (std::size_t i = 0; i < x.size(); ++i) acc = f.add(acc, f.square(f.sub(x[i], y[i])));
  return acc;
}

Elem dot(const Field& f, VectorView x, VectorView y) {
  Elem acc = f.zero();
  for (std::size_t i = 0; i < x.size(); ++i) acc = f.add(acc, f.mul(x[i], y[i]));
  return acc;
}

namespace {

// Alternating form x_1^2 - x_2^2 + ... over the first d-1 coordinates, then
// the signed epsilon term on x_d.
Elem canonical_value(const Field& f, VectorView x, const QuadraticForm& Q) {
  const std::size_t d = x.size();
  Elem acc = f.zero();
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const Elem s = f.square(x[i]);
    acc = (i % 2 == 0) ? f.add(acc, s) : f.sub(acc, s);
  }
  const Elem last = f.mul(Q.epsilon, f.square(x[d - 1]));
  return Q.kind == FormKind::canonical_even ? f.sub(acc, last) : f.add(acc, last);
}

void check_form_dim(VectorView x, const QuadraticForm& Q) {
  if (x.size() != Q.input_dim()) {
    throw ConfigError("vector of length " + std::to_string(x.size()) +
                      " does not match the form's dimension " + std::to_string(Q.input_dim()));
  }
}

}  // namespace

Elem norm_form(const Field& f, VectorView x, const QuadraticForm& Q) {
  check_form_dim(x, Q);
  switch (Q.kind) {
    case FormKind::standard: return norm(f, x);
    case FormKind::canonical_even:
    case FormKind::canonical_odd: return canonical_value(f, x, Q);
    case FormKind::pair_star:
      return f.sub(norm(f, x.subspan(0, Q.dim)), norm(f, x.subspan(Q.dim)));
  }
  return f.zero();
}

Elem norm_form_diff(const Field& f, VectorView x, VectorView y, const QuadraticForm& Q) {
  if (Q.kind == FormKind::standard) {
    check_form_dim(x, Q);
    check_form_dim(y, Q);
    return norm_diff(f, x, y);
  }
  Vector diff(x.size());
  if (y.size() != x.size()) throw ConfigError("dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = f.sub(x[i], y[i]);
  return norm_form(f, diff, Q);
}

Elem epsilon_for_dimension(const Field& f, std::size_t d) {
  return (d % 4 == 0 || d % 4 == 1) ? f.one() : f.neg(f.one());
}

PointSet sphere_enumerate(const Field& f, Elem t, std::size_t d) {
  const std::uint64_t n = checked_pow(f.q(), static_cast<unsigned>(d));
  require_within_limit(n, "sphere enumeration");
  std::vector<Vector> pts;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vector x = decode_point(f, d, i);
    if (norm(f, x) == t) pts.push_back(std::move(x));
  }
  return PointSet(d, std::move(pts));
}

std::vector<std::uint64_t> sphere_counts(const Field& f, std::size_t d) {
  const std::uint64_t n = checked_pow(f.q(), static_cast<unsigned>(d));
  require_within_limit(n, "sphere enumeration");
  std::vector<std::uint64_t> counts(f.q(), 0);
  Vector x(d, f.zero());
  for (std::uint64_t i = 0; i < n; ++i) {
    ++counts[norm(f, x).index];
    // odometer increment
    for (std::size_t j = d; j-- > 0;) {
      if (++x[j].index < f.q()) break;
      x[j].index = 0;
    }
  }
  return counts;
}

std::int64_t sphere_cardinality(const Field& f, Elem t, std::size_t d) {
  if (d == 0) throw ConfigError("sphere cardinality formula needs d >= 1");
  const auto q = static_cast<std::int64_t>(f.q());
  auto ipow = [](std::int64_t b, std::size_t e) {
    std::int64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
  };
  const Elem minus_one = f.neg(f.one());
  if (d % 2 == 0) {
    const std::int64_t omega = t.index == 0 ? q - 1 : -1;
    const int sign = f.eta(f.pow(minus_one, d / 2));
    return ipow(q, d - 1) + omega * ipow(q, (d - 2) / 2) * sign;
  }
  const int sign = f.eta(f.mul(t, f.pow(minus_one, (d - 1) / 2)));
  return ipow(q, d - 1) + ipow(q, (d - 1) / 2) * sign;
}

CoordinatePlane::CoordinatePlane(std::vector<std::size_t> axes, std::size_t dim)
    : axes_(std::move(axes)), dim_(dim) {
  if (axes_.empty()) throw ConfigError("coordinate plane needs at least one axis");
  std::sort(axes_.begin(), axes_.end());
  if (std::adjacent_find(axes_.begin(), axes_.end()) != axes_.end()) {
    throw ConfigError("repeated axis in coordinate plane");
  }
  if (axes_.back() >= dim_) throw ConfigError("axis out of range");
}

std::uint64_t CoordinatePlane::point_count(const Field& f) const {
  return checked_pow(f.q(), static_cast<unsigned>(k()));
}

bool CoordinatePlane::contains(VectorView x) const {
  if (x.size() != dim_) return false;
  for (std::size_t i = 0, a = 0; i < dim_; ++i) {
    if (a < axes_.size() && axes_[a] == i) {
      ++a;
    } else if (x[i].index != 0) {
      return false;
    }
  }
  return true;
}

Vector CoordinatePlane::embed(std::span<const Elem> free) const {
  if (free.size() != axes_.size()) throw ConfigError("wrong number of free coordinates");
  Vector x(dim_, Elem{0});
  for (std::size_t a = 0; a < axes_.size(); ++a) x[axes_[a]] = free[a];
  return x;
}

PointSet CoordinatePlane::enumerate(const Field& f) const {
  const std::uint64_t n = point_count(f);
  require_within_limit(n, "coordinate plane enumeration");
  std::vector<Vector> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) pts.push_back(embed(decode_point(f, k(), i)));
  return PointSet(dim_, std::move(pts));
}

AffineMap::AffineMap(std::size_t dim)
    : matrix_(dim, Vector(dim, Elem{0})), shift_(dim, Elem{0}), rigid_(true) {
  for (std::size_t i = 0; i < dim; ++i) matrix_[i][i] = Elem{1};
}

AffineMap::AffineMap(std::vector<Vector> matrix, Vector shift, bool rotation_flag)
    : matrix_(std::move(matrix)), shift_(std::move(shift)), rigid_(rotation_flag) {
  for (const auto& row : matrix_) {
    if (row.size() != shift_.size()) throw ConfigError("matrix is not square");
  }
  if (matrix_.size() != shift_.size()) throw ConfigError("matrix/shift dimension mismatch");
}

AffineMap AffineMap::translation(const Vector& shift) {
  AffineMap m(shift.size());
  m.shift_ = shift;
  return m;
}

Vector AffineMap::apply(const Field& f, VectorView x) const {
  if (x.size() != dim()) throw ConfigError("map dimension mismatch");
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = f.add(dot(f, matrix_[i], x), shift_[i]);
  return out;
}

AffineMap AffineMap::compose(const Field& f, const AffineMap& other) const {
  if (other.dim() != dim()) throw ConfigError("map dimension mismatch");
  const std::size_t n = dim();
  std::vector<Vector> m(n, Vector(n, Elem{0}));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Elem acc = f.zero();
      for (std::size_t l = 0; l < n; ++l) acc = f.add(acc, f.mul(matrix_[i][l], other.matrix_[l][j]));
      m[i][j] = acc;
    }
  }
  return AffineMap(std::move(m), apply(f, other.shift_), rigid_ && other.rigid_);
}

AffineMap AffineMap::rigid_inverse(const Field& f) const {
  if (!rigid_) throw DomainError("rigid_inverse on a map that is not a rigid motion");
  const std::size_t n = dim();
  std::vector<Vector> t(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = matrix_[j][i];
  }
  // x = R^T (y - v) = R^T y - R^T v
  AffineMap rot(std::move(t), Vector(n, Elem{0}), true);
  Vector back = rot.apply(f, shift_);
  for (auto& c : back) c = f.neg(c);
  return AffineMap(rot.matrix_, std::move(back), true);
}

bool is_orthogonal(const Field& f, const std::vector<Vector>& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Elem acc = f.zero();
      for (std::size_t l = 0; l < n; ++l) acc = f.add(acc, f.mul(m[l][i], m[l][j]));
      if (acc != (i == j ? f.one() : f.zero())) return false;
    }
  }
  return true;
}

Elem determinant(const Field& f, std::vector<Vector> m) {
  const std::size_t n = m.size();
  Elem det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].index == 0) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = f.neg(det);
    }
    det = f.mul(det, m[c][c]);
    const Elem inv = f.inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Elem factor = f.mul(m[r][c], inv);
      for (std::size_t j = c; j < n; ++j) m[r][j] = f.sub(m[r][j], f.mul(factor, m[c][j]));
    }
  }
  return det;
}

bool is_special_orthogonal(const Field& f, const std::vector<Vector>& m) {
  return is_orthogonal(f, m) && determinant(f, m) == f.one();
}

PointSet line_L(const Field& f, Elem lambda, Elem a, Elem b) {
  std::vector<Vector> pts;
  pts.reserve(f.q());
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    const Elem e{x};
    pts.push_back({f.add(e, a), f.add(f.mul(lambda, e), b)});
  }
  return PointSet(2, std::move(pts));
}

AffineMap rotation_R(const Field& f, Elem lambda) {
  const Elem r2 = f.add(f.one(), f.square(lambda));
  if (f.eta(r2) != 1) {
    throw DomainError("1 + lambda^2 is not a nonzero square; L_lambda is not rotatable to an axis");
  }
  const Elem inv_s = f.inv(*f.sqrt(r2));
  const Elem c = inv_s;
  const Elem s = f.mul(lambda, inv_s);
  return AffineMap({{c, s}, {f.neg(s), c}}, {f.zero(), f.zero()}, true);
}

AffineMap givens_rotation(const Field& f, std::size_t dim, std::size_t i, std::size_t j,
                          Elem lambda) {
  if (i >= dim || j >= dim || i == j) throw ConfigError("bad Givens axes");
  const AffineMap r = rotation_R(f, lambda);
  AffineMap id(dim);
  std::vector<Vector> m = id.matrix();
  m[i][i] = r.matrix()[0][0];
  m[i][j] = r.matrix()[0][1];
  m[j][i] = r.matrix()[1][0];
  m[j][j] = r.matrix()[1][1];
  return AffineMap(std::move(m), Vector(dim, Elem{0}), true);
}

AffineMap quarter_turn(const Field& f, std::size_t dim, std::size_t i, std::size_t j) {
  if (i >= dim || j >= dim || i == j) throw ConfigError("bad quarter-turn axes");
  std::vector<Vector> m = AffineMap(dim).matrix();
  m[i][i] = f.zero();
  m[j][j] = f.zero();
  m[j][i] = f.one();
  m[i][j] = f.neg(f.one());
  return AffineMap(std::move(m), Vector(dim, Elem{0}), true);
}

PointSet apply_map(const Field& f, const AffineMap& m, const PointSet& s) {
  if (m.dim() != s.dim()) throw ConfigError("map dimension does not match the point set");
  std::vector<Vector> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(m.apply(f, s[i]));
  return PointSet(s.dim(), std::move(out));
}

}  // namespace fqdist
