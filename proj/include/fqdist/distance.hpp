#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqdist/field.hpp"
#include "fqdist/geometry.hpp"

namespace fqdist {

/// Subset of F_q held as a presence bitmap; values() is ordered by index.
class DistanceSet {
 public:
  DistanceSet(std::uint32_t q, std::string source) : present_(q, false), source_(std::move(source)) {}

  std::uint32_t q() const { return static_cast<std::uint32_t>(present_.size()); }
  std::size_t size() const;
  bool contains(Elem t) const { return present_[t.index]; }
  void insert(Elem t) { present_[t.index] = true; }
  void merge(const DistanceSet& other);
  /// True when every value of `other` is also in this set.
  bool includes(const DistanceSet& other) const;
  std::vector<Elem> values() const;
  const std::string& source() const { return source_; }

  friend bool operator==(const DistanceSet& a, const DistanceSet& b) { return a.present_ == b.present_; }

 private:
  std::vector<bool> present_;
  std::string source_;
};

/// Delta_Q(A, B) = {||x - y||_Q : x in A, y in B}.
DistanceSet delta(const Field& f, const PointSet& a, const PointSet& b);
DistanceSet delta(const Field& f, const PointSet& a, const PointSet& b, const QuadraticForm& Q);
/// Delta(A) = Delta(A, A).
DistanceSet delta(const Field& f, const PointSet& a);

/// Box(E) = {||x - y|| + ||x - z|| : x, y, z in E, y != z}, over ordered triples.
DistanceSet box_set(const Field& f, const PointSet& e);

struct SizeCheck {
  bool holds = false;
  double margin = 0.0;  // |Delta| - threshold
};
SizeCheck delta_size_check(const DistanceSet& d, double threshold);
SizeCheck delta_size_check(const Field& f, const PointSet& a, const PointSet& b, double threshold);

/// 1/2 min{q, |A||B| / q^d}.
double shparlinski_bound(std::uint32_t q, std::size_t size_a, std::size_t size_b, std::size_t dim);
/// 1/2 min{q, |A||B| / (2 q^{d-1})}, valid when one of the sets is coordinatable.
double coordinatable_bound(std::uint32_t q, std::size_t size_a, std::size_t size_b, std::size_t dim);
/// ceil(q/2): the integer reading of |Delta| >= q/2.
std::size_t half_q_threshold(std::uint32_t q);

}  // namespace fqdist
