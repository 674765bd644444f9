#include "fqdist/distance.hpp"

#include <algorithm>
#include <cmath>

#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"

namespace fqdist {

std::size_t DistanceSet::size() const {
  return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), true));
}

void DistanceSet::merge(const DistanceSet& other) {
  if (other.q() != q()) throw ConfigError("merging distance sets over different fields");
  for (std::size_t i = 0; i < present_.size(); ++i) present_[i] = present_[i] || other.present_[i];
}

bool DistanceSet::includes(const DistanceSet& other) const {
  if (other.q() != q()) return false;
  for (std::size_t i = 0; i < present_.size(); ++i) {
    if (other.present_[i] && !present_[i]) return false;
  }
  return true;
}

std::vector<Elem> DistanceSet::values() const {
  std::vector<Elem> out;
  for (std::uint32_t i = 0; i < present_.size(); ++i) {
    if (present_[i]) out.emplace_back(i);
  }
  return out;
}

DistanceSet delta(const Field& f, const PointSet& a, const PointSet& b, const QuadraticForm& Q) {
  if (a.dim() != b.dim()) throw ConfigError("A and B have different dimensions");
  if (a.empty() || b.empty()) throw ConfigError("distance set of an empty set");
  require_within_limit(saturating_mul(a.size(), b.size()), "distance set");
  DistanceSet out(f.q(), Q.kind == FormKind::standard ? "Delta(A,B)" : "Delta_Q(A,B)");
  if (Q.kind == FormKind::standard) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out.insert(norm_diff(f, a[i], b[j]));
    }
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out.insert(norm_form_diff(f, a[i], b[j], Q));
    }
  }
  return out;
}

DistanceSet delta(const Field& f, const PointSet& a, const PointSet& b) {
  return delta(f, a, b, QuadraticForm::standard(a.dim()));
}

DistanceSet delta(const Field& f, const PointSet& a) { return delta(f, a, a); }

DistanceSet box_set(const Field& f, const PointSet& e) {
  if (e.size() < 2) throw ConfigError("Box(E) needs |E| >= 2");
  const std::uint64_t n = e.size();
  require_within_limit(saturating_mul(saturating_mul(n, n), n), "box set");
  // ||x - y|| for every pair, then sums over y != z.
  std::vector<Elem> dist(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) dist[x * n + y] = norm_diff(f, e[x], e[y]);
  }
  DistanceSet out(f.q(), "Box(E)");
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (y != z) out.insert(f.add(dist[x * n + y], dist[x * n + z]));
      }
    }
  }
  return out;
}

SizeCheck delta_size_check(const DistanceSet& d, double threshold) {
  const double size = static_cast<double>(d.size());
  return {size >= threshold, size - threshold};
}

SizeCheck delta_size_check(const Field& f, const PointSet& a, const PointSet& b, double threshold) {
  return delta_size_check(delta(f, a, b), threshold);
}

double shparlinski_bound(std::uint32_t q, std::size_t size_a, std::size_t size_b, std::size_t dim) {
  const double ratio = static_cast<double>(size_a) * static_cast<double>(size_b) /
                       std::pow(static_cast<double>(q), static_cast<double>(dim));
  return 0.5 * std::min(static_cast<double>(q), ratio);
}

double coordinatable_bound(std::uint32_t q, std::size_t size_a, std::size_t size_b, std::size_t dim) {
  const double ratio = static_cast<double>(size_a) * static_cast<double>(size_b) /
                       (2.0 * std::pow(static_cast<double>(q), static_cast<double>(dim) - 1.0));
  return 0.5 * std::min(static_cast<double>(q), ratio);
}

std::size_t half_q_threshold(std::uint32_t q) { return (q + 1) / 2; }

}  // namespace fqdist
