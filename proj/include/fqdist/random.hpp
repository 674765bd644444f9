#pragma once

// Seeded sampling. Every draw goes through mt19937_64 and explicit rejection
// sampling, so results are identical across standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "fqdist/field.hpp"
#include "fqdist/geometry.hpp"

namespace fqdist {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Independent stream for instance `index` of sweep `stream`; lets sweeps
  /// run in any order and still replay one instance in isolation.
  static Rng for_instance(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  std::uint64_t next() { return eng_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// k distinct values from [0, universe), sorted ascending (Floyd's algorithm).
std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t universe, std::size_t k);

/// Uniform k-subset of F_q^d.
PointSet random_subset(const Field& f, std::size_t dim, std::size_t k, Rng& rng);
/// Uniform k-subset of s.
PointSet random_subset_of(const PointSet& s, std::size_t k, Rng& rng);

/// Composition of random plane rotations (Givens R_lambda with
/// eta(1 + lambda^2) = 1, and quarter turns) followed by a random translation.
AffineMap random_rigid_motion(const Field& f, std::size_t dim, Rng& rng);

/// A k-coordinatable set together with its certificate: `points` is the
/// image under `motion` of a subset of `plane`.
struct CoordinatableSet {
  CoordinatePlane plane;
  AffineMap motion;
  PointSet points;
};

/// Random `size`-point subset of a random k-dimensional coordinate plane,
/// moved by a random rigid motion (identity when `move` is false).
CoordinatableSet random_coordinatable(const Field& f, std::size_t dim, std::size_t k,
                                      std::size_t size, Rng& rng, bool move = true);

/// Checks the certificate: motion^{-1}(points) lies in the plane.
bool certifies_coordinatable(const Field& f, const CoordinatableSet& c);

}  // namespace fqdist
