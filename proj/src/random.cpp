#include "fqdist/random.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"

namespace fqdist {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_instance(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ConfigError("Rng::below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t universe, std::size_t k) {
  if (k > universe) throw ConfigError("cannot sample more elements than the universe holds");
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = universe - k; j < universe; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

PointSet random_subset(const Field& f, std::size_t dim, std::size_t k, Rng& rng) {
  const std::uint64_t n = checked_pow(f.q(), static_cast<unsigned>(dim));
  std::vector<Vector> pts;
  pts.reserve(k);
  for (auto idx : sample_without_replacement(rng, n, k)) pts.push_back(decode_point(f, dim, idx));
  return PointSet(dim, std::move(pts));
}

PointSet random_subset_of(const PointSet& s, std::size_t k, Rng& rng) {
  std::vector<Vector> pts;
  pts.reserve(k);
  for (auto idx : sample_without_replacement(rng, s.size(), k)) {
    pts.emplace_back(s[idx].begin(), s[idx].end());
  }
  return PointSet(s.dim(), std::move(pts));
}

AffineMap random_rigid_motion(const Field& f, std::size_t dim, Rng& rng) {
  std::vector<Elem> slopes;
  for (std::uint32_t l = 1; l < f.q(); ++l) {
    if (f.eta(f.add(f.one(), f.square(Elem{l}))) == 1) slopes.emplace_back(l);
  }
  AffineMap g(dim);
  if (dim >= 2) {
    const std::size_t steps = 2 * dim;
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t i = rng.below(dim);
      std::size_t j = rng.below(dim - 1);
      if (j >= i) ++j;
      // slot slopes.size() selects a quarter turn
      const std::size_t pick = rng.below(slopes.size() + 1);
      const AffineMap r = pick < slopes.size()
                              ? givens_rotation(f, dim, std::min(i, j), std::max(i, j), slopes[pick])
                              : quarter_turn(f, dim, i, j);
      g = r.compose(f, g);
    }
  }
  Vector shift(dim);
  for (auto& c : shift) c = Elem{static_cast<std::uint32_t>(rng.below(f.q()))};
  return AffineMap::translation(shift).compose(f, g);
}

CoordinatableSet random_coordinatable(const Field& f, std::size_t dim, std::size_t k,
                                      std::size_t size, Rng& rng, bool move) {
  if (k == 0 || k > dim) throw ConfigError("coordinate plane dimension out of range");
  std::vector<std::size_t> axes;
  for (auto a : sample_without_replacement(rng, dim, k)) axes.push_back(static_cast<std::size_t>(a));
  CoordinatePlane plane(std::move(axes), dim);
  if (size > plane.point_count(f)) throw ConfigError("coordinatable set larger than its plane");
  std::vector<Vector> base;
  for (auto idx : sample_without_replacement(rng, plane.point_count(f), size)) {
    base.push_back(plane.embed(decode_point(f, k, idx)));
  }
  AffineMap motion = move ? random_rigid_motion(f, dim, rng) : AffineMap::identity(dim);
  PointSet pts = apply_map(f, motion, PointSet(dim, std::move(base)));
  return {std::move(plane), std::move(motion), std::move(pts)};
}

bool certifies_coordinatable(const Field& f, const CoordinatableSet& c) {
  if (!c.motion.is_rigid() || !is_special_orthogonal(f, c.motion.matrix())) return false;
  const AffineMap back = c.motion.rigid_inverse(f);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (!c.plane.contains(back.apply(f, c.points[i]))) return false;
  }
  return true;
}

}  // namespace fqdist
