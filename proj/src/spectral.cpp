#include "fqdist/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"

namespace fqdist {

namespace {

void next_vector(const Field& f, Vector& x) {
  for (std::size_t j = x.size(); j-- > 0;) {
    if (++x[j].index < f.q()) return;
    x[j].index = 0;
  }
}

void require_nonempty(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw ConfigError("distance bounds need nonempty A and B");
  if (a.dim() != b.dim()) throw ConfigError("A and B have different dimensions");
}

}  // namespace

FourierTable fourier_indicator(const Field& f, const PointSet& e) {
  const std::size_t d = e.dim();
  const std::uint64_t n = checked_pow(f.q(), static_cast<unsigned>(d));
  require_within_limit(saturating_mul(n, std::max<std::uint64_t>(e.size(), 1)),
                       "Fourier table");
  FourierTable t{d, f.q(), e.size(), std::vector<CharacterValue>(n)};
  const double scale = 1.0 / static_cast<double>(n);
  // bin the points by m . x, then apply the character once per bin
  std::vector<CharacterValue> chi_conj(f.q());
  for (std::uint32_t v = 0; v < f.q(); ++v) chi_conj[v] = std::conj(f.chi(Elem{v}));
  std::vector<std::uint64_t> bins(f.q());
  Vector m(d, f.zero());
  for (std::uint64_t i = 0; i < n; ++i) {
    std::fill(bins.begin(), bins.end(), 0);
    for (std::size_t j = 0; j < e.size(); ++j) ++bins[dot(f, m, e[j]).index];
    CharacterValue acc{0.0, 0.0};
    for (std::uint32_t v = 0; v < f.q(); ++v)
      if (bins[v] != 0) acc += static_cast<double>(bins[v]) * chi_conj[v];
    t.values[i] = acc * scale;
    next_vector(f, m);
  }
  return t;
}

double plancherel_sum(const FourierTable& t) {
  double s = 0.0;
  for (const auto& v : t.values) s += std::norm(v);
  return s;
}

CharacterValue fourier_inverse_at(const Field& f, const FourierTable& t, VectorView x) {
  Vector m(t.dim, f.zero());
  CharacterValue acc{0.0, 0.0};
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    acc += f.chi(dot(f, m, x)) * t.values[i];
    next_vector(f, m);
  }
  return acc;
}

double v0_fourier_formula(const Field& f, VectorView M) {
  if (M.size() % 2 != 0 || M.empty()) throw ConfigError("V0 transform needs an even-length input");
  const std::size_t d = M.size() / 2;
  const double q = f.q();
  const double tail = std::pow(q, -static_cast<double>(d) - 1.0);
  const Elem star = norm_form(f, M, QuadraticForm::pair_star(d));
  if (star.index != 0) return -tail;
  const bool is_zero = std::all_of(M.begin(), M.end(), [](Elem e) { return e.index == 0; });
  return (is_zero ? 1.0 / q : 0.0) + tail * (q - 1.0);
}

PointSet v0_enumerate(const Field& f, std::size_t d) {
  const std::uint64_t n = checked_pow(f.q(), static_cast<unsigned>(2 * d));
  require_within_limit(n, "V0 enumeration");
  const auto Q = QuadraticForm::pair_star(d);
  std::vector<Vector> pts;
  Vector x(2 * d, f.zero());
  for (std::uint64_t i = 0; i < n; ++i) {
    if (norm_form(f, x, Q).index == 0) pts.push_back(x);
    next_vector(f, x);
  }
  return PointSet(2 * d, std::move(pts));
}

CharacterValue v0_fourier_bruteforce(const Field& f, VectorView M, const PointSet& v0) {
  if (M.size() != v0.dim()) throw ConfigError("V0 transform: dimension mismatch");
  CharacterValue acc{0.0, 0.0};
  for (std::size_t i = 0; i < v0.size(); ++i) acc += std::conj(f.chi(dot(f, M, v0[i])));
  return acc / std::pow(static_cast<double>(f.q()), static_cast<double>(M.size()));
}

CharacterValue v0_fourier_bruteforce(const Field& f, VectorView M) {
  if (M.size() % 2 != 0 || M.empty()) throw ConfigError("V0 transform needs an even-length input");
  return v0_fourier_bruteforce(f, M, v0_enumerate(f, M.size() / 2));
}

std::vector<double> restriction_profile(const Field& f, const FourierTable& b_hat) {
  std::vector<double> r(f.q(), 0.0);
  Vector m(b_hat.dim, f.zero());
  for (const auto& v : b_hat.values) {
    r[norm(f, m).index] += std::norm(v);
    next_vector(f, m);
  }
  return r;
}

double restriction_sum(const Field& f, const FourierTable& b_hat, Elem t) {
  return restriction_profile(f, b_hat)[t.index];
}

double max_restriction(const Field& f, const FourierTable& b_hat) {
  const auto r = restriction_profile(f, b_hat);
  return *std::max_element(r.begin(), r.end());
}

std::uint64_t NuProfile::total() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

std::size_t NuProfile::support_size() const {
  return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(),
                                                [](std::uint64_t c) { return c != 0; }));
}

std::uint64_t NuProfile::sum_of_squares() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c * c;
  return s;
}

NuProfile nu_profile(const Field& f, const PointSet& a, const PointSet& b) {
  if (a.dim() != b.dim()) throw ConfigError("A and B have different dimensions");
  require_within_limit(saturating_mul(a.size(), b.size()), "nu profile");
  NuProfile nu{std::vector<std::uint64_t>(f.q(), 0), a.size(), b.size()};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) ++nu.counts[norm_diff(f, a[i], b[j]).index];
  }
  return nu;
}

std::uint64_t second_moment(const Field& f, const PointSet& a, const PointSet& b) {
  const NuProfile nu = nu_profile(f, a, b);
  const std::uint64_t direct = nu.sum_of_squares();

  const std::uint64_t pairs_a = saturating_mul(a.size(), a.size());
  const std::uint64_t pairs_b = saturating_mul(b.size(), b.size());
  require_within_limit(saturating_mul(pairs_a, pairs_b), "second moment quadruple count");
  const std::size_t d = a.dim();
  const auto star = QuadraticForm::pair_star(d);
  std::uint64_t quadruples = 0;
  Vector X(2 * d), Y(2 * d);
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t z = 0; z < a.size(); ++z) {
      std::copy(a[x].begin(), a[x].end(), X.begin());
      std::copy(a[z].begin(), a[z].end(), X.begin() + d);
      for (std::size_t y = 0; y < b.size(); ++y) {
        for (std::size_t w = 0; w < b.size(); ++w) {
          std::copy(b[y].begin(), b[y].end(), Y.begin());
          std::copy(b[w].begin(), b[w].end(), Y.begin() + d);
          if (norm_form_diff(f, X, Y, star).index == 0) ++quadruples;
        }
      }
    }
  }
  if (quadruples != direct) {
    throw ConsistencyError("second moment: sum nu^2 = " + std::to_string(direct) +
                           " but quadruple count = " + std::to_string(quadruples));
  }
  return direct;
}

double second_moment_spectral(const Field& f, const PointSet& a, const PointSet& b) {
  require_nonempty(a, b);
  const std::size_t d = a.dim();
  const FourierTable ah = fourier_indicator(f, a);
  const FourierTable bh = fourier_indicator(f, b);
  const std::size_t n = ah.values.size();
  require_within_limit(saturating_mul(n, n), "spectral second moment");

  CharacterValue acc{0.0, 0.0};
  Vector m(d, f.zero()), mp(d, f.zero()), M(2 * d);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(mp.begin(), mp.end(), f.zero());
    for (std::size_t j = 0; j < n; ++j) {
      std::copy(m.begin(), m.end(), M.begin());
      std::copy(mp.begin(), mp.end(), M.begin() + d);
      const double v0 = v0_fourier_formula(f, M);
      acc += v0 * std::conj(ah.values[i] * ah.values[j]) * (bh.values[i] * bh.values[j]);
      next_vector(f, mp);
    }
    next_vector(f, m);
  }
  const double q4d = std::pow(static_cast<double>(f.q()), 4.0 * d);
  // Scale tolerance by the size of the result rather than the term count.
  const CharacterValue total = acc * q4d;
  const double scale = static_cast<double>(a.size() * b.size()) * (a.size() * b.size());
  if (std::abs(total.imag()) > 1e-9 * std::max(1.0, scale)) {
    throw ConsistencyError("spectral second moment is not real");
  }
  return total.real();
}

double second_moment_upper(const Field& f, std::size_t size_a, std::size_t size_b,
                           std::size_t dim, double max_restriction_b) {
  const double a = static_cast<double>(size_a), b = static_cast<double>(size_b);
  const double q = f.q();
  return a * a * b * b / q + std::pow(q, 2.0 * dim) * a * max_restriction_b;
}

double distance_lower_bound(const Field& f, std::size_t size_a, std::size_t size_b,
                            std::size_t dim, double max_restriction_b) {
  if (size_a == 0 || size_b == 0) throw ConfigError("distance bounds need nonempty A and B");
  const double a = static_cast<double>(size_a), b = static_cast<double>(size_b);
  return a * a * b * b / second_moment_upper(f, size_a, size_b, dim, max_restriction_b);
}

double distance_lower_bound(const Field& f, const PointSet& a, const PointSet& b) {
  require_nonempty(a, b);
  const double r = max_restriction(f, fourier_indicator(f, b));
  return distance_lower_bound(f, a.size(), b.size(), a.dim(), r);
}

double distance_lower_bound_symmetric(const Field& f, const PointSet& a, const PointSet& b) {
  return std::max(distance_lower_bound(f, a, b), distance_lower_bound(f, b, a));
}

double cauchy_schwarz_bound(const NuProfile& nu) {
  if (nu.size_a == 0 || nu.size_b == 0) throw ConfigError("distance bounds need nonempty A and B");
  const double ab = static_cast<double>(nu.size_a) * static_cast<double>(nu.size_b);
  return ab * ab / static_cast<double>(nu.sum_of_squares());
}

double cauchy_schwarz_bound(const Field& f, const PointSet& a, const PointSet& b) {
  require_nonempty(a, b);
  const NuProfile nu = nu_profile(f, a, b);
  const double bound = cauchy_schwarz_bound(nu);
  if (bound > static_cast<double>(nu.support_size()) * (1.0 + 1e-12)) {
    throw ConsistencyError("Cauchy-Schwarz bound exceeds |Delta(A,B)|");
  }
  return bound;
}

}  // namespace fqdist
