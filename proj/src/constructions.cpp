#include "fqdist/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"

namespace fqdist {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

PointSet paired_diagonal(const Field& f, std::size_t pairs) {
  const std::uint64_t n = checked_pow(f.q(), static_cast<unsigned>(pairs));
  require_within_limit(n, "paired-coordinate set");
  std::vector<Vector> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Vector t = decode_point(f, pairs, i);
    Vector x;
    x.reserve(2 * pairs);
    for (auto c : t) {
      x.push_back(c);
      x.push_back(c);
    }
    pts.push_back(std::move(x));
  }
  return PointSet(2 * pairs, std::move(pts));
}

}  // namespace

std::uint32_t c_delta_size(std::uint32_t p, double delta) {
  check_delta(delta);
  const double x = std::pow(static_cast<double>(p), 1.0 - delta);
  const auto c = static_cast<std::uint32_t>(std::ceil(x * (1.0 - 1e-12)));
  if (c > p) throw ConfigError("degenerate C_delta: size exceeds p");
  return std::max<std::uint32_t>(c, 1);
}

PointSet make_C_delta(const Field& f, double delta) {
  const std::uint32_t c = c_delta_size(f.p(), delta);
  std::vector<Elem> vals;
  for (std::uint32_t i = 0; i < c; ++i) vals.emplace_back(i);
  return points_1d(vals);
}

PointSet make_Omega_delta(const Field& f, double delta) {
  const std::uint32_t c = c_delta_size(f.p(), delta);
  const std::uint64_t n = checked_pow(c, f.ell());
  std::vector<Elem> vals;
  vals.reserve(n);
  std::vector<std::uint32_t> coeffs(f.ell(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    vals.push_back(f.from_coefficients(coeffs));
    for (auto& co : coeffs) {
      if (++co < c) break;
      co = 0;
    }
  }
  return points_1d(vals);
}

std::vector<Elem> difference_set(const Field& f, const PointSet& s) {
  if (s.dim() != 1) throw ConfigError("difference_set expects a one-dimensional set");
  std::vector<bool> seen(f.q(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) seen[f.sub(s[i][0], s[j][0]).index] = true;
  }
  std::vector<Elem> out;
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    if (seen[i]) out.emplace_back(i);
  }
  return out;
}

PointSet make_H(const Field& f, std::size_t d) {
  if (d < 3 || d % 2 == 0) throw ConfigError("H needs an odd dimension d >= 3");
  return paired_diagonal(f, (d - 1) / 2);
}

PointSet make_Lambda(const Field& f, std::size_t d) {
  if (d < 2 || d % 2 == 1) throw ConfigError("Lambda needs an even dimension d >= 2");
  if (d == 2) return PointSet(0, {Vector{}});
  return paired_diagonal(f, (d - 2) / 2);
}

CounterexampleRecipe counterexample(const Field& f, std::size_t d, double delta) {
  if (d < 2) throw ConfigError("counterexample needs d >= 2");
  check_delta(delta);
  const PointSet omega = make_Omega_delta(f, delta);
  const std::vector<Elem> diffs = difference_set(f, omega);
  const Elem eps = epsilon_for_dimension(f, d);

  CounterexampleRecipe r{
      .d = d,
      .delta = delta,
      .parity = d % 2 == 1 ? Parity::odd : Parity::even,
      .q = f.q(),
      .A = PointSet(d),
      .Q = QuadraticForm::canonical(f, d, eps),
      .c_size = c_delta_size(f.p(), delta),
      .omega_size = omega.size(),
      .omega_diff_size = diffs.size(),
      .predicted = DistanceSet(f.q(), "closed form"),
  };

  const double q = f.q();
  if (r.parity == Parity::odd) {
    const PointSet h = make_H(f, d);
    r.base_size = h.size();
    r.A = product(h, omega);
    for (auto c : diffs) r.predicted.insert(f.mul(eps, f.square(c)));
    r.reference_size = std::pow(q, (static_cast<double>(d) + 1.0) / 2.0 - delta);
  } else {
    const PointSet lambda = make_Lambda(f, d);
    r.base_size = lambda.size();
    r.A = product(product(lambda, omega), points_1d(std::vector<Elem>{f.zero()}));
    for (std::size_t i = 0; i < omega.size(); ++i) {
      for (std::size_t j = 0; j < omega.size(); ++j) {
        r.predicted.insert(f.square(f.sub(omega[i][0], omega[j][0])));
      }
    }
    r.reference_size = std::pow(q, static_cast<double>(d) / 2.0 - delta);
  }
  return r;
}

nlohmann::json CounterexampleRecipe::to_json() const {
  nlohmann::json predicted_values = nlohmann::json::array();
  for (auto v : predicted.values()) predicted_values.push_back(v.index);
  return {
      {"d", d},
      {"delta", delta},
      {"parity", parity == Parity::odd ? "odd" : "even"},
      {"q", q},
      {"epsilon", Q.epsilon.index},
      {"C_size", c_size},
      {"Omega_size", omega_size},
      {"Omega_difference_size", omega_diff_size},
      {parity == Parity::odd ? "H_size" : "Lambda_size", base_size},
      {"A_size", A.size()},
      {"A_size_over_reference", static_cast<double>(A.size()) / reference_size},
      {"predicted_delta_Q", predicted_values},
      {"predicted_delta_Q_size", predicted.size()},
  };
}

Slice slice_extract(const Field& f, const PointSet& a) {
  if (a.empty()) throw ConfigError("slice_extract of an empty set");
  const std::size_t d = a.dim();
  std::vector<std::size_t> count(f.q(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) ++count[a[i][d - 1].index];
  const auto best = static_cast<std::uint32_t>(
      std::max_element(count.begin(), count.end()) - count.begin());
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i][d - 1].index == best) pts.emplace_back(a[i].begin(), a[i].end());
  }
  Vector shift(d, f.zero());
  shift[d - 1] = f.neg(Elem{best});
  return {Elem{best}, PointSet(d, std::move(pts)), AffineMap::translation(shift)};
}

BoxReduction box_reduction(const Field& /*f*/, const PointSet& e) {
  if (e.dim() != 1) throw ConfigError("box_reduction expects E in F_q");
  if (e.size() < 2) throw ConfigError("box_reduction needs |E| >= 2");
  std::vector<Vector> e1, e2, a, b;
  for (std::size_t i = 0; i < e.size(); ++i) {
    (i % 2 == 0 ? e1 : e2).push_back({e[i][0]});
    b.push_back({e[i][0], e[i][0]});
  }
  for (const auto& y : e1) {
    for (const auto& z : e2) a.push_back({y[0], z[0]});
  }
  return {e, PointSet(1, std::move(e1)), PointSet(1, std::move(e2)), PointSet(2, std::move(a)),
          PointSet(2, std::move(b))};
}

bool split_is_valid(const BoxReduction& r) {
  for (std::size_t i = 0; i < r.E1.size(); ++i) {
    if (r.E2.contains(r.E1[i])) return false;
  }
  if (r.E1.size() + r.E2.size() != r.E.size()) return false;
  for (std::size_t i = 0; i < r.E.size(); ++i) {
    if (!r.E1.contains(r.E[i]) && !r.E2.contains(r.E[i])) return false;
  }
  return r.E1.size() >= r.E2.size() && r.E1.size() - r.E2.size() <= 1;
}

}  // namespace fqdist
