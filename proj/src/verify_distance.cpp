// Plans for the distance-set theorems: sweeps over (A, B) pairs.

#include <algorithm>
#include <cmath>

#include "fqdist/constructions.hpp"
#include "fqdist/distance.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"
#include "fqdist/spectral.hpp"
#include "verify_detail.hpp"

namespace fqdist::detail {

namespace {

std::uint64_t universe(const Field& f, std::size_t d) { return checked_pow(f.q(), static_cast<unsigned>(d)); }

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

/// Smallest integer n with n >= x, ignoring rounding noise just above an integer.
std::uint64_t ceil_tight(double x) { return static_cast<std::uint64_t>(std::ceil(x * (1.0 - 1e-12))); }

std::uint64_t near_slack(std::uint64_t n) { return std::max<std::uint64_t>(1, n / 8); }

void require_dim_at_least_2(std::size_t d) {
  if (d < 2) throw ConfigError("this verifier needs dimension >= 2");
}

nlohmann::json motion_json(const AffineMap& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m.matrix()) {
    nlohmann::json r = nlohmann::json::array();
    for (auto e : row) r.push_back(e.index);
    rows.push_back(r);
  }
  nlohmann::json shift = nlohmann::json::array();
  for (auto e : m.shift()) shift.push_back(e.index);
  return {{"matrix", rows}, {"shift", shift}};
}

void set_scatter(InstanceRecord& rec, const Field& f, std::size_t d, std::size_t a, std::size_t b,
                 std::size_t dist) {
  rec.scatter = std::make_pair(static_cast<double>(a) * b / qpow(f, static_cast<double>(d)),
                               static_cast<double>(dist) / f.q());
}

Check flag(std::string name, bool ok) { return ge(std::move(name), ok ? 1.0 : 0.0, 1.0); }

/// Points of F_q^d not in `excluded`, chosen uniformly: `k` of them.
PointSet random_outside(const Field& f, std::size_t d, const PointSet& excluded, std::size_t k, Rng& rng) {
  std::vector<std::uint64_t> ex;
  for (std::size_t i = 0; i < excluded.size(); ++i) ex.push_back(encode_point(f, excluded[i]));
  std::sort(ex.begin(), ex.end());
  const auto picks = sample_without_replacement(rng, universe(f, d) - ex.size(), k);
  std::vector<Vector> pts;
  std::size_t j = 0;
  std::uint64_t shift = 0;
  for (auto v : picks) {
    // v-th index (0-based) that is not excluded
    while (j < ex.size() && ex[j] <= v + shift) {
      ++shift;
      ++j;
    }
    pts.push_back(decode_point(f, d, v + shift));
  }
  return PointSet(d, std::move(pts));
}

/// Checks shared by every (A, B) instance where B carries a coordinatable certificate.
InstanceRecord evaluate_coordinatable(const Field& f, std::size_t d, const PointSet& a,
                                      const CoordinatableSet& b, bool with_lower_bound) {
  InstanceRecord rec;
  const std::uint64_t n = universe(f, d);
  rec.params = {{"q", f.q()}, {"d", d}, {"k", b.plane.k()}, {"size_a", a.size()}, {"size_b", b.points.size()}};
  rec.hypothesis_met = static_cast<std::uint64_t>(a.size()) * b.points.size() >= 2 * n;
  const std::size_t dist = delta(f, a, b.points).size();
  rec.params["distances"] = dist;
  rec.checks.push_back(ge("half_q", static_cast<double>(dist), static_cast<double>(half_q_threshold(f.q())),
                          rec.hypothesis_met));
  rec.checks.push_back(ge("coordinatable_bound", static_cast<double>(dist),
                          coordinatable_bound(f.q(), a.size(), b.points.size(), d)));
  rec.checks.push_back(ge("shparlinski", static_cast<double>(dist), shparlinski_bound(f.q(), a.size(), b.points.size(), d)));
  rec.checks.push_back(flag("certificate", certifies_coordinatable(f, b)));
  if (with_lower_bound) {
    rec.checks.push_back(ge("distance_lower_bound", static_cast<double>(dist), distance_lower_bound(f, a, b.points)));
  }
  set_scatter(rec, f, d, a.size(), b.points.size(), dist);
  if (rec.verdict() == Status::fail) {
    rec.instance = {{"A", set_json(f, a)},
                    {"B", set_json(f, b.points)},
                    {"plane_axes", b.plane.axes()},
                    {"motion", motion_json(b.motion)}};
  }
  return rec;
}

PointSet subset_from_mask(const PointSet& s, std::uint64_t mask) {
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (mask & (1ULL << i)) pts.push_back(Vector(s[i].begin(), s[i].end()));
  return PointSet(s.dim(), std::move(pts));
}

std::vector<std::uint64_t> masks_with_popcount(unsigned bits, unsigned lo, unsigned hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (1ULL << bits); ++m) {
    const unsigned c = static_cast<unsigned>(__builtin_popcountll(m));
    if (c >= lo && c <= hi) out.push_back(m);
  }
  return out;
}

}  // namespace

Plan plan_mainthm(const RunConfig& cfg) {
  Plan plan;
  plan.notes.push_back("conclusion |Delta(A,B)| >= q/2 is asserted as |Delta(A,B)| >= ceil(q/2)");
  plan.notes.push_back(
      "1/2 min{q, |A||B|/(2q^{d-1})} and 1/2 min{q, |A||B|/q^d} are asserted on every instance, "
      "including those below the |A||B| >= 2q^d threshold");
  plan.notes.push_back("B is k-coordinatable with 1 <= k <= d-1; most samples are moved by a random rigid motion");
  for (const auto& fp : make_fields(cfg)) {
    const Field& f = *fp;
    for (std::size_t d : cfg.dims) {
      require_dim_at_least_2(d);
      const std::uint64_t n = universe(f, d);
      if (f.q() == 3 && d == 2) {
        // every A in F_3^2 against every B on the x-axis
        Sweep s{family_name("exhaustive", f, d), 512 * 8, nullptr};
        s.run = [fp, d](std::size_t i) {
          const Field& f = *fp;
          const PointSet all = full_space(f, d);
          const CoordinatePlane axis({0}, d);
          const PointSet line = axis.enumerate(f);
          const PointSet a = subset_from_mask(all, i / 8);
          const PointSet b = subset_from_mask(line, i % 8);
          if (a.empty() || b.empty()) return skip_record("", i, "empty set", {{"mask_a", i / 8}, {"mask_b", i % 8}});
          auto rec = evaluate_coordinatable(f, d, a, CoordinatableSet{axis, AffineMap::identity(d), b}, true);
          rec.params["mask_a"] = i / 8;
          rec.params["mask_b"] = i % 8;
          return rec;
        };
        plan.sweeps.push_back(std::move(s));
      }

      const std::string above = family_name("random_above", f, d);
      Sweep s_above{above, cfg.samples, nullptr};
      s_above.run = [fp, d, n, above, cfg](std::size_t i) {
        const Field& f = *fp;
        Rng rng = instance_rng(cfg, above, i);
        const std::size_t k = rng.between(1, d - 1);
        const std::uint64_t plane = checked_pow(f.q(), static_cast<unsigned>(k));
        const std::size_t size_b = rng.between(2, plane);
        const bool move = rng.below(4) != 0;
        const auto b = random_coordinatable(f, d, k, size_b, rng, move);
        const std::uint64_t min_a = ceil_div(2 * n, size_b);
        const std::size_t size_a = rng.between(min_a, std::min(n, min_a + near_slack(n)));
        const PointSet a = random_subset(f, d, size_a, rng);
        return evaluate_coordinatable(f, d, a, b, false);
      };
      plan.sweeps.push_back(std::move(s_above));

      const std::string below = family_name("random_below", f, d);
      Sweep s_below{below, std::max<std::size_t>(1, cfg.samples / 5), nullptr};
      s_below.run = [fp, d, n, below, cfg](std::size_t i) {
        const Field& f = *fp;
        Rng rng = instance_rng(cfg, below, i);
        const std::size_t k = rng.between(1, d - 1);
        const std::uint64_t plane = checked_pow(f.q(), static_cast<unsigned>(k));
        const std::size_t size_b = rng.between(1, plane);
        const bool move = rng.below(4) != 0;
        const auto b = random_coordinatable(f, d, k, size_b, rng, move);
        const std::uint64_t min_a = ceil_div(2 * n, size_b);  // >= 2q since size_b <= q^{d-1}
        const std::uint64_t hi = std::min(n, min_a - 1);
        const std::uint64_t lo = min_a > near_slack(n) ? min_a - near_slack(n) : 1;
        const std::size_t size_a = rng.between(std::clamp<std::uint64_t>(lo, 1, hi), hi);
        const PointSet a = random_subset(f, d, size_a, rng);
        return evaluate_coordinatable(f, d, a, b, false);
      };
      plan.sweeps.push_back(std::move(s_below));
    }
  }
  return plan;
}

Plan plan_mainthmC(const RunConfig& cfg) {
  Plan plan;
  plan.notes.push_back("dimension fixed at 2; B is a subset of the line L_lambda(a, b)");
  plan.notes.push_back("lambda with eta(1 + lambda^2) != 1 have no rotation witness and are skipped");
  constexpr std::size_t d = 2;
  for (const auto& fp : make_fields(cfg)) {
    const Field& f = *fp;
    std::vector<Elem> valid;
    for (std::uint32_t l = 0; l < f.q(); ++l) {
      if (f.eta(f.add(f.one(), f.square(Elem{l}))) == 1) valid.push_back(Elem{l});
    }

    Sweep gate{family_name("rotation_witness", f, d), f.q(), nullptr};
    gate.run = [fp](std::size_t i) {
      const Field& f = *fp;
      const Elem lambda{static_cast<std::uint32_t>(i)};
      nlohmann::json params = {{"q", f.q()}, {"lambda", i}};
      if (f.eta(f.add(f.one(), f.square(lambda))) != 1) {
        return skip_record("", i, "eta(1 + lambda^2) != 1: no rotation witness", params);
      }
      InstanceRecord rec;
      rec.params = params;
      rec.hypothesis_met = true;
      const auto rot = rotation_R(f, lambda);
      const PointSet image = apply_map(f, rot, line_L(f, lambda, f.zero(), f.zero()));
      rec.checks.push_back(flag("rotation_maps_line_to_axis", image == CoordinatePlane({0}, 2).enumerate(f)));
      rec.checks.push_back(flag("special_orthogonal", is_special_orthogonal(f, rot.matrix())));
      return rec;
    };
    plan.sweeps.push_back(std::move(gate));

    const std::string fam = family_name("random", f, d);
    Sweep s{fam, cfg.samples, nullptr};
    s.run = [fp, valid, fam, cfg](std::size_t i) {
      const Field& f = *fp;
      Rng rng = instance_rng(cfg, fam, i);
      const Elem lambda = valid[rng.below(valid.size())];
      const Elem a0{static_cast<std::uint32_t>(rng.below(f.q()))};
      const Elem b0{static_cast<std::uint32_t>(rng.below(f.q()))};
      const PointSet line = line_L(f, lambda, a0, b0);
      const std::size_t size_b = rng.between(2, f.q());
      const PointSet b = random_subset_of(line, size_b, rng);
      const std::uint64_t n = universe(f, 2);
      const std::uint64_t min_a = ceil_div(2 * n, size_b);
      const std::size_t size_a = rng.between(min_a, std::min(n, min_a + near_slack(n)));
      const PointSet a = random_subset(f, 2, size_a, rng);

      // certificate: translate by -(a0, b0), then rotate onto the x-axis
      const AffineMap to_axis = rotation_R(f, lambda).compose(f, AffineMap::translation({f.neg(a0), f.neg(b0)}));
      const AffineMap motion = to_axis.rigid_inverse(f);
      const CoordinatableSet cb{CoordinatePlane({0}, 2), motion, b};
      auto rec = evaluate_coordinatable(f, 2, a, cb, false);
      rec.params["lambda"] = lambda.index;
      rec.params["shift"] = {a0.index, b0.index};
      return rec;
    };
    plan.sweeps.push_back(std::move(s));
  }
  return plan;
}

Plan plan_ProK(const RunConfig& cfg) {
  Plan plan;
  const double alpha = cfg.alpha;
  plan.notes.push_back("alpha = " + std::to_string(alpha) +
                       "; A contains a coordinatable B (k <= d-1) with |B| >= |A|^alpha and "
                       "|A| >= 2^{1/(alpha+1)} q^{d/(1+alpha)}");
  plan.notes.push_back("conclusion |Delta(A)| >= q/2 is asserted as |Delta(A)| >= ceil(q/2)");
  for (const auto& fp : make_fields(cfg)) {
    const Field& f = *fp;
    for (std::size_t d : cfg.dims) {
      require_dim_at_least_2(d);
      const std::uint64_t n_all = universe(f, d);
      const std::uint64_t plane_max = universe(f, d - 1);
      const double threshold = std::pow(2.0, 1.0 / (alpha + 1.0)) * qpow(f, d / (1.0 + alpha));
      auto b_min = [alpha](std::uint64_t n) { return ceil_tight(std::pow(static_cast<double>(n), alpha)); };
      const std::uint64_t n_min = std::max<std::uint64_t>(1, ceil_tight(threshold));

      plan.sweeps.push_back(single(family_name("coordinate_line", f, d), [fp, d, threshold] {
        const Field& f = *fp;
        const PointSet line = CoordinatePlane({0}, d).enumerate(f);
        InstanceRecord rec;
        rec.params = {{"q", f.q()}, {"d", d}, {"size_a", line.size()}, {"threshold", threshold}};
        rec.hypothesis_met = static_cast<double>(line.size()) >= threshold * (1.0 - 1e-12);
        if (!rec.hypothesis_met) rec.note = "A = B = coordinate line is below the size threshold";
        const std::size_t dist = delta(f, line).size();
        rec.checks.push_back(ge("half_q", static_cast<double>(dist), static_cast<double>(half_q_threshold(f.q())),
                                rec.hypothesis_met));
        rec.checks.push_back(ge("shparlinski", static_cast<double>(dist), shparlinski_bound(f.q(), line.size(), line.size(), d)));
        set_scatter(rec, f, d, line.size(), line.size(), dist);
        return rec;
      }));

      const std::string fam = family_name("random", f, d);
      if (n_min > n_all || b_min(n_min) > plane_max) {
        const std::string reason = "no instance fits in F_q^d: |A| >= " + std::to_string(n_min) + " needs |B| >= " +
                                   std::to_string(b_min(n_min)) + " but coordinatable sets have at most " +
                                   std::to_string(plane_max) + " points";
        plan.sweeps.push_back(single(fam, [reason, q = f.q(), d] {
          return skip_record("", 0, reason, {{"q", q}, {"d", d}});
        }));
        continue;
      }
      std::uint64_t n_max = std::min(n_all, n_min + near_slack(n_all));
      while (b_min(n_max) > plane_max) --n_max;

      Sweep s{fam, cfg.samples, nullptr};
      s.run = [fp, d, n_min, n_max, plane_max, threshold, alpha, b_min, fam, cfg](std::size_t i) {
        const Field& f = *fp;
        Rng rng = instance_rng(cfg, fam, i);
        const std::size_t size_a = rng.between(n_min, n_max);
        const std::size_t size_b = rng.between(b_min(size_a), std::min<std::uint64_t>(size_a, plane_max));
        std::size_t k_min = 1;
        while (checked_pow(f.q(), static_cast<unsigned>(k_min)) < size_b) ++k_min;
        const std::size_t k = rng.between(k_min, d - 1);
        const auto b = random_coordinatable(f, d, k, size_b, rng, rng.below(4) != 0);
        const PointSet extra = random_outside(f, d, b.points, size_a - size_b, rng);
        std::vector<Vector> pts = b.points.points();
        for (auto& p : extra.points()) pts.push_back(std::move(p));
        const PointSet a(d, std::move(pts));

        InstanceRecord rec;
        rec.params = {{"q", f.q()}, {"d", d}, {"k", k}, {"size_a", a.size()}, {"size_b", size_b}};
        rec.hypothesis_met = true;
        const std::size_t dist = delta(f, a).size();
        rec.params["distances"] = dist;
        rec.checks.push_back(ge("half_q", static_cast<double>(dist), static_cast<double>(half_q_threshold(f.q()))));
        rec.checks.push_back(ge("size_a", static_cast<double>(a.size()), threshold));
        rec.checks.push_back(ge("size_b", static_cast<double>(size_b), std::pow(static_cast<double>(a.size()), alpha)));
        rec.checks.push_back(ge("product", static_cast<double>(a.size()) * size_b, 2.0 * qpow(f, static_cast<double>(d))));
        rec.checks.push_back(flag("certificate", certifies_coordinatable(f, b)));
        rec.checks.push_back(ge("shparlinski", static_cast<double>(dist), shparlinski_bound(f.q(), a.size(), a.size(), d)));
        set_scatter(rec, f, d, a.size(), a.size(), dist);
        if (rec.verdict() == Status::fail) {
          rec.instance = {{"A", set_json(f, a)}, {"B", set_json(f, b.points)}, {"motion", motion_json(b.motion)}};
        }
        return rec;
      };
      plan.sweeps.push_back(std::move(s));
    }
  }
  return plan;
}

namespace {

InstanceRecord evaluate_maincor(const Field& f, std::size_t d, const PointSet& a) {
  InstanceRecord rec;
  const double threshold = std::sqrt(2.0) * qpow(f, (d + 1) / 2.0);
  rec.params = {{"q", f.q()}, {"d", d}, {"size_a", a.size()}};
  rec.hypothesis_met = static_cast<double>(a.size()) >= threshold * (1.0 - 1e-12);
  const Slice slice = slice_extract(f, a);
  bool in_plane = true;
  for (std::size_t i = 0; i < slice.points.size(); ++i) {
    in_plane = in_plane && slice.witness.apply(f, slice.points[i]).back() == f.zero();
  }
  const std::size_t dist_full = delta(f, a).size();
  const std::size_t dist_slice = delta(f, a, slice.points).size();
  rec.params["slice_level"] = slice.level.index;
  rec.params["slice_size"] = slice.points.size();
  rec.params["distances"] = dist_full;
  const double half = static_cast<double>(half_q_threshold(f.q()));
  rec.checks.push_back(ge("half_q", static_cast<double>(dist_full), half, rec.hypothesis_met));
  rec.checks.push_back(ge("half_q_against_slice", static_cast<double>(dist_slice), half, rec.hypothesis_met));
  rec.checks.push_back(ge("slice_pigeonhole", static_cast<double>(slice.points.size()) * f.q(),
                          static_cast<double>(a.size())));
  rec.checks.push_back(ge("product", static_cast<double>(a.size()) * slice.points.size(),
                          2.0 * qpow(f, static_cast<double>(d)), rec.hypothesis_met));
  rec.checks.push_back(flag("slice_witness", in_plane));
  rec.checks.push_back(ge("shparlinski", static_cast<double>(dist_full), shparlinski_bound(f.q(), a.size(), a.size(), d)));
  set_scatter(rec, f, d, a.size(), a.size(), dist_full);
  if (rec.verdict() == Status::fail) {
    rec.instance = {{"A", set_json(f, a)}, {"slice", set_json(f, slice.points)}};
  }
  return rec;
}

}  // namespace

Plan plan_maincor(const RunConfig& cfg) {
  Plan plan;
  plan.notes.push_back("|A| >= sqrt(2) q^{(d+1)/2}; the (d-1)-coordinatable witness is the fullest level set of x_d");
  for (const auto& fp : make_fields(cfg)) {
    const Field& f = *fp;
    for (std::size_t d : cfg.dims) {
      require_dim_at_least_2(d);
      const std::uint64_t n_all = universe(f, d);
      const std::uint64_t n_min = ceil_tight(std::sqrt(2.0) * qpow(f, (d + 1) / 2.0));

      plan.sweeps.push_back(single(family_name("full_space", f, d), [fp, d] {
        return evaluate_maincor(*fp, d, full_space(*fp, d));
      }));

      if (n_min > n_all) {
        plan.sweeps.push_back(single(family_name("random", f, d), [n_min, q = f.q(), d] {
          return skip_record("", 0, "size threshold " + std::to_string(n_min) + " exceeds q^d",
                             {{"q", q}, {"d", d}});
        }));
        continue;
      }
      if (n_all <= 16) {
        auto masks = std::make_shared<std::vector<std::uint64_t>>(
            masks_with_popcount(static_cast<unsigned>(n_all), static_cast<unsigned>(n_min),
                                static_cast<unsigned>(n_all)));
        Sweep s{family_name("exhaustive", f, d), masks->size(), nullptr};
        s.run = [fp, d, masks](std::size_t i) {
          return evaluate_maincor(*fp, d, subset_from_mask(full_space(*fp, d), (*masks)[i]));
        };
        plan.sweeps.push_back(std::move(s));
      }
      const std::string fam = family_name("random", f, d);
      Sweep s{fam, cfg.samples, nullptr};
      s.run = [fp, d, n_min, n_all, fam, cfg](std::size_t i) {
        Rng rng = instance_rng(cfg, fam, i);
        const std::size_t size = rng.between(n_min, std::min(n_all, n_min + near_slack(n_all)));
        return evaluate_maincor(*fp, d, random_subset(*fp, d, size, rng));
      };
      plan.sweeps.push_back(std::move(s));
    }
  }
  return plan;
}

namespace {

PointSet field_subset(std::uint64_t mask, std::uint32_t q) {
  std::vector<Vector> pts;
  for (std::uint32_t x = 0; x < q; ++x)
    if (mask & (1ULL << x)) pts.push_back({Elem{x}});
  return PointSet(1, std::move(pts));
}

InstanceRecord evaluate_box_link(const Field& f, const PointSet& e) {
  InstanceRecord rec;
  const auto r = box_reduction(f, e);
  const double n = static_cast<double>(e.size());
  rec.params = {{"q", f.q()}, {"size_e", e.size()}, {"size_a", r.A.size()}, {"size_b", r.B.size()}};
  rec.hypothesis_met = true;
  const DistanceSet box = box_set(f, e);
  const DistanceSet dist = delta(f, r.A, r.B);
  rec.checks.push_back(flag("box_includes_delta", box.includes(dist)));
  rec.checks.push_back(flag("split", split_is_valid(r)));
  rec.checks.push_back(ge("product", static_cast<double>(r.A.size()) * r.B.size(), n * n * (n - 1.0) / 4.0));
  if (rec.verdict() == Status::fail) rec.instance = {{"E", set_json(f, e)}};
  return rec;
}

}  // namespace

Plan plan_ThmK(const RunConfig& cfg) {
  Plan plan;
  plan.notes.push_back(
      "the unspecified constant C is replaced by the concrete hypothesis |E|^2(|E|-1)/4 >= 2q^2; "
      "Box(E) >= q/2 is asserted as |Box(E)| >= ceil(q/2)");
  plan.notes.push_back("E is split alternately by sorted index (E1 takes the first element); split rules are re-checked");
  for (const auto& fp : make_fields(cfg)) {
    const Field& f = *fp;
    const std::uint32_t q = f.q();
    if (f.eta(f.from_int(2)) != 1) {
      plan.sweeps.push_back(single(family_name("gate", f), [q] {
        return skip_record("", 0, "2 is not a square in F_q", {{"q", q}});
      }));
      continue;
    }
    std::uint64_t e_min = 2;
    while (e_min * e_min * (e_min - 1) < 8ULL * q * q) ++e_min;

    if (q <= 13) {
      auto masks = std::make_shared<std::vector<std::uint64_t>>(masks_with_popcount(q, 2, 5));
      Sweep s{family_name("inclusion_exhaustive", f), masks->size(), nullptr};
      s.run = [fp, masks](std::size_t i) { return evaluate_box_link(*fp, field_subset((*masks)[i], fp->q())); };
      plan.sweeps.push_back(std::move(s));
    } else {
      const std::string fam = family_name("inclusion_random", f);
      Sweep s{fam, cfg.samples, nullptr};
      s.run = [fp, fam, cfg](std::size_t i) {
        Rng rng = instance_rng(cfg, fam, i);
        return evaluate_box_link(*fp, random_subset(*fp, 1, rng.between(2, 5), rng));
      };
      plan.sweeps.push_back(std::move(s));
    }

    const std::string fam = family_name("chain", f);
    if (e_min > q) {
      plan.sweeps.push_back(single(fam, [q, e_min] {
        return skip_record("", 0,
                           "hypothesis needs |E| >= " + std::to_string(e_min) + " > q; chain checked link by link only",
                           {{"q", q}, {"e_min", e_min}});
      }));
      continue;
    }
    Sweep s{fam, cfg.samples, nullptr};
    s.run = [fp, e_min, fam, cfg](std::size_t i) {
      const Field& f = *fp;
      Rng rng = instance_rng(cfg, fam, i);
      const std::size_t size = rng.between(e_min, std::min<std::uint64_t>(f.q(), e_min + 2));
      const PointSet e = random_subset(f, 1, size, rng);
      const auto r = box_reduction(f, e);
      const double n = static_cast<double>(e.size());
      InstanceRecord rec;
      rec.params = {{"q", f.q()}, {"size_e", e.size()}, {"size_a", r.A.size()}, {"size_b", r.B.size()}};
      rec.hypothesis_met = n * n * (n - 1.0) / 4.0 >= 2.0 * f.q() * f.q();
      const DistanceSet box = box_set(f, e);
      const DistanceSet dist = delta(f, r.A, r.B);
      rec.params["box_size"] = box.size();
      rec.params["distances"] = dist.size();
      // the diagonal is the line of slope 1; R_1 takes it onto the x-axis
      const auto rotated = apply_map(f, rotation_R(f, f.one()), r.B).points();
      const double half = static_cast<double>(half_q_threshold(f.q()));
      rec.checks.push_back(ge("box_half_q", static_cast<double>(box.size()), half));
      rec.checks.push_back(ge("half_q", static_cast<double>(dist.size()), half));
      rec.checks.push_back(flag("box_includes_delta", box.includes(dist)));
      rec.checks.push_back(flag("split", split_is_valid(r)));
      rec.checks.push_back(ge("product", static_cast<double>(r.A.size()) * r.B.size(), 2.0 * f.q() * f.q()));
      rec.checks.push_back(flag("diagonal_rotates_to_axis", std::all_of(
          rotated.begin(), rotated.end(), [&](const Vector& v) { return v[1] == f.zero(); })));
      set_scatter(rec, f, 2, r.A.size(), r.B.size(), dist.size());
      if (rec.verdict() == Status::fail) rec.instance = {{"E", set_json(f, e)}};
      return rec;
    };
    plan.sweeps.push_back(std::move(s));
  }
  return plan;
}

namespace {

InstanceRecord evaluate_bounds(const Field& f, std::size_t d, const PointSet& a, const PointSet& b) {
  InstanceRecord rec;
  rec.params = {{"q", f.q()}, {"d", d}, {"size_a", a.size()}, {"size_b", b.size()}};
  rec.hypothesis_met = true;
  const NuProfile nu = nu_profile(f, a, b);
  const double dist = static_cast<double>(nu.support_size());
  const double ra = max_restriction(f, fourier_indicator(f, a));
  const double rb = max_restriction(f, fourier_indicator(f, b));
  const double bound_ab = distance_lower_bound(f, a.size(), b.size(), d, rb);
  const double bound_ba = distance_lower_bound(f, b.size(), a.size(), d, ra);
  const double cs = cauchy_schwarz_bound(nu);
  const double m2 = static_cast<double>(nu.sum_of_squares());
  rec.params["distances"] = nu.support_size();
  rec.checks.push_back(ge("lower_bound_ab", dist, bound_ab));
  rec.checks.push_back(ge("lower_bound_ba", dist, bound_ba));
  rec.checks.push_back(ge("cauchy_schwarz", dist, cs));
  rec.checks.push_back(ge("cauchy_schwarz_vs_ab", cs, bound_ab));
  rec.checks.push_back(ge("cauchy_schwarz_vs_ba", cs, bound_ba));
  rec.checks.push_back(le("second_moment_ab", m2, second_moment_upper(f, a.size(), b.size(), d, rb)));
  rec.checks.push_back(le("second_moment_ba", m2, second_moment_upper(f, b.size(), a.size(), d, ra)));
  rec.checks.push_back(ge("shparlinski", dist, shparlinski_bound(f.q(), a.size(), b.size(), d)));
  set_scatter(rec, f, d, a.size(), b.size(), nu.support_size());
  if (rec.verdict() == Status::fail) rec.instance = {{"A", set_json(f, a)}, {"B", set_json(f, b)}};
  return rec;
}

}  // namespace

Plan plan_DistFormula(const RunConfig& cfg) {
  Plan plan;
  plan.notes.push_back("the bound is checked in both orders (A, B) and (B, A); max_t R_t ranges over all t including 0");
  for (const auto& fp : make_fields(cfg)) {
    const Field& f = *fp;
    for (std::size_t d : cfg.dims) {
      const std::uint64_t n = universe(f, d);
      require_within_limit(saturating_mul(n, n), "Fourier tables for DistFormula");
      if (f.q() == 3 && d == 2) {
        plan.sweeps.push_back(single(family_name("worked", f, d), [fp, d] {
          const Field& f = *fp;
          auto rec = evaluate_bounds(f, d, full_space(f, d), CoordinatePlane({0}, d).enumerate(f));
          rec.note = "A = F_3^2, B = x-axis";
          return rec;
        }));
      }
      const std::string fam = family_name("random", f, d);
      Sweep s{fam, cfg.samples, nullptr};
      s.run = [fp, d, n, fam, cfg](std::size_t i) {
        Rng rng = instance_rng(cfg, fam, i);
        const PointSet a = random_subset(*fp, d, rng.between(1, n), rng);
        const PointSet b = random_subset(*fp, d, rng.between(1, n), rng);
        return evaluate_bounds(*fp, d, a, b);
      };
      plan.sweeps.push_back(std::move(s));
    }
  }
  return plan;
}

Plan plan_Shparlinski(const RunConfig& cfg) {
  Plan plan;
  plan.notes.push_back("random pairs of uniform size, and pairs with |A||B| near q^{d+1} where the minimum switches");
  for (const auto& fp : make_fields(cfg)) {
    const Field& f = *fp;
    for (std::size_t d : cfg.dims) {
      const std::uint64_t n = universe(f, d);
      auto evaluate = [fp, d](const PointSet& a, const PointSet& b) {
        const Field& f = *fp;
        InstanceRecord rec;
        rec.params = {{"q", f.q()}, {"d", d}, {"size_a", a.size()}, {"size_b", b.size()}};
        rec.hypothesis_met = true;
        const std::size_t dist = delta(f, a, b).size();
        rec.params["distances"] = dist;
        rec.checks.push_back(ge("shparlinski", static_cast<double>(dist), shparlinski_bound(f.q(), a.size(), b.size(), d)));
        set_scatter(rec, f, d, a.size(), b.size(), dist);
        if (rec.verdict() == Status::fail) rec.instance = {{"A", set_json(f, a)}, {"B", set_json(f, b)}};
        return rec;
      };
      const std::string fam = family_name("random", f, d);
      Sweep s{fam, cfg.samples, nullptr};
      s.run = [fp, d, n, fam, cfg, evaluate](std::size_t i) {
        Rng rng = instance_rng(cfg, fam, i);
        const PointSet a = random_subset(*fp, d, rng.between(1, n), rng);
        const PointSet b = random_subset(*fp, d, rng.between(1, n), rng);
        return evaluate(a, b);
      };
      plan.sweeps.push_back(std::move(s));

      const std::string near = family_name("near_switch", f, d);
      Sweep t{near, cfg.samples, nullptr};
      t.run = [fp, d, n, near, cfg, evaluate](std::size_t i) {
        Rng rng = instance_rng(cfg, near, i);
        const std::uint64_t target = n * fp->q();
        const std::size_t size_a = rng.between(std::max<std::uint64_t>(1, target / n), n);
        const double scale = 0.5 + rng.below(1001) / 1000.0;
        const auto size_b = static_cast<std::uint64_t>(
            std::clamp(std::llround(scale * static_cast<double>(target) / size_a), 1LL, static_cast<long long>(n)));
        const PointSet a = random_subset(*fp, d, size_a, rng);
        const PointSet b = random_subset(*fp, d, size_b, rng);
        return evaluate(a, b);
      };
      plan.sweeps.push_back(std::move(t));
    }
  }
  return plan;
}

}  // namespace fqdist::detail
