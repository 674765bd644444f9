#pragma once

// Shared plumbing for the verifier plans. Not installed.

#include <cmath>
#include <memory>
#include <string>

#include "fqdist/field.hpp"
#include "fqdist/geometry.hpp"
#include "fqdist/pointset_io.hpp"
#include "fqdist/random.hpp"
#include "fqdist/verify.hpp"

namespace fqdist::detail {

using FieldPtr = std::shared_ptr<const Field>;

std::vector<FieldPtr> make_fields(const RunConfig& cfg);

/// FNV-1a of the family name; the RNG stream id for that family.
std::uint64_t family_stream(const std::string& family);
Rng instance_rng(const RunConfig& cfg, const std::string& family, std::size_t index);

/// "<name>/q=<q>/d=<d>"; d omitted when zero.
std::string family_name(const std::string& name, const Field& f, std::size_t d = 0);

inline double rel_tol(double x) { return 1e-9 * std::max(1.0, std::abs(x)); }

inline Check ge(std::string name, double lhs, double rhs, bool asserted = true) {
  return Check{std::move(name), Relation::ge, lhs, rhs, rel_tol(rhs), asserted};
}
inline Check le(std::string name, double lhs, double rhs, bool asserted = true) {
  return Check{std::move(name), Relation::le, lhs, rhs, rel_tol(rhs), asserted};
}
/// |error| <= tol with an absolute tolerance.
inline Check within(std::string name, double error, double tol) {
  return Check{std::move(name), Relation::le, error, tol, 0.0, true};
}

inline double qpow(const Field& f, double e) { return std::pow(static_cast<double>(f.q()), e); }

inline nlohmann::json set_json(const Field& f, const PointSet& s) { return pointset_to_json(s, f.q()); }

/// Record whose hypothesis cannot be met; it never counts as a failure.
InstanceRecord skip_record(const std::string& family, std::size_t index, std::string reason,
                           nlohmann::json params = nlohmann::json::object());

/// Sweep with a single instance.
Sweep single(std::string family, std::function<InstanceRecord()> run);

Plan plan_mainthm(const RunConfig& cfg);
Plan plan_mainthmC(const RunConfig& cfg);
Plan plan_ProK(const RunConfig& cfg);
Plan plan_maincor(const RunConfig& cfg);
Plan plan_ThmK(const RunConfig& cfg);
Plan plan_DistFormula(const RunConfig& cfg);
Plan plan_Shparlinski(const RunConfig& cfg);
/// `only` selects one formula family (Corm, ComSqu, SphereSize, defVFT,
/// lemCon, ProRes); empty runs all of them.
Plan plan_formulas(const RunConfig& cfg, const std::string& only);
Plan plan_P11(const RunConfig& cfg, bool odd);

}  // namespace fqdist::detail
