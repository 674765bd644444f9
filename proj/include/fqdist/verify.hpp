#pragma once

// Verification sweeps. Each verifier expands a RunConfig into named sweeps
// ("families"); instance i of a family is generated from its own RNG stream,
// so any instance can be replayed alone from (seed, family, index).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fqdist {

enum class Status { pass, fail, skip };
std::string to_string(Status s);

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t ell = 1;
};

struct RunConfig {
  std::string theorem_id;
  std::vector<FieldSpec> fields{{5, 1}};
  std::vector<std::size_t> dims{2};
  std::vector<double> deltas{0.3, 0.5, 0.7};
  double alpha = 1.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
  std::string out_dir;

  /// Throws ConfigError on bad values (even q, samples = 0, ...).
  void validate() const;
  nlohmann::json to_json() const;
};

enum class Relation { ge, le };

/// One inequality evaluated on an instance: lhs >= rhs or lhs <= rhs, up to tol.
struct Check {
  std::string name;
  Relation rel = Relation::ge;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
  /// Unasserted checks are recorded but cannot fail the instance.
  bool asserted = true;

  bool holds() const;
  /// Signed slack: positive when the inequality holds with room.
  double margin() const;
};

struct InstanceRecord {
  std::string family;
  std::size_t index = 0;
  nlohmann::json params = nlohmann::json::object();
  bool hypothesis_met = false;
  std::vector<Check> checks;
  std::string note;
  /// (|A||B| / q^d, |Delta| / q) when the instance has a distance set.
  std::optional<std::pair<double, double>> scatter;
  /// Full instance data; filled only for failing instances.
  nlohmann::json instance;

  Status verdict() const;
  /// The first asserted check, or the first check; used for the lhs/rhs columns.
  const Check* primary() const;
};

struct FamilySummary {
  std::size_t instances = 0;
  std::size_t hypothesis_met = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  /// Smallest slack of the primary check over the family.
  std::optional<double> min_margin;
  Status status() const;
};

struct VerificationReport {
  std::string theorem_id;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::size_t instances_tested = 0;
  std::size_t hypothesis_met = 0;
  std::size_t skipped = 0;
  std::vector<InstanceRecord> instances;
  std::vector<nlohmann::json> failures;
  std::vector<std::string> notes;
  std::map<std::string, FamilySummary> families;
  bool aborted = false;
  double runtime_ms = 0.0;  // kept out of to_json()

  Status status() const;
  /// Deterministic summary; per-instance rows go to the CSV.
  nlohmann::json to_json() const;
};

/// One family of instances: run(i) must depend only on i and captured state.
struct Sweep {
  std::string family;
  std::size_t count = 0;
  std::function<InstanceRecord(std::size_t)> run;
};

struct Plan {
  std::vector<Sweep> sweeps;
  std::vector<std::string> notes;
};

/// Theorem ids accepted by make_plan / verify.
const std::vector<std::string>& theorem_ids();

/// Expand cfg into sweeps for cfg.theorem_id. Throws ConfigError for an
/// unknown id or parameters the verifier cannot use.
Plan make_plan(const RunConfig& cfg);

/// Run every sweep. Instances run in parallel in chunks and are reduced in
/// index order; the sweep stops after the first failing instance.
VerificationReport run_plan(const RunConfig& cfg, const Plan& plan);
VerificationReport verify(const RunConfig& cfg);

/// Rerun instance `index` of `family` only.
InstanceRecord replay_instance(const RunConfig& cfg, const std::string& family, std::size_t index);

/// Calls fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// Individual verifiers; each is make_plan for its id followed by run_plan.
VerificationReport verify_mainthm(RunConfig cfg);
VerificationReport verify_mainthmC(RunConfig cfg);
VerificationReport verify_ProK(RunConfig cfg);
VerificationReport verify_maincor(RunConfig cfg);
VerificationReport verify_ThmK(RunConfig cfg);
VerificationReport verify_P11(RunConfig cfg, bool odd);
VerificationReport verify_formulas(RunConfig cfg);
VerificationReport verify_DistFormula(RunConfig cfg);
VerificationReport verify_Shparlinski(RunConfig cfg);

}  // namespace fqdist
