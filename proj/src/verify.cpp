#include "fqdist/verify.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "fqdist/errors.hpp"
#include "fqdist/limits.hpp"
#include "fqdist/report.hpp"
#include "verify_detail.hpp"

namespace fqdist {

namespace {

constexpr std::size_t kChunk = 512;

nlohmann::json check_json(const Check& c) {
  return {{"name", c.name},
          {"relation", c.rel == Relation::ge ? ">=" : "<="},
          {"lhs", round12(c.lhs)},
          {"rhs", round12(c.rhs)},
          {"asserted", c.asserted},
          {"holds", c.holds()}};
}

nlohmann::json failure_dump(const RunConfig& cfg, const InstanceRecord& rec) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rec.checks) checks.push_back(check_json(c));
  return {{"theorem_id", cfg.theorem_id},
          {"family", rec.family},
          {"index", rec.index},
          {"seed", cfg.seed},
          {"params", rec.params},
          {"hypothesis_met", rec.hypothesis_met},
          {"checks", checks},
          {"note", rec.note},
          {"instance", rec.instance}};
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skip: return "SKIP";
  }
  return "?";
}

void RunConfig::validate() const {
  const auto& ids = theorem_ids();
  if (std::find(ids.begin(), ids.end(), theorem_id) == ids.end()) {
    throw ConfigError("unknown theorem id '" + theorem_id + "'");
  }
  if (fields.empty()) throw ConfigError("no fields configured");
  for (const auto& fs : fields) {
    if (fs.p == 2 || !is_prime(fs.p)) throw ConfigError("p must be an odd prime, got " + std::to_string(fs.p));
    if (fs.ell == 0) throw ConfigError("ell must be positive");
    if (checked_pow(fs.p, fs.ell) > kMaxFieldOrder) throw ConfigError("field order too large");
  }
  if (dims.empty()) throw ConfigError("no dimensions configured");
  for (auto d : dims)
    if (d == 0) throw ConfigError("dimension must be positive");
  for (double d : deltas)
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (samples == 0) throw ConfigError("samples must be positive");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : fields) {
    fs.push_back({{"p", f.p}, {"ell", f.ell}, {"q", checked_pow(f.p, f.ell)}});
  }
  nlohmann::json ds = nlohmann::json::array();
  for (double d : deltas) ds.push_back(round12(d));
  return {{"fields", fs},          {"dims", dims},       {"deltas", ds},
          {"alpha", round12(alpha)}, {"samples", samples}, {"max_universe", max_universe()}};
}

bool Check::holds() const {
  if (rel == Relation::ge) return lhs >= rhs - tol;
  return lhs <= rhs + tol;
}

double Check::margin() const { return rel == Relation::ge ? lhs - rhs : rhs - lhs; }

Status InstanceRecord::verdict() const {
  for (const auto& c : checks)
    if (c.asserted && !c.holds()) return Status::fail;
  return hypothesis_met ? Status::pass : Status::skip;
}

const Check* InstanceRecord::primary() const {
  for (const auto& c : checks)
    if (c.asserted) return &c;
  return checks.empty() ? nullptr : &checks.front();
}

Status FamilySummary::status() const {
  if (failures > 0) return Status::fail;
  return hypothesis_met > 0 ? Status::pass : Status::skip;
}

Status VerificationReport::status() const {
  if (!failures.empty()) return Status::fail;
  return hypothesis_met > 0 ? Status::pass : Status::skip;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json fams = nlohmann::json::object();
  for (const auto& [name, s] : families) {
    fams[name] = {{"status", to_string(s.status())},
                  {"instances", s.instances},
                  {"hypothesis_met", s.hypothesis_met},
                  {"skipped", s.skipped},
                  {"failures", s.failures},
                  {"min_margin", s.min_margin ? nlohmann::json(round12(*s.min_margin)) : nlohmann::json()}};
  }
  return {{"theorem_id", theorem_id},
          {"status", to_string(status())},
          {"seed", seed},
          {"params", params},
          {"instances_tested", instances_tested},
          {"hypothesis_met", hypothesis_met},
          {"skipped", skipped},
          {"aborted", aborted},
          {"families", fams},
          {"notes", notes},
          {"failures", failures}};
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

VerificationReport run_plan(const RunConfig& cfg, const Plan& plan) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.theorem_id = cfg.theorem_id;
  r.params = cfg.to_json();
  r.seed = cfg.seed;
  r.notes = plan.notes;

  for (const auto& sweep : plan.sweeps) {
    auto& fam = r.families[sweep.family];
    for (std::size_t base = 0; base < sweep.count && !r.aborted; base += kChunk) {
      const std::size_t n = std::min(kChunk, sweep.count - base);
      std::vector<InstanceRecord> buf(n);
      parallel_for(n, cfg.threads, [&](std::size_t i) { buf[i] = sweep.run(base + i); });
      for (std::size_t i = 0; i < n; ++i) {
        InstanceRecord& rec = buf[i];
        rec.family = sweep.family;
        rec.index = base + i;
        const Status v = rec.verdict();
        ++fam.instances;
        ++r.instances_tested;
        if (rec.hypothesis_met) {
          ++fam.hypothesis_met;
          ++r.hypothesis_met;
        } else {
          ++fam.skipped;
          ++r.skipped;
        }
        if (const Check* c = rec.primary(); c && c->asserted) {
          fam.min_margin = fam.min_margin ? std::min(*fam.min_margin, c->margin()) : c->margin();
        }
        if (v == Status::fail) {
          ++fam.failures;
          r.failures.push_back(failure_dump(cfg, rec));
          r.aborted = true;
        } else {
          rec.instance = nullptr;
        }
        r.instances.push_back(std::move(rec));
        if (r.aborted) break;
      }
    }
    if (r.aborted) {
      r.notes.push_back("sweep stopped at the first failing instance");
      break;
    }
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "mainthm",   "mainthmC", "maincor", "ProK",      "ProRes",    "ThmK",  "Shparlinski", "DistFormula",
      "SphereSize", "defVFT",  "lemCon",  "P1.1-odd", "P1.1-even", "Corm",  "ComSqu",      "formulas"};
  return ids;
}

Plan make_plan(const RunConfig& cfg) {
  cfg.validate();
  const std::string& id = cfg.theorem_id;
  if (id == "mainthm") return detail::plan_mainthm(cfg);
  if (id == "mainthmC") return detail::plan_mainthmC(cfg);
  if (id == "maincor") return detail::plan_maincor(cfg);
  if (id == "ProK") return detail::plan_ProK(cfg);
  if (id == "ThmK") return detail::plan_ThmK(cfg);
  if (id == "DistFormula") return detail::plan_DistFormula(cfg);
  if (id == "Shparlinski") return detail::plan_Shparlinski(cfg);
  if (id == "P1.1-odd") return detail::plan_P11(cfg, true);
  if (id == "P1.1-even") return detail::plan_P11(cfg, false);
  if (id == "formulas") return detail::plan_formulas(cfg, "");
  return detail::plan_formulas(cfg, id);
}

VerificationReport verify(const RunConfig& cfg) { return run_plan(cfg, make_plan(cfg)); }

InstanceRecord replay_instance(const RunConfig& cfg, const std::string& family, std::size_t index) {
  const Plan plan = make_plan(cfg);
  for (const auto& sweep : plan.sweeps) {
    if (sweep.family != family) continue;
    if (index >= sweep.count) {
      throw ConfigError("family '" + family + "' has only " + std::to_string(sweep.count) + " instances");
    }
    InstanceRecord rec = sweep.run(index);
    rec.family = family;
    rec.index = index;
    return rec;
  }
  throw ConfigError("no family '" + family + "' in this configuration");
}

namespace {
VerificationReport verify_as(RunConfig cfg, const char* id) {
  cfg.theorem_id = id;
  return verify(cfg);
}
}  // namespace

VerificationReport verify_mainthm(RunConfig cfg) { return verify_as(std::move(cfg), "mainthm"); }
VerificationReport verify_mainthmC(RunConfig cfg) { return verify_as(std::move(cfg), "mainthmC"); }
VerificationReport verify_ProK(RunConfig cfg) { return verify_as(std::move(cfg), "ProK"); }
VerificationReport verify_maincor(RunConfig cfg) { return verify_as(std::move(cfg), "maincor"); }
VerificationReport verify_ThmK(RunConfig cfg) { return verify_as(std::move(cfg), "ThmK"); }
VerificationReport verify_P11(RunConfig cfg, bool odd) {
  return verify_as(std::move(cfg), odd ? "P1.1-odd" : "P1.1-even");
}
VerificationReport verify_formulas(RunConfig cfg) { return verify_as(std::move(cfg), "formulas"); }
VerificationReport verify_DistFormula(RunConfig cfg) { return verify_as(std::move(cfg), "DistFormula"); }
VerificationReport verify_Shparlinski(RunConfig cfg) { return verify_as(std::move(cfg), "Shparlinski"); }

namespace detail {

std::vector<FieldPtr> make_fields(const RunConfig& cfg) {
  std::vector<FieldPtr> out;
  for (const auto& fs : cfg.fields) out.push_back(std::make_shared<const Field>(Field::make(fs.p, fs.ell)));
  return out;
}

std::uint64_t family_stream(const std::string& family) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : family) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Rng instance_rng(const RunConfig& cfg, const std::string& family, std::size_t index) {
  return Rng::for_instance(cfg.seed, family_stream(family), index);
}

std::string family_name(const std::string& name, const Field& f, std::size_t d) {
  std::string s = name + "/q=" + std::to_string(f.q());
  if (d != 0) s += "/d=" + std::to_string(d);
  return s;
}

InstanceRecord skip_record(const std::string& family, std::size_t index, std::string reason,
                           nlohmann::json params) {
  InstanceRecord rec;
  rec.family = family;
  rec.index = index;
  rec.params = std::move(params);
  rec.hypothesis_met = false;
  rec.note = std::move(reason);
  return rec;
}

Sweep single(std::string family, std::function<InstanceRecord()> run) {
  return Sweep{std::move(family), 1, [run = std::move(run)](std::size_t) { return run(); }};
}

}  // namespace detail

}  // namespace fqdist
