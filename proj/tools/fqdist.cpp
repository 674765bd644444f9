// fqdist command line: verification sweeps, constructions and set reports.

#include <algorithm>
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "fqdist/constructions.hpp"
#include "fqdist/distance.hpp"
#include "fqdist/errors.hpp"
#include "fqdist/field.hpp"
#include "fqdist/pointset_io.hpp"
#include "fqdist/report.hpp"
#include "fqdist/spectral.hpp"
#include "fqdist/verify.hpp"

using namespace fqdist;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

Field field_for_order(std::uint32_t q) {
  const auto pe = prime_power(q);
  if (!pe || pe->first == 2) throw ConfigError("q = " + std::to_string(q) + " is not an odd prime power");
  return Field::make(pe->first, pe->second);
}

/// Loads both sets and checks they live in the same F_q^d.
std::pair<LoadedPointSet, LoadedPointSet> load_pair(const std::string& a, const std::string& b) {
  auto sa = read_pointset_csv_file(a);
  auto sb = read_pointset_csv_file(b);
  if (sa.q != sb.q) throw ConfigError("set files use different q");
  if (sa.points.dim() != sb.points.dim()) throw ConfigError("set files use different dimensions");
  return {std::move(sa), std::move(sb)};
}

/// Writes to `path`, or stdout when path is empty.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

struct VerifyArgs {
  std::string theorem_id;
  std::vector<std::uint32_t> p;
  std::vector<std::uint32_t> ell{1};
  std::vector<std::size_t> dims{2};
  std::vector<double> deltas;
  double alpha = 1.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::string instance;
};

RunConfig to_config(const VerifyArgs& a) {
  RunConfig cfg;
  cfg.theorem_id = a.theorem_id;
  if (a.ell.size() != 1 && a.ell.size() != a.p.size()) throw ConfigError("give one --ell, or one per --p");
  cfg.fields.clear();
  for (std::size_t i = 0; i < a.p.size(); ++i) cfg.fields.push_back({a.p[i], a.ell.size() == 1 ? a.ell[0] : a.ell[i]});
  cfg.dims = a.dims;
  if (!a.deltas.empty()) cfg.deltas = a.deltas;
  cfg.alpha = a.alpha;
  cfg.samples = a.samples;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.out_dir = a.out;
  return cfg;
}

int run_verify(const VerifyArgs& a) {
  const RunConfig cfg = to_config(a);
  if (!a.instance.empty()) {
    const auto colon = a.instance.rfind(':');
    if (colon == std::string::npos) throw ConfigError("--instance expects <family>:<index>");
    const std::string family = a.instance.substr(0, colon);
    std::size_t index = 0;
    try {
      index = std::stoul(a.instance.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("--instance index is not a number");
    }
    const InstanceRecord rec = replay_instance(cfg, family, index);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rec.checks) {
      checks.push_back({{"name", c.name}, {"lhs", round12(c.lhs)}, {"rhs", round12(c.rhs)}, {"holds", c.holds()},
                        {"asserted", c.asserted}});
    }
    const nlohmann::json out = {{"family", rec.family}, {"index", rec.index},  {"verdict", to_string(rec.verdict())},
                                {"params", rec.params}, {"checks", checks},    {"note", rec.note},
                                {"instance", rec.instance}};
    std::cout << out.dump(2) << '\n';
    return rec.verdict() == Status::fail ? kExitFail : 0;
  }
  const VerificationReport r = verify(cfg);
  emit_report(r, a.out);
  std::cout << r.theorem_id << ": " << to_string(r.status()) << " (instances " << r.instances_tested
            << ", hypothesis met " << r.hypothesis_met << ", skipped " << r.skipped << ", failures "
            << r.failures.size() << ")\n";
  return r.status() == Status::fail ? kExitFail : 0;
}

int run_construct(std::uint32_t p, std::uint32_t ell, std::size_t d, double dl, const std::string& out) {
  const Field f = Field::make(p, ell);
  const auto recipe = counterexample(f, d, dl);
  const DistanceSet actual = delta(f, recipe.A, recipe.A, recipe.Q);
  nlohmann::json j = recipe.to_json();
  j["delta"] = round12(dl);
  j["A_size_over_reference"] = round12(j["A_size_over_reference"].get<double>());
  j["field"] = f.descriptor();
  nlohmann::json values = nlohmann::json::array();
  for (auto v : actual.values()) values.push_back(v.index);
  j["actual_delta_Q"] = values;
  j["actual_delta_Q_size"] = actual.size();
  j["identity_holds"] = actual == recipe.predicted;

  std::filesystem::create_directories(out);
  const std::string stem = out + "/construct_q" + std::to_string(f.q()) + "_d" + std::to_string(d) + "_delta" +
                           format_double(dl);
  write_text(stem + ".json", j.dump(2) + "\n");
  write_pointset_csv_file(stem + ".csv", recipe.A, f.q());
  std::cout << stem << ".json: |A| = " << recipe.A.size() << ", |Delta_Q| = " << actual.size() << ", q = " << f.q()
            << '\n';
  return actual == recipe.predicted ? 0 : kExitFail;
}

int run_delta(const std::string& set_a, const std::string& set_b, const std::string& out) {
  const auto [a, b] = load_pair(set_a, set_b);
  const Field f = field_for_order(a.q);
  const DistanceSet dist = delta(f, a.points, b.points);
  nlohmann::json values = nlohmann::json::array();
  for (auto v : dist.values()) values.push_back(v.index);
  const std::size_t d = a.points.dim();
  const nlohmann::json j = {
      {"q", f.q()},
      {"dim", d},
      {"size_a", a.points.size()},
      {"size_b", b.points.size()},
      {"values", values},
      {"size", dist.size()},
      {"distance_lower_bound", round12(distance_lower_bound(f, a.points, b.points))},
      {"distance_lower_bound_reversed", round12(distance_lower_bound(f, b.points, a.points))},
      {"shparlinski_bound", round12(shparlinski_bound(f.q(), a.points.size(), b.points.size(), d))}};
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int run_field_info(std::uint32_t p, std::uint32_t ell) {
  const Field f = Field::make(p, ell);
  nlohmann::json j = f.descriptor();
  const auto g1 = f.gauss_sum(f.one());
  j["q"] = f.q();
  j["eta_minus_one"] = f.eta(f.neg(f.one()));
  j["two_is_square"] = f.eta(f.from_int(2)) == 1;
  j["gauss_sum"] = {round12(g1.real()), round12(g1.imag())};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_restriction_report(const std::string& set_b, const std::string& out) {
  const auto b = read_pointset_csv_file(set_b);
  const Field f = field_for_order(b.q);
  const auto profile = restriction_profile(f, fourier_indicator(f, b.points));
  const double bound = 2.0 * b.points.size() * std::pow(static_cast<double>(f.q()), -static_cast<double>(b.points.dim()) - 1.0);
  std::string text = "t,R_t,bound_2q^{-d-1}|B|,slack\n";
  for (std::uint32_t t = 0; t < f.q(); ++t) {
    // rounding residue of cancelling character sums prints as 0
    const double r = std::abs(profile[t]) < 1e-12 * std::max(1.0, bound) ? 0.0 : profile[t];
    text += std::to_string(t) + ',' + format_double(r) + ',' + format_double(bound) + ',' +
            format_double(bound - r) + '\n';
  }
  write_text(out, text);
  return 0;
}

int run_nu_report(const std::string& set_a, const std::string& set_b, const std::string& out) {
  const auto [a, b] = load_pair(set_a, set_b);
  const Field f = field_for_order(a.q);
  const auto nu = nu_profile(f, a.points, b.points);
  std::string text = "t,nu\n";
  for (std::uint32_t t = 0; t < f.q(); ++t) text += std::to_string(t) + ',' + std::to_string(nu.counts[t]) + '\n';
  write_text(out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance sets over finite fields: verification sweeps and constructions"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification sweep and write reports");
  std::string ids;
  for (const auto& id : theorem_ids()) ids += (ids.empty() ? "" : ", ") + id;
  verify_cmd->add_option("theorem_id", va.theorem_id, "One of: " + ids)->required();
  verify_cmd->add_option("--p", va.p, "Field characteristic (repeatable)")->required();
  verify_cmd->add_option("--ell", va.ell, "Extension degree (one, or one per --p)");
  verify_cmd->add_option("--dim", va.dims, "Dimension (repeatable)");
  verify_cmd->add_option("--delta", va.deltas, "Construction parameter in (0,1) (repeatable)");
  verify_cmd->add_option("--alpha", va.alpha, "Exponent in (0,1]");
  verify_cmd->add_option("--samples", va.samples, "Random instances per family");
  verify_cmd->add_option("--seed", va.seed, "RNG seed")->required();
  verify_cmd->add_option("--threads", va.threads, "Worker threads (0 = all cores)");
  verify_cmd->add_option("--out", va.out, "Output directory")->required();
  verify_cmd->add_option("--instance", va.instance, "Replay one instance: <family>:<index>");

  std::uint32_t cp = 0, cell = 1;
  std::size_t cdim = 3;
  double cdelta = 0.5;
  std::string cout_dir;
  auto* construct_cmd = app.add_subcommand("construct", "Build a small-distance-set construction");
  construct_cmd->add_option("--p", cp, "Field characteristic")->required();
  construct_cmd->add_option("--ell", cell, "Extension degree");
  construct_cmd->add_option("--dim", cdim, "Dimension >= 2");
  construct_cmd->add_option("--delta", cdelta, "Parameter in (0,1)");
  construct_cmd->add_option("--out", cout_dir, "Output directory")->required();

  std::string set_a, set_b, out_file;
  auto* delta_cmd = app.add_subcommand("delta", "Distance set of two point-set CSV files");
  delta_cmd->add_option("--setA", set_a, "CSV file for A")->required()->check(CLI::ExistingFile);
  delta_cmd->add_option("--setB", set_b, "CSV file for B")->required()->check(CLI::ExistingFile);
  delta_cmd->add_option("--out", out_file, "Output JSON file (default: stdout)");

  std::uint32_t fp = 0, fell = 1;
  auto* info_cmd = app.add_subcommand("field-info", "Describe F_q");
  info_cmd->add_option("--p", fp, "Field characteristic")->required();
  info_cmd->add_option("--ell", fell, "Extension degree");

  std::string rset, rout;
  auto* restr_cmd = app.add_subcommand("restriction-report", "R_t(B) for every t against 2q^{-d-1}|B|");
  restr_cmd->add_option("--set", rset, "CSV file for B")->required()->check(CLI::ExistingFile);
  restr_cmd->add_option("--out", rout, "Output CSV file (default: stdout)");

  std::string nset_a, nset_b, nout;
  auto* nu_cmd = app.add_subcommand("nu-report", "Number of pairs at each distance");
  nu_cmd->add_option("--setA", nset_a, "CSV file for A")->required()->check(CLI::ExistingFile);
  nu_cmd->add_option("--setB", nset_b, "CSV file for B")->required()->check(CLI::ExistingFile);
  nu_cmd->add_option("--out", nout, "Output CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify_cmd) return run_verify(va);
    if (*construct_cmd) return run_construct(cp, cell, cdim, cdelta, cout_dir);
    if (*delta_cmd) return run_delta(set_a, set_b, out_file);
    if (*info_cmd) return run_field_info(fp, fell);
    if (*restr_cmd) return run_restriction_report(rset, rout);
    if (*nu_cmd) return run_nu_report(nset_a, nset_b, nout);
  } catch (const ConsistencyError& e) {
    std::cerr << "fqdist: consistency check failed: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "fqdist: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
