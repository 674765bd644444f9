#include <doctest.h>

#include <sstream>

#include "fqdist/errors.hpp"
#include "fqdist/report.hpp"
#include "fqdist/verify.hpp"

using namespace fqdist;

namespace {

RunConfig small_config(const std::string& id) {
  RunConfig cfg;
  cfg.theorem_id = id;
  cfg.fields = {{5, 1}};
  cfg.dims = {2};
  cfg.samples = 200;
  cfg.seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("check relations and margins") {
  Check ge{"x", Relation::ge, 3.0, 2.0, 0.0, true};
  CHECK(ge.holds());
  CHECK(ge.margin() == doctest::Approx(1.0));
  Check le{"x", Relation::le, 3.0, 2.0, 0.0, true};
  CHECK_FALSE(le.holds());
  CHECK(le.margin() == doctest::Approx(-1.0));
  le.tol = 1.5;
  CHECK(le.holds());
}

TEST_CASE("instance verdicts") {
  InstanceRecord rec;
  CHECK(rec.verdict() == Status::skip);
  rec.hypothesis_met = true;
  CHECK(rec.verdict() == Status::pass);
  rec.checks.push_back({"soft", Relation::ge, 0.0, 1.0, 0.0, false});
  CHECK(rec.verdict() == Status::pass);
  rec.checks.push_back({"hard", Relation::ge, 0.0, 1.0, 0.0, true});
  CHECK(rec.verdict() == Status::fail);
  REQUIRE(rec.primary() != nullptr);
  CHECK(rec.primary()->name == "hard");
}

TEST_CASE("run_plan reduces in order and stops at the first failure") {
  RunConfig cfg = small_config("mainthm");
  Plan plan;
  plan.sweeps.push_back({"ok", 1000, [](std::size_t i) {
                           InstanceRecord rec;
                           rec.hypothesis_met = i % 2 == 0;
                           rec.checks.push_back({"c", Relation::ge, double(i), 0.0, 0.0, true});
                           return rec;
                         }});
  plan.sweeps.push_back({"bad", 50, [](std::size_t i) {
                           InstanceRecord rec;
                           rec.hypothesis_met = true;
                           rec.checks.push_back({"c", Relation::ge, 0.0, i == 7 ? 1.0 : 0.0, 0.0, true});
                           rec.instance = {{"i", i}};
                           return rec;
                         }});
  plan.sweeps.push_back({"never", 10, [](std::size_t) { return InstanceRecord{}; }});
  const auto r = run_plan(cfg, plan);
  CHECK(r.status() == Status::fail);
  CHECK(r.aborted);
  CHECK(r.instances_tested == 1008);
  CHECK(r.families.at("ok").hypothesis_met == 500);
  CHECK(r.families.at("ok").status() == Status::pass);
  CHECK(*r.families.at("ok").min_margin == doctest::Approx(0.0));
  CHECK(r.families.at("bad").failures == 1);
  CHECK(r.families.count("never") == 0);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0]["index"] == 7);
  CHECK(r.failures[0]["instance"]["i"] == 7);
  for (std::size_t i = 0; i < 1000; ++i) CHECK(r.instances[i].index == i);
  // Passing instances drop their dumps.
  CHECK(r.instances[1000].instance.is_null());
}

TEST_CASE("empty failure list and no hypotheses gives SKIP") {
  VerificationReport r;
  CHECK(r.status() == Status::skip);
  r.hypothesis_met = 1;
  CHECK(r.status() == Status::pass);
}

TEST_CASE("config validation") {
  RunConfig cfg = small_config("nope");
  CHECK_THROWS_AS(make_plan(cfg), ConfigError);
  cfg = small_config("mainthm");
  cfg.fields = {{4, 1}};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.fields = {{2, 1}};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config("mainthm");
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config("mainthm");
  cfg.deltas = {1.0};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config("mainthm");
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  for (const auto& id : theorem_ids()) {
    cfg = small_config(id);
    CHECK_NOTHROW(cfg.validate());
  }
}

TEST_CASE("verification is deterministic and thread-count independent") {
  RunConfig cfg = small_config("mainthm");
  cfg.threads = 1;
  const auto a = verify(cfg).to_json().dump();
  cfg.threads = 4;
  const auto b = verify(cfg).to_json().dump();
  CHECK(a == b);
  cfg.seed = 43;
  const auto c = verify(cfg).to_json().dump();
  CHECK(a != c);
  CHECK(c.find("\"seed\":43") != std::string::npos);
}

TEST_CASE("replay reproduces the swept record") {
  RunConfig cfg = small_config("mainthm");
  cfg.fields = {{3, 1}};
  const auto r = verify(cfg);
  for (std::size_t k : {std::size_t{0}, std::size_t{4100}, std::size_t{4200}, std::size_t{4335}}) {
    REQUIRE(k < r.instances.size());
    const auto& rec = r.instances[k];
    const auto again = replay_instance(cfg, rec.family, rec.index);
    CHECK(again.verdict() == rec.verdict());
    REQUIRE(again.checks.size() == rec.checks.size());
    for (std::size_t i = 0; i < rec.checks.size(); ++i) {
      CHECK(again.checks[i].lhs == rec.checks[i].lhs);
      CHECK(again.checks[i].rhs == rec.checks[i].rhs);
    }
    CHECK(again.params == rec.params);
  }
  CHECK_THROWS_AS(replay_instance(cfg, "missing", 0), ConfigError);
  CHECK_THROWS_AS(replay_instance(cfg, r.instances[0].family, 1u << 20), ConfigError);
}

TEST_CASE("every verifier passes on a small configuration") {
  for (const auto& id : theorem_ids()) {
    RunConfig cfg = small_config(id);
    cfg.fields = {{7, 1}};
    cfg.dims = {2, 3};
    cfg.samples = 100;
    const auto r = verify(cfg);
    INFO(id);
    CHECK(r.status() != Status::fail);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("report formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0 / 9.0) == "0.222222222222");
  CHECK(round12(1.0 / 3.0) == doctest::Approx(1.0 / 3.0));

  VerificationReport r;
  r.theorem_id = "t";
  InstanceRecord rec;
  rec.family = "f";
  rec.index = 3;
  rec.hypothesis_met = true;
  rec.note = "a, \"b\"";
  rec.checks.push_back({"c", Relation::ge, 2.0, 1.0, 0.0, true});
  rec.scatter = std::make_pair(0.5, 0.25);
  r.instances.push_back(rec);

  std::ostringstream inst;
  write_instances_csv(inst, r);
  CHECK(inst.str() ==
        "family,index,hypothesis_met,verdict,check,lhs,rhs,note\n"
        "f,3,1,PASS,c,2,1,\"a, \"\"b\"\"\"\n");
  std::ostringstream sc;
  write_scatter_csv(sc, r);
  CHECK(sc.str() == "family,index,x,y\nf,3,0.5,0.25\n");
}
