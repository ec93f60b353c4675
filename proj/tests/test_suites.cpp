#include <doctest.h>

#include "sskit/errors.hpp"
#include "sskit/suites.hpp"

using namespace sskit;

namespace {

ExperimentConfig smallConfig(const std::string& suite) {
  ExperimentConfig config;
  config.suite = suite;
  config.distText = FiniteDistribution::uniform(2).serialize();
  config.k = 1;
  config.trials = 50;
  config.seed = 13;
  config.budget.lmax = 16;
  return config;
}

}  // namespace

TEST_CASE("unknown suite is rejected") {
  ExperimentConfig config = smallConfig("nope");
  CHECK_THROWS_AS(runSuite(config), Error);
}

TEST_CASE("every suite runs and reports recomputable checks") {
  for (const auto& name : kSuiteNames) {
    ExperimentConfig config = smallConfig(name);
    if (name == "lemma-rtos" || name == "end-to-end") {
      // Keep the seed space tiny for the unit run.
      config.distText = FiniteDistribution::uniform(1).serialize();
    }
    if (name == "otherdir") config.budget.lmax = 19;
    INFO(name);
    Report rep = runSuite(config);
    CHECK(!rep.checks.empty());
    CHECK(rep.suite == name);
    CHECK(rep.isaHash.size() == 16);
    if (name != "exclusion") {
      // The exclusion criterion instance is known-red; everything else must
      // pass on these corpus instances.
      CHECK(rep.pass);
    }
    Json j = rep.toJson();
    CHECK(j.contains("checks"));
    CHECK(j["checks"].size() == rep.checks.size());
  }
}

TEST_CASE("reports are byte-identical for any worker count") {
  for (const auto& name : {"lemma-stor", "lemma-rtos", "end-to-end"}) {
    ExperimentConfig config = smallConfig(name);
    config.distText = FiniteDistribution::uniform(1).serialize();
    config.trials = 200;
    Report one = runSuite(config);
    config.jobs = 3;
    Report three = runSuite(config);
    INFO(name);
    CHECK(one.comparableString() == three.comparableString());
  }
}

TEST_CASE("reports are byte-identical across repeated runs with one seed") {
  ExperimentConfig config = smallConfig("pinsker");
  config.trials = 30;
  Report a = runSuite(config);
  Report b = runSuite(config);
  CHECK(a.comparableString() == b.comparableString());
  config.seed = 14;
  Report c = runSuite(config);
  CHECK(a.comparableString() != c.comparableString());
}

TEST_CASE("sweep produces one report per value and a csv summary") {
  ExperimentConfig config = smallConfig("lemma-stor");
  config.trials = 50;
  SweepResult result = sweep(config, "k", {"0", "1"});
  REQUIRE(result.reports.size() == 2);
  CHECK(result.reports[0].pass);
  CHECK(result.reports[1].pass);
  CHECK(result.csv.rfind("suite,axis,value,pass,check,lhs,rhs,slack,check_pass\n", 0) == 0);
  CHECK(result.csv.find("lemma-stor,k,0,") != std::string::npos);
  CHECK(result.csv.find("lemma-stor,k,1,") != std::string::npos);

  CHECK_THROWS_AS(sweep(config, "widgets", {"1"}), Error);

  SweepResult exp = sweep(config, "exponent", {"2.1", "3"});
  REQUIRE(exp.reports.size() == 2);
  CHECK(exp.reports[1].config["exponent"] == "3/1");
}

TEST_CASE("every sweep axis is honored") {
  ExperimentConfig config = smallConfig("kraft");
  SweepResult lmax = sweep(config, "L_max", {"8", "11"});
  CHECK(lmax.reports[0].config["budget"]["lmax"] == 8);
  CHECK(lmax.reports[1].config["budget"]["lmax"] == 11);

  config = smallConfig("deficiency");
  SweepResult steps = sweep(config, "T", {"512"});
  CHECK(steps.reports[0].config["budget"]["steps"] == 512);

  config = smallConfig("shannon-fano");
  SweepResult widths = sweep(config, "m", {"1", "3"});
  // The m axis regenerates the uniform instance of each width.
  CHECK(widths.reports[0].config["dist"] == FiniteDistribution::uniform(1).serialize());
  CHECK(widths.reports[1].config["dist"] == FiniteDistribution::uniform(3).serialize());

  config = smallConfig("pinsker");
  config.trials = 5;
  SweepResult trials = sweep(config, "trials", {"5", "10"});
  CHECK(trials.reports[1].config["trials"] == 10);
}

TEST_CASE("stor failure decays with beta on the k axis") {
  // The honest sampler's bound 2^-beta halves per k step; the observed
  // failure rate is zero throughout, so the recorded bound must shrink.
  ExperimentConfig config = smallConfig("lemma-stor");
  config.distText = FiniteDistribution::uniform(1).serialize();
  config.trials = 64;
  SweepResult result = sweep(config, "k", {"0", "1", "2"});
  Rat previous = 1;
  for (const auto& rep : result.reports) {
    CHECK(rep.pass);
    Rat bound = ratFromString(rep.checks.at(0).rhs);
    CHECK(bound < previous);
    previous = bound;
  }
}

TEST_CASE("confidence width shrinks as trials grow") {
  KBudget budget;
  budget.lmax = 16;
  FiniteDistribution d = FiniteDistribution::uniform(1);
  ReductionParams params = deriveParams(1, 1);
  StorReport coarse = verifyStor(d, SamplerOracle::exact(), params, 100, 3, budget);
  StorReport fine = verifyStor(d, SamplerOracle::exact(), params, 1600, 3, budget);
  // Zero failures either way, so the Wilson upper bound is the CI width.
  CHECK(fine.wilsonUpper99 < coarse.wilsonUpper99);
  CHECK(fine.wilsonUpper99 < 0.3 * coarse.wilsonUpper99);
}

TEST_CASE("experiment distribution selection order") {
  ExperimentConfig config;
  config.width = 1;
  CHECK(experimentDistribution(config) == FiniteDistribution::uniform(1));
  config.distText = "m=1\n0 1/3\n1 2/3\n";
  CHECK(experimentDistribution(config).prob(BitString("1")) == Rat(2, 3));
}
