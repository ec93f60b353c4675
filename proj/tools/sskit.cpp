// Command-line driver for the sampling/search toolkit: lemma verification
// suites, parameter sweeps, bounded-complexity queries and membership tests,
// all seeded and reproducible.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sskit/report.hpp"
#include "sskit/suites.hpp"

namespace {

void addCommonOptions(CLI::App* cmd, sskit::ExperimentConfig& config) {
  cmd->add_option("--dist", config.distPath, "distribution file");
  cmd->add_option("--k", config.k, "accuracy parameter; delta = 2^-k");
  cmd->add_option_function<std::string>(
      "--exponent", [&config](const std::string& v) { config.exponent = sskit::ratFromString(v); },
      "arity exponent in N = ceil(m * 2^(exponent*k)) (default 2.1)");
  cmd->add_option("--trials", config.trials, "Monte Carlo / randomized instance count");
  cmd->add_option("--seed", config.seed, "master seed");
  cmd->add_option("--lmax", config.budget.lmax, "max program length for K enumeration");
  cmd->add_option("--steps", config.budget.exec.maxSteps, "max interpreter steps");
  cmd->add_option("--cells", config.budget.exec.maxCells, "max tape cells");
  cmd->add_option("--output-cap", config.budget.exec.maxOutputBits, "max output bits");
  cmd->add_option("--width", config.width, "instance width when no --dist is given");
  cmd->add_option("--cmax", config.cMax, "deficiency parameter range upper bound");
  cmd->add_option("--precision", config.precisionBits, "fixed-point fraction bits for KL");
  cmd->add_option("--jobs", config.jobs, "worker count (results are identical for any value)");
  cmd->add_option("--searcher", config.searcherDescriptor,
                  "machine searcher descriptor machine:bits:<len>:0x<hex>,rho=<n>");
  cmd->add_option("--out", config.outPath, "report path (JSON)");
}

std::vector<sskit::BitString> loadTuple(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sskit::FormatError("cannot open tuple file: " + path);
  std::vector<sskit::BitString> tuple;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) tuple.emplace_back(line);
  }
  return tuple;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sampling/search equivalence toolkit"};
  app.require_subcommand(1);

  sskit::ExperimentConfig config;
  for (const auto& name : sskit::kSuiteNames) {
    CLI::App* cmd = app.add_subcommand(name, "run the " + name + " verification suite");
    addCommonOptions(cmd, config);
    cmd->callback([&config, name]() { config.suite = name; });
  }

  std::string axis;
  std::string valuesCsv;
  std::string sweepSuite;
  std::string csvOut;
  CLI::App* sweepCmd = app.add_subcommand("sweep", "run a suite across an axis of values");
  addCommonOptions(sweepCmd, config);
  sweepCmd->add_option("--suite", sweepSuite, "suite to sweep")->required();
  sweepCmd->add_option("--axis", axis, "k | m | L_max | T | trials | exponent")->required();
  sweepCmd->add_option("--values", valuesCsv, "comma-separated axis values")->required();
  sweepCmd->add_option("--csv", csvOut, "summary CSV path");

  std::string targetLiteral;
  std::string condDist;
  int condK = 0;
  CLI::App* kCmd = app.add_subcommand("k", "bounded conditional complexity of a bit string");
  addCommonOptions(kCmd, config);
  kCmd->add_option("--target", targetLiteral, "bits:<len>:0x<hex>")->required();
  kCmd->add_option("--cond", condDist, "conditioning distribution file (encoded with --cond-k)");
  kCmd->add_option("--cond-k", condK, "k folded into the conditioning string");

  std::string tuplePath;
  CLI::App* memberCmd = app.add_subcommand("member", "exact membership test for a tuple");
  addCommonOptions(memberCmd, config);
  memberCmd->add_option("--tuple", tuplePath, "file with one bit string per line")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweepCmd->parsed()) {
      config.suite = sweepSuite;
      std::vector<std::string> values;
      std::stringstream ss(valuesCsv);
      std::string item;
      while (std::getline(ss, item, ',')) values.push_back(item);
      sskit::SweepResult result = sskit::sweep(config, axis, values);
      if (!csvOut.empty()) {
        std::ofstream out(csvOut);
        out << result.csv;
      } else {
        std::cout << result.csv;
      }
      bool all = true;
      for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const auto& rep = result.reports[i];
        if (!config.outPath.empty()) {
          rep.write(config.outPath + "." + values[i] + ".json");
        }
        all = all && rep.pass;
      }
      return all ? 0 : 1;
    }

    if (kCmd->parsed()) {
      sskit::BitString target = sskit::BitString::parseLiteral(targetLiteral);
      sskit::BitString z;
      if (!condDist.empty()) {
        z = sskit::zEncoding(sskit::FiniteDistribution::load(condDist), condK);
      }
      sskit::KResult result = sskit::kBounded(target, z, config.budget);
      sskit::Json j;
      j["y"] = target.str();
      if (result.infinite()) {
        j["k"] = "inf";
        j["witness"] = nullptr;
      } else {
        j["k"] = *result.value;
        j["witness"] = result.witness->literal();
      }
      j["budget"] = sskit::budgetToJson(config.budget);
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (memberCmd->parsed()) {
      sskit::FiniteDistribution d = sskit::experimentDistribution(config);
      sskit::ReductionParams params =
          sskit::deriveParams(d.width(), config.k, config.exponent);
      auto tuple = loadTuple(tuplePath);
      bool member = sskit::membership(tuple, d, params, config.budget);
      sskit::Json j;
      j["member"] = member;
      j["arity"] = params.arity;
      j["beta"] = params.beta;
      j["budget"] = sskit::budgetToJson(config.budget);
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    sskit::Report rep = sskit::runSuite(config);
    std::cout << rep.toJsonString();
    if (!rep.pass) {
      for (const auto& check : rep.checks) {
        if (!check.pass) {
          std::cerr << "FAILED: " << check.name << " (lhs " << check.lhs << ", rhs "
                    << check.rhs << ")\n";
        }
      }
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
