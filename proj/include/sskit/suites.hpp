#pragma once

#include <string>
#include <vector>

#include "sskit/equivalence.hpp"
#include "sskit/report.hpp"

namespace sskit {

struct ExperimentConfig {
  std::string suite;
  std::string distPath;  // distribution file; distText (inline) wins if set
  std::string distText;
  int k = 1;
  Rat exponent{21, 10};
  long trials = 10000;
  std::uint64_t seed = 42;
  KBudget budget;
  int width = 2;  // instance width when no distribution is given
  int cMax = 4;   // deficiency sweep upper bound
  int precisionBits = kDefaultPrecisionBits;
  int jobs = 1;
  std::string outPath;
  // Optional machine searcher descriptor ("machine:bits:<len>:0x<hex>,rho=<n>")
  // for the suites that exercise one; empty selects the honest default.
  std::string searcherDescriptor;
};

// The distribution an experiment runs against: inline text, then file, then
// the uniform distribution of the configured width.
FiniteDistribution experimentDistribution(const ExperimentConfig& config);

// Random exact-rational distribution drawn from the bit source: a nonempty
// support subset with integer weights up to 2^weightBits.
FiniteDistribution randomDistribution(int width, BitSource& bits, bool fullSupport = false,
                                      int weightBits = 8);

// Random explicit tuple distribution whose support stays inside the support
// of d, so divergences against d and its powers are finite.
TupleDistribution randomTupleDistribution(const FiniteDistribution& d, int arity,
                                          BitSource& bits, int weightBits = 6);

// Exact output distribution of the search-to-sample reduction for a machine
// searcher, by enumerating every seed and averaging the coordinate marginals.
FiniteDistribution exactSearchToSampleDistribution(const MachineSearcher& searcher,
                                                   const FiniteDistribution& d,
                                                   const ReductionParams& params,
                                                   const KBudget& budget, int jobs = 1);

extern const std::vector<std::string> kSuiteNames;

// Executes one named suite (kraft, deficiency, shannon-fano, pinsker, rao,
// lemma-stor, lemma-rtos, exclusion, otherdir, end-to-end) and writes the
// report if an output path is configured. Throws on unknown suites or broken
// inputs; check failures are recorded, not thrown.
Report runSuite(const ExperimentConfig& config);

struct SweepResult {
  std::vector<Report> reports;
  std::string csv;
};
// One report per axis value (axis: k, m, L_max, T, trials, exponent) plus a
// CSV summary with one row per check.
SweepResult sweep(const ExperimentConfig& base, const std::string& axis,
                  const std::vector<std::string>& values);

}  // namespace sskit
