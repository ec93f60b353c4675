#include "sskit/suites.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "sskit/errors.hpp"

namespace sskit {
namespace {

Json configEcho(const ExperimentConfig& config, const std::string& dist) {
  Json j;
  j["suite"] = config.suite;
  j["dist"] = dist;
  j["k"] = config.k;
  j["exponent"] = ratToString(config.exponent);
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  j["width"] = config.width;
  j["c_max"] = config.cMax;
  j["budget"] = budgetToJson(config.budget);
  j["precision_bits"] = config.precisionBits;
  if (!config.searcherDescriptor.empty()) j["searcher"] = config.searcherDescriptor;
  return j;
}

Report makeReport(const ExperimentConfig& config, const std::string& dist) {
  Report rep;
  rep.suite = config.suite;
  rep.config = configEcho(config, dist);
  rep.jobs = config.jobs;
  return rep;
}

bool oddParity(const BitString& y) {
  int ones = 0;
  for (std::size_t i = 0; i < y.size(); ++i) ones += y.bit(i);
  return ones % 2 == 1;
}

BitString periodTwoPattern(std::size_t len) {
  BitString y;
  for (std::size_t i = 0; i < len; ++i) y.append(static_cast<int>(i % 2));
  return y;
}

Report suiteKraft(const ExperimentConfig& config) {
  Report rep = makeReport(config, "");
  std::set<std::string> seen;
  long prefixViolations = 0;
  long count = 0;
  Rat kraft = 0;
  forEachProgram(config.budget.lmax, [&](const Program& p) {
    const std::string& raw = p.raw().str();
    for (std::size_t len = 1; len < raw.size(); ++len) {
      if (seen.count(raw.substr(0, len)) != 0) ++prefixViolations;
    }
    seen.insert(raw);
    kraft += pow2(-static_cast<long>(raw.size()));
    ++count;
    return true;
  });
  rep.addCheck({"prefix-free", fmt(prefixViolations), "0", "0/1", prefixViolations == 0,
                std::to_string(count) + " programs enumerated"});
  rep.addCheck({"kraft-sum", fmt(kraft), "1/1", "0/1", kraft <= 1, "exact rational"});
  return rep;
}

Report suiteDeficiency(const ExperimentConfig& config) {
  FiniteDistribution d = experimentDistribution(config);
  Report rep = makeReport(config, d.serialize());
  KTable table(BitString(), config.budget);
  rep.addCheck({"halting-kraft", fmt(table.haltingKraftSum()), "1/1", "0/1",
                table.haltingKraftSum() <= 1, ""});
  for (int c = 0; c <= config.cMax; ++c) {
    DeficiencyReport def = deficiencyCheck(d, c, table);
    rep.addCheck({"deficiency-c" + std::to_string(c), fmt(def.violatingMass),
                  fmt(def.kraftBound), "0/1", def.holds,
                  "dyadic bound " + fmt(def.dyadicBound)});
  }
  return rep;
}

Report suiteShannonFano(const ExperimentConfig& config) {
  FiniteDistribution d = experimentDistribution(config);
  Report rep = makeReport(config, d.serialize());
  CodeBook book = CodeBook::shannonFano(d);

  long lengthMismatches = 0;
  for (const auto& [y, code] : book.codes()) {
    if (static_cast<long>(code.size()) != ceilLog2Inv(d.prob(y))) ++lengthMismatches;
  }
  rep.addCheck({"codeword-lengths", fmt(lengthMismatches), "0", "0/1", lengthMismatches == 0,
                "lengths must equal ceil(log2(1/p))"});

  long prefixViolations = 0;
  for (const auto& [ya, ca] : book.codes()) {
    for (const auto& [yb, cb] : book.codes()) {
      if (ya != yb && ca.isPrefixOf(cb)) ++prefixViolations;
    }
  }
  rep.addCheck({"prefix-free", fmt(prefixViolations), "0", "0/1", prefixViolations == 0, ""});

  long roundTripFailures = 0;
  for (const auto& [y, p] : d.pmf()) {
    if (book.decode(book.encode(y)) != y) ++roundTripFailures;
  }
  rep.addCheck({"round-trip", fmt(roundTripFailures), "0", "0/1", roundTripFailures == 0, ""});
  rep.addCheck({"kraft", fmt(book.kraft()), "1/1", "0/1", book.kraft() <= 1, ""});
  return rep;
}

Report suitePinsker(const ExperimentConfig& config) {
  Report rep = makeReport(config, "");
  long violations = 0;
  SplitMixBits bits(config.seed, 0);
  for (long t = 0; t < config.trials; ++t) {
    int width = 1 + static_cast<int>(sampleUniformIndex(3, bits));
    FiniteDistribution a = randomDistribution(width, bits);
    FiniteDistribution b = randomDistribution(width, bits);
    if (!pinskerCheck(a, b, config.precisionBits).holds) ++violations;
  }
  rep.addCheck({"pinsker-random", fmt(violations), "0", fmt(defaultSlack()), violations == 0,
                std::to_string(config.trials) + " randomized exact-rational instances"});

  PinskerReport same = pinskerCheck(FiniteDistribution::uniform(2),
                                    FiniteDistribution::uniform(2), config.precisionBits);
  rep.addCheck({"pinsker-identical", fmt(same.tv), fmt(same.bound), fmt(same.slack),
                same.holds && same.tv == 0, ""});

  std::map<BitString, Rat> bern14{{BitString("0"), Rat(3, 4)}, {BitString("1"), Rat(1, 4)}};
  PinskerReport bern = pinskerCheck(FiniteDistribution::uniform(1),
                                    FiniteDistribution(1, bern14), config.precisionBits);
  rep.addCheck({"pinsker-bernoulli", fmt(bern.tv), fmt(bern.bound), fmt(bern.slack),
                bern.holds && bern.tv == Rat(1, 4), ""});

  PinskerReport disjoint =
      pinskerCheck(FiniteDistribution::pointMass(BitString("0")),
                   FiniteDistribution::pointMass(BitString("1")), config.precisionBits);
  rep.addCheck({"pinsker-disjoint", fmt(disjoint.tv), fmt(disjoint.bound), fmt(disjoint.slack),
                disjoint.holds && disjoint.kl.infinite, ""});
  return rep;
}

TupleDistribution materializeProduct(const FiniteDistribution& d, int arity) {
  std::map<BitString, Rat> flat;
  std::vector<BitString> support;
  for (const auto& [y, p] : d.pmf()) support.push_back(y);
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  for (;;) {
    BitString key;
    Rat p = 1;
    for (int i = 0; i < arity; ++i) {
      key.append(support[idx[static_cast<std::size_t>(i)]]);
      p *= d.prob(support[idx[static_cast<std::size_t>(i)]]);
    }
    flat.emplace(key, p);
    int pos = arity - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == support.size()) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return TupleDistribution::explicitDist(arity, d.width(), std::move(flat));
}

TupleDistribution randomTupleWithinImpl(const FiniteDistribution& d, int arity,
                                        BitSource& bits, int weightBits) {
  std::vector<BitString> support;
  for (const auto& [y, p] : d.pmf()) support.push_back(y);
  std::map<BitString, long> weights;
  long total = 0;
  std::size_t tuples = 1;
  for (int i = 0; i < arity; ++i) tuples *= support.size();
  for (std::size_t t = 0; t < tuples; ++t) {
    if (bits.next() == 0) continue;
    std::size_t rest = t;
    BitString key;
    for (int i = 0; i < arity; ++i) {
      key.append(support[rest % support.size()]);
      rest /= support.size();
    }
    long w = 1 + static_cast<long>(sampleUniformIndex(1L << weightBits, bits));
    weights[key] += w;
    total += w;
  }
  if (weights.empty()) {
    weights[flatten(std::vector<BitString>(static_cast<std::size_t>(arity), support[0]))] = 1;
    total = 1;
  }
  std::map<BitString, Rat> flat;
  for (const auto& [key, w] : weights) flat.emplace(key, Rat(w, total));
  return TupleDistribution::explicitDist(arity, d.width(), std::move(flat));
}

Report suiteRao(const ExperimentConfig& config) {
  Report rep = makeReport(config, "");
  long violations = 0;
  SplitMixBits bits(config.seed, 1);
  for (long t = 0; t < config.trials; ++t) {
    int width = 1 + static_cast<int>(sampleUniformIndex(3, bits));
    int arity = 1 + static_cast<int>(sampleUniformIndex(3, bits));
    FiniteDistribution d = randomDistribution(width, bits, /*fullSupport=*/true);
    TupleDistribution r = randomTupleDistribution(d, arity, bits);
    if (!raoCheck(r, d, config.precisionBits).holds) ++violations;
  }
  rep.addCheck({"rao-random", fmt(violations), "0", fmt(defaultSlack()), violations == 0,
                std::to_string(config.trials) + " randomized exact-rational instances"});

  long equalityFailures = 0;
  for (long t = 0; t < 20; ++t) {
    int width = 1 + static_cast<int>(sampleUniformIndex(2, bits));
    int arity = 2 + static_cast<int>(sampleUniformIndex(2, bits));
    FiniteDistribution d = randomDistribution(width, bits, /*fullSupport=*/true);
    RaoReport check = raoCheck(materializeProduct(d, arity), d, config.precisionBits);
    bool equal = !check.lhs.infinite && !check.rhs.infinite &&
                 check.lhs.value == check.rhs.value;
    if (!equal) ++equalityFailures;
  }
  rep.addCheck({"rao-product-equality", fmt(equalityFailures), "0", "0/1",
                equalityFailures == 0, "20 product instances, both sides exactly equal"});
  return rep;
}

Report suiteLemmaStor(const ExperimentConfig& config) {
  FiniteDistribution d = experimentDistribution(config);
  Report rep = makeReport(config, d.serialize());
  ReductionParams params = deriveParams(d.width(), config.k, config.exponent);
  StorReport stor = verifyStor(d, SamplerOracle::exact(), params, config.trials, config.seed,
                               config.budget, config.jobs);
  rep.addCheck({"stor-failure-bound", fmt(stor.wilsonUpper99), fmt(stor.bound), "0/1",
                stor.holds,
                "failures " + std::to_string(stor.failures) + "/" +
                    std::to_string(stor.trials) + ", Wilson 99% upper vs eps*N + 2^-beta"});
  return rep;
}

void addChainSteps(Report& rep, const RtosChainReport& chain) {
  for (const auto& step : chain.steps) {
    rep.addCheck({step.name, step.lhs, step.rhs, ratToString(step.slack), step.holds,
                  step.note});
  }
}

Report suiteLemmaRtos(const ExperimentConfig& config) {
  FiniteDistribution d = experimentDistribution(config);
  Report rep = makeReport(config, d.serialize());
  ReductionParams params = deriveParams(d.width(), config.k, config.exponent);
  long outputBits = params.arity * params.width;
  MachineSearcher searcher =
      config.searcherDescriptor.empty()
          ? MachineSearcher::uniformEmitter(static_cast<int>(outputBits))
          : MachineSearcher::parseDescriptor(config.searcherDescriptor);
  RtosChainReport chain = verifyRtosChain(searcher, d, params, config.budget,
                                          config.precisionBits, config.jobs);
  addChainSteps(rep, chain);

  // Measured-form bound with the max-K term recorded (constant term omitted;
  // infinite K makes it vacuous).
  std::string maxK = chain.anyInfiniteK ? "inf"
                     : chain.maxK.has_value() ? std::to_string(*chain.maxK) : "none";
  std::string rhs;
  bool holds;
  if (chain.anyInfiniteK || !chain.maxK.has_value()) {
    rhs = "inf";
    holds = true;
  } else {
    Rat inside = Rat(2 * params.beta + 2 * *chain.maxK, params.arity);
    BinFloat bound = BinFloat::fromRational(inside, config.precisionBits).sqrt();
    Rat total = params.delta + bound.toRational();
    rhs = ratToString(total);
    holds = chain.measuredTv <= total + defaultSlack();
  }
  rep.addCheck({"rtos-measured-bound", fmt(chain.measuredTv), rhs, fmt(defaultSlack()), holds,
                "max K over conditioned support = " + maxK +
                    ", success mass " + fmt(chain.successMass)});
  return rep;
}

Report suiteExclusion(const ExperimentConfig& config) {
  FiniteDistribution d = experimentDistribution(config);
  Report rep = makeReport(config, d.serialize());
  ReductionParams params = deriveParams(d.width(), config.k, config.exponent);
  std::size_t outputBits =
      static_cast<std::size_t>(params.arity) * static_cast<std::size_t>(params.width);

  auto runEmitter = [&](const std::string& name, const BitString& target) {
    Program p = kUpperLiteral(target).witness;
    ExclusionReport ex = shortProgramExclusion(p, d, params, config.budget);
    rep.addCheck({name, ex.excluded ? "excluded" : "not-excluded", "excluded", "0/1",
                  ex.excluded,
                  "|p|=" + std::to_string(ex.programLength) +
                      (ex.applicable ? ", tuple prob " + fmt(ex.tupleProb) : "") +
                      ", " + ex.note});
  };
  runEmitter("exclusion-all-zeros", BitString::zeros(outputBits));
  runEmitter("exclusion-period-two", periodTwoPattern(outputBits));
  return rep;
}

Report suiteOtherdir(const ExperimentConfig& config) {
  Report rep = makeReport(config, "");
  const int m = config.width;
  const BitString z;  // unconditional complexity
  FiniteDistribution dx = buildOtherdir(oddParity, m, z, config.budget);

  // Deterministic single-point searcher: the literal program for the lex-first
  // accepted string.
  BitString target;
  for (const auto& y : BitString::universe(m)) {
    if (oddParity(y)) {
      target = y;
      break;
    }
  }
  MachineSearcher searcher =
      config.searcherDescriptor.empty()
          ? MachineSearcher::constantEmitter(target)
          : MachineSearcher::parseDescriptor(config.searcherDescriptor);
  OtherdirReport other =
      verifyOtherdir(oddParity, dx, searcher, config.k, z, config.budget);

  rep.addCheck({"sampler-success", fmt(other.samplerSuccess), "1/1", "0/1",
                other.samplerSuccess == 1, "exact sampler lands in A with certainty"});
  std::string gb = other.gB.has_value() ? fmt(*other.gB) : "inf";
  rep.addCheck({"otherdir-tv-bound", fmt(other.measuredTv), fmt(other.tvBound), "0/1",
                other.holds,
                "c = " + fmt(other.c) + ", g_B = " + gb + ", searcher " +
                    searcher.descriptor()});
  return rep;
}

Report suiteEndToEnd(const ExperimentConfig& config) {
  FiniteDistribution d = experimentDistribution(config);
  Report rep = makeReport(config, d.serialize());
  ReductionParams params = deriveParams(d.width(), config.k, config.exponent);

  // Direction (i): an exact sampler solves the search problem with failure
  // probability at most delta.
  StorReport stor = verifyStor(d, SamplerOracle::exact(), params, config.trials, config.seed,
                               config.budget, config.jobs);
  double deltaDouble = boost::multiprecision::numerator(params.delta).convert_to<double>() /
                       boost::multiprecision::denominator(params.delta).convert_to<double>();
  rep.addCheck({"search-failure-le-delta", fmt(stor.wilsonUpper99), fmt(params.delta), "0/1",
                stor.wilsonUpper99 <= deltaDouble,
                "failures " + std::to_string(stor.failures) + "/" +
                    std::to_string(stor.trials)});

  // Direction (ii): the honest machine searcher, wired as delta = eps/2,
  // samples within eps; the output distribution is exact by seed enumeration.
  Rat eps = 2 * params.delta;
  ReductionParams wired = paramsForTargetAccuracy(d.width(), eps, config.exponent);
  long outputBits = wired.arity * wired.width;
  MachineSearcher searcher = MachineSearcher::uniformEmitter(static_cast<int>(outputBits));
  FiniteDistribution c =
      exactSearchToSampleDistribution(searcher, d, wired, config.budget, config.jobs);
  Rat tv = tvDistance(c, d);
  rep.addCheck({"sample-tv-le-eps", fmt(tv), fmt(eps), fmt(defaultSlack()),
                tv <= eps + defaultSlack(),
                "delta = eps/2 wiring gives k = " + std::to_string(wired.k) +
                    ", N = " + std::to_string(wired.arity)});
  return rep;
}

}  // namespace

FiniteDistribution experimentDistribution(const ExperimentConfig& config) {
  if (!config.distText.empty()) return FiniteDistribution::parse(config.distText);
  if (!config.distPath.empty()) return FiniteDistribution::load(config.distPath);
  return FiniteDistribution::uniform(config.width);
}

FiniteDistribution randomDistribution(int width, BitSource& bits, bool fullSupport,
                                      int weightBits) {
  auto universe = BitString::universe(width);
  std::vector<BitString> support;
  do {
    support.clear();
    for (const auto& y : universe) {
      if (fullSupport || bits.next() == 1) support.push_back(y);
    }
  } while (support.empty());

  long total = 0;
  std::vector<long> weights;
  weights.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    long w = 1 + static_cast<long>(sampleUniformIndex(1L << weightBits, bits));
    weights.push_back(w);
    total += w;
  }
  std::map<BitString, Rat> pmf;
  for (std::size_t i = 0; i < support.size(); ++i) {
    pmf.emplace(support[i], Rat(weights[i], total));
  }
  return FiniteDistribution(width, std::move(pmf));
}

TupleDistribution randomTupleDistribution(const FiniteDistribution& d, int arity,
                                          BitSource& bits, int weightBits) {
  return randomTupleWithinImpl(d, arity, bits, weightBits);
}

FiniteDistribution exactSearchToSampleDistribution(const MachineSearcher& searcher,
                                                   const FiniteDistribution& d,
                                                   const ReductionParams& params,
                                                   const KBudget& budget, int jobs) {
  if (searcher.rho > 22) throw Error("seed enumeration requires rho <= 22");
  const BitString z = zEncoding(d, params.k);
  std::map<BitString, Rat> counts;
  const long total = 1L << searcher.rho;
  for (long s = 0; s < total; ++s) {
    BitString r;
    for (int i = searcher.rho - 1; i >= 0; --i) r.append(static_cast<int>((s >> i) & 1));
    ExecOutcome outcome = run(searcher.program, z, r, budget.exec);
    if (!outcome.halted() ||
        outcome.output.size() !=
            static_cast<std::size_t>(params.arity) * static_cast<std::size_t>(params.width)) {
      throw SearchFailure("searcher aborted or misparsed during enumeration");
    }
    counts[outcome.output] += Rat(1, total);
  }
  TupleDistribution r = TupleDistribution::explicitDist(static_cast<int>(params.arity),
                                                        params.width, std::move(counts));
  (void)jobs;
  return averageMarginal(r);
}

const std::vector<std::string> kSuiteNames = {
    "kraft",      "deficiency", "shannon-fano", "pinsker",  "rao",
    "lemma-stor", "lemma-rtos", "exclusion",    "otherdir", "end-to-end"};

Report runSuite(const ExperimentConfig& config) {
  auto start = std::chrono::steady_clock::now();
  Report rep;
  if (config.suite == "kraft") rep = suiteKraft(config);
  else if (config.suite == "deficiency") rep = suiteDeficiency(config);
  else if (config.suite == "shannon-fano") rep = suiteShannonFano(config);
  else if (config.suite == "pinsker") rep = suitePinsker(config);
  else if (config.suite == "rao") rep = suiteRao(config);
  else if (config.suite == "lemma-stor") rep = suiteLemmaStor(config);
  else if (config.suite == "lemma-rtos") rep = suiteLemmaRtos(config);
  else if (config.suite == "exclusion") rep = suiteExclusion(config);
  else if (config.suite == "otherdir") rep = suiteOtherdir(config);
  else if (config.suite == "end-to-end") rep = suiteEndToEnd(config);
  else throw Error("unknown suite: " + config.suite);

  rep.finalize();
  rep.timingMs = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - start)
                                       .count());
  if (!config.outPath.empty()) rep.write(config.outPath);
  return rep;
}

SweepResult sweep(const ExperimentConfig& base, const std::string& axis,
                  const std::vector<std::string>& values) {
  SweepResult result;
  std::ostringstream csv;
  csv << "suite,axis,value,pass,check,lhs,rhs,slack,check_pass\n";
  for (const auto& value : values) {
    ExperimentConfig config = base;
    config.outPath.clear();
    if (axis == "k") config.k = std::stoi(value);
    else if (axis == "m") {
      config.width = std::stoi(value);
      config.distPath.clear();
      config.distText.clear();
    } else if (axis == "L_max") config.budget.lmax = std::stoi(value);
    else if (axis == "T") config.budget.exec.maxSteps = std::stol(value);
    else if (axis == "trials") config.trials = std::stol(value);
    else if (axis == "exponent") config.exponent = ratFromString(value);
    else throw Error("unknown sweep axis: " + axis);

    Report rep = runSuite(config);
    for (const auto& check : rep.checks) {
      csv << rep.suite << ',' << axis << ',' << value << ',' << (rep.pass ? 1 : 0) << ','
          << check.name << ',' << check.lhs << ',' << check.rhs << ',' << check.slack << ','
          << (check.pass ? 1 : 0) << '\n';
    }
    result.reports.push_back(std::move(rep));
  }
  result.csv = csv.str();
  return result;
}

}  // namespace sskit
