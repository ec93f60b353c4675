#include "sskit/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sskit/errors.hpp"

namespace sskit {
namespace {

// Runs fn(begin, end) over a partition of [0, total) and merges the per-range
// results in range order, so the outcome is independent of the worker count.
template <typename Local, typename Fn, typename Merge>
void runPartitioned(long total, int jobs, Fn fn, Merge merge) {
  if (jobs < 1) jobs = 1;
  if (jobs > total && total > 0) jobs = static_cast<int>(total);
  if (jobs <= 1 || total == 0) {
    Local local{};
    fn(0L, total, local);
    merge(local);
    return;
  }
  std::vector<Local> locals(static_cast<std::size_t>(jobs));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  long chunk = total / jobs;
  long extra = total % jobs;
  long begin = 0;
  for (int w = 0; w < jobs; ++w) {
    long size = chunk + (w < extra ? 1 : 0);
    long end = begin + size;
    workers.emplace_back([&, begin, end, w] { fn(begin, end, locals[static_cast<std::size_t>(w)]); });
    begin = end;
  }
  for (auto& t : workers) t.join();
  for (auto& local : locals) merge(local);
}

BitString seedBits(long seed, int rho) {
  BitString r;
  for (int i = rho - 1; i >= 0; --i) r.append(static_cast<int>((seed >> i) & 1));
  return r;
}

double wilsonUpper99(long failures, long trials) {
  constexpr double z = 2.5758293035489004;  // two-sided 99% normal quantile
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(failures) / n;
  double z2 = z * z;
  double center = phat + z2 / (2.0 * n);
  double radius = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return (center + radius) / (1.0 + z2 / n);
}

Rat tupleProbability(const BitString& flat, const FiniteDistribution& d, long arity) {
  Rat prod = 1;
  for (long i = 0; i < arity; ++i) {
    Rat p = d.prob(flat.substr(static_cast<std::size_t>(i) * d.width(),
                               static_cast<std::size_t>(d.width())));
    if (p == 0) return Rat(0);
    prod *= p;
  }
  return prod;
}

bool membershipFlat(const BitString& flat, const FiniteDistribution& d,
                    const ReductionParams& params, const KTable& table) {
  Rat prod = tupleProbability(flat, d, params.arity);
  if (prod == 0) return false;
  KResult k = table.lookup(flat);
  if (k.infinite()) return true;
  return prod * pow2(*k.value + params.beta) >= 1;
}

}  // namespace

ReductionParams deriveParams(int m, int k, const Rat& exponent) {
  if (m < 1) throw Error("outcome width m must be at least one");
  if (k < 0) throw Error("k must be non-negative");
  if (exponent <= 0) throw Error("exponent must be positive");

  // N = ceil(m * 2^(exponent*k)); with exponent*k = a/b this is the exact
  // integer b-th root ceiling of m^b * 2^a.
  Rat t = exponent * k;
  BigInt a = boost::multiprecision::numerator(t);
  BigInt b = boost::multiprecision::denominator(t);
  unsigned bu = b.convert_to<unsigned>();
  BigInt value = boost::multiprecision::pow(BigInt(m), bu)
                 << a.convert_to<unsigned>();
  BigInt n = nthRootCeil(value, bu);
  if (n > (BigInt(1) << 40)) {
    throw Error("derived arity exceeds the supported range (lower k or the exponent)");
  }

  ReductionParams params;
  params.width = m;
  params.k = k;
  params.arity = n.convert_to<long>();
  params.beta = 1 + k;
  params.delta = pow2(-k);
  params.epsilon = params.delta / (2 * params.arity);
  params.exponent = exponent;
  return params;
}

ReductionParams paramsForTargetAccuracy(int m, const Rat& eps, const Rat& exponent) {
  if (eps <= 0 || eps > 2) throw Error("target accuracy must be in (0, 2]");
  // delta := eps/2 mapped down to the next dyadic value 2^-k.
  long k = ceilLog2Inv(eps / 2);
  return deriveParams(m, static_cast<int>(k), exponent);
}

BitString zEncoding(const FiniteDistribution& d, int k) {
  if (k < 0) throw Error("k must be non-negative");
  BigInt den = d.commonDenominator();
  BitString z = eliasGamma(BigInt(d.width() + 1));
  z.append(eliasGamma(den));
  for (const auto& y : BitString::universe(d.width())) {
    Rat p = d.prob(y);
    BigInt num = boost::multiprecision::numerator(p) *
                 (den / boost::multiprecision::denominator(p));
    z.append(eliasGamma(num + 1));
  }
  z.append(eliasGamma(BigInt(k + 1)));
  return z;
}

ZDecoded zDecode(const BitString& z) {
  std::size_t pos = 0;
  auto next = [&]() -> BigInt {
    auto field = eliasGammaDecode(z, pos);
    if (!field.has_value()) throw DecodeError("truncated conditioning string");
    pos += field->second;
    return field->first;
  };
  int width = (next() - 1).convert_to<int>();
  BigInt den = next();
  std::map<BitString, Rat> pmf;
  for (const auto& y : BitString::universe(width)) {
    BigInt num = next() - 1;
    if (num > 0) pmf.emplace(y, Rat(num, den));
  }
  int k = (next() - 1).convert_to<int>();
  if (pos != z.size()) throw DecodeError("trailing bits in conditioning string");
  return ZDecoded{FiniteDistribution(width, std::move(pmf)), k};
}

bool membership(const std::vector<BitString>& tuple, const FiniteDistribution& d,
                const ReductionParams& params, const KTable& table) {
  if (tuple.size() != static_cast<std::size_t>(params.arity)) {
    throw DimensionError("tuple arity does not match the instance");
  }
  for (const auto& y : tuple) {
    if (y.size() != static_cast<std::size_t>(params.width)) {
      throw DimensionError("tuple coordinate width mismatch");
    }
  }
  return membershipFlat(flatten(tuple), d, params, table);
}

bool membership(const std::vector<BitString>& tuple, const FiniteDistribution& d,
                const ReductionParams& params, const KBudget& budget) {
  return membership(tuple, d, params, KTable(zEncoding(d, params.k), budget));
}

SamplerOracle SamplerOracle::exact() {
  return SamplerOracle(Rat(0), [](const FiniteDistribution& d, const Rat&, BitSource& bits) {
    return sampleExact(d, bits);
  });
}

SamplerOracle SamplerOracle::constant(BitString y) {
  // Adversarial oracle for negative tests: claims perfect accuracy, always
  // returns the same string.
  return SamplerOracle(Rat(0), [y = std::move(y)](const FiniteDistribution&, const Rat&,
                                                  BitSource&) { return y; });
}

SamplerOracle SamplerOracle::custom(Rat declaredAccuracy, Fn fn) {
  return SamplerOracle(std::move(declaredAccuracy), std::move(fn));
}

BitString SamplerOracle::sample(const FiniteDistribution& d, const Rat& accuracy,
                                BitSource& bits) const {
  return fn_(d, accuracy, bits);
}

MachineSearcher MachineSearcher::uniformEmitter(int bits) {
  std::vector<Opcode> body;
  body.reserve(2 * static_cast<std::size_t>(bits));
  for (int i = 0; i < bits; ++i) {
    body.push_back(Opcode::ReadRand);
    body.push_back(Opcode::Out);
  }
  return MachineSearcher{Program::fromBody(body), bits};
}

MachineSearcher MachineSearcher::constantEmitter(const BitString& y) {
  return MachineSearcher{kUpperLiteral(y).witness, 0};
}

std::string MachineSearcher::descriptor() const {
  return "machine:" + program.literal() + ",rho=" + std::to_string(rho);
}

MachineSearcher MachineSearcher::parseDescriptor(std::string_view text) {
  constexpr std::string_view kPrefix = "machine:";
  if (text.substr(0, kPrefix.size()) != kPrefix) {
    throw FormatError("searcher descriptor must start with \"machine:\"");
  }
  text.remove_prefix(kPrefix.size());
  auto comma = text.rfind(",rho=");
  if (comma == std::string_view::npos) throw FormatError("searcher descriptor missing rho");
  Program p = Program::parseLiteral(text.substr(0, comma));
  int rho = 0;
  try {
    rho = std::stoi(std::string(text.substr(comma + 5)));
  } catch (const std::exception&) {
    throw FormatError("malformed rho in searcher descriptor");
  }
  if (rho < 0 || rho > 62) throw FormatError("rho out of supported range");
  return MachineSearcher{std::move(p), rho};
}

SearcherOracle SearcherOracle::machine(MachineSearcher m) {
  SearcherOracle s;
  s.machine_ = std::move(m);
  return s;
}

SearcherOracle SearcherOracle::host(HostFn fn) {
  SearcherOracle s;
  s.host_ = std::move(fn);
  return s;
}

const MachineSearcher& SearcherOracle::machineForm() const {
  if (!machine_.has_value()) throw Error("searcher is not in machine form");
  return *machine_;
}

std::vector<BitString> SearcherOracle::invoke(const BitString& z, int arity, int width,
                                              const ExecBudget& exec, BitSource& bits) const {
  if (machine_.has_value()) {
    BitString r;
    for (int i = 0; i < machine_->rho; ++i) r.append(bits.next());
    ExecOutcome outcome = run(machine_->program, z, r, exec);
    if (!outcome.halted()) {
      throw SearchFailure("machine searcher aborted: " + statusName(outcome.status));
    }
    if (outcome.output.size() !=
        static_cast<std::size_t>(arity) * static_cast<std::size_t>(width)) {
      throw SearchFailure("machine searcher output has the wrong length");
    }
    return unflatten(outcome.output, arity, width);
  }
  auto tuple = host_(bits);
  if (tuple.size() != static_cast<std::size_t>(arity)) {
    throw SearchFailure("host searcher returned the wrong arity");
  }
  return tuple;
}

std::vector<BitString> sampleToSearch(const SamplerOracle& sampler,
                                      const FiniteDistribution& d,
                                      const ReductionParams& params, BitSource& bits) {
  std::vector<BitString> tuple;
  tuple.reserve(static_cast<std::size_t>(params.arity));
  for (long i = 0; i < params.arity; ++i) {
    tuple.push_back(sampler.sample(d, params.epsilon, bits));
  }
  return tuple;
}

BitString searchToSample(const SearcherOracle& searcher, const FiniteDistribution& d,
                         const ReductionParams& params, const KBudget& budget,
                         BitSource& bits) {
  BitString z = zEncoding(d, params.k);
  auto tuple = searcher.invoke(z, static_cast<int>(params.arity), params.width,
                               budget.exec, bits);
  std::size_t i = sampleUniformIndex(static_cast<std::size_t>(params.arity), bits);
  return tuple[i];
}

StorReport verifyStor(const FiniteDistribution& d, const SamplerOracle& sampler,
                      const ReductionParams& params, long trials, std::uint64_t seed,
                      const KBudget& budget, int jobs) {
  if (trials < 1) throw Error("at least one trial is required");
  KTable table(zEncoding(d, params.k), budget);

  long failures = 0;
  runPartitioned<long>(
      trials, jobs,
      [&](long begin, long end, long& local) {
        for (long t = begin; t < end; ++t) {
          SplitMixBits bits(seed, static_cast<std::uint64_t>(t));
          auto tuple = sampleToSearch(sampler, d, params, bits);
          if (!membership(tuple, d, params, table)) ++local;
        }
      },
      [&](long local) { failures += local; });

  StorReport rep;
  rep.trials = trials;
  rep.failures = failures;
  rep.failureRate = Rat(failures, trials);
  rep.wilsonUpper99 = wilsonUpper99(failures, trials);
  rep.bound = sampler.declaredAccuracy() * params.arity + pow2(-params.beta);
  rep.holds = rep.wilsonUpper99 <=
              boost::multiprecision::numerator(rep.bound).convert_to<double>() /
                  boost::multiprecision::denominator(rep.bound).convert_to<double>();
  return rep;
}

namespace {

struct SeedEnumeration {
  std::map<BitString, long> counts;
  long aborted = 0;
};

SeedEnumeration enumerateSearcherOutputs(const MachineSearcher& searcher, const BitString& z,
                                         const ExecBudget& exec, int jobs) {
  if (searcher.rho < 0 || searcher.rho > 22) {
    throw Error("seed enumeration requires rho <= 22");
  }
  long total = 1L << searcher.rho;
  SeedEnumeration result;
  runPartitioned<SeedEnumeration>(
      total, jobs,
      [&](long begin, long end, SeedEnumeration& local) {
        for (long s = begin; s < end; ++s) {
          ExecOutcome outcome = run(searcher.program, z, seedBits(s, searcher.rho), exec);
          if (outcome.halted()) {
            ++local.counts[outcome.output];
          } else {
            ++local.aborted;
          }
        }
      },
      [&](SeedEnumeration& local) {
        result.aborted += local.aborted;
        for (auto& [output, count] : local.counts) result.counts[output] += count;
      });
  return result;
}

}  // namespace

RtosChainReport verifyRtosChain(const MachineSearcher& searcher,
                                const FiniteDistribution& d,
                                const ReductionParams& params, const KBudget& budget,
                                int precisionBits, int jobs) {
  const long n = params.arity;
  const BitString z = zEncoding(d, params.k);
  KTable table(z, budget);

  SeedEnumeration seeds = enumerateSearcherOutputs(searcher, z, budget.exec, jobs);
  if (seeds.aborted > 0) {
    throw SearchFailure("searcher aborted on " + std::to_string(seeds.aborted) +
                        " seeds; the chain needs a total searcher");
  }
  const Rat totalSeeds = pow2(searcher.rho);

  // Exact output distribution R; discard outputs of the wrong shape the same
  // way membership does (they can never be members).
  std::map<BitString, Rat> rPmf;
  for (const auto& [output, count] : seeds.counts) {
    if (output.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(params.width)) {
      throw SearchFailure("searcher output has the wrong length for the instance");
    }
    rPmf.emplace(output, Rat(count) / totalSeeds);
  }
  TupleDistribution r = TupleDistribution::explicitDist(static_cast<int>(n), params.width,
                                                        std::move(rPmf));

  RtosChainReport rep;
  rep.successMass = 0;
  std::map<BitString, Rat> keptPmf;
  std::optional<long> maxK;
  bool anyInf = false;
  for (const auto& [flat, p] : r.flatPmf()) {
    if (!membershipFlat(flat, d, params, table)) continue;
    rep.successMass += p;
    keptPmf.emplace(flat, p);
    KResult k = table.lookup(flat);
    if (k.infinite()) {
      anyInf = true;
    } else if (!maxK.has_value() || *k.value > *maxK) {
      maxK = *k.value;
    }
  }
  if (rep.successMass == 0) {
    throw ConditionOnNullError("searcher output never lands in the solution set");
  }
  for (auto& [flat, p] : keptPmf) p /= rep.successMass;
  TupleDistribution rPrime = TupleDistribution::explicitDist(static_cast<int>(n), params.width,
                                                             std::move(keptPmf));
  rep.maxK = maxK;
  rep.anyInfiniteK = anyInf;

  const Rat slack = defaultSlack();
  auto addStep = [&](std::string name, std::string lhs, std::string rhs, Rat stepSlack,
                     bool holds, std::string note = "") {
    rep.steps.push_back(ChainStep{std::move(name), std::move(lhs), std::move(rhs),
                                  std::move(stepSlack), holds, std::move(note)});
  };

  // (1) Conditioning moves R by exactly 1 - success mass.
  Rat tvRRprime = 1 - rep.successMass;
  addStep("conditioning-tv", ratToString(tvRRprime), ratToString(params.delta), Rat(0),
          tvRRprime <= params.delta);

  // (2) The averaged single-coordinate views move by at most as much.
  FiniteDistribution c = averageMarginal(r);
  FiniteDistribution cPrime = averageMarginal(rPrime);
  Rat tvCC = tvDistance(c, cPrime);
  addStep("avg-marginal-tv", ratToString(tvCC), ratToString(params.delta), Rat(0),
          tvCC <= params.delta);

  // (3) Membership bounds the joint divergence from D^N.
  ExtReal klJoint = klDivergence(rPrime, power(d, static_cast<int>(n)), precisionBits);
  ExtReal klBound;
  if (anyInf) {
    klBound = ExtReal::inf();
  } else {
    BinFloat best = BinFloat::zero(precisionBits);  // the positive-part clamp
    std::map<Rat, BinFloat> memo;
    for (const auto& [flat, q] : rPrime.flatPmf()) {
      KResult k = table.lookup(flat);
      auto it = memo.find(q);
      if (it == memo.end()) it = memo.emplace(q, BinFloat::log2(q, precisionBits)).first;
      BinFloat term = BinFloat::fromInt(*k.value + params.beta, precisionBits) + it->second;
      if (term > best) best = term;
    }
    klBound = ExtReal::finite(best);
  }
  addStep("kl-vs-membership", klJoint.toString(), klBound.toString(), slack,
          klJoint.leqWithSlack(klBound, slack));

  // (4) Coordinate divergences sum to at most the joint divergence.
  std::vector<FiniteDistribution> margs;
  margs.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) margs.push_back(marginal(rPrime, static_cast<int>(i)));
  bool sumInf = false;
  BinFloat klSum = BinFloat::zero(precisionBits);
  std::vector<ExtReal> klCoord;
  klCoord.reserve(static_cast<std::size_t>(n));
  for (const auto& mi : margs) {
    ExtReal term = klDivergence(mi, d, precisionBits);
    klCoord.push_back(term);
    if (term.infinite) {
      sumInf = true;
    } else if (!sumInf) {
      klSum += term.value;
    }
  }
  ExtReal raoLhs = sumInf ? ExtReal::inf() : ExtReal::finite(klSum);
  addStep("rao", raoLhs.toString(), klJoint.toString(), slack,
          raoLhs.leqWithSlack(klJoint, slack));

  // (5) Per-coordinate distance against sqrt(2 KL); report the worst margin.
  std::vector<Rat> tvCoord;
  tvCoord.reserve(static_cast<std::size_t>(n));
  bool pinskerAll = true;
  long worst = 0;
  Rat worstMargin;
  bool haveWorst = false;
  std::vector<ExtReal> pinskerBound;
  for (long i = 0; i < n; ++i) {
    Rat tv = tvDistance(margs[static_cast<std::size_t>(i)], d);
    tvCoord.push_back(tv);
    const ExtReal& kl = klCoord[static_cast<std::size_t>(i)];
    if (kl.infinite) {
      pinskerBound.push_back(ExtReal::inf());
      continue;
    }
    BinFloat twice = kl.value + kl.value;
    if (twice.isNegative()) twice = BinFloat::zero(precisionBits);
    BinFloat bound = twice.sqrt();
    pinskerBound.push_back(ExtReal::finite(bound));
    Rat margin = tv - bound.toRational();
    if (margin > slack) pinskerAll = false;
    if (!haveWorst || margin > worstMargin) {
      worstMargin = margin;
      worst = i;
      haveWorst = true;
    }
  }
  {
    std::string lhs = haveWorst ? ratToString(tvCoord[static_cast<std::size_t>(worst)]) : "0/1";
    std::string rhs = haveWorst ? pinskerBound[static_cast<std::size_t>(worst)].toString() : "inf";
    addStep("pinsker-per-coordinate", lhs, rhs, slack, pinskerAll,
            "worst coordinate i=" + std::to_string(worst));
  }

  // (6) Cauchy-Schwarz across coordinates.
  Rat tvSum = 0;
  Rat tvSquares = 0;
  for (const auto& tv : tvCoord) {
    tvSum += tv;
    tvSquares += tv * tv;
  }
  BinFloat csBound = BinFloat::fromRational(Rat(n) * tvSquares, precisionBits).sqrt();
  addStep("cauchy-schwarz", ratToString(tvSum), csBound.toString(), slack,
          Rat(tvSum) <= csBound.toRational() + slack);

  // (7) The averaged view is within the coordinate average.
  Rat tvCPrimeD = tvDistance(cPrime, d);
  Rat coordAvg = tvSum / n;
  addStep("avg-vs-coordinates", ratToString(tvCPrimeD), ratToString(coordAvg), Rat(0),
          tvCPrimeD <= coordAvg);

  // (8) Triangle inequality to the measured distance.
  rep.measuredTv = tvDistance(c, d);
  Rat triangle = params.delta + tvCPrimeD;
  addStep("triangle-total", ratToString(rep.measuredTv), ratToString(triangle), Rat(0),
          rep.measuredTv <= triangle);

  rep.allHold = true;
  for (const auto& step : rep.steps) rep.allHold = rep.allHold && step.holds;
  return rep;
}

ExclusionReport shortProgramExclusion(const Program& p, const FiniteDistribution& d,
                                      const ReductionParams& params, const KBudget& budget) {
  ExclusionReport rep;
  rep.programLength = static_cast<long>(p.length());
  const BitString z = zEncoding(d, params.k);
  ExecOutcome outcome = run(p, z, BitString(), budget.exec);
  if (!outcome.halted() ||
      outcome.output.size() !=
          static_cast<std::size_t>(params.arity) * static_cast<std::size_t>(params.width)) {
    rep.note = outcome.halted() ? "output is not an N*m-bit tuple" : "program does not halt";
    return rep;
  }
  rep.applicable = true;
  rep.tupleProb = tupleProbability(outcome.output, d, params.arity);

  if (rep.tupleProb == 0) {
    // Off-support coordinate: never a member, regardless of length.
    rep.shortEnough = true;
    rep.member = false;
    rep.excluded = true;
    rep.note = "off-support coordinate";
    return rep;
  }
  // |p| < log2(1/prod) - beta, decided exactly.
  rep.shortEnough = rep.tupleProb * pow2(rep.programLength + params.beta) < 1;
  if (rep.shortEnough) {
    // The program itself witnesses K <= |p| once the budget admits it, and
    // then prod < 2^-(K+beta) follows for every larger budget; membership is
    // decided without enumerating to |p|.
    rep.member = false;
    rep.note = "membership forced false by the witness program";
  } else {
    rep.member = membership(unflatten(outcome.output, static_cast<int>(params.arity),
                                      params.width),
                            d, params, budget);
    rep.note = "program is not below the exclusion threshold";
  }
  rep.excluded = !rep.member;
  return rep;
}

FiniteDistribution buildOtherdir(const std::function<bool(const BitString&)>& accept,
                                 int width, const BitString& z, const KBudget& budget) {
  FiniteDistribution prior = universalPrior(width, z, budget);
  std::map<BitString, Rat> kept;
  Rat mass = 0;
  for (const auto& [y, p] : prior.pmf()) {
    if (accept(y)) {
      kept.emplace(y, p);
      mass += p;
    }
  }
  if (mass == 0) throw ConstructionError("accepting set is empty on this universe");
  for (auto& [y, p] : kept) p /= mass;
  return FiniteDistribution(width, std::move(kept));
}

OtherdirReport verifyOtherdir(const std::function<bool(const BitString&)>& accept,
                              const FiniteDistribution& dx, const MachineSearcher& searcher,
                              int k, const BitString& z, const KBudget& budget) {
  OtherdirReport rep;
  KTable table(z, budget);
  const int m = dx.width();

  // (i) Support containment: an exact sampler lands in A with certainty.
  rep.samplerSuccess = 0;
  for (const auto& [y, p] : dx.pmf()) {
    if (accept(y)) rep.samplerSuccess += p;
  }

  // Exact normalizer of the universal prior.
  Rat zTotal = 0;
  for (const auto& y : BitString::universe(m)) {
    KResult kr = table.lookup(y);
    if (kr.infinite()) {
      throw BudgetTooSmallError("universal prior weight is not finite under this budget");
    }
    zTotal += pow2(-*kr.value);
  }
  rep.c = 1 / zTotal;

  // (ii) Exact searcher output distribution conditioned on success.
  SeedEnumeration seeds = enumerateSearcherOutputs(searcher, z, budget.exec, 1);
  const Rat totalSeeds = pow2(searcher.rho);
  std::map<BitString, Rat> success;
  rep.successMass = 0;
  for (const auto& [output, count] : seeds.counts) {
    if (output.size() != static_cast<std::size_t>(m)) continue;
    if (!accept(output)) continue;
    Rat p = Rat(count) / totalSeeds;
    success.emplace(output, p);
    rep.successMass += p;
  }
  if (rep.successMass == 0) {
    throw ConditionOnNullError("searcher never produces an accepted output");
  }
  for (auto& [y, p] : success) p /= rep.successMass;
  FiniteDistribution conditioned(m, std::move(success));

  std::optional<Rat> gB;
  bool gbInfinite = false;
  for (const auto& [y, q] : conditioned.pmf()) {
    KResult kr = table.lookup(y);
    if (kr.infinite()) {
      gbInfinite = true;
      break;
    }
    Rat candidate = q * pow2(*kr.value);
    if (!gB.has_value() || candidate > *gB) gB = candidate;
  }
  rep.gB = gbInfinite ? std::nullopt : gB;

  Rat delta = pow2(-k);
  if (gbInfinite) {
    rep.tvBound = 1 + delta;
  } else {
    rep.tvBound = 1 - rep.c / *rep.gB + delta;
  }
  rep.measuredTv = tvDistance(conditioned, dx);
  rep.holds = rep.measuredTv <= rep.tvBound;
  return rep;
}

}  // namespace sskit
