#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sskit/distribution.hpp"
#include "sskit/kolmo.hpp"

namespace sskit {

// Instance parameters of the constructed search problem over N-tuples:
// delta = 2^-k, N = ceil(m * 2^(exponent*k)) computed exactly,
// beta = 1 + log2(1/delta) = 1 + k, epsilon = delta / (2N).
struct ReductionParams {
  int width = 0;  // m
  int k = 0;
  long arity = 0;  // N
  int beta = 0;
  Rat delta;
  Rat epsilon;
  Rat exponent;
};

ReductionParams deriveParams(int m, int k, const Rat& exponent = Rat(21, 10));

// Accuracy-driven wiring of the sampling direction: delta := eps/2, realized
// dyadically as k = ceil(log2(2/eps)).
ReductionParams paramsForTargetAccuracy(int m, const Rat& eps,
                                        const Rat& exponent = Rat(21, 10));

// Canonical conditioning string for (D, k):
// gamma(m+1) || gamma(den) || gamma(num_y + 1) over all width-m strings in lex
// order (numerators over the least common denominator, zero off support)
// || gamma(k+1). Injective on canonical distributions.
BitString zEncoding(const FiniteDistribution& d, int k);
struct ZDecoded {
  FiniteDistribution dist;
  int k;
};
ZDecoded zDecode(const BitString& z);

// Exact decision of tuple membership in the solution set: TRUE iff
// prod p_{y_i} >= 2^-(K+beta) with K = bounded complexity of the flattened
// tuple given zEncoding(D, k). An off-support coordinate gives FALSE; an
// infinite K (nothing under the budget generates the tuple) gives TRUE.
bool membership(const std::vector<BitString>& tuple, const FiniteDistribution& d,
                const ReductionParams& params, const KTable& table);
bool membership(const std::vector<BitString>& tuple, const FiniteDistribution& d,
                const ReductionParams& params, const KBudget& budget);

// Sampling oracle: produces one width-m string per call at a requested
// accuracy. The honest oracle samples exactly (declared accuracy zero);
// adversarial instances are allowed for negative tests.
class SamplerOracle {
 public:
  using Fn = std::function<BitString(const FiniteDistribution&, const Rat& accuracy,
                                     BitSource&)>;

  static SamplerOracle exact();
  static SamplerOracle constant(BitString y);
  static SamplerOracle custom(Rat declaredAccuracy, Fn fn);

  BitString sample(const FiniteDistribution& d, const Rat& accuracy, BitSource& bits) const;
  const Rat& declaredAccuracy() const { return declaredAccuracy_; }

 private:
  SamplerOracle(Rat acc, Fn fn) : declaredAccuracy_(std::move(acc)), fn_(std::move(fn)) {}
  Rat declaredAccuracy_;
  Fn fn_;
};

// Searcher in machine form: a program run once per seed with the seed bits on
// the random tape; the output is parsed as `outputs` strings of width m.
// Fully enumerable over its 2^rho seeds.
struct MachineSearcher {
  Program program;
  int rho = 0;

  // Honest uniform searcher: (RDR, OUT) repeated `bits` times, rho = bits.
  static MachineSearcher uniformEmitter(int bits);
  // Deterministic single-output searcher: the literal program for y, rho = 0.
  static MachineSearcher constantEmitter(const BitString& y);

  std::string descriptor() const;  // "machine:bits:<len>:0x<hex>,rho=<int>"
  static MachineSearcher parseDescriptor(std::string_view text);
};

// Host-plugin searcher: an arbitrary callable producing an N-tuple.
class SearcherOracle {
 public:
  using HostFn = std::function<std::vector<BitString>(BitSource&)>;

  static SearcherOracle machine(MachineSearcher m);
  static SearcherOracle host(HostFn fn);

  bool isMachine() const { return machine_.has_value(); }
  const MachineSearcher& machineForm() const;

  // One invocation; machine form draws rho bits from the source as the seed.
  // Throws SearchFailure when a machine run aborts or misparses.
  std::vector<BitString> invoke(const BitString& z, int arity, int width,
                                const ExecBudget& exec, BitSource& bits) const;

 private:
  SearcherOracle() = default;
  std::optional<MachineSearcher> machine_;
  HostFn host_;
};

// Reduction part (i): N independent oracle calls at accuracy epsilon.
std::vector<BitString> sampleToSearch(const SamplerOracle& sampler,
                                      const FiniteDistribution& d,
                                      const ReductionParams& params, BitSource& bits);

// Reduction part (ii): one searcher call, then a uniformly chosen coordinate.
BitString searchToSample(const SearcherOracle& searcher, const FiniteDistribution& d,
                         const ReductionParams& params, const KBudget& budget,
                         BitSource& bits);

struct StorReport {
  long trials = 0;
  long failures = 0;
  Rat failureRate;
  double wilsonUpper99 = 0.0;
  Rat bound;  // declaredAccuracy * N + 2^-beta
  bool holds = false;
};
StorReport verifyStor(const FiniteDistribution& d, const SamplerOracle& sampler,
                      const ReductionParams& params, long trials, std::uint64_t seed,
                      const KBudget& budget, int jobs = 1);

struct ChainStep {
  std::string name;
  std::string lhs;
  std::string rhs;
  Rat slack;
  bool holds = false;
  std::string note;
};

struct RtosChainReport {
  Rat successMass;
  Rat measuredTv;               // ||C - D||
  std::optional<long> maxK;     // max finite K over the conditioned support
  bool anyInfiniteK = false;
  std::vector<ChainStep> steps;
  bool allHold = false;
};

// Runs every seed of the machine searcher, conditions the exact output
// distribution on membership, and checks the full inequality chain from the
// conditioning step through Rao, Pinsker, Cauchy-Schwarz and the triangle
// inequalities down to the measured distance.
RtosChainReport verifyRtosChain(const MachineSearcher& searcher,
                                const FiniteDistribution& d,
                                const ReductionParams& params, const KBudget& budget,
                                int precisionBits = kDefaultPrecisionBits, int jobs = 1);

struct ExclusionReport {
  bool applicable = false;  // program halted with an N*m-bit output
  bool shortEnough = false; // |p| < log2(1 / prod p) - beta, decided exactly
  bool member = false;
  bool excluded = false;    // applicable && !member
  long programLength = 0;
  Rat tupleProb;
  std::string note;
};
// If a halting program shorter than the surprisal-minus-beta threshold
// outputs the tuple, the tuple must fail membership (its complexity is at
// most the program length).
ExclusionReport shortProgramExclusion(const Program& p, const FiniteDistribution& d,
                                      const ReductionParams& params, const KBudget& budget);

// Universal prior conditioned on the accepting set.
FiniteDistribution buildOtherdir(const std::function<bool(const BitString&)>& accept,
                                 int width, const BitString& z, const KBudget& budget);

struct OtherdirReport {
  Rat samplerSuccess;       // exact-sampler probability of landing in A
  Rat c;                    // exact 1/Z of the universal prior
  std::optional<Rat> gB;    // max q_y * 2^K over the searcher support; nullopt = inf
  Rat successMass;          // searcher success probability
  Rat measuredTv;           // ||C' - D_x|| with C' conditioned on success
  Rat tvBound;              // 1 - c/gB + delta
  bool holds = false;
};
OtherdirReport verifyOtherdir(const std::function<bool(const BitString&)>& accept,
                              const FiniteDistribution& dx, const MachineSearcher& searcher,
                              int k, const BitString& z, const KBudget& budget);

}  // namespace sskit
