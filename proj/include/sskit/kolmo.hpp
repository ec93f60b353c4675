#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sskit/distribution.hpp"
#include "sskit/machine.hpp"

namespace sskit {

struct KBudget {
  int lmax = 24;  // max program total length in bits
  ExecBudget exec;
};

// Bounded conditional complexity value with its witness program. The witness
// is present exactly when the value is finite, has length equal to the value,
// and reproduces the target output when run on (z, empty random tape).
struct KResult {
  std::optional<long> value;
  std::optional<Program> witness;
  bool infinite() const { return !value.has_value(); }
};

// Minimum total program length that outputs y given conditioning string z,
// over programs within the budget run with an empty random tape (so a program
// that executes a random read aborts and never counts).
KResult kBounded(const BitString& y, const BitString& z, const KBudget& budget);

// One enumeration pass over all programs within the budget against a fixed
// conditioning string, indexed by produced output. Enumeration order is
// nondecreasing length, so the recorded program per output is minimal.
class KTable {
 public:
  KTable(BitString z, const KBudget& budget);

  KResult lookup(const BitString& y) const;
  // Sum of 2^-|p| over programs that halt on (z, empty random tape).
  const Rat& haltingKraftSum() const { return kraft_; }
  const std::map<BitString, std::pair<long, Program>>& entries() const { return byOutput_; }
  const BitString& conditioning() const { return z_; }
  const KBudget& budget() const { return budget_; }

 private:
  BitString z_;
  KBudget budget_;
  std::map<BitString, std::pair<long, Program>> byOutput_;
  Rat kraft_ = 0;
};

// Straight-line generator for y: per output bit, FLIP when the cell disagrees
// with the next bit, then OUT. The bound is the witness length.
struct LiteralBound {
  long bound;
  Program witness;
};
LiteralBound kUpperLiteral(const BitString& y);
// Closed-form worst case for strings of the given length:
// 6n + 2*floor(log2(6n+1)) + 1.
long kUpperLiteralWorstCase(std::size_t len);

Rat kraftSum(const KBudget& budget, const BitString& z);

struct DeficiencyReport {
  Rat violatingMass;   // exact Pr[K(y|z) < log2(1/p_y) - c]
  Rat kraft;           // halting Kraft sum under the budget
  Rat kraftBound;      // 2^-c * kraft
  Rat dyadicBound;     // 2^-c
  bool holds;          // violatingMass <= kraftBound (<= dyadicBound)
};
// The deficiency thresholds are decided exactly: y violates iff
// p_y * 2^(K+c) < 1 with K finite.
DeficiencyReport deficiencyCheck(const FiniteDistribution& d, int c, const BitString& z,
                                 const KBudget& budget);
DeficiencyReport deficiencyCheck(const FiniteDistribution& d, int c, const KTable& table);

// Prefix code with codeword lengths exactly ceil(log2(1/p_y)), built from
// cumulative probabilities over the support sorted by decreasing probability
// (lex order breaking ties).
class CodeBook {
 public:
  static CodeBook shannonFano(const FiniteDistribution& d);

  int width() const { return width_; }
  const std::map<BitString, BitString>& codes() const { return codes_; }
  BitString encode(const BitString& y) const;  // throws DecodeError off support
  BitString decode(const BitString& codeword) const;  // exact codeword only
  Rat kraft() const;

 private:
  int width_ = 0;
  std::map<BitString, BitString> codes_;
  std::map<BitString, BitString> byCode_;
};

// Distribution over all width-m strings weighting y by 2^-K(y|z), normalized
// by the exact dyadic total. Requires a budget that makes every weight
// finite, which the literal bound guarantees.
FiniteDistribution universalPrior(int width, const BitString& z, const KBudget& budget);
FiniteDistribution universalPrior(int width, const KTable& table);

}  // namespace sskit
