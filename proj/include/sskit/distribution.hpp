#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sskit/binfloat.hpp"
#include "sskit/bitsource.hpp"
#include "sskit/bitstring.hpp"
#include "sskit/rational.hpp"

namespace sskit {

// Exact probability mass over bit strings of one fixed width. Immutable after
// construction; every stored probability is strictly positive and the total
// is exactly one.
class FiniteDistribution {
 public:
  FiniteDistribution(int width, std::map<BitString, Rat> pmf);

  static FiniteDistribution pointMass(const BitString& y);
  static FiniteDistribution uniform(int width);

  // Text format: first line "m=<width>", then one "<bits> <num>/<den>" line
  // per support element in strictly ascending lexicographic order, lowest
  // terms, positive probabilities summing to one.
  static FiniteDistribution parse(std::istream& in);
  static FiniteDistribution parse(const std::string& text);
  static FiniteDistribution load(const std::string& path);
  std::string serialize() const;
  void save(const std::string& path) const;

  int width() const { return width_; }
  const std::map<BitString, Rat>& pmf() const { return pmf_; }
  Rat prob(const BitString& y) const;  // zero off support
  // Least common denominator of the stored probabilities.
  BigInt commonDenominator() const;

  bool operator==(const FiniteDistribution& rhs) const = default;

 private:
  int width_;
  std::map<BitString, Rat> pmf_;
};

// Exact distribution over N-tuples of m-bit strings: either an explicit pmf
// keyed by the flattened tuple, or the implicit product D^N of a base
// distribution (query-only; full enumeration would explode).
class TupleDistribution {
 public:
  static TupleDistribution explicitDist(int arity, int width,
                                        std::map<BitString, Rat> flatPmf);
  static TupleDistribution product(FiniteDistribution base, int arity);

  bool isExplicit() const { return !base_.has_value(); }
  int arity() const { return arity_; }
  int width() const { return width_; }

  Rat prob(const std::vector<BitString>& tuple) const;
  Rat probFlat(const BitString& flat) const;

  const std::map<BitString, Rat>& flatPmf() const;  // explicit only
  const FiniteDistribution& base() const;           // product only

 private:
  TupleDistribution() = default;
  int arity_ = 0;
  int width_ = 0;
  std::map<BitString, Rat> flatPmf_;
  std::optional<FiniteDistribution> base_;
};

TupleDistribution power(const FiniteDistribution& d, int n);

Rat tvDistance(const FiniteDistribution& a, const FiniteDistribution& b);
// Tuple form needs at least one explicit side; two products compare bases.
Rat tvDistance(const TupleDistribution& a, const TupleDistribution& b);

ExtReal klDivergence(const FiniteDistribution& a, const FiniteDistribution& b,
                     int precisionBits = kDefaultPrecisionBits);
// Left side must be explicit (its support is enumerated).
ExtReal klDivergence(const TupleDistribution& a, const TupleDistribution& b,
                     int precisionBits = kDefaultPrecisionBits);

// Exact marginal on the given coordinate (0-based).
FiniteDistribution marginal(const TupleDistribution& r, int coord);
// (1/N) * sum of the coordinate marginals.
FiniteDistribution averageMarginal(const TupleDistribution& r);
// Renormalized restriction to accepted tuples; throws ConditionOnNullError
// when nothing is accepted.
TupleDistribution conditionTuple(
    const TupleDistribution& r,
    const std::function<bool(const std::vector<BitString>&)>& accept);

// Draws exactly from D: the bit source is the binary expansion of a uniform
// real, compared lazily against the cumulative boundaries in lex order.
BitString sampleExact(const FiniteDistribution& d, BitSource& bits);
// Exact uniform index in [0, n) by the same interval method.
std::size_t sampleUniformIndex(std::size_t n, BitSource& bits);

struct PinskerReport {
  Rat tv;
  ExtReal kl;
  ExtReal bound;  // sqrt(2 * kl)
  Rat slack;
  bool holds;
};
PinskerReport pinskerCheck(const FiniteDistribution& a, const FiniteDistribution& b,
                           int precisionBits = kDefaultPrecisionBits);

struct RaoReport {
  ExtReal lhs;  // sum_i KL(R_i || D)
  ExtReal rhs;  // KL(R || D^N)
  Rat slack;
  bool holds;
};
RaoReport raoCheck(const TupleDistribution& r, const FiniteDistribution& d,
                   int precisionBits = kDefaultPrecisionBits);

}  // namespace sskit
