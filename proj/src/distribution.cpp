#include "sskit/distribution.hpp"

#include <fstream>
#include <sstream>

#include "sskit/errors.hpp"

namespace sskit {
namespace {

void requireSameShape(int wa, int wb, int aa, int ab) {
  if (wa != wb || aa != ab) throw DimensionError("distribution width/arity mismatch");
}

// Shared KL accumulator; terms with p == q contribute exactly zero and the
// log2 of each distinct ratio is computed once.
class KlAccumulator {
 public:
  explicit KlAccumulator(int precisionBits)
      : prec_(precisionBits), acc_(BinFloat::zero(precisionBits)) {}

  // Adds p * log2(p/q); q == 0 marks support escape (+infinity).
  void add(const Rat& p, const Rat& q) {
    if (infinite_) return;
    if (q == 0) {
      infinite_ = true;
      return;
    }
    if (p == q) return;
    Rat ratio = p / q;
    auto it = memo_.find(ratio);
    if (it == memo_.end()) {
      it = memo_.emplace(ratio, BinFloat::log2(ratio, prec_)).first;
    }
    acc_ += BinFloat::fromRational(p, prec_) * it->second;
  }

  ExtReal result() const {
    return infinite_ ? ExtReal::inf() : ExtReal::finite(acc_);
  }

 private:
  int prec_;
  BinFloat acc_;
  bool infinite_ = false;
  std::map<Rat, BinFloat> memo_;
};

}  // namespace

FiniteDistribution::FiniteDistribution(int width, std::map<BitString, Rat> pmf)
    : width_(width), pmf_(std::move(pmf)) {
  if (width < 0) throw DimensionError("width must be non-negative");
  Rat total = 0;
  for (const auto& [y, p] : pmf_) {
    if (y.size() != static_cast<std::size_t>(width)) {
      throw DimensionError("support element width mismatch");
    }
    if (p <= 0) throw FormatError("probabilities must be strictly positive");
    total += p;
  }
  if (total != 1) throw FormatError("probabilities must sum to exactly one");
}

FiniteDistribution FiniteDistribution::pointMass(const BitString& y) {
  std::map<BitString, Rat> pmf;
  pmf.emplace(y, Rat(1));
  return FiniteDistribution(static_cast<int>(y.size()), std::move(pmf));
}

FiniteDistribution FiniteDistribution::uniform(int width) {
  std::map<BitString, Rat> pmf;
  Rat p(1, BigInt(1) << static_cast<unsigned>(width));
  for (const auto& y : BitString::universe(width)) pmf.emplace(y, p);
  return FiniteDistribution(width, std::move(pmf));
}

FiniteDistribution FiniteDistribution::parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty distribution file");
  if (line.rfind("m=", 0) != 0) throw FormatError("first line must be m=<width>");
  int width = 0;
  try {
    std::size_t used = 0;
    width = std::stoi(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw FormatError("malformed width line: " + line);
  }
  if (width < 0) throw FormatError("width must be non-negative");

  std::map<BitString, Rat> pmf;
  BitString prev;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto space = line.find(' ');
    if (space == std::string::npos) throw FormatError("malformed support line: " + line);
    BitString y(line.substr(0, space));
    if (y.size() != static_cast<std::size_t>(width)) {
      throw FormatError("support element has wrong width: " + line);
    }
    if (!first && !(prev < y)) {
      throw FormatError("support must be strictly ascending (duplicate or misordered): " + line);
    }
    std::string frac = line.substr(space + 1);
    auto slash = frac.find('/');
    if (slash == std::string::npos) throw FormatError("probability must be num/den: " + line);
    Rat p = ratFromString(frac);
    if (p <= 0) throw FormatError("probabilities must be positive: " + line);
    // Lowest-terms check: re-serialization must reproduce the input.
    if (ratToString(p) != frac) throw FormatError("probability not in lowest terms: " + line);
    pmf.emplace(y, p);
    prev = y;
    first = false;
  }
  return FiniteDistribution(width, std::move(pmf));
}

FiniteDistribution FiniteDistribution::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

FiniteDistribution FiniteDistribution::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open distribution file: " + path);
  return parse(in);
}

std::string FiniteDistribution::serialize() const {
  std::ostringstream out;
  out << "m=" << width_ << "\n";
  for (const auto& [y, p] : pmf_) {
    out << y.str() << " " << ratToString(p) << "\n";
  }
  return out.str();
}

void FiniteDistribution::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write distribution file: " + path);
  out << serialize();
}

Rat FiniteDistribution::prob(const BitString& y) const {
  auto it = pmf_.find(y);
  return it == pmf_.end() ? Rat(0) : it->second;
}

BigInt FiniteDistribution::commonDenominator() const {
  BigInt den = 1;
  for (const auto& [y, p] : pmf_) {
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(p));
  }
  return den;
}

TupleDistribution TupleDistribution::explicitDist(int arity, int width,
                                                  std::map<BitString, Rat> flatPmf) {
  if (arity < 1) throw DimensionError("arity must be at least one");
  TupleDistribution t;
  t.arity_ = arity;
  t.width_ = width;
  Rat total = 0;
  for (const auto& [flat, p] : flatPmf) {
    if (flat.size() != static_cast<std::size_t>(arity) * static_cast<std::size_t>(width)) {
      throw DimensionError("flattened tuple has wrong length");
    }
    if (p <= 0) throw FormatError("tuple probabilities must be positive");
    total += p;
  }
  if (total != 1) throw FormatError("tuple probabilities must sum to exactly one");
  t.flatPmf_ = std::move(flatPmf);
  return t;
}

TupleDistribution TupleDistribution::product(FiniteDistribution base, int arity) {
  if (arity < 1) throw DimensionError("arity must be at least one");
  TupleDistribution t;
  t.arity_ = arity;
  t.width_ = base.width();
  t.base_ = std::move(base);
  return t;
}

Rat TupleDistribution::prob(const std::vector<BitString>& tuple) const {
  if (tuple.size() != static_cast<std::size_t>(arity_)) {
    throw DimensionError("tuple arity mismatch");
  }
  if (base_.has_value()) {
    Rat p = 1;
    for (const auto& y : tuple) {
      if (y.size() != static_cast<std::size_t>(width_)) {
        throw DimensionError("tuple coordinate width mismatch");
      }
      Rat q = base_->prob(y);
      if (q == 0) return Rat(0);
      p *= q;
    }
    return p;
  }
  return probFlat(flatten(tuple));
}

Rat TupleDistribution::probFlat(const BitString& flat) const {
  if (flat.size() != static_cast<std::size_t>(arity_) * static_cast<std::size_t>(width_)) {
    throw DimensionError("flattened tuple has wrong length");
  }
  if (base_.has_value()) {
    Rat p = 1;
    for (int i = 0; i < arity_; ++i) {
      Rat q = base_->prob(flat.substr(static_cast<std::size_t>(i) * width_, width_));
      if (q == 0) return Rat(0);
      p *= q;
    }
    return p;
  }
  auto it = flatPmf_.find(flat);
  return it == flatPmf_.end() ? Rat(0) : it->second;
}

const std::map<BitString, Rat>& TupleDistribution::flatPmf() const {
  if (base_.has_value()) {
    throw RepresentationError("operation requires an explicit tuple distribution");
  }
  return flatPmf_;
}

const FiniteDistribution& TupleDistribution::base() const {
  if (!base_.has_value()) {
    throw RepresentationError("tuple distribution is not a product");
  }
  return *base_;
}

TupleDistribution power(const FiniteDistribution& d, int n) {
  return TupleDistribution::product(d, n);
}

Rat tvDistance(const FiniteDistribution& a, const FiniteDistribution& b) {
  requireSameShape(a.width(), b.width(), 1, 1);
  Rat sum = 0;
  auto ia = a.pmf().begin();
  auto ib = b.pmf().begin();
  while (ia != a.pmf().end() || ib != b.pmf().end()) {
    if (ib == b.pmf().end() || (ia != a.pmf().end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.pmf().end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += boost::multiprecision::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

Rat tvDistance(const TupleDistribution& a, const TupleDistribution& b) {
  requireSameShape(a.width(), b.width(), a.arity(), b.arity());
  if (!a.isExplicit() && !b.isExplicit()) {
    // Two implicit products cannot be enumerated; identical bases are the one
    // decidable case.
    if (a.base() == b.base()) return Rat(0);
    throw RepresentationError("tuple tv needs at least one explicit side");
  }
  if (!a.isExplicit()) return tvDistance(b, a);
  if (b.isExplicit()) {
    Rat sum = 0;
    auto ia = a.flatPmf().begin();
    auto ib = b.flatPmf().begin();
    while (ia != a.flatPmf().end() || ib != b.flatPmf().end()) {
      if (ib == b.flatPmf().end() ||
          (ia != a.flatPmf().end() && ia->first < ib->first)) {
        sum += ia->second;
        ++ia;
      } else if (ia == a.flatPmf().end() || ib->first < ia->first) {
        sum += ib->second;
        ++ib;
      } else {
        sum += boost::multiprecision::abs(ia->second - ib->second);
        ++ia;
        ++ib;
      }
    }
    return sum / 2;
  }
  // Explicit vs product: the product's mass off the explicit support is
  // 1 - sum of product probabilities over that support.
  Rat sum = 0;
  Rat productMassOnSupport = 0;
  for (const auto& [flat, p] : a.flatPmf()) {
    Rat q = b.probFlat(flat);
    sum += boost::multiprecision::abs(p - q);
    productMassOnSupport += q;
  }
  sum += 1 - productMassOnSupport;
  return sum / 2;
}

ExtReal klDivergence(const FiniteDistribution& a, const FiniteDistribution& b,
                     int precisionBits) {
  requireSameShape(a.width(), b.width(), 1, 1);
  KlAccumulator acc(precisionBits);
  for (const auto& [y, p] : a.pmf()) acc.add(p, b.prob(y));
  return acc.result();
}

ExtReal klDivergence(const TupleDistribution& a, const TupleDistribution& b,
                     int precisionBits) {
  requireSameShape(a.width(), b.width(), a.arity(), b.arity());
  if (!a.isExplicit()) {
    if (!b.isExplicit() && a.base() == b.base()) {
      return ExtReal::finite(BinFloat::zero(precisionBits));
    }
    throw RepresentationError("tuple KL needs an explicit left side");
  }
  KlAccumulator acc(precisionBits);
  for (const auto& [flat, p] : a.flatPmf()) acc.add(p, b.probFlat(flat));
  return acc.result();
}

FiniteDistribution marginal(const TupleDistribution& r, int coord) {
  if (coord < 0 || coord >= r.arity()) throw IndexError("marginal coordinate out of range");
  if (!r.isExplicit()) return r.base();
  std::map<BitString, Rat> pmf;
  for (const auto& [flat, p] : r.flatPmf()) {
    pmf[flat.substr(static_cast<std::size_t>(coord) * r.width(), r.width())] += p;
  }
  return FiniteDistribution(r.width(), std::move(pmf));
}

FiniteDistribution averageMarginal(const TupleDistribution& r) {
  if (!r.isExplicit()) return r.base();
  std::map<BitString, Rat> pmf;
  Rat invArity(1, r.arity());
  for (const auto& [flat, p] : r.flatPmf()) {
    for (int i = 0; i < r.arity(); ++i) {
      pmf[flat.substr(static_cast<std::size_t>(i) * r.width(), r.width())] += p * invArity;
    }
  }
  return FiniteDistribution(r.width(), std::move(pmf));
}

TupleDistribution conditionTuple(
    const TupleDistribution& r,
    const std::function<bool(const std::vector<BitString>&)>& accept) {
  if (!r.isExplicit()) {
    throw RepresentationError("conditioning requires an explicit tuple distribution");
  }
  std::map<BitString, Rat> kept;
  Rat mass = 0;
  for (const auto& [flat, p] : r.flatPmf()) {
    if (accept(unflatten(flat, r.arity(), r.width()))) {
      kept.emplace(flat, p);
      mass += p;
    }
  }
  if (mass == 0) throw ConditionOnNullError("conditioning event has zero mass");
  for (auto& [flat, p] : kept) p /= mass;
  return TupleDistribution::explicitDist(r.arity(), r.width(), std::move(kept));
}

BitString sampleExact(const FiniteDistribution& d, BitSource& bits) {
  // Cumulative boundaries over the support in lex order.
  std::vector<std::pair<Rat, const BitString*>> starts;
  starts.reserve(d.pmf().size());
  Rat cum = 0;
  for (const auto& [y, p] : d.pmf()) {
    starts.emplace_back(cum, &y);
    cum += p;
  }

  BigInt value = 0;  // current dyadic interval [value/2^depth, (value+1)/2^depth)
  long depth = 0;
  for (;;) {
    Rat lo = depth == 0 ? Rat(0) : Rat(value, BigInt(1) << static_cast<unsigned>(depth));
    Rat hi = depth == 0 ? Rat(1) : Rat(value + 1, BigInt(1) << static_cast<unsigned>(depth));
    // Last outcome whose start is <= lo.
    std::size_t loIdx = starts.size() - 1;
    while (starts[loIdx].first > lo) --loIdx;
    Rat end = loIdx + 1 < starts.size() ? starts[loIdx + 1].first : Rat(1);
    if (hi <= end) return *starts[loIdx].second;
    value = (value << 1) | bits.next();
    ++depth;
  }
}

std::size_t sampleUniformIndex(std::size_t n, BitSource& bits) {
  if (n == 0) throw IndexError("cannot sample from an empty range");
  BigInt value = 0;
  long depth = 0;
  for (;;) {
    // Interval [value, value+1) / 2^depth against boundaries i/n.
    BigInt scaledLo = value * n;
    BigInt scaledHi = scaledLo + n;  // (value+1)*n
    BigInt unit = BigInt(1) << static_cast<unsigned>(depth);
    BigInt idxLo = scaledLo / unit;
    BigInt idxHi = (scaledHi - 1) / unit;
    if (idxLo == idxHi) return idxLo.convert_to<std::size_t>();
    value = (value << 1) | bits.next();
    ++depth;
  }
}

PinskerReport pinskerCheck(const FiniteDistribution& a, const FiniteDistribution& b,
                           int precisionBits) {
  PinskerReport rep;
  rep.tv = tvDistance(a, b);
  rep.kl = klDivergence(a, b, precisionBits);
  if (rep.kl.infinite) {
    rep.bound = ExtReal::inf();
    rep.holds = true;
  } else {
    BinFloat kl2 = rep.kl.value + rep.kl.value;
    // KL can come out a hair negative from truncation when a == b; clamp.
    if (kl2.isNegative()) kl2 = BinFloat::zero(precisionBits);
    rep.bound = ExtReal::finite(kl2.sqrt());
    rep.holds = rep.tv <= rep.bound.value.toRational() + defaultSlack();
  }
  rep.slack = defaultSlack();
  return rep;
}

RaoReport raoCheck(const TupleDistribution& r, const FiniteDistribution& d,
                   int precisionBits) {
  requireSameShape(r.width(), d.width(), 1, 1);
  RaoReport rep;
  bool lhsInf = false;
  BinFloat lhs = BinFloat::zero(precisionBits);
  for (int i = 0; i < r.arity(); ++i) {
    ExtReal term = klDivergence(marginal(r, i), d, precisionBits);
    if (term.infinite) {
      lhsInf = true;
      break;
    }
    lhs += term.value;
  }
  rep.lhs = lhsInf ? ExtReal::inf() : ExtReal::finite(lhs);
  rep.rhs = klDivergence(r, power(d, r.arity()), precisionBits);
  rep.slack = defaultSlack();
  rep.holds = rep.lhs.leqWithSlack(rep.rhs, rep.slack);
  return rep;
}

}  // namespace sskit
