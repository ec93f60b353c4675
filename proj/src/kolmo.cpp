#include "sskit/kolmo.hpp"

#include <algorithm>

#include "sskit/errors.hpp"

namespace sskit {

KResult kBounded(const BitString& y, const BitString& z, const KBudget& budget) {
  KResult result;
  const BitString emptyRand;
  forEachProgram(budget.lmax, [&](const Program& p) {
    ExecOutcome outcome = run(p, z, emptyRand, budget.exec);
    if (outcome.halted() && outcome.output == y) {
      result.value = static_cast<long>(p.length());
      result.witness = p;
      return false;  // lengths are nondecreasing, so the first hit is minimal
    }
    return true;
  });
  return result;
}

KTable::KTable(BitString z, const KBudget& budget) : z_(std::move(z)), budget_(budget) {
  const BitString emptyRand;
  forEachProgram(budget.lmax, [&](const Program& p) {
    ExecOutcome outcome = run(p, z_, emptyRand, budget.exec);
    if (outcome.halted()) {
      kraft_ += pow2(-static_cast<long>(p.length()));
      byOutput_.emplace(outcome.output,
                        std::make_pair(static_cast<long>(p.length()), p));
    }
    return true;
  });
}

KResult KTable::lookup(const BitString& y) const {
  auto it = byOutput_.find(y);
  if (it == byOutput_.end()) return KResult{};
  return KResult{it->second.first, it->second.second};
}

LiteralBound kUpperLiteral(const BitString& y) {
  std::vector<Opcode> body;
  body.reserve(2 * y.size());
  int cell = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.bit(i) != cell) {
      body.push_back(Opcode::Flip);
      cell ^= 1;
    }
    body.push_back(Opcode::Out);
  }
  Program witness = Program::fromBody(body);
  return LiteralBound{static_cast<long>(witness.length()), std::move(witness)};
}

long kUpperLiteralWorstCase(std::size_t len) {
  long bodyBits = static_cast<long>(6 * len);
  long headerValue = bodyBits + 1;
  long log2 = 0;
  while ((1L << (log2 + 1)) <= headerValue) ++log2;
  return bodyBits + 2 * log2 + 1;
}

Rat kraftSum(const KBudget& budget, const BitString& z) {
  Rat sum = 0;
  const BitString emptyRand;
  forEachProgram(budget.lmax, [&](const Program& p) {
    if (run(p, z, emptyRand, budget.exec).halted()) {
      sum += pow2(-static_cast<long>(p.length()));
    }
    return true;
  });
  return sum;
}

DeficiencyReport deficiencyCheck(const FiniteDistribution& d, int c, const KTable& table) {
  if (c < 0) throw Error("deficiency parameter c must be non-negative");
  DeficiencyReport rep;
  rep.violatingMass = 0;
  for (const auto& [y, p] : d.pmf()) {
    KResult k = table.lookup(y);
    if (k.infinite()) continue;
    // K < log2(1/p) - c  <=>  p * 2^(K+c) < 1, decided exactly.
    if (p * pow2(*k.value + c) < 1) rep.violatingMass += p;
  }
  rep.kraft = table.haltingKraftSum();
  rep.kraftBound = pow2(-c) * rep.kraft;
  rep.dyadicBound = pow2(-c);
  rep.holds = rep.violatingMass <= rep.kraftBound && rep.kraftBound <= rep.dyadicBound;
  return rep;
}

DeficiencyReport deficiencyCheck(const FiniteDistribution& d, int c, const BitString& z,
                                 const KBudget& budget) {
  return deficiencyCheck(d, c, KTable(z, budget));
}

namespace {

// First `len` bits of the binary expansion of r in [0, 1).
BitString fractionBits(Rat r, long len) {
  BitString out;
  for (long i = 0; i < len; ++i) {
    r *= 2;
    if (r >= 1) {
      out.append(1);
      r -= 1;
    } else {
      out.append(0);
    }
  }
  return out;
}

}  // namespace

CodeBook CodeBook::shannonFano(const FiniteDistribution& d) {
  // Cumulative construction over the support sorted by decreasing
  // probability: the cumulative sum then advances by at least 2^-len(y) per
  // codeword, which is what makes the truncated expansions prefix-free.
  std::vector<std::pair<BitString, Rat>> sorted(d.pmf().begin(), d.pmf().end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  CodeBook book;
  book.width_ = d.width();
  Rat cum = 0;
  for (const auto& [y, p] : sorted) {
    long len = ceilLog2Inv(p);  // zero for a point mass: empty codeword
    BitString code = fractionBits(cum, len);
    book.codes_.emplace(y, code);
    book.byCode_.emplace(code, y);
    cum += p;
  }
  return book;
}

BitString CodeBook::encode(const BitString& y) const {
  auto it = codes_.find(y);
  if (it == codes_.end()) throw DecodeError("string is not in the codebook support");
  return it->second;
}

BitString CodeBook::decode(const BitString& codeword) const {
  auto it = byCode_.find(codeword);
  if (it == byCode_.end()) throw DecodeError("bits do not form a codeword");
  return it->second;
}

Rat CodeBook::kraft() const {
  Rat sum = 0;
  for (const auto& [y, code] : codes_) sum += pow2(-static_cast<long>(code.size()));
  return sum;
}

FiniteDistribution universalPrior(int width, const KTable& table) {
  if (table.budget().lmax < kUpperLiteralWorstCase(static_cast<std::size_t>(width))) {
    throw BudgetTooSmallError(
        "budget lmax cannot guarantee finite weights for width " + std::to_string(width));
  }
  std::map<BitString, Rat> weights;
  Rat total = 0;
  for (const auto& y : BitString::universe(width)) {
    KResult k = table.lookup(y);
    if (k.infinite()) {
      throw BudgetTooSmallError("no program found for " + y.literal() +
                                " despite the literal bound; execution budget too tight");
    }
    Rat w = pow2(-*k.value);
    weights.emplace(y, w);
    total += w;
  }
  for (auto& [y, w] : weights) w /= total;
  return FiniteDistribution(width, std::move(weights));
}

FiniteDistribution universalPrior(int width, const BitString& z, const KBudget& budget) {
  return universalPrior(width, KTable(z, budget));
}

}  // namespace sskit
