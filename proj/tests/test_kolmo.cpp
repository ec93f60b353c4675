#include <doctest.h>

#include "sskit/errors.hpp"
#include "sskit/kolmo.hpp"

using namespace sskit;

namespace {

// Brute-force oracle: among ALL bit strings of total length < cap (not just
// enumerable encodings), is there a valid program producing y on (z, empty r)?
std::optional<long> bruteForceK(const BitString& y, const BitString& z, long cap,
                                const ExecBudget& exec) {
  for (long len = 1; len < cap; ++len) {
    for (long v = 0; v < (1L << len); ++v) {
      BitString candidate;
      for (long i = len - 1; i >= 0; --i) candidate.append(static_cast<int>((v >> i) & 1));
      auto p = Program::tryValidate(candidate);
      if (!p.has_value()) continue;
      ExecOutcome o = run(*p, z, BitString(), exec);
      if (o.halted() && o.output == y) return len;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("bounded complexity of the smallest strings") {
  KBudget budget;
  budget.lmax = 16;

  KResult empty = kBounded(BitString(), BitString(), budget);
  REQUIRE(!empty.infinite());
  CHECK(*empty.value == 1);
  CHECK(empty.witness->raw().str() == "1");

  // The oracle confirms nothing below eight bits emits "0".
  CHECK(!bruteForceK(BitString("0"), BitString(), 8, budget.exec).has_value());
  KResult zero = kBounded(BitString("0"), BitString(), budget);
  REQUIRE(!zero.infinite());
  CHECK(*zero.value == 8);
  CHECK(zero.witness->literal() == "bits:8:0x25");

  CHECK(bruteForceK(BitString("1"), BitString(), 12, budget.exec) == 11);
  KResult one = kBounded(BitString("1"), BitString(), budget);
  CHECK(*one.value == 11);

  KBudget tiny;
  tiny.lmax = 1;
  CHECK(kBounded(BitString("1"), BitString(), tiny).infinite());
  CHECK(kBounded(BitString("0101"), BitString(), tiny).infinite());
}

TEST_CASE("witnesses replay to the target and budgets are monotone") {
  KBudget small;
  small.lmax = 16;
  KBudget large;
  large.lmax = 20;
  large.exec.maxSteps = 8192;

  for (const auto& target : {"", "0", "1", "00", "01", "10", "11"}) {
    BitString y{std::string(target)};
    KResult ks = kBounded(y, BitString(), small);
    KResult kl = kBounded(y, BitString(), large);
    if (!ks.infinite()) {
      REQUIRE(!kl.infinite());
      CHECK(*kl.value <= *ks.value);
      ExecOutcome replay = run(*ks.witness, BitString(), BitString(), small.exec);
      CHECK(replay.halted());
      CHECK(replay.output == y);
      CHECK(static_cast<long>(ks.witness->length()) == *ks.value);
    }
  }
}

TEST_CASE("k is computed against the conditioning string") {
  KBudget budget;
  budget.lmax = 16;
  // With z = "11", RDZ-based programs compete: RDZ OUT OUT produces "11" in
  // sixteen bits, the same as FLIP OUT OUT.
  KResult k = kBounded(BitString("11"), BitString("11"), budget);
  REQUIRE(!k.infinite());
  CHECK(*k.value == 16);

  // Conditioning never hurts: a witness that ignores z stays valid.
  for (const auto& target : {"", "0", "1", "01", "11"}) {
    BitString y{std::string(target)};
    KResult plain = kBounded(y, BitString(), budget);
    KResult cond = kBounded(y, y, budget);
    if (!plain.infinite()) {
      REQUIRE(!cond.infinite());
      CHECK(*cond.value <= *plain.value);
    }
  }
}

TEST_CASE("ktable agrees with pointwise queries") {
  KBudget budget;
  budget.lmax = 16;
  BitString z("01");
  KTable table(z, budget);
  for (const auto& target : {"", "0", "1", "01", "10", "010"}) {
    BitString y{std::string(target)};
    KResult direct = kBounded(y, z, budget);
    KResult viaTable = table.lookup(y);
    CHECK(direct.infinite() == viaTable.infinite());
    if (!direct.infinite()) CHECK(*direct.value == *viaTable.value);
  }
  CHECK(table.haltingKraftSum() == kraftSum(budget, z));
}

TEST_CASE("literal upper bound") {
  LiteralBound empty = kUpperLiteral(BitString());
  CHECK(empty.bound == 1);

  LiteralBound one = kUpperLiteral(BitString("1"));
  CHECK(one.bound == 11);  // FLIP OUT body, five header bits

  LiteralBound zeros = kUpperLiteral(BitString("00"));
  CHECK(zeros.bound == 11);  // OUT OUT, no flips

  KBudget budget;
  budget.lmax = 24;
  for (const auto& y : BitString::universe(2)) {
    LiteralBound lit = kUpperLiteral(y);
    ExecOutcome replay = run(lit.witness, BitString(), BitString(), budget.exec);
    CHECK(replay.halted());
    CHECK(replay.output == y);
    CHECK(lit.bound <= kUpperLiteralWorstCase(2));
    KResult k = kBounded(y, BitString(), budget);
    REQUIRE(!k.infinite());
    CHECK(*k.value <= lit.bound);
  }
  CHECK(kUpperLiteralWorstCase(0) == 1);
  CHECK(kUpperLiteralWorstCase(2) == 19);
}

TEST_CASE("kraft sums over halting programs") {
  KBudget one;
  one.lmax = 1;
  CHECK(kraftSum(one, BitString()) == Rat(1, 2));

  KBudget ten;
  ten.lmax = 10;
  KBudget sixteen;
  sixteen.lmax = 16;
  Rat k10 = kraftSum(ten, BitString());
  Rat k16 = kraftSum(sixteen, BitString());
  CHECK(k10 <= k16);
  CHECK(k16 <= 1);
}

TEST_CASE("deficiency bound holds exactly") {
  KBudget budget;
  budget.lmax = 20;
  KTable table(BitString(), budget);

  FiniteDistribution u2 = FiniteDistribution::uniform(2);
  for (int c = 0; c <= 4; ++c) {
    DeficiencyReport rep = deficiencyCheck(u2, c, table);
    CHECK(rep.holds);
    CHECK(rep.violatingMass <= rep.dyadicBound);
    // Surprisal is two bits and every K is at least eight: nothing violates.
    CHECK(rep.violatingMass == 0);
  }

  DeficiencyReport vacuous = deficiencyCheck(u2, 0, table);
  CHECK(vacuous.dyadicBound == 1);

  FiniteDistribution point = FiniteDistribution::pointMass(BitString("0"));
  DeficiencyReport p = deficiencyCheck(point, 2, table);
  CHECK(p.violatingMass == 0);
  CHECK(p.holds);

  CHECK_THROWS_AS(deficiencyCheck(u2, -1, table), Error);
}

TEST_CASE("shannon-fano codebook") {
  CodeBook uniform = CodeBook::shannonFano(FiniteDistribution::uniform(2));
  for (const auto& [y, code] : uniform.codes()) CHECK(code.size() == 2);
  CHECK(uniform.kraft() == 1);

  // Probabilities 1/2, 1/4, 1/4 give lengths 1, 2, 2.
  FiniteDistribution d = FiniteDistribution::parse("m=2\n00 1/2\n10 1/4\n11 1/4\n");
  CodeBook book = CodeBook::shannonFano(d);
  CHECK(book.encode(BitString("00")).size() == 1);
  CHECK(book.encode(BitString("10")).size() == 2);
  CHECK(book.encode(BitString("11")).size() == 2);
  CHECK(book.kraft() <= 1);

  for (const auto& [y, p] : d.pmf()) {
    CHECK(book.decode(book.encode(y)) == y);
  }
  CHECK_THROWS_AS(book.decode(BitString("1111111")), DecodeError);
  CHECK_THROWS_AS(book.encode(BitString("01")), DecodeError);

  // A distribution where cumulative codes in plain lex order would collide:
  // the sorted construction must stay prefix-free.
  FiniteDistribution tricky = FiniteDistribution::parse("m=2\n00 1/4\n01 1/2\n10 1/4\n");
  CodeBook t = CodeBook::shannonFano(tricky);
  long violations = 0;
  for (const auto& [ya, ca] : t.codes()) {
    for (const auto& [yb, cb] : t.codes()) {
      if (ya != yb && ca.isPrefixOf(cb)) ++violations;
    }
  }
  CHECK(violations == 0);
  for (const auto& [y, p] : tricky.pmf()) {
    CHECK(static_cast<long>(t.encode(y).size()) == ceilLog2Inv(p));
  }

  // Non-dyadic lengths: ceil(log2 6) = 3, ceil(log2 3) = 2.
  FiniteDistribution rational = FiniteDistribution::parse(
      "m=2\n00 1/6\n01 1/3\n10 1/4\n11 1/4\n");
  CodeBook r = CodeBook::shannonFano(rational);
  CHECK(r.encode(BitString("00")).size() == 3);
  CHECK(r.encode(BitString("01")).size() == 2);
  CHECK(r.kraft() <= 1);
}

TEST_CASE("universal prior") {
  KBudget budget;
  budget.lmax = 19;

  FiniteDistribution m0 = universalPrior(0, BitString(), budget);
  CHECK(m0 == FiniteDistribution::pointMass(BitString()));

  // Enumeration gives K("0") = 8 and K("1") = 11, so the prior is skewed
  // toward the cheaper string, 8/9 vs 1/9.
  FiniteDistribution m1 = universalPrior(1, BitString(), budget);
  CHECK(m1.prob(BitString("0")) == Rat(8, 9));
  CHECK(m1.prob(BitString("1")) == Rat(1, 9));

  FiniteDistribution m2 = universalPrior(2, BitString(), budget);
  Rat total = 0;
  for (const auto& [y, p] : m2.pmf()) {
    total += p;
    CHECK(p >= pow2(-kUpperLiteralWorstCase(2)));
  }
  CHECK(total == 1);

  KBudget tooSmall;
  tooSmall.lmax = 18;
  CHECK_THROWS_AS(universalPrior(2, BitString(), tooSmall), BudgetTooSmallError);
}
