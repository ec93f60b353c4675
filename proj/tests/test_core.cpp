#include <doctest.h>

#include "sskit/binfloat.hpp"
#include "sskit/bitsource.hpp"
#include "sskit/bitstring.hpp"
#include "sskit/errors.hpp"
#include "sskit/rational.hpp"

using namespace sskit;

TEST_CASE("bit string literals round-trip") {
  BitString b = BitString::parseLiteral("bits:8:0x25");
  CHECK(b.str() == "00100101");
  CHECK(b.literal() == "bits:8:0x25");

  CHECK(BitString::parseLiteral("bits:0:0x0").empty());
  CHECK(BitString::parseLiteral("bits:3:0x5").str() == "101");
  CHECK(BitString("1101").literal() == "bits:4:0xd");
  CHECK(BitString::parseLiteral(BitString("0001101").literal()).str() == "0001101");

  CHECK_THROWS_AS(BitString::parseLiteral("bits:2:0x5"), FormatError);  // does not fit
  CHECK_THROWS_AS(BitString::parseLiteral("raw:2:0x1"), FormatError);
  CHECK_THROWS_AS(BitString::parseLiteral("bits:x:0x1"), FormatError);
  CHECK_THROWS_AS(BitString::parseLiteral("bits:2:1"), FormatError);
  CHECK_THROWS_AS(BitString("012"), FormatError);
}

TEST_CASE("bit string ordering and universe") {
  auto u = BitString::universe(2);
  REQUIRE(u.size() == 4);
  CHECK(u[0].str() == "00");
  CHECK(u[3].str() == "11");
  CHECK(u[0] < u[1]);
  CHECK(BitString::universe(0).size() == 1);
  CHECK(BitString::universe(0)[0].empty());

  CHECK(flatten({BitString("01"), BitString("10")}).str() == "0110");
  auto parts = unflatten(BitString("011011"), 3, 2);
  REQUIRE(parts.size() == 3);
  CHECK(parts[2].str() == "11");
  CHECK_THROWS_AS(unflatten(BitString("0110"), 3, 2), DimensionError);
}

TEST_CASE("floorLog2 and ceilLog2Inv agree with direct search") {
  CHECK(floorLog2(Rat(1)) == 0);
  CHECK(floorLog2(Rat(1, 2)) == -1);
  CHECK(floorLog2(Rat(3)) == 1);
  CHECK(floorLog2(Rat(1, 3)) == -2);

  CHECK(ceilLog2Inv(Rat(1)) == 0);
  CHECK(ceilLog2Inv(Rat(1, 2)) == 1);
  CHECK(ceilLog2Inv(Rat(1, 3)) == 2);
  CHECK(ceilLog2Inv(Rat(1, 6)) == 3);

  SplitMixBits bits(99, 0);
  auto draw = [&bits]() {
    long v = 0;
    for (int j = 0; j < 10; ++j) v = (v << 1) | bits.next();
    return v + 1;
  };
  for (int i = 0; i < 200; ++i) {
    Rat x(draw(), draw());
    long e = floorLog2(x);
    CHECK(pow2(e) <= x);
    CHECK(x < pow2(e + 1));
  }
}

TEST_CASE("nthRootCeil") {
  CHECK(nthRootCeil(BigInt(27), 3) == 3);
  CHECK(nthRootCeil(BigInt(28), 3) == 4);
  CHECK(nthRootCeil(BigInt(0), 5) == 0);
  CHECK(nthRootCeil(BigInt(1), 7) == 1);
  CHECK(nthRootCeil(BigInt(1) << 31, 10) == 9);  // ceil(2^3.1)
}

TEST_CASE("rational parsing") {
  CHECK(ratFromString("21/10") == Rat(21, 10));
  CHECK(ratFromString("2.1") == Rat(21, 10));
  CHECK(ratFromString("3") == Rat(3));
  CHECK(ratToString(Rat(4, 8)) == "1/2");
  CHECK_THROWS_AS(ratFromString("1/0"), FormatError);
  CHECK_THROWS_AS(ratFromString("abc"), FormatError);
}

TEST_CASE("log2 fixed point: exact dyadics and consistency") {
  const int prec = 128;
  CHECK(BinFloat::log2(Rat(2), prec) == BinFloat::fromInt(1, prec));
  CHECK(BinFloat::log2(Rat(1), prec) == BinFloat::zero(prec));
  CHECK(BinFloat::log2(Rat(1, 2), prec) == BinFloat::fromInt(-1, prec));
  CHECK(BinFloat::log2(Rat(1024), prec) == BinFloat::fromInt(10, prec));

  // Doubling identity: log2(x^2) = 2 log2(x) up to the last couple of bits.
  for (long num : {3L, 5L, 7L, 97L}) {
    BinFloat one = BinFloat::log2(Rat(num), prec);
    BinFloat two = BinFloat::log2(Rat(num * num), prec);
    Rat diff = boost::multiprecision::abs((one + one - two).toRational());
    CHECK(diff <= pow2(-(prec - 4)));
  }

  // Additivity across a product.
  BinFloat a = BinFloat::log2(Rat(3, 7), prec);
  BinFloat b = BinFloat::log2(Rat(7, 5), prec);
  BinFloat ab = BinFloat::log2(Rat(3, 5), prec);
  Rat diff = boost::multiprecision::abs((a + b - ab).toRational());
  CHECK(diff <= pow2(-(prec - 4)));

  // Raising the precision refines, never disagrees beyond the coarse width.
  BinFloat coarse = BinFloat::log2(Rat(10, 3), 64);
  BinFloat fine = BinFloat::log2(Rat(10, 3), 192);
  Rat gap = boost::multiprecision::abs(coarse.toRational() - fine.toRational());
  CHECK(gap <= pow2(-60));

  // Against the double oracle for the known constant.
  CHECK(BinFloat::log2(Rat(3), prec).toDouble() == doctest::Approx(1.5849625007211562).epsilon(1e-12));
}

TEST_CASE("sqrt is the floor square root of the scaled mantissa") {
  const int prec = 96;
  for (long num : {2L, 3L, 10L, 999L}) {
    BinFloat v = BinFloat::fromRational(Rat(num, 7), prec);
    BinFloat s = v.sqrt();
    BigInt scaled = v.mantissa() << static_cast<unsigned>(prec);
    CHECK(s.mantissa() * s.mantissa() <= scaled);
    CHECK((s.mantissa() + 1) * (s.mantissa() + 1) > scaled);
  }
  CHECK(BinFloat::fromInt(4, prec).sqrt() == BinFloat::fromInt(2, prec));
  CHECK_THROWS_AS(BinFloat::fromInt(-1, prec).sqrt(), Error);
}

TEST_CASE("binfloat arithmetic truncates deterministically") {
  const int prec = 64;
  BinFloat a = BinFloat::fromRational(Rat(1, 3), prec);
  BinFloat b = BinFloat::fromRational(Rat(2, 3), prec);
  CHECK((a + b).toRational() <= 1);
  CHECK((a + b).toRational() >= 1 - pow2(-(prec - 2)));
  CHECK((a * b).toRational() <= Rat(2, 9));
  CHECK((a - b).isNegative());
  CHECK_THROWS_AS((void)(a + BinFloat::zero(32)), Error);
}

TEST_CASE("extended reals compare with slack") {
  ExtReal inf = ExtReal::inf();
  ExtReal zero = ExtReal::finite(BinFloat::zero(64));
  CHECK(zero.leqWithSlack(inf, Rat(0)));
  CHECK(!inf.leqWithSlack(zero, Rat(1)));
  CHECK(inf.leqWithSlack(inf, Rat(0)));
  CHECK(zero.toString() == "0p-64");
  CHECK(inf.toString() == "inf");
}

TEST_CASE("splitmix bit streams are deterministic and splittable") {
  SplitMixBits a(42, 7);
  SplitMixBits b(42, 7);
  SplitMixBits c(42, 8);
  std::string sa, sb, sc;
  for (int i = 0; i < 128; ++i) {
    sa.push_back(static_cast<char>('0' + a.next()));
    sb.push_back(static_cast<char>('0' + b.next()));
    sc.push_back(static_cast<char>('0' + c.next()));
  }
  CHECK(sa == sb);
  CHECK(sa != sc);
  CHECK(a.bitsConsumed() == 128);
}

TEST_CASE("fixed bit sources run out") {
  FixedBits bits(BitString("10"));
  CHECK(bits.next() == 1);
  CHECK(bits.next() == 0);
  CHECK(bits.exhausted());
  CHECK_THROWS_AS(bits.next(), OutOfBitsError);
}
