#include "sskit/rational.hpp"

#include "sskit/errors.hpp"

namespace sskit {

Rat pow2(long e) {
  BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
  return e >= 0 ? Rat(p) : Rat(1, p);
}

long floorLog2(const Rat& x) {
  if (x <= 0) throw Error("floorLog2 requires a positive argument");
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  long e = static_cast<long>(boost::multiprecision::msb(num)) -
           static_cast<long>(boost::multiprecision::msb(den));
  // msb difference is within 1 of the true exponent; settle by comparison.
  auto le = [&](long cand) {  // 2^cand <= x ?
    return cand >= 0 ? (den << static_cast<unsigned>(cand)) <= num
                     : den <= (num << static_cast<unsigned>(-cand));
  };
  while (!le(e)) --e;
  while (le(e + 1)) ++e;
  return e;
}

long ceilLog2Inv(const Rat& p) {
  if (p <= 0 || p > 1) throw Error("ceilLog2Inv requires 0 < p <= 1");
  const BigInt num = boost::multiprecision::numerator(p);
  const BigInt den = boost::multiprecision::denominator(p);
  long l = 0;
  while ((num << static_cast<unsigned>(l)) < den) ++l;
  return l;
}

BigInt nthRootCeil(const BigInt& value, unsigned n) {
  if (value < 0 || n == 0) throw Error("nthRootCeil requires value >= 0 and n >= 1");
  if (value <= 1) return value;
  BigInt lo = 1;
  BigInt hi = 2;
  while (boost::multiprecision::pow(hi, n) < value) hi <<= 1;
  // Invariant: lo^n < value <= hi^n.
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    if (boost::multiprecision::pow(mid, n) < value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

std::string ratToString(const Rat& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rat ratFromString(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den <= 0) throw FormatError("rational denominator must be positive: " + s);
      return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t places = s.size() - dot - 1;
      if (places == 0 || digits.empty()) throw FormatError("malformed decimal: " + s);
      BigInt den = 1;
      for (std::size_t i = 0; i < places; ++i) den *= 10;
      return Rat(BigInt(digits), den);
    }
    return Rat(BigInt(s));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception&) {
    throw FormatError("malformed rational: " + s);
  }
}

}  // namespace sskit
