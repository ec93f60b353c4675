#include "sskit/binfloat.hpp"

#include <cmath>

#include "sskit/errors.hpp"

namespace sskit {
namespace {

// Floor division by 2^s for signed values (cpp_int >> is not defined for
// negatives across all configurations).
BigInt floorShiftRight(const BigInt& v, unsigned s) {
  if (v >= 0) return v >> s;
  BigInt mask = (BigInt(1) << s) - 1;
  return -((-v + mask) >> s);
}

BigInt floorDiv(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace

BinFloat::BinFloat(BigInt mant, int fracBits) : mant_(std::move(mant)), fbits_(fracBits) {
  if (fracBits < 1) throw Error("BinFloat precision must be at least one bit");
}

BinFloat BinFloat::fromInt(long v, int fracBits) {
  return BinFloat(BigInt(v) << static_cast<unsigned>(fracBits), fracBits);
}

BinFloat BinFloat::fromRational(const Rat& r, int fracBits) {
  BigInt scaled = floorDiv(boost::multiprecision::numerator(r) << static_cast<unsigned>(fracBits),
                           boost::multiprecision::denominator(r));
  return BinFloat(std::move(scaled), fracBits);
}

BinFloat BinFloat::log2(const Rat& x, int fracBits) {
  if (x <= 0) throw Error("log2 requires a positive argument");
  const long e = floorLog2(x);
  const Rat m = x / pow2(e);  // in [1, 2)

  // Digit extraction by repeated squaring. Truncation error roughly doubles
  // per squaring, so carry 2F + 64 working bits for F output bits.
  const unsigned guard = static_cast<unsigned>(2 * fracBits + 64);
  BigInt w = floorDiv(boost::multiprecision::numerator(m) << guard,
                      boost::multiprecision::denominator(m));
  const BigInt two = BigInt(1) << (guard + 1);
  BigInt frac = 0;
  for (int i = 0; i < fracBits; ++i) {
    w = (w * w) >> guard;
    frac <<= 1;
    if (w >= two) {
      w >>= 1;
      frac |= 1;
    }
  }
  BigInt mant = BigInt(e) * (BigInt(1) << static_cast<unsigned>(fracBits)) + frac;
  return BinFloat(std::move(mant), fracBits);
}

BinFloat BinFloat::sqrt() const {
  if (mant_ < 0) throw Error("sqrt requires a non-negative value");
  BigInt scaled = mant_ << static_cast<unsigned>(fbits_);
  return BinFloat(boost::multiprecision::sqrt(scaled), fbits_);
}

void BinFloat::requireSamePrecision(const BinFloat& rhs) const {
  if (fbits_ != rhs.fbits_) throw Error("BinFloat precision mismatch");
}

BinFloat BinFloat::operator+(const BinFloat& rhs) const {
  requireSamePrecision(rhs);
  return BinFloat(mant_ + rhs.mant_, fbits_);
}

BinFloat BinFloat::operator-(const BinFloat& rhs) const {
  requireSamePrecision(rhs);
  return BinFloat(mant_ - rhs.mant_, fbits_);
}

BinFloat BinFloat::operator*(const BinFloat& rhs) const {
  requireSamePrecision(rhs);
  return BinFloat(floorShiftRight(mant_ * rhs.mant_, static_cast<unsigned>(fbits_)), fbits_);
}

std::strong_ordering BinFloat::operator<=>(const BinFloat& rhs) const {
  requireSamePrecision(rhs);
  if (mant_ < rhs.mant_) return std::strong_ordering::less;
  if (mant_ > rhs.mant_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double BinFloat::toDouble() const {
  return mant_.convert_to<double>() / std::pow(2.0, fbits_);
}

std::string BinFloat::toString() const {
  return mant_.str() + "p-" + std::to_string(fbits_);
}

bool ExtReal::leqWithSlack(const ExtReal& rhs, const Rat& slack) const {
  if (rhs.infinite) return true;
  if (infinite) return false;
  return value.toRational() <= rhs.value.toRational() + slack;
}

}  // namespace sskit
