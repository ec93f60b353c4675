#pragma once

#include <compare>
#include <string>

#include "sskit/rational.hpp"

namespace sskit {

// Precision contract for everything that involves log2 of a rational:
// values are dyadic fixed-point numbers mant/2^fracBits with fracBits
// significant fraction bits (default 128), and every inequality assertion
// over such values carries an additive slack of 2^-40.
inline constexpr int kDefaultPrecisionBits = 128;
inline constexpr int kSlackBits = 40;
inline Rat defaultSlack() { return pow2(-kSlackBits); }

// Signed dyadic fixed-point value v = mant / 2^fracBits. Arithmetic truncates
// toward minus infinity at the common precision, so results are deterministic
// and within count(ops) * 2^-fracBits of the real value.
class BinFloat {
 public:
  BinFloat() : mant_(0), fbits_(kDefaultPrecisionBits) {}
  BinFloat(BigInt mant, int fracBits);

  static BinFloat zero(int fracBits) { return BinFloat(BigInt(0), fracBits); }
  static BinFloat fromInt(long v, int fracBits);
  static BinFloat fromRational(const Rat& r, int fracBits);
  // log2(x) for x > 0, accurate to well below one unit in the last place plus
  // the truncation inherent in fixed point.
  static BinFloat log2(const Rat& x, int fracBits);

  BinFloat sqrt() const;  // floor square root; requires *this >= 0

  BinFloat operator+(const BinFloat& rhs) const;
  BinFloat operator-(const BinFloat& rhs) const;
  BinFloat operator-() const { return BinFloat(-mant_, fbits_); }
  BinFloat operator*(const BinFloat& rhs) const;
  BinFloat& operator+=(const BinFloat& rhs) { return *this = *this + rhs; }

  std::strong_ordering operator<=>(const BinFloat& rhs) const;
  bool operator==(const BinFloat& rhs) const { return (*this <=> rhs) == 0; }

  bool isNegative() const { return mant_ < 0; }
  const BigInt& mantissa() const { return mant_; }
  int fracBits() const { return fbits_; }

  Rat toRational() const { return Rat(mant_) / pow2(fbits_); }
  double toDouble() const;
  // Exact serialization: "<mant decimal>p-<fracBits>" (value = mant * 2^-fracBits).
  std::string toString() const;

 private:
  void requireSamePrecision(const BinFloat& rhs) const;

  BigInt mant_;
  int fbits_;
};

// Non-negative extended real: either +infinity or a finite BinFloat.
struct ExtReal {
  bool infinite = false;
  BinFloat value;

  static ExtReal inf() { return ExtReal{true, BinFloat()}; }
  static ExtReal finite(BinFloat v) { return ExtReal{false, std::move(v)}; }

  // this <= rhs + slack (an infinite rhs absorbs everything).
  bool leqWithSlack(const ExtReal& rhs, const Rat& slack) const;
  std::string toString() const { return infinite ? "inf" : value.toString(); }
};

}  // namespace sskit
