#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sskit {

// An ordered sequence of binary symbols. Stored as '0'/'1' characters so the
// canonical lexicographic order is plain string comparison.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string bits);  // throws FormatError on non-binary chars

  static BitString zeros(std::size_t n);
  // Parses the literal form "bits:<len>:0x<hex>"; the hex value, zero-padded
  // to <len> bits, is read MSB first.
  static BitString parseLiteral(std::string_view lit);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const;
  void append(int b);
  void append(const BitString& other) { bits_ += other.bits_; }
  BitString operator+(const BitString& rhs) const;
  BitString substr(std::size_t pos, std::size_t len) const;
  bool isPrefixOf(const BitString& other) const;

  const std::string& str() const { return bits_; }
  std::string literal() const;  // "bits:<len>:0x<hex>"

  auto operator<=>(const BitString&) const = default;

  // All 2^width strings of the given width in ascending lexicographic order.
  static std::vector<BitString> universe(int width);

 private:
  std::string bits_;
};

// Concatenation of the tuple coordinates in order.
BitString flatten(const std::vector<BitString>& tuple);
std::vector<BitString> unflatten(const BitString& flat, int arity, int width);

}  // namespace sskit
