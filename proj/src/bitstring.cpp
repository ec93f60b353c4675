#include "sskit/bitstring.hpp"

#include <charconv>

#include "sskit/errors.hpp"

namespace sskit {

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw FormatError("bit string may contain only '0'/'1'");
    }
  }
}

BitString BitString::zeros(std::size_t n) {
  BitString b;
  b.bits_.assign(n, '0');
  return b;
}

int BitString::bit(std::size_t i) const {
  if (i >= bits_.size()) throw IndexError("bit index out of range");
  return bits_[i] - '0';
}

void BitString::append(int b) {
  if (b != 0 && b != 1) throw FormatError("bit must be 0 or 1");
  bits_.push_back(static_cast<char>('0' + b));
}

BitString BitString::operator+(const BitString& rhs) const {
  BitString out = *this;
  out.bits_ += rhs.bits_;
  return out;
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
  if (pos > bits_.size() || pos + len > bits_.size()) {
    throw IndexError("substring out of range");
  }
  BitString out;
  out.bits_ = bits_.substr(pos, len);
  return out;
}

bool BitString::isPrefixOf(const BitString& other) const {
  return bits_.size() <= other.bits_.size() &&
         other.bits_.compare(0, bits_.size(), bits_) == 0;
}

BitString BitString::parseLiteral(std::string_view lit) {
  constexpr std::string_view kPrefix = "bits:";
  if (lit.substr(0, kPrefix.size()) != kPrefix) {
    throw FormatError("program/bit literal must start with \"bits:\"");
  }
  lit.remove_prefix(kPrefix.size());
  auto colon = lit.find(':');
  if (colon == std::string_view::npos) throw FormatError("bit literal missing length field");
  std::size_t len = 0;
  auto lenField = lit.substr(0, colon);
  auto res = std::from_chars(lenField.data(), lenField.data() + lenField.size(), len);
  if (res.ec != std::errc() || res.ptr != lenField.data() + lenField.size()) {
    throw FormatError("bit literal has a malformed length");
  }
  lit.remove_prefix(colon + 1);
  if (lit.substr(0, 2) != "0x" && lit.substr(0, 2) != "0X") {
    throw FormatError("bit literal value must be hexadecimal (0x...)");
  }
  lit.remove_prefix(2);
  if (lit.empty()) throw FormatError("bit literal value is empty");

  // Hex digits give the value MSB first; the value must fit in len bits.
  std::string nibbles;
  nibbles.reserve(lit.size() * 4);
  for (char c : lit) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
    else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
    else throw FormatError("bit literal has a non-hex digit");
    for (int i = 3; i >= 0; --i) nibbles.push_back(static_cast<char>('0' + ((v >> i) & 1)));
  }
  // Excess leading bits must be zero.
  if (nibbles.size() < len) {
    nibbles.insert(nibbles.begin(), len - nibbles.size(), '0');
  } else {
    std::size_t excess = nibbles.size() - len;
    for (std::size_t i = 0; i < excess; ++i) {
      if (nibbles[i] != '0') throw FormatError("bit literal value does not fit in declared length");
    }
    nibbles.erase(0, excess);
  }
  return BitString(std::move(nibbles));
}

std::string BitString::literal() const {
  static const char* kHex = "0123456789abcdef";
  std::string hex;
  // Pack MSB first, padding on the left to a nibble boundary.
  std::size_t pad = (4 - bits_.size() % 4) % 4;
  int acc = 0;
  int have = static_cast<int>(pad);
  for (char c : bits_) {
    acc = (acc << 1) | (c - '0');
    if (++have == 4) {
      hex.push_back(kHex[acc]);
      acc = 0;
      have = 0;
    }
  }
  // Trim redundant leading zero digits but keep at least one.
  std::size_t firstNonZero = hex.find_first_not_of('0');
  if (firstNonZero == std::string::npos) {
    hex = "0";
  } else {
    hex.erase(0, firstNonZero);
  }
  if (bits_.empty()) hex = "0";
  return "bits:" + std::to_string(bits_.size()) + ":0x" + hex;
}

std::vector<BitString> BitString::universe(int width) {
  if (width < 0 || width > 24) throw IndexError("universe width out of supported range");
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(1) << width);
  std::string cur(static_cast<std::size_t>(width), '0');
  for (std::size_t v = 0; v < (static_cast<std::size_t>(1) << width); ++v) {
    for (int i = 0; i < width; ++i) {
      cur[static_cast<std::size_t>(width - 1 - i)] =
          static_cast<char>('0' + ((v >> i) & 1));
    }
    out.push_back(BitString(cur));
  }
  return out;
}

BitString flatten(const std::vector<BitString>& tuple) {
  BitString out;
  for (const auto& y : tuple) out.append(y);
  return out;
}

std::vector<BitString> unflatten(const BitString& flat, int arity, int width) {
  if (arity < 0 || width < 0 ||
      flat.size() != static_cast<std::size_t>(arity) * static_cast<std::size_t>(width)) {
    throw DimensionError("flattened tuple length does not match arity*width");
  }
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(arity));
  for (int i = 0; i < arity; ++i) {
    out.push_back(flat.substr(static_cast<std::size_t>(i) * width, width));
  }
  return out;
}

}  // namespace sskit
