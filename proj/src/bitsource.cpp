#include "sskit/bitsource.hpp"

#include "sskit/errors.hpp"

namespace sskit {

std::uint64_t splitmix64Next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SplitMixBits::SplitMixBits(std::uint64_t seed, std::uint64_t streamId)
    : state_(seed ^ (0x9E3779B97F4A7C15ull * (streamId + 1))) {}

int SplitMixBits::next() {
  if (available_ == 0) {
    block_ = splitmix64Next(state_);
    available_ = 64;
  }
  --available_;
  ++consumed_;
  return static_cast<int>((block_ >> available_) & 1u);
}

int FixedBits::next() {
  if (pos_ >= bits_.size()) throw OutOfBitsError("bit source exhausted");
  ++consumed_;
  return bits_.bit(pos_++);
}

}  // namespace sskit
