#pragma once

#include <cstdint>

#include "sskit/bitstring.hpp"

namespace sskit {

// Source of unbiased bits. Implementations are either unbounded deterministic
// streams or finite buffers that throw OutOfBitsError when exhausted.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual int next() = 0;
  long bitsConsumed() const { return consumed_; }

 protected:
  long consumed_ = 0;
};

// One step of the splitmix64 generator; advances the state.
std::uint64_t splitmix64Next(std::uint64_t& state);

// Pinned splittable construction: the stream for (seed, streamId) starts from
// state seed XOR (0x9E3779B97F4A7C15 * (streamId + 1)) and emits successive
// splitmix64 outputs, each consumed MSB first. Streams for distinct ids are
// independent for all practical purposes and independent of scheduling.
class SplitMixBits final : public BitSource {
 public:
  SplitMixBits(std::uint64_t seed, std::uint64_t streamId);
  int next() override;

 private:
  std::uint64_t state_;
  std::uint64_t block_ = 0;
  int available_ = 0;
};

// Finite buffer of pre-chosen bits; throws OutOfBitsError past the end.
class FixedBits final : public BitSource {
 public:
  explicit FixedBits(BitString bits) : bits_(std::move(bits)) {}
  int next() override;
  bool exhausted() const { return pos_ == bits_.size(); }

 private:
  BitString bits_;
  std::size_t pos_ = 0;
};

}  // namespace sskit
