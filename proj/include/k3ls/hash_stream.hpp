#pragma once

#include <cstdint>
#include <string_view>

namespace k3ls {

std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream key from (user seed, instance index, purpose tag).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::string_view purpose);

/// Counted hash stream: draw i is splitmix64(key + i * golden). Bit-reproducible on
/// every platform, unlike the std distributions.
class HashStream {
 public:
  explicit HashStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace k3ls
