#include "k3ls/hash_stream.hpp"

namespace k3ls {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::string_view purpose) {
  // FNV-1a over the tag.
  std::uint64_t tag = 0xcbf29ce484222325ULL;
  for (char c : purpose) {
    tag ^= static_cast<unsigned char>(c);
    tag *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(splitmix64(seed) ^ index) ^ tag);
}

std::uint64_t HashStream::next() { return splitmix64(key_ + (counter_++) * kGolden); }

std::uint64_t HashStream::uniform(std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

}  // namespace k3ls
