#ifndef ABREU_RNG_HPP
#define ABREU_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace abreu {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Named-stream splitter: every consumer derives its own generator from the
/// single run seed, so evaluation order never changes the draws.
class SeedSplitter {
public:
  explicit SeedSplitter(std::uint64_t seed) : seed_(seed) {}

  std::mt19937_64 stream(std::string_view name) const {
    return std::mt19937_64(splitmix64(seed_ ^ fnv1a(name)));
  }

  std::mt19937_64 stream(std::string_view name, std::uint64_t index) const {
    return std::mt19937_64(splitmix64(splitmix64(seed_ ^ fnv1a(name)) + index));
  }

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
};

}  // namespace abreu

#endif
