#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace cce::rng {

// Counter-based deterministic random source. Every draw is a pure function of
// (key, index), so series can be regenerated bit-identically from a seed and
// evaluated out of order. Quality comes from the splitmix64 finalizer, which
// has full avalanche; this is a statistical generator, not a cryptographic one.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kDeriveSalt = 0xD1B54A32D192ED03ull;

// Stream purposes. Keys derived with distinct tags are decorrelated streams.
inline constexpr std::uint64_t kTagBranch = 1;   // correctness / upgrade decisions
inline constexpr std::uint64_t kTagHighBand = 2; // draws inside the high score band
inline constexpr std::uint64_t kTagLowBand = 3;  // draws inside the low score band
inline constexpr std::uint64_t kTagNoise = 4;    // additive gaussian noise
inline constexpr std::uint64_t kTagSegLength = 5;
inline constexpr std::uint64_t kTagSegGap = 6;
inline constexpr std::uint64_t kTagDataset = 7;
inline constexpr std::uint64_t kTagScores = 8;

constexpr std::uint64_t fmix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Derives an independent stream key from a parent key and a tag.
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t tag) noexcept {
  return fmix64((key + kGolden) ^ fmix64(tag + kDeriveSalt));
}

constexpr std::uint64_t bits_at(std::uint64_t key, std::uint64_t index) noexcept {
  return fmix64(key + kGolden * (index + 1));
}

// Uniform double in [0, 1), 53 mantissa bits.
constexpr double u01_at(std::uint64_t key, std::uint64_t index) noexcept {
  return static_cast<double>(bits_at(key, index) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes counters 2*index and 2*index+1.
inline double gauss_at(std::uint64_t key, std::uint64_t index) noexcept {
  const double u1 =
      static_cast<double>((bits_at(key, 2 * index) >> 11) + 1) * 0x1.0p-53;
  const double u2 = u01_at(key, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// FNV-1a, used to fold dataset names into seed derivations.
constexpr std::uint64_t hash_bytes(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const char c : text) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace cce::rng
