#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace govtree {

// 64-bit FNV-1a. Non-cryptographic; used for answer digests and for mixing
// event renderings into environment seeds.
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace govtree
