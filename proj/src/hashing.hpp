#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace autorand {

struct VectorHash {
  template <typename T>
  std::size_t operator()(const std::vector<T>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (const T& x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace autorand
