#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

namespace divcom::detail {

// Pair index k in [0, m(m-1)/2) -> (i, j), i < j, lexicographic by (i, j).
inline std::pair<int, int> unrank_pair(std::int64_t k, std::int64_t m) {
  auto before = [m](std::int64_t i) { return i * (m - 1) - i * (i - 1) / 2; };
  auto i = static_cast<std::int64_t>(
      std::floor((2 * m - 1 -
                  std::sqrt(static_cast<double>(2 * m - 1) * (2 * m - 1) -
                            8.0 * static_cast<double>(k))) /
                 2.0));
  i = std::clamp<std::int64_t>(i, 0, m - 2);
  while (i + 1 <= m - 2 && before(i + 1) <= k) ++i;
  while (i > 0 && before(i) > k) --i;
  return {static_cast<int>(i), static_cast<int>(i + 1 + (k - before(i)))};
}

}  // namespace divcom::detail
