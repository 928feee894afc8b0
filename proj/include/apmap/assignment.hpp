#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace apmap {

struct Assignment {
  std::int64_t cost = 0;
  std::vector<std::size_t> column_of_row;  // row i is matched to column column_of_row[i]
};

// Minimum-cost perfect matching on a square cost matrix given row-major,
// O(n^3) Hungarian method with row/column potentials.
inline Assignment min_cost_assignment(std::span<const std::int64_t> cost, std::size_t n) {
  Assignment result;
  result.column_of_row.assign(n, 0);
  if (n == 0) return result;
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based arrays; index 0 is the virtual root
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      std::int64_t delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    result.column_of_row[row_of_col[j] - 1] = j - 1;
    result.cost += cost[(row_of_col[j] - 1) * n + (j - 1)];
  }
  return result;
}

}  // namespace apmap
