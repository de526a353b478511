#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "broadgen/hfset.hpp"

namespace broadgen {

// Calls f(choice) for every assignment of pool entries to positions in
// which at least one entry comes from pool[fresh_from..]. choice[j] is the
// pool index for position j. With fresh_from == 0 this is every assignment,
// including the single empty assignment when there are no positions.
// Returning false from f stops the enumeration; the function then returns
// false.
template <class F>
bool for_each_choice(std::size_t positions, std::size_t pool_size, std::size_t fresh_from, F&& f) {
  std::vector<std::size_t> choice(positions, 0);
  if (positions == 0) return fresh_from == 0 ? static_cast<bool>(f(choice)) : true;
  if (fresh_from >= pool_size) return true;
  // split on the first position holding a fresh entry
  for (std::size_t j = 0; j < positions; ++j) {
    if (j > 0 && fresh_from == 0) break;
    std::vector<std::size_t> lo(positions), hi(positions);
    for (std::size_t q = 0; q < positions; ++q) {
      if (q < j) {
        lo[q] = 0;
        hi[q] = fresh_from;
      } else if (q == j) {
        lo[q] = fresh_from;
        hi[q] = pool_size;
      } else {
        lo[q] = 0;
        hi[q] = pool_size;
      }
    }
    bool empty_range = false;
    for (std::size_t q = 0; q < positions; ++q) empty_range |= lo[q] >= hi[q];
    if (empty_range) continue;
    choice = lo;
    for (;;) {
      if (!f(choice)) return false;
      std::size_t q = positions;
      while (q > 0) {
        --q;
        if (++choice[q] < hi[q]) break;
        choice[q] = lo[q];
        if (q == 0) {
          q = positions + 1;
          break;
        }
      }
      if (q == positions + 1) break;
    }
  }
  return true;
}

}  // namespace broadgen
