#pragma once

#include <cstddef>
#include <limits>

namespace broadgen {

struct Budget {
  std::size_t depth = 16;
  std::size_t max_elements = 2'000'000;
  std::size_t fuel = std::numeric_limits<std::size_t>::max();
};

}  // namespace broadgen
