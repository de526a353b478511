#pragma once

#include <random>
#include <vector>

#include "broadgen/encodings.hpp"
#include "random_sets.hpp"

namespace broadgen::testing {

// Random well-formed arguments for a constructor: Bu2 gets a signature, a
// symbol of it and a tuple over the symbol's arity; everything else gets
// random sets of rank <= 4.
inline std::vector<HfSet> random_args(std::mt19937_64& rng, Tag t) {
  if (t != Tag::bu2) {
    std::vector<HfSet> args;
    for (std::size_t k = 0; k < tag_arity(t); ++k) args.push_back(random_set(rng, 4, 3));
    return args;
  }
  std::uniform_int_distribution<int> nsyms(1, 3);
  std::uniform_int_distribution<int> ar(0, 3);
  Tuple sig;
  int n = nsyms(rng);
  while (static_cast<int>(sig.size()) < n) {
    std::vector<HfSet> ks;
    int m = ar(rng);
    for (int k = 0; k < m; ++k) ks.push_back(random_set(rng, 2, 2));
    sig[random_set(rng, 3, 2)] = intern(ks);
  }
  auto it = sig.begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(0, sig.size() - 1)(rng));
  Tuple a;
  for (HfSet k : it->second.elements()) a[k] = random_set(rng, 3, 3);
  return {random_set(rng, 4, 3), encode_tuple(sig), it->first, encode_tuple(a)};
}

}  // namespace broadgen::testing
