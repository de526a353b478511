#pragma once

#include "broadgen/encodings.hpp"
#include "broadgen/signature.hpp"
#include "broadgen/terms.hpp"

namespace broadgen::testing {

inline HfSet nat(std::uint64_t k) { return von_neumann(k); }

inline HfSet positions(std::initializer_list<std::uint64_t> ks) {
  std::vector<HfSet> v;
  for (auto k : ks) v.push_back(nat(k));
  return intern(v);
}

// Symbols 5 (4-ary), 6, 7 (nullary), 8 (ternary).
inline Signature example_signature() {
  Signature s;
  s.arities[nat(5)] = positions({0, 1, 2, 3});
  s.arities[nat(6)] = HfSet();
  s.arities[nat(7)] = HfSet();
  s.arities[nat(8)] = positions({0, 1, 2});
  return s;
}

inline Tuple args(std::initializer_list<HfSet> xs) {
  Tuple t;
  std::uint64_t k = 0;
  for (HfSet x : xs) t[nat(k++)] = x;
  return t;
}

inline HfSet leaf_term(std::uint64_t i) { return make_term(nat(i), {}); }

// 8(0->5(7,6,7,7), 1->7, 2->6), the drawn term of the example signature.
inline HfSet figure_term() {
  HfSet inner = make_term(nat(5), args({leaf_term(7), leaf_term(6), leaf_term(7), leaf_term(7)}));
  return make_term(nat(8), args({inner, leaf_term(7), leaf_term(6)}));
}

// Build(Start,6,[]) -> {7:{0,1}, 8:{0,1}, 9:{}}, everything else ->
// {4:{0,1}, 5:{}, 6:{}}.
inline BroadSignature example_broad_signature() {
  BroadSignature g;
  Signature six;
  six.arities[nat(7)] = positions({0, 1});
  six.arities[nat(8)] = positions({0, 1});
  six.arities[nat(9)] = HfSet();
  g.table[build(start(), nat(6), {})] = six;
  g.fallback.arities[nat(4)] = positions({0, 1});
  g.fallback.arities[nat(5)] = HfSet();
  g.fallback.arities[nat(6)] = HfSet();
  return g;
}

// Make(Begin,[]) -> {0,1}, everything else -> {}.
inline ReducedBroadSignature example_reduced_signature() {
  ReducedBroadSignature f;
  f.table[make(HfSet(), {})] = positions({0, 1});
  return f;
}

}  // namespace broadgen::testing
