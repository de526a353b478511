#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "broadgen/budget.hpp"
#include "broadgen/genengine.hpp"

namespace broadgen {

// Decodes are tagged so that infinite ones can be carried symbolically:
//   <0, S>              the finite set S
//   <1, <4, [k -> E]>>  the infinite sum of the decodes E_k
//   <1, <5, [k -> E]>>  the infinite W-type with symbols k and arities E_k
// A symbolic decode triggers no rules: its eq and sigma/wtype rules would
// range over infinitely many pairs or need infinite tuples.
HfSet explicit_decode(HfSet s);
std::optional<HfSet> decode_set(HfSet decode);  // empty for symbolic decodes

// Sum_{k} E_k and Term(E_k)_k over the given component decodes, explicit
// whenever the result is finite.
HfSet sum_decode(const Tuple& components);
HfSet wtype_decode(const Tuple& arities);

// Basic rules: inl a -> (B_a), inr 0 -> (empty), inr 1 -> ({0,1}).
// An explicit decode D triggers inl <d,e> -> (d = e), inr 0 : D-tuple -> sum,
// inr 1 : D-tuple -> W-type. Every family is indexed by {*}, * the empty set.
BroadRubric tarski_rubric(const std::map<HfSet, HfSet>& base);

// Derivation of the Tarski rubric -> code:
//   Basic(inl a) -> embed(a), Basic(inr 0) -> zero, Basic(inr 1) -> two,
//   Trigger(n, inl <d,e>) -> eq(tn, d, e), Trigger(n, inr 0, g) -> sigma(tn, t o g),
//   Trigger(n, inr 1, g) -> wtype(tn, t o g).
// DomainError on anything else.
HfSet tarski_theta(HfSet derivation);

struct TarskiUniverse {
  std::map<HfSet, HfSet> codes;  // code -> tagged decode
  std::size_t depth = 0;
  bool complete = false;
};

// All codes of constructor depth <= budget.depth.
TarskiUniverse tarski_universe(const std::map<HfSet, HfSet>& base, const Budget& budget);

// "sigma(two,[0->zero,1->two])", "eq(two,0,1)", "embed(3)".
std::string code_to_text(HfSet code);
// "{0,1}" for finite decodes, "wtype[0->{},1->{0,1}]" / "sigma[...]" otherwise.
std::string decode_to_text(HfSet decode);

}  // namespace broadgen
