#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "broadgen/encodings.hpp"
#include "broadgen/genengine.hpp"
#include "broadgen/signature.hpp"

namespace broadgen {

// A class M of suitable things, each with a finite set J(e) of children.
struct Spection {
  std::function<bool(HfSet)> suitable;
  std::function<ThingSet(HfSet)> children;  // only called on suitable things
  // Children are always strict descendants (members of the transitive
  // closure), so every search below terminates.
  bool introspective = false;
};

// Union of J^n(e): J^0(e) = {e}, J^{n+1}(e) = union of J(x) for suitable x in
// J^n(e). BudgetError after `fuel` distinct elements.
HfSet m_descendant_set(const Spection& s, HfSet e, std::size_t fuel = 1'000'000);

// e is in the least class closed under "J(x) inside it implies x in it".
bool is_generated(const Spection& s, HfSet e, std::size_t fuel = 1'000'000);
// Every element of the M-descendant set of e is suitable.
bool is_cogenerated(const Spection& s, HfSet e, std::size_t fuel = 1'000'000);

// The signature (J(x))_x over suitable x in the M-descendant set of e, with
// children as positions.
Signature descendant_signature(const Spection& s, HfSet e, std::size_t fuel = 1'000'000);
// The term <e, [b -> t_b]_{b in J(e)}> in which every t_b derives b; empty
// when e is not generated.
std::optional<HfSet> derivation_term(const Spection& s, HfSet e, std::size_t fuel = 1'000'000);

// Generated elements of the M-descendant set of e, children before parents.
// DomainError when e is not generated.
std::vector<HfSet> attempt_order(const Spection& s, HfSet e, std::size_t fuel = 1'000'000);

// The unique F with F(x) = step(x, F restricted to J(x)), evaluated at e by
// building the attempt over the M-descendant set.
template <class T>
T recurse(const Spection& s, const std::function<T(HfSet, const std::map<HfSet, T>&)>& step,
          HfSet e, std::size_t fuel = 1'000'000) {
  std::map<HfSet, T> attempt;
  for (HfSet x : attempt_order(s, e, fuel)) {
    std::map<HfSet, T> sub;
    for (HfSet c : s.children(x)) sub.emplace(c, attempt.at(c));
    attempt.emplace(x, step(x, sub));
  }
  return attempt.at(e);
}

// A spection with, for each suitable e, a partial function from J(e)-tuples
// of values to values. evaluate returns nothing outside its domain.
struct FamSpection {
  Spection spection;
  std::function<std::optional<HfSet>(HfSet e, const Tuple& values)> evaluate;
};

// u_e for the large family generated by fs, or nothing when e is outside its
// domain (including e not generated by the underlying spection).
std::optional<HfSet> famspec_membership(const FamSpection& fs, HfSet e,
                                        std::size_t fuel = 1'000'000);

// Built-in introspections.
// Zermelo numerals: Zero has no children, Succ x = {x} has child x.
Spection nat_spection();
// Terms <i, [a_k]> with i in s and dom a = K_i; children are the a_k.
Spection term_spection(const Signature& s);
// Begin, and Make(x, a) with dom a = F(x); children x and the a_k.
Spection reduced_broad_spection(const ReducedBroadSignature& f);
// Start, and Build(x, i, a) with i in G(x), dom a = K_i; children x and the a_k.
Spection broad_spection(const BroadSignature& g);

// Derivations <i, g, p> of a rubric; children are the entries of g.
FamSpection rubric_famspection(const Rubric& r);
// Basic(i, g, p) with children rng g; Trigger(m, i, g, p) with children
// {m} u rng g. With pseudo set, BasicP / TriggerP instead.
FamSpection broad_rubric_famspection(const BroadRubric& r, bool pseudo = false);

}  // namespace broadgen
