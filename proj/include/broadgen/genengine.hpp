#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "broadgen/budget.hpp"
#include "broadgen/encodings.hpp"
#include "broadgen/signature.hpp"

namespace broadgen {

// Membership test for the ambient class. An empty predicate admits every set.
using ClassPredicate = std::function<bool(HfSet)>;

// A family (y_p) indexed by a set P: either a finite table or a membership
// test plus value function, optionally with a bounded enumerator.
class ResultFamily {
 public:
  struct Entry {
    HfSet index;
    HfSet value;
  };

  static ResultFamily none();
  static ResultFamily table(std::vector<Entry> entries);
  // Indexed by {*} where * is the empty set.
  static ResultFamily singleton(HfSet value);
  // Indexed by the numerals 0..n-1.
  static ResultFamily list(const std::vector<HfSet>& values);
  static ResultFamily indexed(std::function<bool(HfSet)> member,
                              std::function<HfSet(HfSet)> value,
                              std::function<std::vector<HfSet>()> enumerate = {});

  bool finitary() const;
  // NonFinitaryError when the family cannot be enumerated.
  std::vector<Entry> entries() const;
  std::optional<HfSet> at(HfSet p) const;

 private:
  bool is_table_ = true;
  std::vector<Entry> table_;
  std::function<bool(HfSet)> member_;
  std::function<HfSet(HfSet)> value_;
  std::function<std::vector<HfSet>()> enumerate_;
};

struct Rule {
  HfSet arity;
  std::function<ResultFamily(const Tuple&)> apply;
};

struct Rubric {
  std::map<HfSet, Rule> rules;
  ClassPredicate in_class;

  bool admits(HfSet x) const { return !in_class || in_class(x); }
};

struct BroadRubric {
  Rubric basic;
  // Rubric triggered by an element; an empty function triggers nothing.
  std::function<Rubric(HfSet)> trigger;
  ClassPredicate in_class;

  Rubric triggered(HfSet x) const;
  bool admits(HfSet x) const { return !in_class || in_class(x); }
  static BroadRubric from_table(Rubric basic, std::map<HfSet, Rubric> table,
                                ClassPredicate in_class = {});
};

// One application of the rubric operator.
ThingSet gamma_step(const Rubric& r, const ThingSet& x);
ThingSet gamma_step(const BroadRubric& r, const ThingSet& x);
bool is_inductive(const Rubric& r, const ThingSet& x);
bool is_inductive(const BroadRubric& r, const ThingSet& x);

// X_0 = {} and X_{n+1} = gamma(X_n); returns X_0..X_stages.
std::vector<ThingSet> inductive_chain(const Rubric& r, std::size_t stages);
std::vector<ThingSet> inductive_chain(const BroadRubric& r, std::size_t stages);

struct GenerationResult {
  ThingSet set;
  bool stabilized = false;
  // When stabilized: the least n with X_n = X_{n+1}. Otherwise the number of
  // stages computed before the budget ran out.
  std::size_t stages = 0;
};

// Worklist evaluation of the chain. Stops at budget.depth stages,
// budget.max_elements elements or budget.fuel rule applications.
GenerationResult generate_set(const Rubric& r, const Budget& budget);
GenerationResult generate_set(const BroadRubric& r, const Budget& budget);

// Derivation keys.
HfSet derivation(HfSet i, const Tuple& g, HfSet p);  // <i, g, p>

// DomainError for malformed derivations, unknown rules, arity mismatches or
// indices outside the result family.
HfSet eval_derivation(const Rubric& r, HfSet d);
HfSet eval_derivation(const BroadRubric& r, HfSet d);          // Basic / Trigger
HfSet eval_pseudo_derivation(const BroadRubric& r, HfSet d);   // BasicP / TriggerP

struct GeneratedFamily {
  std::map<HfSet, HfSet> entries;  // derivation -> value
  std::size_t depth = 0;           // heights <= depth are present
  bool complete = false;           // no derivation of greater height exists
};

// All derivations of height <= budget.depth. BudgetError past
// budget.max_elements entries or budget.fuel rule applications.
GeneratedFamily generate_family(const Rubric& r, const Budget& budget);
GeneratedFamily generate_family(const BroadRubric& r, const Budget& budget);
GeneratedFamily generate_pseudo_family(const BroadRubric& r, const Budget& budget);

ThingSet family_range(const GeneratedFamily& f);

// The broad rubric with basic part r and no triggers.
BroadRubric hat_rubric(const Rubric& r);
// Basic rule () -> (Start); x triggers i: [a_k] -> (Build(x, i, [a_k])).
BroadRubric bracket_broadsig(const BroadSignature& g);
// Basic rule () -> (Begin); x triggers one rule [a_k] -> (Make(x, [a_k])).
BroadRubric bracket_reduced(const ReducedBroadSignature& f);

// Lift of a rule of arity K along a cover (D_k) of K: the arity becomes
// L = {<k,d> | k in K, d in D_k}; an L-tuple that is constant on every fibre
// gets the family of the collapsed K-tuple, any other L-tuple the empty
// family. DomainError unless the cover's domain is K and every D_k is
// inhabited.
Rule cover_lift_rule(const Rule& rule, const Tuple& cover);

// Chain of an arbitrary monotone operator on sets of things, stopping at the
// first repeat or after max_steps steps.
std::vector<ThingSet> monotone_chain(const std::function<ThingSet(const ThingSet&)>& op,
                                     std::size_t max_steps);

}  // namespace broadgen
