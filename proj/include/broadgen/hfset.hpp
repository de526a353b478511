#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace broadgen {

// Handle to an interned hereditarily finite set. Two handles are equal iff
// the sets are extensionally equal, so equality is an id comparison.
// operator<=> is the canonical order: rank first, then lexicographic on the
// ascending element sequences (shorter prefix first).
class HfSet {
 public:
  constexpr HfSet() = default;  // the empty set

  static constexpr HfSet from_id(std::uint32_t id) { return HfSet(id); }
  constexpr std::uint32_t id() const { return id_; }

  std::span<const HfSet> elements() const;
  std::size_t size() const;
  bool empty() const { return id_ == 0; }
  std::uint32_t rank() const;
  std::uint64_t hash() const;
  bool contains(HfSet x) const;

  friend constexpr bool operator==(HfSet a, HfSet b) { return a.id_ == b.id_; }
  friend std::strong_ordering operator<=>(HfSet a, HfSet b);

 private:
  constexpr explicit HfSet(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

std::strong_ordering canonical_compare(HfSet a, HfSet b);

using ThingSet = std::set<HfSet>;

// Process-wide append-only store. Interning is serialized by a mutex; reading
// an interned node never takes a lock.
class Store {
 public:
  static Store& instance();

  std::size_t node_count() const;
  std::size_t node_limit() const;
  // Interning a new node past the limit throws BudgetError.
  void set_node_limit(std::size_t limit);

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  struct Impl;
  Impl& impl() { return *impl_; }

 private:
  Store();
  ~Store();
  Impl* impl_;
};

// Elements in any order, duplicates allowed.
HfSet intern(std::vector<HfSet> elements);
HfSet make_set(std::initializer_list<HfSet> elements);
// Elements must already be strictly ascending in canonical order.
HfSet intern_sorted(std::span<const HfSet> elements);

HfSet singleton(HfSet x);
HfSet set_union(HfSet a, HfSet b);
HfSet set_intersection(HfSet a, HfSet b);
HfSet set_difference(HfSet a, HfSet b);
HfSet union_of(HfSet family);
bool is_subset(HfSet a, HfSet b);
HfSet powerset(HfSet a);
HfSet separate(HfSet a, const std::function<bool(HfSet)>& keep);
HfSet replace(HfSet a, const std::function<HfSet(HfSet)>& f);
HfSet from_things(const ThingSet& things);
ThingSet to_things(HfSet a);

// {e} together with everything reachable from e by membership.
HfSet descendant_set(HfSet e);
// Everything reachable from elements of a (a is not included unless cyclic,
// which cannot happen for well-founded sets).
HfSet transitive_closure(HfSet a);
bool is_transitive(HfSet a);

HfSet truth(bool b);  // empty set or {empty set}

// Grammar: set ::= '{' (set (',' set)*)? '}'. Whitespace is accepted between
// tokens on input and never produced on output.
std::string serialize(HfSet a);
HfSet parse_hfset(std::string_view text);

}  // namespace broadgen

template <>
struct std::hash<broadgen::HfSet> {
  std::size_t operator()(broadgen::HfSet a) const noexcept {
    return std::hash<std::uint32_t>{}(a.id());
  }
};
