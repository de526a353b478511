#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "broadgen/hfset.hpp"

namespace broadgen {

// Ordinal below w^w in Cantor normal form: w^e1*c1 + ... + w^en*cn with
// e1 > ... > en and every ci > 0.
class Ordinal {
 public:
  struct Term {
    std::uint64_t exp;
    std::uint64_t coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Ordinal() = default;
  static Ordinal finite(std::uint64_t n);
  static Ordinal omega_power(std::uint64_t exp, std::uint64_t coef = 1);
  static Ordinal omega() { return omega_power(1); }
  // Terms in any order; normalizes by ordinal addition left to right.
  static Ordinal sum(std::span<const Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_successor() const;
  bool is_limit() const;
  std::optional<std::uint64_t> as_finite() const;

  Ordinal succ() const;
  Ordinal operator+(const Ordinal& other) const;

  // "w^2*3+w*1+4"; zero prints as "0".
  std::string to_string() const;
  // Sums of "n", "w", "w*c", "w^e", "w^e*c" (also with the letter omega);
  // ParseError on anything else.
  static Ordinal parse(std::string_view text);

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

Ordinal sup(std::span<const Ordinal> xs);
Ordinal ssup(std::span<const Ordinal> xs);

// a is K-complete when every K-tuple within a has supremum < a.
// Finite K: true unless K is empty and a is 0.
bool is_k_complete(const Ordinal& a, std::size_t finite_k);
// K = w: true exactly for non-limits (every limit below w^w has an
// increasing w-sequence cofinal in it).
bool is_omega_complete(const Ordinal& a);
// When a is a limit: an increasing w-indexed family cofinal in a, as its
// n-th member.
Ordinal omega_witness(const Ordinal& a, std::uint64_t n);
// Regular means 0, 1 or a regular limit. Below w^w the only regular limit is w.
bool is_regular(const Ordinal& a);

// Finite strict relation on a carrier; (a, b) means a precedes b.
struct WellOrder {
  std::vector<HfSet> carrier;
  std::set<std::pair<HfSet, HfSet>> less;

  // DomainError naming the failed condition: well-founded, transitive,
  // extensional.
  void validate() const;
  static WellOrder from_sequence(const std::vector<HfSet>& seq);
};

struct OrderType {
  std::uint64_t type = 0;             // finite carriers only
  std::map<HfSet, HfSet> rank_of;     // a -> {rank_of(b) | b < a}
};

// Validates first.
OrderType order_type(const WellOrder& w);

// Brute force; sets with more than 6 elements are refused (BudgetError).
std::uint64_t hartogs(HfSet k);
std::uint64_t lindenbaum(HfSet k);
bool preceq(HfSet a, HfSet b);       // injection a -> b
bool preceq_star(HfSet a, HfSet b);  // partial surjection b -> a

// V_0 = {}, V_{n+1} = P(V_n). BudgetError above 5.
HfSet v_stage(std::size_t n);

}  // namespace broadgen
