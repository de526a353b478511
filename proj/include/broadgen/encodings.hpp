#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "broadgen/hfset.hpp"

namespace broadgen {

// A K-tuple: position -> entry. Encoded as the set of pairs <k, x_k>.
using Tuple = std::map<HfSet, HfSet>;

HfSet von_neumann(std::uint64_t n);
std::optional<std::uint64_t> as_nat(HfSet x);
std::uint64_t to_nat(HfSet x);  // DomainError unless x is a numeral
bool is_numeral(HfSet x);

// Kuratowski pair {{x},{x,y}}.
HfSet kpair(HfSet x, HfSet y);
std::optional<std::pair<HfSet, HfSet>> unpair(HfSet p);

HfSet encode_tuple(const Tuple& t);
std::optional<Tuple> decode_tuple(HfSet x);
// Domain of an encoded tuple, i.e. {k | <k,_> in x}.
HfSet tuple_domain(const Tuple& t);
HfSet tuple_range(const Tuple& t);

// <x0,...,x{n-1}>: the Kuratowski pair when n == 2, otherwise the tuple
// indexed by von Neumann numerals 0..n-1.
HfSet ntuple(std::span<const HfSet> xs);
HfSet ntuple(std::initializer_list<HfSet> xs);
std::optional<std::vector<HfSet>> untuple(HfSet x, std::size_t n);

HfSet inl(HfSet x);
HfSet inr(HfSet x);

enum class Group {
  zermelo,         // Zero, Succ
  reduced,         // Begin, Make
  broad,           // Start, Build
  derivation,      // Basic, Trigger
  pseudo,          // BasicP, TriggerP (Basic', Trigger')
  reduced_broad,   // StartP, Bu2 (Start', Bu2)
  sum,             // Inl, Inr
  tarski,          // embed, zero, two, eq, sigma, wtype
};

enum class Tag {
  zero, succ,
  begin, make,
  start, build,
  basic, trigger,
  basic_p, trigger_p,
  start_p, bu2,
  inl, inr,
  t_embed, t_zero, t_two, t_eq, t_sigma, t_wtype,
};

std::size_t tag_arity(Tag t);
Group tag_group(Tag t);
std::string_view tag_name(Tag t);
std::optional<Tag> tag_from_name(std::string_view name);
std::span<const Tag> group_tags(Group g);
std::string_view group_name(Group g);
std::optional<Group> group_from_name(std::string_view name);

// Bu2 takes (w, S, i, a): S is a signature encoded as a tuple i -> K_i and
// a is a K_i-tuple. Throws DomainError when arguments do not fit.
HfSet encode(Tag t, std::span<const HfSet> args);
HfSet encode(Tag t, std::initializer_list<HfSet> args);

struct Decoded {
  std::optional<Tag> tag;  // empty: opaque
  std::vector<HfSet> args;
  bool opaque() const { return !tag.has_value(); }
};

// Inverse of encode within one constructor group.
Decoded classify(HfSet x, Group g);

// Shorthands.
inline HfSet start() { return HfSet(); }
HfSet build(HfSet x, HfSet i, const Tuple& a);
HfSet make(HfSet x, const Tuple& a);
HfSet basic(HfSet i, const Tuple& g, HfSet p);
HfSet trigger(HfSet m, HfSet i, const Tuple& g, HfSet p);
HfSet basic_p(HfSet i, const Tuple& g, HfSet p);
HfSet trigger_p(HfSet m, HfSet i, const Tuple& g, HfSet p);
HfSet start_p();

}  // namespace broadgen
