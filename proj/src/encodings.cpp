#include "broadgen/encodings.hpp"

#include <array>
#include <mutex>

#include "broadgen/error.hpp"

namespace broadgen {

namespace {

std::mutex numeral_mutex;
std::vector<HfSet> numeral_cache{HfSet()};

}  // namespace

HfSet von_neumann(std::uint64_t n) {
  std::lock_guard<std::mutex> lock(numeral_mutex);
  if (n > 200'000) throw BudgetError("von Neumann numeral " + std::to_string(n) + " is too large");
  while (numeral_cache.size() <= n) {
    // elements 0..k-1 have ranks 0..k-1, so they are already in canonical order
    numeral_cache.push_back(intern_sorted(numeral_cache));
  }
  return numeral_cache[n];
}

std::optional<std::uint64_t> as_nat(HfSet x) {
  std::size_t n = x.size();
  if (x.rank() != n) return std::nullopt;
  {
    std::lock_guard<std::mutex> lock(numeral_mutex);
    if (n < numeral_cache.size()) {
      if (numeral_cache[n] == x) return n;
      return std::nullopt;
    }
  }
  // n+1 = n U {n}: walk down until a cached numeral is reached
  HfSet cur = x;
  for (std::size_t k = n; k > 0; --k) {
    auto e = cur.elements();
    if (e.size() != k) return std::nullopt;
    HfSet prev = e[k - 1];
    auto pe = prev.elements();
    if (pe.size() != k - 1 || !std::equal(pe.begin(), pe.end(), e.begin())) return std::nullopt;
    std::lock_guard<std::mutex> lock(numeral_mutex);
    if (k - 1 < numeral_cache.size()) {
      if (numeral_cache[k - 1] == prev) return n;
      return std::nullopt;
    }
    cur = prev;
  }
  return n;
}

bool is_numeral(HfSet x) { return as_nat(x).has_value(); }

std::uint64_t to_nat(HfSet x) {
  auto n = as_nat(x);
  if (!n) throw DomainError("not a von Neumann numeral: rank " + std::to_string(x.rank()));
  return *n;
}

HfSet kpair(HfSet x, HfSet y) { return make_set({singleton(x), make_set({x, y})}); }

std::optional<std::pair<HfSet, HfSet>> unpair(HfSet p) {
  auto e = p.elements();
  if (e.size() == 1) {
    if (e[0].size() != 1) return std::nullopt;
    HfSet a = e[0].elements()[0];
    return std::make_pair(a, a);
  }
  if (e.size() != 2) return std::nullopt;
  HfSet single = e[0].size() == 1 ? e[0] : e[1];
  HfSet dbl = e[0].size() == 1 ? e[1] : e[0];
  if (single.size() != 1 || dbl.size() != 2) return std::nullopt;
  HfSet a = single.elements()[0];
  auto de = dbl.elements();
  if (de[0] == a) return std::make_pair(a, de[1]);
  if (de[1] == a) return std::make_pair(a, de[0]);
  return std::nullopt;
}

HfSet encode_tuple(const Tuple& t) {
  std::vector<HfSet> pairs;
  pairs.reserve(t.size());
  for (const auto& [k, v] : t) pairs.push_back(kpair(k, v));
  return intern(std::move(pairs));
}

std::optional<Tuple> decode_tuple(HfSet x) {
  Tuple t;
  for (HfSet e : x.elements()) {
    auto p = unpair(e);
    if (!p) return std::nullopt;
    if (!t.emplace(p->first, p->second).second) return std::nullopt;
  }
  return t;
}

HfSet tuple_domain(const Tuple& t) {
  std::vector<HfSet> keys;
  for (const auto& kv : t) keys.push_back(kv.first);
  return intern_sorted(keys);
}

HfSet tuple_range(const Tuple& t) {
  std::vector<HfSet> vals;
  for (const auto& kv : t) vals.push_back(kv.second);
  return intern(std::move(vals));
}

HfSet ntuple(std::span<const HfSet> xs) {
  if (xs.size() == 2) return kpair(xs[0], xs[1]);
  Tuple t;
  for (std::size_t k = 0; k < xs.size(); ++k) t.emplace(von_neumann(k), xs[k]);
  return encode_tuple(t);
}

HfSet ntuple(std::initializer_list<HfSet> xs) {
  return ntuple(std::span<const HfSet>(xs.begin(), xs.size()));
}

std::optional<std::vector<HfSet>> untuple(HfSet x, std::size_t n) {
  if (n == 2) {
    auto p = unpair(x);
    if (!p) return std::nullopt;
    return std::vector<HfSet>{p->first, p->second};
  }
  if (x.size() != n) return std::nullopt;
  auto t = decode_tuple(x);
  if (!t) return std::nullopt;
  std::vector<HfSet> out;
  for (std::size_t k = 0; k < n; ++k) {
    auto it = t->find(von_neumann(k));
    if (it == t->end()) return std::nullopt;
    out.push_back(it->second);
  }
  return out;
}

HfSet inl(HfSet x) { return kpair(von_neumann(0), x); }
HfSet inr(HfSet x) { return kpair(von_neumann(1), x); }

namespace {

struct TagInfo {
  Tag tag;
  Group group;
  std::size_t arity;
  std::string_view name;
};

constexpr std::array<TagInfo, 20> kTags{{
    {Tag::zero, Group::zermelo, 0, "Zero"},
    {Tag::succ, Group::zermelo, 1, "Succ"},
    {Tag::begin, Group::reduced, 0, "Begin"},
    {Tag::make, Group::reduced, 2, "Make"},
    {Tag::start, Group::broad, 0, "Start"},
    {Tag::build, Group::broad, 3, "Build"},
    {Tag::basic, Group::derivation, 3, "Basic"},
    {Tag::trigger, Group::derivation, 4, "Trigger"},
    {Tag::basic_p, Group::pseudo, 3, "BasicP"},
    {Tag::trigger_p, Group::pseudo, 4, "TriggerP"},
    {Tag::start_p, Group::reduced_broad, 0, "StartP"},
    {Tag::bu2, Group::reduced_broad, 4, "Bu2"},
    {Tag::inl, Group::sum, 1, "Inl"},
    {Tag::inr, Group::sum, 1, "Inr"},
    {Tag::t_embed, Group::tarski, 1, "embed"},
    {Tag::t_zero, Group::tarski, 0, "zero"},
    {Tag::t_two, Group::tarski, 0, "two"},
    {Tag::t_eq, Group::tarski, 3, "eq"},
    {Tag::t_sigma, Group::tarski, 2, "sigma"},
    {Tag::t_wtype, Group::tarski, 2, "wtype"},
}};

const TagInfo& info(Tag t) { return kTags[static_cast<std::size_t>(t)]; }

constexpr std::array<std::string_view, 8> kGroupNames{
    "zermelo", "reduced", "broad", "derivation", "pseudo", "reduced_broad", "sum", "tarski"};

}  // namespace

std::size_t tag_arity(Tag t) { return info(t).arity; }
Group tag_group(Tag t) { return info(t).group; }
std::string_view tag_name(Tag t) { return info(t).name; }

std::optional<Tag> tag_from_name(std::string_view name) {
  for (const auto& ti : kTags) {
    if (ti.name == name) return ti.tag;
  }
  return std::nullopt;
}

std::span<const Tag> group_tags(Group g) {
  static const std::array<std::vector<Tag>, 8> by_group = [] {
    std::array<std::vector<Tag>, 8> out;
    for (const auto& ti : kTags) out[static_cast<std::size_t>(ti.group)].push_back(ti.tag);
    return out;
  }();
  return by_group[static_cast<std::size_t>(g)];
}

std::string_view group_name(Group g) { return kGroupNames[static_cast<std::size_t>(g)]; }

std::optional<Group> group_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGroupNames.size(); ++i) {
    if (kGroupNames[i] == name) return static_cast<Group>(i);
  }
  return std::nullopt;
}

namespace {

HfSet raw_build(HfSet x, HfSet y, HfSet z) { return kpair(x, kpair(y, z)); }

HfSet encode_bu2(HfSet w, HfSet sig, HfSet i, HfSet a) {
  auto s = decode_tuple(sig);
  if (!s) throw DomainError("Bu2: signature argument is not a tuple");
  auto it = s->find(i);
  if (it == s->end()) throw DomainError("Bu2: symbol is not in the signature");
  auto args = decode_tuple(a);
  if (!args || tuple_domain(*args) != it->second) {
    throw DomainError("Bu2: argument tuple does not match the symbol's arity");
  }
  HfSet begin_v;
  HfSet other = kpair(begin_v, HfSet());  // Make(Begin, [])
  Tuple b;
  for (const auto& [sym, arity] : *s) {
    b.emplace(inl(sym), sym == i ? begin_v : other);
    for (HfSet k : arity.elements()) {
      b.emplace(inr(kpair(sym, k)), sym == i ? args->at(k) : begin_v);
    }
  }
  return kpair(kpair(w, HfSet()), encode_tuple(b));
}

}  // namespace

HfSet encode(Tag t, std::span<const HfSet> a) {
  if (a.size() != tag_arity(t)) {
    throw DomainError(std::string(tag_name(t)) + " expects " + std::to_string(tag_arity(t)) +
                      " arguments, got " + std::to_string(a.size()));
  }
  switch (t) {
    case Tag::zero:
    case Tag::begin:
    case Tag::start:
      return HfSet();
    case Tag::succ:
      return singleton(a[0]);
    case Tag::make:
      return kpair(a[0], a[1]);
    case Tag::build:
      return raw_build(a[0], a[1], a[2]);
    case Tag::basic:
      return kpair(von_neumann(0), ntuple({a[0], a[1], a[2]}));
    case Tag::trigger:
      return kpair(von_neumann(1), ntuple({a[0], a[1], a[2], a[3]}));
    case Tag::basic_p:
      return raw_build(raw_build(HfSet(), a[0], a[1]), a[2], HfSet());
    case Tag::trigger_p:
      return raw_build(raw_build(raw_build(a[0], HfSet(), HfSet()), a[1], a[2]), a[3], HfSet());
    case Tag::start_p:
      return kpair(HfSet(), HfSet());
    case Tag::bu2:
      return encode_bu2(a[0], a[1], a[2], a[3]);
    case Tag::inl:
      return inl(a[0]);
    case Tag::inr:
      return inr(a[0]);
    case Tag::t_embed:
      return kpair(von_neumann(0), ntuple({a[0]}));
    case Tag::t_zero:
      return kpair(von_neumann(1), HfSet());
    case Tag::t_two:
      return kpair(von_neumann(2), HfSet());
    case Tag::t_eq:
      return kpair(von_neumann(3), ntuple({a[0], a[1], a[2]}));
    case Tag::t_sigma:
      return kpair(von_neumann(4), kpair(a[0], a[1]));
    case Tag::t_wtype:
      return kpair(von_neumann(5), kpair(a[0], a[1]));
  }
  throw DomainError("unknown constructor");
}

HfSet encode(Tag t, std::initializer_list<HfSet> args) {
  return encode(t, std::span<const HfSet>(args.begin(), args.size()));
}

namespace {

Decoded opaque() { return Decoded{}; }
Decoded decoded(Tag t, std::vector<HfSet> args) { return Decoded{t, std::move(args)}; }

std::optional<std::array<HfSet, 3>> unbuild(HfSet x) {
  auto outer = unpair(x);
  if (!outer) return std::nullopt;
  auto inner = unpair(outer->second);
  if (!inner) return std::nullopt;
  return std::array<HfSet, 3>{outer->first, inner->first, inner->second};
}

Decoded classify_reduced_broad(HfSet x) {
  if (x == kpair(HfSet(), HfSet())) return decoded(Tag::start_p, {});
  auto outer = unpair(x);
  if (!outer) return opaque();
  auto head = unpair(outer->first);
  if (!head || !head->second.empty()) return opaque();
  auto b = decode_tuple(outer->second);
  if (!b) return opaque();
  const HfSet begin_v;
  const HfSet other = kpair(HfSet(), HfSet());
  Tuple sig;         // i -> K_i, built up as a map of sets
  std::map<HfSet, std::vector<HfSet>> arities;
  std::optional<HfSet> chosen;
  for (const auto& [key, val] : *b) {
    auto side = unpair(key);
    if (!side) return opaque();
    if (side->first == von_neumann(0)) {
      arities.try_emplace(side->second);
      if (val == begin_v) {
        if (chosen) return opaque();
        chosen = side->second;
      } else if (val != other) {
        return opaque();
      }
    } else if (side->first != von_neumann(1)) {
      return opaque();
    }
  }
  if (!chosen) return opaque();
  Tuple args;
  for (const auto& [key, val] : *b) {
    auto side = unpair(key);
    if (side->first != von_neumann(1)) continue;
    auto ik = unpair(side->second);
    if (!ik) return opaque();
    auto ar = arities.find(ik->first);
    if (ar == arities.end()) return opaque();
    ar->second.push_back(ik->second);
    if (ik->first == *chosen) {
      args.emplace(ik->second, val);
    } else if (val != begin_v) {
      return opaque();
    }
  }
  for (auto& [sym, ks] : arities) sig.emplace(sym, intern(ks));
  return decoded(Tag::bu2, {head->first, encode_tuple(sig), *chosen, encode_tuple(args)});
}

Decoded classify_tagged(HfSet x, Group g) {
  auto p = unpair(x);
  if (!p) return opaque();
  auto n = as_nat(p->first);
  if (!n) return opaque();
  HfSet body = p->second;
  if (g == Group::derivation) {
    if (*n == 0) {
      if (auto t = untuple(body, 3)) return decoded(Tag::basic, *t);
    } else if (*n == 1) {
      if (auto t = untuple(body, 4)) return decoded(Tag::trigger, *t);
    }
    return opaque();
  }
  if (g == Group::sum) {
    if (*n == 0) return decoded(Tag::inl, {body});
    if (*n == 1) return decoded(Tag::inr, {body});
    return opaque();
  }
  switch (*n) {
    case 0:
      if (auto t = untuple(body, 1)) return decoded(Tag::t_embed, *t);
      break;
    case 1:
      if (body.empty()) return decoded(Tag::t_zero, {});
      break;
    case 2:
      if (body.empty()) return decoded(Tag::t_two, {});
      break;
    case 3:
      if (auto t = untuple(body, 3)) return decoded(Tag::t_eq, *t);
      break;
    case 4:
      if (auto t = unpair(body)) return decoded(Tag::t_sigma, {t->first, t->second});
      break;
    case 5:
      if (auto t = unpair(body)) return decoded(Tag::t_wtype, {t->first, t->second});
      break;
  }
  return opaque();
}

}  // namespace

Decoded classify(HfSet x, Group g) {
  switch (g) {
    case Group::zermelo:
      if (x.empty()) return decoded(Tag::zero, {});
      if (x.size() == 1) return decoded(Tag::succ, {x.elements()[0]});
      return opaque();
    case Group::reduced:
      if (x.empty()) return decoded(Tag::begin, {});
      if (auto p = unpair(x)) return decoded(Tag::make, {p->first, p->second});
      return opaque();
    case Group::broad:
      if (x.empty()) return decoded(Tag::start, {});
      if (auto b = unbuild(x)) return decoded(Tag::build, {(*b)[0], (*b)[1], (*b)[2]});
      return opaque();
    case Group::pseudo: {
      auto outer = unbuild(x);
      if (!outer || !(*outer)[2].empty()) return opaque();
      auto mid = unbuild((*outer)[0]);
      if (!mid) return opaque();
      if ((*mid)[0].empty()) return decoded(Tag::basic_p, {(*mid)[1], (*mid)[2], (*outer)[1]});
      auto inner = unbuild((*mid)[0]);
      if (!inner || !(*inner)[1].empty() || !(*inner)[2].empty()) return opaque();
      return decoded(Tag::trigger_p, {(*inner)[0], (*mid)[1], (*mid)[2], (*outer)[1]});
    }
    case Group::reduced_broad:
      return classify_reduced_broad(x);
    case Group::derivation:
    case Group::sum:
    case Group::tarski:
      return classify_tagged(x, g);
  }
  return opaque();
}

HfSet build(HfSet x, HfSet i, const Tuple& a) { return raw_build(x, i, encode_tuple(a)); }
HfSet make(HfSet x, const Tuple& a) { return kpair(x, encode_tuple(a)); }
HfSet basic(HfSet i, const Tuple& g, HfSet p) {
  return encode(Tag::basic, {i, encode_tuple(g), p});
}
HfSet trigger(HfSet m, HfSet i, const Tuple& g, HfSet p) {
  return encode(Tag::trigger, {m, i, encode_tuple(g), p});
}
HfSet basic_p(HfSet i, const Tuple& g, HfSet p) {
  return encode(Tag::basic_p, {i, encode_tuple(g), p});
}
HfSet trigger_p(HfSet m, HfSet i, const Tuple& g, HfSet p) {
  return encode(Tag::trigger_p, {m, i, encode_tuple(g), p});
}
HfSet start_p() { return kpair(HfSet(), HfSet()); }

}  // namespace broadgen
