#include "broadgen/universes.hpp"

#include <memory>

#include "broadgen/error.hpp"
#include "broadgen/terms.hpp"

namespace broadgen {

namespace {

HfSet symbolic(std::uint64_t kind, const Tuple& parts) {
  return kpair(von_neumann(1), kpair(von_neumann(kind), encode_tuple(parts)));
}

Rule constant_rule(HfSet decode) {
  return Rule{HfSet(), [decode](const Tuple&) { return ResultFamily::singleton(decode); }};
}

std::string tuple_text(const Tuple& t, std::string (*sub)(HfSet)) {
  std::string out = "[";
  bool first = true;
  for (const auto& [k, v] : t) {
    if (!first) out += ",";
    first = false;
    out += thing_to_text(k) + "->" + sub(v);
  }
  return out + "]";
}

}  // namespace

HfSet explicit_decode(HfSet s) { return kpair(von_neumann(0), s); }

std::optional<HfSet> decode_set(HfSet decode) {
  auto p = unpair(decode);
  if (!p || p->first != von_neumann(0)) return std::nullopt;
  return p->second;
}

HfSet sum_decode(const Tuple& components) {
  std::vector<HfSet> out;
  for (const auto& [k, e] : components) {
    auto s = decode_set(e);
    // symbolic decodes are infinite and inhabited, so the sum is too
    if (!s) return symbolic(4, components);
    for (HfSet x : s->elements()) out.push_back(kpair(k, x));
  }
  return explicit_decode(intern(out));
}

HfSet wtype_decode(const Tuple& arities) {
  bool has_leaf = false;
  bool all_leaves = true;
  for (const auto& [k, a] : arities) {
    auto s = decode_set(a);
    bool leaf = s && s->empty();
    has_leaf |= leaf;
    all_leaves &= leaf;
  }
  if (!has_leaf) return explicit_decode(HfSet());
  if (all_leaves) {
    std::vector<HfSet> terms;
    for (const auto& [k, a] : arities) terms.push_back(make_term(k, {}));
    return explicit_decode(intern(terms));
  }
  return symbolic(5, arities);
}

BroadRubric tarski_rubric(const std::map<HfSet, HfSet>& base) {
  BroadRubric b;
  for (const auto& [a, set] : base) b.basic.rules[inl(a)] = constant_rule(explicit_decode(set));
  b.basic.rules[inr(von_neumann(0))] = constant_rule(explicit_decode(HfSet()));
  b.basic.rules[inr(von_neumann(1))] = constant_rule(explicit_decode(von_neumann(2)));
  b.trigger = [](HfSet decode) {
    Rubric rub;
    auto d = decode_set(decode);
    if (!d) return rub;
    for (HfSet x : d->elements()) {
      for (HfSet y : d->elements()) {
        rub.rules[inl(kpair(x, y))] = constant_rule(explicit_decode(truth(x == y)));
      }
    }
    rub.rules[inr(von_neumann(0))] = Rule{*d, [](const Tuple& e) {
                                            return ResultFamily::singleton(sum_decode(e));
                                          }};
    rub.rules[inr(von_neumann(1))] = Rule{*d, [](const Tuple& e) {
                                            return ResultFamily::singleton(wtype_decode(e));
                                          }};
    return rub;
  };
  return b;
}

HfSet tarski_theta(HfSet derivation) {
  Decoded d = classify(derivation, Group::derivation);
  if (d.opaque()) throw DomainError("not a derivation: " + thing_to_text(derivation));
  const bool is_basic = d.tag == Tag::basic;
  const std::size_t off = is_basic ? 0 : 1;
  Decoded rule = classify(d.args[off], Group::sum);
  auto g = decode_tuple(d.args[off + 1]);
  if (rule.opaque() || !g || !d.args[off + 2].empty()) {
    throw DomainError("not a derivation of the universe rubric: " + thing_to_text(derivation));
  }
  HfSet which = rule.args[0];
  if (is_basic) {
    if (!g->empty()) throw DomainError("basic universe rules are nullary");
    if (rule.tag == Tag::inl) return encode(Tag::t_embed, {which});
    if (which == von_neumann(0)) return encode(Tag::t_zero, {});
    if (which == von_neumann(1)) return encode(Tag::t_two, {});
    throw DomainError("unknown basic universe rule");
  }
  HfSet n = tarski_theta(d.args[0]);
  if (rule.tag == Tag::inl) {
    auto xy = unpair(which);
    if (!xy || !g->empty()) throw DomainError("malformed eq derivation");
    return encode(Tag::t_eq, {n, xy->first, xy->second});
  }
  for (auto& [k, sub] : *g) sub = tarski_theta(sub);
  if (which == von_neumann(0)) return encode(Tag::t_sigma, {n, encode_tuple(*g)});
  if (which == von_neumann(1)) return encode(Tag::t_wtype, {n, encode_tuple(*g)});
  throw DomainError("unknown triggered universe rule");
}

TarskiUniverse tarski_universe(const std::map<HfSet, HfSet>& base, const Budget& budget) {
  GeneratedFamily fam = generate_family(tarski_rubric(base), budget);
  TarskiUniverse u;
  u.depth = fam.depth;
  u.complete = fam.complete;
  for (const auto& [key, decode] : fam.entries) u.codes.emplace(tarski_theta(key), decode);
  return u;
}

std::string code_to_text(HfSet code) {
  Decoded d = classify(code, Group::tarski);
  if (d.opaque()) return thing_to_text(code);
  switch (*d.tag) {
    case Tag::t_embed:
      return "embed(" + thing_to_text(d.args[0]) + ")";
    case Tag::t_zero:
      return "zero";
    case Tag::t_two:
      return "two";
    case Tag::t_eq:
      return "eq(" + code_to_text(d.args[0]) + "," + thing_to_text(d.args[1]) + "," +
             thing_to_text(d.args[2]) + ")";
    case Tag::t_sigma:
    case Tag::t_wtype: {
      auto g = decode_tuple(d.args[1]);
      if (!g) return thing_to_text(code);
      return std::string(tag_name(*d.tag)) + "(" + code_to_text(d.args[0]) + "," +
             tuple_text(*g, code_to_text) + ")";
    }
    default:
      return thing_to_text(code);
  }
}

std::string decode_to_text(HfSet decode) {
  if (auto s = decode_set(decode)) {
    std::string out = "{";
    bool first = true;
    for (HfSet x : s->elements()) {
      if (!first) out += ",";
      first = false;
      out += thing_to_text(x);
    }
    return out + "}";
  }
  auto outer = unpair(decode);
  auto inner = outer ? unpair(outer->second) : std::nullopt;
  auto parts = inner ? decode_tuple(inner->second) : std::nullopt;
  if (!parts) return thing_to_text(decode);
  return std::string(inner->first == von_neumann(4) ? "sigma" : "wtype") +
         tuple_text(*parts, decode_to_text);
}

}  // namespace broadgen
