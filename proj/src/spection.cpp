#include "broadgen/spection.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "broadgen/error.hpp"
#include "broadgen/terms.hpp"

namespace broadgen {

namespace {

struct Closure {
  std::vector<HfSet> nodes;  // discovery order, e first
  std::unordered_map<HfSet, ThingSet> kids;  // suitable nodes only
};

Closure explore(const Spection& s, HfSet e, std::size_t fuel) {
  Closure c;
  std::unordered_set<HfSet> seen{e};
  std::deque<HfSet> todo{e};
  while (!todo.empty()) {
    HfSet x = todo.front();
    todo.pop_front();
    c.nodes.push_back(x);
    if (!s.suitable(x)) continue;
    ThingSet j = s.children(x);
    for (HfSet y : j) {
      if (!seen.insert(y).second) continue;
      if (seen.size() > fuel) {
        throw BudgetError("M-descendant set exceeded " + std::to_string(fuel) + " elements");
      }
      todo.push_back(y);
    }
    c.kids.emplace(x, std::move(j));
  }
  return c;
}

// Suitable nodes whose children are all generated, in the order they become
// generated (a topological order, children first).
std::vector<HfSet> generated_order(const Closure& c) {
  std::unordered_map<HfSet, std::size_t> waiting;
  std::unordered_map<HfSet, std::vector<HfSet>> parents;
  std::vector<HfSet> order;
  for (const auto& [x, j] : c.kids) {
    waiting[x] = j.size();
    for (HfSet y : j) parents[y].push_back(x);
    if (j.empty()) order.push_back(x);
  }
  for (std::size_t q = 0; q < order.size(); ++q) {
    auto it = parents.find(order[q]);
    if (it == parents.end()) continue;
    for (HfSet p : it->second) {
      if (--waiting[p] == 0) order.push_back(p);
    }
  }
  return order;
}

ThingSet tuple_children(const Tuple& g) {
  ThingSet out;
  for (const auto& [k, v] : g) out.insert(v);
  return out;
}

std::optional<HfSet> apply_rule(const Rubric& rub, const ClassPredicate& admits, HfSet i,
                                const Tuple& g, HfSet p, const Tuple& values) {
  auto rule = rub.rules.find(i);
  if (rule == rub.rules.end() || tuple_domain(g) != rule->second.arity) return std::nullopt;
  Tuple in;
  for (const auto& [k, d] : g) in.emplace(k, values.at(d));
  auto v = rule->second.apply(in).at(p);
  if (!v || (admits && !admits(*v))) return std::nullopt;
  return v;
}

struct DerivationParts {
  std::optional<HfSet> m;
  HfSet i;
  Tuple g;
  HfSet p;
};

std::optional<DerivationParts> split_derivation(HfSet e, bool pseudo) {
  Decoded d = classify(e, pseudo ? Group::pseudo : Group::derivation);
  if (d.opaque()) return std::nullopt;
  bool is_basic = d.tag == Tag::basic || d.tag == Tag::basic_p;
  std::size_t off = is_basic ? 0 : 1;
  auto g = decode_tuple(d.args[off + 1]);
  if (!g) return std::nullopt;
  DerivationParts out{std::nullopt, d.args[off], std::move(*g), d.args[off + 2]};
  if (!is_basic) out.m = d.args[0];
  return out;
}

}  // namespace

HfSet m_descendant_set(const Spection& s, HfSet e, std::size_t fuel) {
  return intern(explore(s, e, fuel).nodes);
}

bool is_generated(const Spection& s, HfSet e, std::size_t fuel) {
  auto order = generated_order(explore(s, e, fuel));
  return std::find(order.begin(), order.end(), e) != order.end();
}

bool is_cogenerated(const Spection& s, HfSet e, std::size_t fuel) {
  Closure c = explore(s, e, fuel);
  return c.kids.size() == c.nodes.size();
}

Signature descendant_signature(const Spection& s, HfSet e, std::size_t fuel) {
  Signature sig;
  for (const auto& [x, j] : explore(s, e, fuel).kids) {
    sig.arities.emplace(x, from_things(j));
  }
  return sig;
}

std::optional<HfSet> derivation_term(const Spection& s, HfSet e, std::size_t fuel) {
  Closure c = explore(s, e, fuel);
  std::unordered_map<HfSet, HfSet> term;
  for (HfSet x : generated_order(c)) {
    Tuple sub;
    for (HfSet b : c.kids.at(x)) sub.emplace(b, term.at(b));
    term.emplace(x, make_term(x, sub));
  }
  auto it = term.find(e);
  if (it == term.end()) return std::nullopt;
  return it->second;
}

std::vector<HfSet> attempt_order(const Spection& s, HfSet e, std::size_t fuel) {
  auto order = generated_order(explore(s, e, fuel));
  if (std::find(order.begin(), order.end(), e) == order.end()) {
    throw DomainError("recursion needs a generated element");
  }
  return order;
}

std::optional<HfSet> famspec_membership(const FamSpection& fs, HfSet e, std::size_t fuel) {
  Closure c = explore(fs.spection, e, fuel);
  std::unordered_map<HfSet, std::optional<HfSet>> value;
  for (HfSet x : generated_order(c)) {
    Tuple in;
    bool defined = true;
    for (HfSet b : c.kids.at(x)) {
      const auto& v = value.at(b);
      if (!v) {
        defined = false;
        break;
      }
      in.emplace(b, *v);
    }
    value.emplace(x, defined ? fs.evaluate(x, in) : std::nullopt);
  }
  auto it = value.find(e);
  return it == value.end() ? std::nullopt : it->second;
}

Spection nat_spection() {
  Spection s;
  s.suitable = [](HfSet e) { return e.size() <= 1; };
  s.children = [](HfSet e) { return e.empty() ? ThingSet{} : ThingSet{e.elements()[0]}; };
  s.introspective = true;
  return s;
}

Spection term_spection(const Signature& sig) {
  auto shared = std::make_shared<const Signature>(sig);
  Spection s;
  s.suitable = [shared](HfSet e) {
    auto t = split_term(e);
    if (!t) return false;
    auto k = shared->arities.find(t->first);
    return k != shared->arities.end() && tuple_domain(t->second) == k->second;
  };
  s.children = [](HfSet e) { return tuple_children(split_term(e)->second); };
  s.introspective = true;
  return s;
}

Spection reduced_broad_spection(const ReducedBroadSignature& f) {
  auto shared = std::make_shared<const ReducedBroadSignature>(f);
  Spection s;
  s.suitable = [shared](HfSet e) {
    if (e.empty()) return true;
    auto p = unpair(e);
    if (!p) return false;
    auto a = decode_tuple(p->second);
    return a && tuple_domain(*a) == shared->at(p->first);
  };
  s.children = [](HfSet e) {
    if (e.empty()) return ThingSet{};
    auto p = unpair(e);
    ThingSet out = tuple_children(*decode_tuple(p->second));
    out.insert(p->first);
    return out;
  };
  s.introspective = true;
  return s;
}

Spection broad_spection(const BroadSignature& g) {
  auto shared = std::make_shared<const BroadSignature>(g);
  Spection s;
  s.suitable = [shared](HfSet e) {
    Decoded d = classify(e, Group::broad);
    if (d.tag == Tag::start) return true;
    if (d.tag != Tag::build) return false;
    auto a = decode_tuple(d.args[2]);
    if (!a) return false;
    const auto& ar = shared->at(d.args[0]).arities;
    auto k = ar.find(d.args[1]);
    return k != ar.end() && tuple_domain(*a) == k->second;
  };
  s.children = [](HfSet e) {
    Decoded d = classify(e, Group::broad);
    if (d.tag == Tag::start) return ThingSet{};
    ThingSet out = tuple_children(*decode_tuple(d.args[2]));
    out.insert(d.args[0]);
    return out;
  };
  s.introspective = true;
  return s;
}

FamSpection rubric_famspection(const Rubric& r) {
  auto shared = std::make_shared<const Rubric>(r);
  auto parts = [](HfSet e) -> std::optional<std::pair<std::vector<HfSet>, Tuple>> {
    auto t = untuple(e, 3);
    if (!t) return std::nullopt;
    auto g = decode_tuple((*t)[1]);
    if (!g) return std::nullopt;
    return std::make_pair(*t, *g);
  };
  FamSpection fs;
  fs.spection.suitable = [parts](HfSet e) { return parts(e).has_value(); };
  fs.spection.children = [parts](HfSet e) { return tuple_children(parts(e)->second); };
  fs.spection.introspective = true;
  fs.evaluate = [shared, parts](HfSet e, const Tuple& values) {
    auto p = parts(e);
    return apply_rule(*shared, shared->in_class, p->first[0], p->second, p->first[2], values);
  };
  return fs;
}

FamSpection broad_rubric_famspection(const BroadRubric& r, bool pseudo) {
  auto shared = std::make_shared<const BroadRubric>(r);
  FamSpection fs;
  fs.spection.suitable = [pseudo](HfSet e) { return split_derivation(e, pseudo).has_value(); };
  fs.spection.children = [pseudo](HfSet e) {
    auto d = split_derivation(e, pseudo);
    ThingSet out = tuple_children(d->g);
    if (d->m) out.insert(*d->m);
    return out;
  };
  fs.spection.introspective = true;
  fs.evaluate = [shared, pseudo](HfSet e, const Tuple& values) -> std::optional<HfSet> {
    auto d = split_derivation(e, pseudo);
    Rubric rub = d->m ? shared->triggered(values.at(*d->m)) : shared->basic;
    return apply_rule(rub, shared->in_class, d->i, d->g, d->p, values);
  };
  return fs;
}

}  // namespace broadgen
