#include "broadgen/broadnum.hpp"

#include <array>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "broadgen/error.hpp"
#include "broadgen/terms.hpp"
#include "broadgen/tuple_enum.hpp"

namespace broadgen {

namespace {

struct Ctor {
  std::vector<HfSet> positions;
  std::function<HfSet(const Tuple&)> make;
};

using Expand = std::function<std::vector<Ctor>(HfSet)>;

// Semi-naive stages: every new element is built from at least one element of
// the previous stage, either as the trigger or inside the tuple.
GenerationResult generate_levels(HfSet seed, const Expand& expand, const Budget& budget) {
  std::vector<HfSet> pool{seed};
  std::vector<std::vector<Ctor>> ctors{expand(seed)};
  std::unordered_set<HfSet> seen{seed};
  std::size_t fresh_from = 0;
  std::size_t fuel = 0;
  GenerationResult out;
  for (std::size_t stage = 1;; ++stage) {
    if (stage > budget.depth) {
      out.stages = stage;
      break;
    }
    const std::size_t old_size = pool.size();
    for (std::size_t xi = 0; xi < old_size; ++xi) {
      const bool x_fresh = xi >= fresh_from;
      for (const Ctor& c : ctors[xi]) {
        for_each_choice(c.positions.size(), old_size, x_fresh ? 0 : fresh_from,
                        [&](const std::vector<std::size_t>& choice) {
                          if (++fuel > budget.fuel) throw BudgetError("generation ran out of fuel");
                          Tuple a;
                          for (std::size_t j = 0; j < choice.size(); ++j) {
                            a.emplace(c.positions[j], pool[choice[j]]);
                          }
                          HfSet y = c.make(a);
                          if (seen.insert(y).second) {
                            if (pool.size() >= budget.max_elements) {
                              throw BudgetError("generation exceeded " +
                                                std::to_string(budget.max_elements) + " elements");
                            }
                            pool.push_back(y);
                          }
                          return true;
                        });
      }
    }
    if (pool.size() == old_size) {
      out.stabilized = true;
      out.stages = stage;
      break;
    }
    for (std::size_t k = old_size; k < pool.size(); ++k) ctors.push_back(expand(pool[k]));
    fresh_from = old_size;
  }
  out.set.insert(pool.begin(), pool.end());
  return out;
}

std::optional<std::array<HfSet, 3>> unbuild(HfSet x) {
  auto outer = unpair(x);
  if (!outer) return std::nullopt;
  auto inner = unpair(outer->second);
  if (!inner) return std::nullopt;
  return std::array<HfSet, 3>{outer->first, inner->first, inner->second};
}

std::vector<HfSet> positions_of(HfSet arity) {
  return {arity.elements().begin(), arity.elements().end()};
}

// Build(x, i, a) with G(x) covering i and a an arity-matching tuple.
struct BuildParts {
  HfSet x;
  HfSet i;
  Tuple a;
};

std::optional<BuildParts> split_build(HfSet w) {
  auto b = unbuild(w);
  if (!b) return std::nullopt;
  auto a = decode_tuple((*b)[2]);
  if (!a) return std::nullopt;
  return BuildParts{(*b)[0], (*b)[1], std::move(*a)};
}

template <class Check>
bool memo_check(HfSet w, std::unordered_map<HfSet, bool>& memo, const Check& check) {
  auto it = memo.find(w);
  if (it != memo.end()) return it->second;
  bool ok = check(w);
  memo.emplace(w, ok);
  return ok;
}

bool broad_rec(const BroadSignature& g, HfSet w, std::unordered_map<HfSet, bool>& memo) {
  return memo_check(w, memo, [&](HfSet v) {
    if (v.empty()) return true;
    auto p = split_build(v);
    if (!p || !broad_rec(g, p->x, memo)) return false;
    const auto& ar = g.at(p->x).arities;
    auto k = ar.find(p->i);
    if (k == ar.end() || tuple_domain(p->a) != k->second) return false;
    for (const auto& [pos, sub] : p->a) {
      if (!broad_rec(g, sub, memo)) return false;
    }
    return true;
  });
}

bool reduced_rec(const ReducedBroadSignature& f, HfSet w,
                 std::unordered_map<HfSet, bool>& memo) {
  return memo_check(w, memo, [&](HfSet v) {
    if (v.empty()) return true;
    auto p = unpair(v);
    if (!p) return false;
    auto a = decode_tuple(p->second);
    if (!a || !reduced_rec(f, p->first, memo)) return false;
    if (tuple_domain(*a) != f.at(p->first)) return false;
    for (const auto& [pos, sub] : *a) {
      if (!reduced_rec(f, sub, memo)) return false;
    }
    return true;
  });
}

Ordinal rank_rec(const BroadSignature& g, HfSet w, std::unordered_map<HfSet, Ordinal>& memo) {
  if (auto it = memo.find(w); it != memo.end()) return it->second;
  Ordinal r;
  if (!w.empty()) {
    auto p = split_build(w);
    if (!p) throw DomainError("not a broad number: " + thing_to_text(w));
    std::vector<Ordinal> below{rank_rec(g, p->x, memo)};
    for (const auto& [pos, sub] : p->a) below.push_back(rank_rec(g, sub, memo));
    r = ssup(below);
  }
  memo.emplace(w, r);
  return r;
}

HfSet theta_forward(HfSet x, std::unordered_map<HfSet, HfSet>& memo) {
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  Decoded d = classify(x, Group::reduced_broad);
  HfSet out;
  if (d.tag == Tag::start_p) {
    out = start();
  } else if (d.tag == Tag::bu2) {
    Tuple a = *decode_tuple(d.args[3]);
    for (auto& [k, v] : a) v = theta_forward(v, memo);
    out = build(theta_forward(d.args[0], memo), d.args[2], a);
  } else {
    throw DomainError("not built from StartP and Bu2: " + thing_to_text(x));
  }
  memo.emplace(x, out);
  return out;
}

HfSet theta_backward(HfSet x, const BroadSignature& g, std::unordered_map<HfSet, HfSet>& memo) {
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  HfSet out;
  if (x.empty()) {
    out = start_p();
  } else {
    auto p = split_build(x);
    if (!p) throw DomainError("not a broad number: " + thing_to_text(x));
    const Signature& s = g.at(p->x);
    for (auto& [k, v] : p->a) v = theta_backward(v, g, memo);
    // encode rejects a symbol outside s or a mismatched arity
    out = encode(Tag::bu2, {theta_backward(p->x, g, memo), s.encode(), p->i, encode_tuple(p->a)});
  }
  memo.emplace(x, out);
  return out;
}

HfSet retag_tuple(HfSet g, const std::function<HfSet(HfSet)>& f) {
  auto t = decode_tuple(g);
  if (!t) throw DomainError("derivation tuple is not a tuple: " + thing_to_text(g));
  for (auto& [k, v] : *t) v = f(v);
  return encode_tuple(*t);
}

HfSet retag(HfSet d, Group from, Tag basic_to, Tag trigger_to) {
  Decoded dec = classify(d, from);
  auto rec = [&](HfSet x) { return retag(x, from, basic_to, trigger_to); };
  if (dec.opaque()) {
    throw DomainError("unexpected constructor in derivation: " + thing_to_text(d));
  }
  if (dec.tag == Tag::basic || dec.tag == Tag::basic_p) {
    return encode(basic_to, {dec.args[0], retag_tuple(dec.args[1], rec), dec.args[2]});
  }
  return encode(trigger_to,
                {rec(dec.args[0]), dec.args[1], retag_tuple(dec.args[2], rec), dec.args[3]});
}

HfSet sum_arity(const Signature& s) {
  std::vector<HfSet> out;
  for (const auto& [i, k] : s.arities) {
    out.push_back(inl(i));
    for (HfSet pos : k.elements()) out.push_back(inr(kpair(i, pos)));
  }
  return intern(out);
}

std::string tuple_text(const Tuple& a, const std::function<std::string(HfSet)>& sub) {
  std::string out = "[";
  bool first = true;
  for (const auto& [k, v] : a) {
    if (!first) out += ",";
    first = false;
    out += thing_to_text(k) + "->" + sub(v);
  }
  return out + "]";
}

}  // namespace

GenerationResult generate_broad(const BroadSignature& g, const Budget& budget) {
  return generate_levels(start(), [&g](HfSet x) {
    std::vector<Ctor> out;
    for (const auto& [i, arity] : g.at(x).arities) {
      out.push_back({positions_of(arity), [x, i = i](const Tuple& a) { return build(x, i, a); }});
    }
    return out;
  }, budget);
}

GenerationResult generate_reduced(const ReducedBroadSignature& f, const Budget& budget) {
  return generate_levels(HfSet(), [&f](HfSet x) {
    return std::vector<Ctor>{
        {positions_of(f.at(x)), [x](const Tuple& a) { return make(x, a); }}};
  }, budget);
}

bool is_broad_number(const BroadSignature& g, HfSet w) {
  std::unordered_map<HfSet, bool> memo;
  return broad_rec(g, w, memo);
}

bool is_reduced_broad_number(const ReducedBroadSignature& f, HfSet w) {
  std::unordered_map<HfSet, bool> memo;
  return reduced_rec(f, w, memo);
}

Ordinal broad_rank(const BroadSignature& g, HfSet w) {
  if (!is_broad_number(g, w)) throw DomainError("not a broad number: " + thing_to_text(w));
  std::unordered_map<HfSet, Ordinal> memo;
  return rank_rec(g, w, memo);
}

HfSet theta_reduce(Direction dir, HfSet x, const BroadSignature& g) {
  std::unordered_map<HfSet, HfSet> memo;
  if (dir == Direction::forward) return theta_forward(x, memo);
  if (!is_broad_number(g, x)) throw DomainError("not a broad number: " + thing_to_text(x));
  return theta_backward(x, g, memo);
}

HfSet theta_derivs(Direction dir, HfSet d) {
  if (dir == Direction::forward) return retag(d, Group::pseudo, Tag::basic, Tag::trigger);
  return retag(d, Group::derivation, Tag::basic_p, Tag::trigger_p);
}

GenerationResult generate_reduced_image(const BroadSignature& g, const Budget& budget) {
  return generate_levels(start_p(), [&g](HfSet u) {
    std::unordered_map<HfSet, HfSet> memo;
    const Signature& s = g.at(theta_forward(u, memo));
    const HfSet sig = s.encode();
    std::vector<Ctor> out;
    for (const auto& [i, arity] : s.arities) {
      out.push_back({positions_of(arity), [u, sig, i = i](const Tuple& a) {
                       return encode(Tag::bu2, {u, sig, i, encode_tuple(a)});
                     }});
    }
    return out;
  }, budget);
}

ReducedBroadSignature reduced_signature_for(const BroadSignature& g, const ThingSet& fragment) {
  ReducedBroadSignature f;
  std::unordered_map<HfSet, HfSet> memo;
  for (HfSet u : fragment) {
    f.table[make(u, {})] = sum_arity(g.at(theta_forward(u, memo)));
  }
  return f;
}

std::string broad_to_text(HfSet w) {
  if (w.empty()) return "Start";
  auto p = split_build(w);
  if (!p) return thing_to_text(w);
  return "Build(" + broad_to_text(p->x) + "," + thing_to_text(p->i) + "," +
         tuple_text(p->a, broad_to_text) + ")";
}

std::string reduced_to_text(HfSet w) {
  if (w.empty()) return "Begin";
  auto p = unpair(w);
  if (!p) return thing_to_text(w);
  auto a = decode_tuple(p->second);
  if (!a) return thing_to_text(w);
  return "Make(" + reduced_to_text(p->first) + "," + tuple_text(*a, reduced_to_text) + ")";
}

}  // namespace broadgen
