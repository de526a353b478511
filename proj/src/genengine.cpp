#include "broadgen/genengine.hpp"

#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "broadgen/error.hpp"
#include "broadgen/tuple_enum.hpp"

namespace broadgen {

ResultFamily ResultFamily::none() { return ResultFamily(); }

ResultFamily ResultFamily::table(std::vector<Entry> entries) {
  ResultFamily f;
  std::unordered_set<HfSet> seen;
  for (const Entry& e : entries) {
    if (!seen.insert(e.index).second) throw DomainError("result family repeats an index");
  }
  f.table_ = std::move(entries);
  return f;
}

ResultFamily ResultFamily::singleton(HfSet value) { return table({{HfSet(), value}}); }

ResultFamily ResultFamily::list(const std::vector<HfSet>& values) {
  std::vector<Entry> entries;
  for (std::size_t k = 0; k < values.size(); ++k) entries.push_back({von_neumann(k), values[k]});
  return table(std::move(entries));
}

ResultFamily ResultFamily::indexed(std::function<bool(HfSet)> member,
                                   std::function<HfSet(HfSet)> value,
                                   std::function<std::vector<HfSet>()> enumerate) {
  ResultFamily f;
  f.is_table_ = false;
  f.member_ = std::move(member);
  f.value_ = std::move(value);
  f.enumerate_ = std::move(enumerate);
  return f;
}

bool ResultFamily::finitary() const { return is_table_ || static_cast<bool>(enumerate_); }

std::vector<ResultFamily::Entry> ResultFamily::entries() const {
  if (is_table_) return table_;
  if (!enumerate_) throw NonFinitaryError("result family has no finite enumeration");
  std::vector<Entry> out;
  for (HfSet p : enumerate_()) {
    if (member_(p)) out.push_back({p, value_(p)});
  }
  return out;
}

std::optional<HfSet> ResultFamily::at(HfSet p) const {
  if (is_table_) {
    for (const Entry& e : table_) {
      if (e.index == p) return e.value;
    }
    return std::nullopt;
  }
  if (!member_(p)) return std::nullopt;
  return value_(p);
}

Rubric BroadRubric::triggered(HfSet x) const {
  if (!trigger) return Rubric{};
  return trigger(x);
}

BroadRubric BroadRubric::from_table(Rubric basic, std::map<HfSet, Rubric> table,
                                    ClassPredicate in_class) {
  auto shared = std::make_shared<const std::map<HfSet, Rubric>>(std::move(table));
  BroadRubric b;
  b.basic = std::move(basic);
  b.in_class = std::move(in_class);
  b.trigger = [shared](HfSet x) {
    auto it = shared->find(x);
    return it == shared->end() ? Rubric{} : it->second;
  };
  return b;
}

namespace {

Tuple choice_tuple(std::span<const HfSet> positions, const std::vector<std::size_t>& choice,
                 const std::vector<HfSet>& pool) {
  Tuple t;
  for (std::size_t q = 0; q < positions.size(); ++q) t.emplace(positions[q], pool[choice[q]]);
  return t;
}

void apply_all(const Rubric& rub, const std::vector<HfSet>& pool,
               const std::function<bool(HfSet)>& admits, ThingSet& out) {
  for (const auto& [i, rule] : rub.rules) {
    auto positions = rule.arity.elements();
    for_each_choice(positions.size(), pool.size(), 0, [&](const auto& choice) {
      for (const auto& e : rule.apply(choice_tuple(positions, choice, pool)).entries()) {
        if (admits(e.value)) out.insert(e.value);
      }
      return true;
    });
  }
}

}  // namespace

ThingSet gamma_step(const BroadRubric& r, const ThingSet& x) {
  auto admits = [&r](HfSet v) { return r.admits(v); };
  std::vector<HfSet> pool;
  for (HfSet e : x) {
    if (admits(e)) pool.push_back(e);
  }
  ThingSet out;
  apply_all(r.basic, pool, admits, out);
  for (HfSet m : pool) apply_all(r.triggered(m), pool, admits, out);
  return out;
}

ThingSet gamma_step(const Rubric& r, const ThingSet& x) { return gamma_step(hat_rubric(r), x); }

bool is_inductive(const BroadRubric& r, const ThingSet& x) {
  for (HfSet v : gamma_step(r, x)) {
    if (!x.count(v)) return false;
  }
  return true;
}

bool is_inductive(const Rubric& r, const ThingSet& x) { return is_inductive(hat_rubric(r), x); }

std::vector<ThingSet> inductive_chain(const BroadRubric& r, std::size_t stages) {
  std::vector<ThingSet> chain{ThingSet{}};
  for (std::size_t n = 0; n < stages; ++n) chain.push_back(gamma_step(r, chain.back()));
  return chain;
}

std::vector<ThingSet> inductive_chain(const Rubric& r, std::size_t stages) {
  return inductive_chain(hat_rubric(r), stages);
}

GenerationResult generate_set(const BroadRubric& r, const Budget& budget) {
  std::vector<HfSet> pool;
  std::vector<std::optional<Rubric>> triggered;
  std::unordered_set<HfSet> seen;
  std::size_t fresh_from = 0;
  std::size_t fuel = 0;
  auto result = [&pool](bool stabilized, std::size_t stages) {
    return GenerationResult{ThingSet(pool.begin(), pool.end()), stabilized, stages};
  };
  for (std::size_t stage = 0;; ++stage) {
    // X_stage is complete; computing X_{stage+1} would exceed the depth
    if (stage >= budget.depth) return result(false, stage);
    std::vector<HfSet> found;
    bool exhausted = false;
    auto fire = [&](const Rule& rule, std::size_t fresh, bool first) {
      auto positions = rule.arity.elements();
      // the empty tuple touches no fresh element: it fires once per rule
      if (positions.empty() && !first) return;
      for_each_choice(positions.size(), pool.size(), fresh, [&](const auto& choice) {
        if (++fuel > budget.fuel) {
          exhausted = true;
          return false;
        }
        for (const auto& e : rule.apply(choice_tuple(positions, choice, pool)).entries()) {
          if (!r.admits(e.value) || !seen.insert(e.value).second) continue;
          found.push_back(e.value);
          if (seen.size() > budget.max_elements) {
            exhausted = true;
            return false;
          }
        }
        return true;
      });
    };
    for (const auto& [i, rule] : r.basic.rules) {
      if (!exhausted) fire(rule, fresh_from, stage == 0);
    }
    for (std::size_t m = 0; m < pool.size() && !exhausted; ++m) {
      if (!triggered[m]) triggered[m] = r.triggered(pool[m]);
      for (const auto& [i, rule] : triggered[m]->rules) {
        if (!exhausted) fire(rule, m >= fresh_from ? 0 : fresh_from, m >= fresh_from);
      }
    }
    if (exhausted) return result(false, stage);
    if (found.empty()) return result(true, stage);
    fresh_from = pool.size();
    pool.insert(pool.end(), found.begin(), found.end());
    triggered.resize(pool.size());
  }
}

GenerationResult generate_set(const Rubric& r, const Budget& budget) {
  return generate_set(hat_rubric(r), budget);
}

HfSet derivation(HfSet i, const Tuple& g, HfSet p) { return ntuple({i, encode_tuple(g), p}); }

namespace {

enum class KeyStyle { plain, broad, pseudo };

struct KeyParts {
  std::optional<HfSet> m;  // trigger source derivation
  HfSet i;
  Tuple g;
  HfSet p;
};

KeyParts split_key(HfSet d, KeyStyle style) {
  auto bad = [] { return DomainError("malformed derivation"); };
  if (style == KeyStyle::plain) {
    auto parts = untuple(d, 3);
    if (!parts) throw bad();
    auto g = decode_tuple((*parts)[1]);
    if (!g) throw bad();
    return {std::nullopt, (*parts)[0], *g, (*parts)[2]};
  }
  Decoded dec = classify(d, style == KeyStyle::broad ? Group::derivation : Group::pseudo);
  if (dec.opaque()) throw bad();
  bool is_basic = dec.tag == Tag::basic || dec.tag == Tag::basic_p;
  std::size_t off = is_basic ? 0 : 1;
  auto g = decode_tuple(dec.args[off + 1]);
  if (!g) throw bad();
  KeyParts kp{std::nullopt, dec.args[off], *g, dec.args[off + 2]};
  if (!is_basic) kp.m = dec.args[0];
  return kp;
}

HfSet join_key(KeyStyle style, std::optional<HfSet> m, HfSet i, const Tuple& g, HfSet p) {
  switch (style) {
    case KeyStyle::plain:
      return derivation(i, g, p);
    case KeyStyle::broad:
      return m ? trigger(*m, i, g, p) : basic(i, g, p);
    case KeyStyle::pseudo:
      return m ? trigger_p(*m, i, g, p) : basic_p(i, g, p);
  }
  throw DomainError("unknown derivation style");
}

HfSet eval_key(const BroadRubric& r, HfSet d, KeyStyle style,
               std::unordered_map<HfSet, HfSet>& memo) {
  if (auto it = memo.find(d); it != memo.end()) return it->second;
  KeyParts kp = split_key(d, style);
  Rubric rub = kp.m ? r.triggered(eval_key(r, *kp.m, style, memo)) : r.basic;
  auto rule = rub.rules.find(kp.i);
  if (rule == rub.rules.end()) throw DomainError("derivation names a rule that does not exist");
  if (tuple_domain(kp.g) != rule->second.arity) {
    throw DomainError("derivation tuple does not match the rule's arity");
  }
  Tuple vals;
  for (const auto& [k, child] : kp.g) vals.emplace(k, eval_key(r, child, style, memo));
  auto v = rule->second.apply(vals).at(kp.p);
  if (!v) throw DomainError("derivation index is outside the result family");
  if (!r.admits(*v)) throw DomainError("derivation value is outside the class");
  memo.emplace(d, *v);
  return *v;
}

GeneratedFamily generate_keys(const BroadRubric& r, const Budget& budget, KeyStyle style) {
  std::vector<HfSet> keys;
  std::vector<HfSet> vals;
  std::vector<std::optional<Rubric>> triggered;
  std::size_t fresh_from = 0;
  std::size_t fuel = 0;
  GeneratedFamily fam;
  for (std::size_t level = 0; level < budget.depth; ++level) {
    std::vector<std::pair<HfSet, HfSet>> found;
    auto fire = [&](std::optional<std::size_t> m, HfSet i, const Rule& rule, std::size_t fresh,
                    bool first) {
      auto positions = rule.arity.elements();
      if (positions.empty() && !first) return;
      for_each_choice(positions.size(), keys.size(), fresh, [&](const auto& choice) {
        if (++fuel > budget.fuel) throw BudgetError("family generation ran out of fuel");
        Tuple g = choice_tuple(positions, choice, keys);
        Tuple in = choice_tuple(positions, choice, vals);
        std::optional<HfSet> mkey;
        if (m) mkey = keys[*m];
        for (const auto& e : rule.apply(in).entries()) {
          if (!r.admits(e.value)) continue;
          found.emplace_back(join_key(style, mkey, i, g, e.index), e.value);
          if (keys.size() + found.size() > budget.max_elements) {
            throw BudgetError("family generation exceeded " +
                              std::to_string(budget.max_elements) + " entries");
          }
        }
        return true;
      });
    };
    for (const auto& [i, rule] : r.basic.rules) fire(std::nullopt, i, rule, fresh_from, level == 0);
    for (std::size_t m = 0; m < keys.size(); ++m) {
      if (!triggered[m]) triggered[m] = r.triggered(vals[m]);
      for (const auto& [i, rule] : triggered[m]->rules) {
        fire(m, i, rule, m >= fresh_from ? 0 : fresh_from, m >= fresh_from);
      }
    }
    if (found.empty()) {
      fam.complete = true;
      break;
    }
    fresh_from = keys.size();
    for (auto& [k, v] : found) {
      keys.push_back(k);
      vals.push_back(v);
    }
    triggered.resize(keys.size());
    fam.depth = level + 1;
  }
  if (!fam.complete) fam.depth = budget.depth;
  for (std::size_t n = 0; n < keys.size(); ++n) fam.entries.emplace(keys[n], vals[n]);
  return fam;
}

}  // namespace

HfSet eval_derivation(const Rubric& r, HfSet d) {
  std::unordered_map<HfSet, HfSet> memo;
  return eval_key(hat_rubric(r), d, KeyStyle::plain, memo);
}

HfSet eval_derivation(const BroadRubric& r, HfSet d) {
  std::unordered_map<HfSet, HfSet> memo;
  return eval_key(r, d, KeyStyle::broad, memo);
}

HfSet eval_pseudo_derivation(const BroadRubric& r, HfSet d) {
  std::unordered_map<HfSet, HfSet> memo;
  return eval_key(r, d, KeyStyle::pseudo, memo);
}

GeneratedFamily generate_family(const Rubric& r, const Budget& budget) {
  return generate_keys(hat_rubric(r), budget, KeyStyle::plain);
}

GeneratedFamily generate_family(const BroadRubric& r, const Budget& budget) {
  return generate_keys(r, budget, KeyStyle::broad);
}

GeneratedFamily generate_pseudo_family(const BroadRubric& r, const Budget& budget) {
  return generate_keys(r, budget, KeyStyle::pseudo);
}

ThingSet family_range(const GeneratedFamily& f) {
  ThingSet out;
  for (const auto& kv : f.entries) out.insert(kv.second);
  return out;
}

BroadRubric hat_rubric(const Rubric& r) {
  BroadRubric b;
  b.basic = r;
  b.in_class = r.in_class;
  return b;
}

BroadRubric bracket_broadsig(const BroadSignature& g) {
  auto shared = std::make_shared<const BroadSignature>(g);
  BroadRubric b;
  b.basic.rules[von_neumann(0)] = Rule{HfSet(), [](const Tuple&) {
                                         return ResultFamily::singleton(start());
                                       }};
  b.trigger = [shared](HfSet x) {
    Rubric rub;
    for (const auto& [i, arity] : shared->at(x).arities) {
      rub.rules[i] = Rule{arity, [x, i = i](const Tuple& a) {
                            return ResultFamily::singleton(build(x, i, a));
                          }};
    }
    return rub;
  };
  return b;
}

BroadRubric bracket_reduced(const ReducedBroadSignature& f) {
  auto shared = std::make_shared<const ReducedBroadSignature>(f);
  BroadRubric b;
  b.basic.rules[von_neumann(0)] = Rule{HfSet(), [](const Tuple&) {
                                         return ResultFamily::singleton(HfSet());
                                       }};
  b.trigger = [shared](HfSet x) {
    Rubric rub;
    rub.rules[von_neumann(0)] = Rule{shared->at(x), [x](const Tuple& a) {
                                       return ResultFamily::singleton(make(x, a));
                                     }};
    return rub;
  };
  return b;
}

Rule cover_lift_rule(const Rule& rule, const Tuple& cover) {
  if (tuple_domain(cover) != rule.arity) {
    throw DomainError("cover is not indexed by the rule's arity");
  }
  std::vector<HfSet> lifted;
  for (const auto& [k, dk] : cover) {
    if (dk.empty()) throw DomainError("cover has an empty component");
    for (HfSet d : dk.elements()) lifted.push_back(kpair(k, d));
  }
  Rule out;
  out.arity = intern(std::move(lifted));
  out.apply = [rule, cover](const Tuple& b) {
    Tuple collapsed;
    for (const auto& [k, dk] : cover) {
      std::optional<HfSet> fibre;
      for (HfSet d : dk.elements()) {
        auto it = b.find(kpair(k, d));
        if (it == b.end()) return ResultFamily::none();
        if (fibre && *fibre != it->second) return ResultFamily::none();
        fibre = it->second;
      }
      collapsed.emplace(k, *fibre);
    }
    return rule.apply(collapsed);
  };
  return out;
}

std::vector<ThingSet> monotone_chain(const std::function<ThingSet(const ThingSet&)>& op,
                                     std::size_t max_steps) {
  std::vector<ThingSet> chain{ThingSet{}};
  for (std::size_t n = 0; n < max_steps; ++n) {
    ThingSet next = op(chain.back());
    bool repeat = next == chain.back();
    chain.push_back(std::move(next));
    if (repeat) break;
  }
  return chain;
}

}  // namespace broadgen
