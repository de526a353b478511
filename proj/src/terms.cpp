#include "broadgen/terms.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "broadgen/error.hpp"
#include "broadgen/tuple_enum.hpp"

namespace broadgen {

HfSet make_term(HfSet symbol, const Tuple& args) { return kpair(symbol, encode_tuple(args)); }

std::optional<std::pair<HfSet, Tuple>> split_term(HfSet t) {
  auto p = unpair(t);
  if (!p) return std::nullopt;
  auto args = decode_tuple(p->second);
  if (!args) return std::nullopt;
  return std::make_pair(p->first, std::move(*args));
}

namespace {

bool is_term_memo(const Signature& s, HfSet t, std::unordered_map<HfSet, bool>& memo) {
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  bool ok = false;
  if (auto parts = split_term(t)) {
    auto sym = s.arities.find(parts->first);
    if (sym != s.arities.end() && tuple_domain(parts->second) == sym->second) {
      ok = std::all_of(parts->second.begin(), parts->second.end(),
                       [&](const auto& kv) { return is_term_memo(s, kv.second, memo); });
    }
  }
  memo.emplace(t, ok);
  return ok;
}

}  // namespace

bool is_term(const Signature& s, HfSet t) {
  std::unordered_map<HfSet, bool> memo;
  return is_term_memo(s, t, memo);
}

std::size_t term_height(HfSet t) {
  auto parts = split_term(t);
  if (!parts) throw DomainError("not a term");
  std::size_t h = 0;
  for (const auto& kv : parts->second) h = std::max(h, term_height(kv.second));
  return h + 1;
}

ThingSet generate_terms(const Signature& s, std::size_t depth, std::size_t max_elements) {
  std::vector<HfSet> pool;
  std::unordered_set<HfSet> seen;
  std::size_t fresh_from = 0;
  for (std::size_t stage = 0; stage < depth; ++stage) {
    std::vector<HfSet> found;
    for (const auto& [sym, arity] : s.arities) {
      auto positions = arity.elements();
      if (positions.empty() && stage > 0) continue;
      for_each_choice(positions.size(), pool.size(), fresh_from, [&](const auto& choice) {
        std::vector<HfSet> pairs;
        pairs.reserve(positions.size());
        for (std::size_t q = 0; q < positions.size(); ++q) {
          pairs.push_back(kpair(positions[q], pool[choice[q]]));
        }
        HfSet t = kpair(sym, intern(std::move(pairs)));
        if (seen.insert(t).second) {
          found.push_back(t);
          if (seen.size() > max_elements) {
            throw BudgetError("term generation exceeded " + std::to_string(max_elements) +
                              " elements");
          }
        }
        return true;
      });
    }
    if (found.empty()) break;
    fresh_from = pool.size();
    pool.insert(pool.end(), found.begin(), found.end());
  }
  return ThingSet(pool.begin(), pool.end());
}

namespace {

void collect_branches(HfSet t, Branch& prefix, std::vector<Branch>& out) {
  out.push_back(prefix);
  auto parts = split_term(t);
  if (!parts) throw DomainError("not a term");
  for (const auto& [k, sub] : parts->second) {
    prefix.push_back(k);
    collect_branches(sub, prefix, out);
    prefix.pop_back();
  }
}

std::optional<HfSet> follow(HfSet t, const Branch& b) {
  HfSet cur = t;
  for (HfSet k : b) {
    auto parts = split_term(cur);
    if (!parts) return std::nullopt;
    auto it = parts->second.find(k);
    if (it == parts->second.end()) return std::nullopt;
    cur = it->second;
  }
  return cur;
}

}  // namespace

std::vector<Branch> branches(HfSet t) {
  std::vector<Branch> out;
  Branch prefix;
  collect_branches(t, prefix, out);
  return out;
}

bool is_branch(HfSet t, const Branch& b) { return follow(t, b).has_value(); }

HfSet branch_result(HfSet t, const Branch& b) {
  auto sub = follow(t, b);
  if (!sub) throw DomainError("branch is not realizable in the term");
  auto parts = split_term(*sub);
  if (!parts) throw DomainError("not a term");
  return parts->first;
}

bool equal_by_branches(HfSet s, HfSet t) {
  auto bs = branches(s);
  auto bt = branches(t);
  if (bs.size() != bt.size()) return false;
  for (const Branch& b : bs) {
    if (!is_branch(t, b)) return false;
    if (branch_result(s, b) != branch_result(t, b)) return false;
  }
  return true;
}

std::string thing_to_text(HfSet x) {
  if (auto n = as_nat(x)) return std::to_string(*n);
  std::string out = "{";
  bool first = true;
  for (HfSet e : x.elements()) {
    if (!first) out += ",";
    first = false;
    out += thing_to_text(e);
  }
  return out + "}";
}

std::string term_to_text(HfSet t) {
  auto parts = split_term(t);
  if (!parts) throw DomainError("not a term");
  std::string out = thing_to_text(parts->first) + "(";
  bool first = true;
  for (const auto& [k, sub] : parts->second) {
    if (!first) out += ",";
    first = false;
    out += thing_to_text(k) + "->" + term_to_text(sub);
  }
  return out + ")";
}

}  // namespace broadgen
