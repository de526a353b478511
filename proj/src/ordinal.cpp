#include "broadgen/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "broadgen/encodings.hpp"
#include "broadgen/error.hpp"

namespace broadgen {

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back({0, n});
  return o;
}

Ordinal Ordinal::omega_power(std::uint64_t exp, std::uint64_t coef) {
  Ordinal o;
  if (coef > 0) o.terms_.push_back({exp, coef});
  return o;
}

Ordinal Ordinal::sum(std::span<const Term> terms) {
  Ordinal out;
  for (const Term& t : terms) out = out + omega_power(t.exp, t.coef);
  return out;
}

bool Ordinal::is_successor() const { return !terms_.empty() && terms_.back().exp == 0; }
bool Ordinal::is_limit() const { return !terms_.empty() && terms_.back().exp > 0; }

std::optional<std::uint64_t> Ordinal::as_finite() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1 && terms_[0].exp == 0) return terms_[0].coef;
  return std::nullopt;
}

Ordinal Ordinal::succ() const { return *this + finite(1); }

Ordinal Ordinal::operator+(const Ordinal& other) const {
  if (other.terms_.empty()) return *this;
  std::uint64_t lead = other.terms_.front().exp;
  Ordinal out;
  for (const Term& t : terms_) {
    if (t.exp < lead) break;
    out.terms_.push_back(t);
  }
  auto it = other.terms_.begin();
  if (!out.terms_.empty() && out.terms_.back().exp == lead) {
    out.terms_.back().coef += it->coef;
    ++it;
  }
  out.terms_.insert(out.terms_.end(), it, other.terms_.end());
  return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp) return a.terms_[i].exp <=> b.terms_[i].exp;
    if (a.terms_[i].coef != b.terms_[i].coef) return a.terms_[i].coef <=> b.terms_[i].coef;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += "+";
    if (t.exp == 0) {
      out += std::to_string(t.coef);
    } else if (t.exp == 1) {
      out += "w*" + std::to_string(t.coef);
    } else {
      out += "w^" + std::to_string(t.exp) + "*" + std::to_string(t.coef);
    }
  }
  return out;
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view s) : s_(s) {}

  Ordinal run() {
    std::vector<Ordinal::Term> terms;
    skip();
    if (pos_ == s_.size()) fail("empty ordinal");
    for (;;) {
      terms.push_back(term());
      skip();
      if (pos_ == s_.size()) break;
      if (s_[pos_] != '+') fail("expected '+'");
      ++pos_;
    }
    return Ordinal::sum(terms);
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, 1, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool omega() {
    if (pos_ < s_.size() && s_[pos_] == 'w') {
      ++pos_;
      return true;
    }
    if (s_.substr(pos_, 2) == "\xcf\x89") {  // UTF-8 omega
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::uint64_t number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      fail("expected a number");
    }
    std::uint64_t n = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (n > (UINT64_MAX - 9) / 10) fail("number too large");
      n = n * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
    }
    return n;
  }

  Ordinal::Term term() {
    skip();
    if (!omega()) return {0, number()};
    std::uint64_t exp = 1, coef = 1;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      exp = number();
      skip();
    }
    if (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      coef = number();
    }
    return {exp, coef};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) { return OrdinalParser(text).run(); }

Ordinal sup(std::span<const Ordinal> xs) {
  Ordinal out;
  for (const Ordinal& x : xs) out = std::max(out, x);
  return out;
}

Ordinal ssup(std::span<const Ordinal> xs) {
  Ordinal out;
  for (const Ordinal& x : xs) out = std::max(out, x.succ());
  return out;
}

bool is_k_complete(const Ordinal& a, std::size_t finite_k) {
  return finite_k > 0 || !a.is_zero();
}

bool is_omega_complete(const Ordinal& a) { return !a.is_limit(); }

Ordinal omega_witness(const Ordinal& a, std::uint64_t n) {
  if (!a.is_limit()) throw DomainError("omega_witness needs a limit ordinal");
  std::vector<Ordinal::Term> terms = a.terms();
  std::uint64_t e = terms.back().exp;
  if (--terms.back().coef == 0) terms.pop_back();
  terms.push_back({e - 1, n});
  std::erase_if(terms, [](const Ordinal::Term& t) { return t.coef == 0; });
  return Ordinal::sum(terms);
}

bool is_regular(const Ordinal& a) {
  return a.is_zero() || a == Ordinal::finite(1) || a == Ordinal::omega();
}

WellOrder WellOrder::from_sequence(const std::vector<HfSet>& seq) {
  WellOrder w;
  w.carrier = seq;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) w.less.emplace(seq[i], seq[j]);
  }
  return w;
}

void WellOrder::validate() const {
  std::set<HfSet> elems(carrier.begin(), carrier.end());
  if (elems.size() != carrier.size()) throw DomainError("carrier repeats an element");
  std::map<HfSet, std::set<HfSet>> below;
  for (HfSet a : carrier) below[a];
  for (const auto& [a, b] : less) {
    if (!elems.count(a) || !elems.count(b)) throw DomainError("relation leaves the carrier");
    below[b].insert(a);
  }
  // well-founded: no cycle (on a finite carrier)
  std::map<HfSet, int> state;
  std::function<void(HfSet)> visit = [&](HfSet x) {
    state[x] = 1;
    for (HfSet y : below[x]) {
      if (state[y] == 1) throw DomainError("relation is not well-founded");
      if (state[y] == 0) visit(y);
    }
    state[x] = 2;
  };
  for (HfSet a : carrier) {
    if (state[a] == 0) visit(a);
  }
  for (const auto& [a, b] : less) {
    for (HfSet c : carrier) {
      if (less.count({b, c}) && !less.count({a, c})) {
        throw DomainError("relation is not transitive");
      }
    }
  }
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    for (std::size_t j = i + 1; j < carrier.size(); ++j) {
      if (below[carrier[i]] == below[carrier[j]]) {
        throw DomainError("relation is not extensional");
      }
    }
  }
}

OrderType order_type(const WellOrder& w) {
  w.validate();
  std::map<HfSet, std::vector<HfSet>> below;
  for (const auto& [a, b] : w.less) below[b].push_back(a);
  OrderType out;
  std::function<HfSet(HfSet)> theta = [&](HfSet a) {
    if (auto it = out.rank_of.find(a); it != out.rank_of.end()) return it->second;
    std::vector<HfSet> img;
    for (HfSet b : below[a]) img.push_back(theta(b));
    HfSet r = intern(std::move(img));
    out.rank_of.emplace(a, r);
    return r;
  };
  std::vector<HfSet> image;
  for (HfSet a : w.carrier) image.push_back(theta(a));
  HfSet alpha = intern(std::move(image));
  auto n = as_nat(alpha);
  if (!n) throw DomainError("order type is not an ordinal");
  out.type = *n;
  return out;
}

namespace {

std::vector<HfSet> small_members(HfSet k) {
  if (k.size() > 6) throw BudgetError("brute-force cardinal search is limited to 6 elements");
  return {k.elements().begin(), k.elements().end()};
}

// Order types reached by all well-orderings of `items`.
void collect_types(std::vector<HfSet> items, std::set<std::uint64_t>& types) {
  std::sort(items.begin(), items.end());
  do {
    types.insert(order_type(WellOrder::from_sequence(items)).type);
  } while (std::next_permutation(items.begin(), items.end()));
}

std::uint64_t as_ordinal(const std::set<std::uint64_t>& types) {
  // the set of types must be downward closed, i.e. {0, ..., n-1}
  std::uint64_t n = 0;
  for (std::uint64_t t : types) {
    if (t != n) throw DomainError("set of order types is not an ordinal");
    ++n;
  }
  return n;
}

}  // namespace

std::uint64_t hartogs(HfSet k) {
  auto elems = small_members(k);
  std::set<std::uint64_t> types;
  for (std::size_t mask = 0; mask < (std::size_t{1} << elems.size()); ++mask) {
    std::vector<HfSet> sub;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (mask & (std::size_t{1} << i)) sub.push_back(elems[i]);
    }
    collect_types(sub, types);
  }
  return as_ordinal(types);
}

std::uint64_t lindenbaum(HfSet k) {
  auto elems = small_members(k);
  std::set<std::uint64_t> types;
  // block[i] = -1 (unused) or a block number in restricted-growth form
  std::vector<int> block(elems.size(), -1);
  std::function<void(std::size_t, int)> assign = [&](std::size_t i, int used) {
    if (i == elems.size()) {
      std::vector<std::vector<HfSet>> blocks(static_cast<std::size_t>(used));
      for (std::size_t q = 0; q < elems.size(); ++q) {
        if (block[q] >= 0) blocks[static_cast<std::size_t>(block[q])].push_back(elems[q]);
      }
      std::vector<HfSet> parts;
      for (auto& b : blocks) parts.push_back(intern(b));
      collect_types(parts, types);
      return;
    }
    for (int b = -1; b <= used; ++b) {
      block[i] = b;
      assign(i + 1, b == used ? used + 1 : used);
    }
  };
  assign(0, 0);
  return as_ordinal(types);
}

namespace {

bool inject(const std::vector<HfSet>& as, const std::vector<HfSet>& bs, std::size_t i,
            std::vector<bool>& used) {
  if (i == as.size()) return true;
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    if (inject(as, bs, i + 1, used)) return true;
    used[j] = false;
  }
  return false;
}

bool cover(const std::vector<HfSet>& bs, std::size_t i, std::vector<int>& hits, std::size_t missing) {
  if (missing == 0) return true;
  if (bs.size() - i < missing) return false;
  for (std::size_t a = 0; a <= hits.size(); ++a) {  // a == hits.size(): undefined
    bool fresh = a < hits.size() && hits[a] == 0;
    if (a < hits.size()) ++hits[a];
    if (cover(bs, i + 1, hits, missing - (fresh ? 1 : 0))) return true;
    if (a < hits.size()) --hits[a];
  }
  return false;
}

}  // namespace

bool preceq(HfSet a, HfSet b) {
  auto as = small_members(a);
  auto bs = small_members(b);
  std::vector<bool> used(bs.size(), false);
  return inject(as, bs, 0, used);
}

bool preceq_star(HfSet a, HfSet b) {
  auto as = small_members(a);
  auto bs = small_members(b);
  std::vector<int> hits(as.size(), 0);
  return cover(bs, 0, hits, as.size());
}

HfSet v_stage(std::size_t n) {
  if (n > 5) throw BudgetError("V_" + std::to_string(n) + " is beyond the node budget");
  HfSet v;
  for (std::size_t i = 0; i < n; ++i) v = powerset(v);
  return v;
}

}  // namespace broadgen
