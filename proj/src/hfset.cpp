#include "broadgen/hfset.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_set>

#include "broadgen/error.hpp"

namespace broadgen {

namespace {

struct Node {
  const HfSet* elems;
  std::uint32_t size;
  std::uint32_t rank;
  std::uint64_t hash;
};

constexpr unsigned kChunkBits = 16;
constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
constexpr std::size_t kMaxChunks = std::size_t{1} << 12;
constexpr std::size_t kArenaBlock = std::size_t{1} << 20;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_elements(std::span<const HfSet> elems) {
  std::uint64_t h = 0x51ed270b27ad4ae3ULL ^ elems.size();
  for (HfSet e : elems) h = mix(h ^ e.id());
  return h;
}

}  // namespace

struct Store::Impl {
  std::array<std::atomic<Node*>, kMaxChunks> chunks{};
  std::atomic<std::size_t> count{0};
  std::atomic<std::size_t> limit{60'000'000};

  std::mutex mu;
  std::vector<std::uint32_t> slots;  // id + 1, 0 = free
  std::size_t occupied = 0;
  std::vector<std::unique_ptr<HfSet[]>> blocks;
  HfSet* arena = nullptr;
  std::size_t arena_used = 0;
  std::size_t arena_cap = 0;

  const Node& node(std::uint32_t id) const {
    return chunks[id >> kChunkBits].load(std::memory_order_acquire)[id & (kChunkSize - 1)];
  }

  const HfSet* store_elements(std::span<const HfSet> elems) {
    if (elems.empty()) return nullptr;
    if (elems.size() > kArenaBlock / 4) {
      blocks.push_back(std::make_unique<HfSet[]>(elems.size()));
      std::copy(elems.begin(), elems.end(), blocks.back().get());
      return blocks.back().get();
    }
    if (arena_used + elems.size() > arena_cap) {
      blocks.push_back(std::make_unique<HfSet[]>(kArenaBlock));
      arena = blocks.back().get();
      arena_used = 0;
      arena_cap = kArenaBlock;
    }
    HfSet* out = arena + arena_used;
    std::copy(elems.begin(), elems.end(), out);
    arena_used += elems.size();
    return out;
  }

  bool same(const Node& n, std::uint64_t h, std::span<const HfSet> elems) const {
    return n.hash == h && n.size == elems.size() &&
           std::equal(elems.begin(), elems.end(), n.elems);
  }

  void grow() {
    std::vector<std::uint32_t> old(slots.size() * 2, 0);
    old.swap(slots);
    std::size_t mask = slots.size() - 1;
    for (std::uint32_t s : old) {
      if (s == 0) continue;
      std::size_t i = node(s - 1).hash & mask;
      while (slots[i] != 0) i = (i + 1) & mask;
      slots[i] = s;
    }
  }

  HfSet intern(std::span<const HfSet> elems) {
    std::uint64_t h = hash_elements(elems);
    std::lock_guard<std::mutex> lock(mu);
    std::size_t mask = slots.size() - 1;
    std::size_t i = h & mask;
    while (slots[i] != 0) {
      const Node& n = node(slots[i] - 1);
      if (same(n, h, elems)) return HfSet::from_id(slots[i] - 1);
      i = (i + 1) & mask;
    }
    std::size_t id = count.load(std::memory_order_relaxed);
    if (id >= limit.load(std::memory_order_relaxed) || id >= kMaxChunks * kChunkSize) {
      throw BudgetError("hereditarily finite set store is full (" + std::to_string(id) +
                        " nodes)");
    }
    std::uint32_t rank = 0;
    for (HfSet e : elems) rank = std::max(rank, node(e.id()).rank + 1);
    std::size_t chunk = id >> kChunkBits;
    Node* base = chunks[chunk].load(std::memory_order_relaxed);
    if (base == nullptr) {
      base = new Node[kChunkSize];
      chunks[chunk].store(base, std::memory_order_release);
    }
    base[id & (kChunkSize - 1)] =
        Node{store_elements(elems), static_cast<std::uint32_t>(elems.size()), rank, h};
    count.store(id + 1, std::memory_order_release);
    slots[i] = static_cast<std::uint32_t>(id + 1);
    if (++occupied * 2 > slots.size()) grow();
    return HfSet::from_id(static_cast<std::uint32_t>(id));
  }
};

namespace {
Store::Impl* g_impl = nullptr;
}

Store::Store() : impl_(new Impl) {
  g_impl = impl_;
  impl_->slots.assign(1 << 16, 0);
  impl_->intern({});  // id 0 is the empty set
}

Store::~Store() {
  for (auto& c : impl_->chunks) delete[] c.load();
  delete impl_;
}

Store& Store::instance() {
  static Store store;
  return store;
}

std::size_t Store::node_count() const { return impl_->count.load(std::memory_order_acquire); }
std::size_t Store::node_limit() const { return impl_->limit.load(); }
void Store::set_node_limit(std::size_t limit) { impl_->limit.store(std::max<std::size_t>(limit, 1)); }

namespace {

Store::Impl& impl() {
  Store::Impl* p = g_impl;
  if (p == nullptr) p = &Store::instance().impl();
  return *p;
}

const Node& node_of(HfSet a) { return impl().node(a.id()); }

bool canon_less(HfSet a, HfSet b) { return canonical_compare(a, b) < 0; }

}  // namespace

std::span<const HfSet> HfSet::elements() const {
  const Node& n = node_of(*this);
  return {n.elems, n.size};
}
std::size_t HfSet::size() const { return node_of(*this).size; }
std::uint32_t HfSet::rank() const { return node_of(*this).rank; }
std::uint64_t HfSet::hash() const { return node_of(*this).hash; }

bool HfSet::contains(HfSet x) const {
  auto elems = elements();
  auto it = std::lower_bound(elems.begin(), elems.end(), x, canon_less);
  return it != elems.end() && *it == x;
}

std::strong_ordering canonical_compare(HfSet a, HfSet b) {
  if (a == b) return std::strong_ordering::equal;
  const Node& na = node_of(a);
  const Node& nb = node_of(b);
  if (na.rank != nb.rank) return na.rank <=> nb.rank;
  std::uint32_t n = std::min(na.size, nb.size);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto c = canonical_compare(na.elems[i], nb.elems[i]);
    if (c != 0) return c;
  }
  return na.size <=> nb.size;
}

std::strong_ordering operator<=>(HfSet a, HfSet b) { return canonical_compare(a, b); }

HfSet intern_sorted(std::span<const HfSet> elements) { return impl().intern(elements); }

HfSet intern(std::vector<HfSet> elements) {
  std::sort(elements.begin(), elements.end(), canon_less);
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return intern_sorted(elements);
}

HfSet make_set(std::initializer_list<HfSet> elements) {
  return intern(std::vector<HfSet>(elements));
}

HfSet singleton(HfSet x) { return intern_sorted(std::span<const HfSet>(&x, 1)); }

HfSet set_union(HfSet a, HfSet b) {
  auto ea = a.elements();
  auto eb = b.elements();
  std::vector<HfSet> out;
  out.reserve(ea.size() + eb.size());
  std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out), canon_less);
  return intern_sorted(out);
}

HfSet set_intersection(HfSet a, HfSet b) {
  auto ea = a.elements();
  auto eb = b.elements();
  std::vector<HfSet> out;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out),
                        canon_less);
  return intern_sorted(out);
}

HfSet set_difference(HfSet a, HfSet b) {
  auto ea = a.elements();
  auto eb = b.elements();
  std::vector<HfSet> out;
  std::set_difference(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out),
                      canon_less);
  return intern_sorted(out);
}

HfSet union_of(HfSet family) {
  std::vector<HfSet> out;
  for (HfSet x : family.elements()) {
    auto ex = x.elements();
    out.insert(out.end(), ex.begin(), ex.end());
  }
  return intern(std::move(out));
}

bool is_subset(HfSet a, HfSet b) {
  auto ea = a.elements();
  auto eb = b.elements();
  return std::includes(eb.begin(), eb.end(), ea.begin(), ea.end(), canon_less);
}

HfSet powerset(HfSet a) {
  auto elems = a.elements();
  std::size_t n = elems.size();
  Store& store = Store::instance();
  if (n >= 26 || store.node_count() + (std::size_t{1} << n) + 1 > store.node_limit()) {
    throw BudgetError("powerset of a " + std::to_string(n) + "-element set exceeds the node budget");
  }
  std::vector<HfSet> subsets;
  subsets.reserve(std::size_t{1} << n);
  std::vector<HfSet> buf;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    buf.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) buf.push_back(elems[i]);
    }
    subsets.push_back(intern_sorted(buf));
  }
  std::sort(subsets.begin(), subsets.end(), canon_less);
  return intern_sorted(subsets);
}

HfSet separate(HfSet a, const std::function<bool(HfSet)>& keep) {
  std::vector<HfSet> out;
  for (HfSet x : a.elements()) {
    if (keep(x)) out.push_back(x);
  }
  return intern_sorted(out);
}

HfSet replace(HfSet a, const std::function<HfSet(HfSet)>& f) {
  std::vector<HfSet> out;
  out.reserve(a.size());
  for (HfSet x : a.elements()) out.push_back(f(x));
  return intern(std::move(out));
}

HfSet from_things(const ThingSet& things) {
  std::vector<HfSet> v(things.begin(), things.end());
  return intern_sorted(v);
}

ThingSet to_things(HfSet a) {
  auto e = a.elements();
  return ThingSet(e.begin(), e.end());
}

HfSet transitive_closure(HfSet a) {
  std::unordered_set<HfSet> seen;
  std::vector<HfSet> stack(a.elements().begin(), a.elements().end());
  std::vector<HfSet> out;
  while (!stack.empty()) {
    HfSet x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    out.push_back(x);
    for (HfSet y : x.elements()) stack.push_back(y);
  }
  return intern(std::move(out));
}

HfSet descendant_set(HfSet e) { return set_union(singleton(e), transitive_closure(e)); }

bool is_transitive(HfSet a) {
  for (HfSet x : a.elements()) {
    if (!is_subset(x, a)) return false;
  }
  return true;
}

HfSet truth(bool b) { return b ? singleton(HfSet()) : HfSet(); }

namespace {

void serialize_into(HfSet a, std::string& out) {
  out.push_back('{');
  bool first = true;
  for (HfSet x : a.elements()) {
    if (!first) out.push_back(',');
    first = false;
    serialize_into(x, out);
  }
  out.push_back('}');
}

class SetParser {
 public:
  explicit SetParser(std::string_view text) : text_(text) {}

  HfSet parse_all() {
    HfSet s = parse_set(0);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  HfSet parse_set(std::size_t depth) {
    if (depth > 100'000) fail("nesting too deep");
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '{') fail("expected '{'");
    ++pos_;
    std::vector<HfSet> elems;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return HfSet();
    }
    for (;;) {
      elems.push_back(parse_set(depth + 1));
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated set");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == '}') {
        ++pos_;
        break;
      }
      fail("expected ',' or '}'");
    }
    return intern(std::move(elems));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(HfSet a) {
  std::string out;
  serialize_into(a, out);
  return out;
}

HfSet parse_hfset(std::string_view text) { return SetParser(text).parse_all(); }

}  // namespace broadgen
