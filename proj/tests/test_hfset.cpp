#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "broadgen/error.hpp"
#include "broadgen/hfset.hpp"
#include "random_sets.hpp"

using namespace broadgen;

namespace {

HfSet zero() { return HfSet(); }
HfSet one() { return singleton(zero()); }
HfSet two() { return make_set({zero(), one()}); }

}  // namespace

TEST_CASE("serialization of small sets") {
  CHECK(serialize(zero()) == "{}");
  CHECK(serialize(one()) == "{{}}");
  CHECK(serialize(two()) == "{{},{{}}}");
  // {{x},{x,y}} with x = {}, y = {{}}
  HfSet kpair = make_set({singleton(zero()), make_set({zero(), one()})});
  CHECK(serialize(kpair) == "{{{}},{{},{{}}}}");
}

TEST_CASE("extensional equality ignores order and duplicates") {
  CHECK(make_set({one(), zero(), one()}) == two());
  CHECK(intern({two(), one(), zero(), two()}) == make_set({zero(), one(), two()}));
  CHECK(make_set({zero()}) != make_set({one()}));
}

TEST_CASE("parser accepts whitespace and reports positions") {
  CHECK(parse_hfset(" { {} ,\n { { } } } ") == two());
  CHECK_THROWS_AS(parse_hfset("{{}"), ParseError);
  try {
    parse_hfset("{{},x}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  try {
    parse_hfset("{\n  {} }}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_hfset(""), ParseError);
  CHECK_THROWS_AS(parse_hfset("{,}"), ParseError);
}

TEST_CASE("rank") {
  CHECK(zero().rank() == 0);
  CHECK(one().rank() == 1);
  CHECK(two().rank() == 2);
  CHECK(make_set({one()}).rank() == 2);
}

TEST_CASE("canonical order is rank-major then lexicographic") {
  CHECK(zero() < one());
  CHECK(one() < two());
  HfSet s1 = singleton(one());  // {{{}}}, rank 2
  CHECK(one() < s1);
  // both rank 2: {{},{{}}} starts with {} and {{{}}} starts with {{}}
  CHECK(two() < s1);
}

TEST_CASE("property: parse inverts serialize and interning is stable") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    HfSet a = testing::random_set(rng, 5);
    std::string text = serialize(a);
    CHECK(parse_hfset(text) == a);
    CHECK(text.find(' ') == std::string::npos);
    std::vector<HfSet> elems(a.elements().begin(), a.elements().end());
    std::shuffle(elems.begin(), elems.end(), rng);
    CHECK(intern(elems) == a);
  }
}

TEST_CASE("property: canonical order is a strict total order agreeing with equality") {
  std::mt19937_64 rng(11);
  std::vector<HfSet> pool;
  for (int i = 0; i < 300; ++i) pool.push_back(testing::random_set(rng, 4));
  for (HfSet a : pool) {
    for (HfSet b : pool) {
      auto ab = canonical_compare(a, b);
      auto ba = canonical_compare(b, a);
      CHECK((ab == 0) == (a == b));
      CHECK((ab < 0) == (ba > 0));
      if (a.rank() < b.rank()) CHECK(ab < 0);
    }
  }
  std::vector<HfSet> sorted = pool;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 2 < sorted.size(); ++i) {
    CHECK(sorted[i] <= sorted[i + 1]);
    CHECK(sorted[i] <= sorted[i + 2]);
  }
}

TEST_CASE("elements are stored in canonical order") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    HfSet a = testing::random_set(rng, 5, 4);
    auto e = a.elements();
    CHECK(std::is_sorted(e.begin(), e.end()));
    CHECK(std::adjacent_find(e.begin(), e.end()) == e.end());
  }
}

TEST_CASE("boolean set operations") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    HfSet a = testing::random_set(rng, 4, 5);
    HfSet b = testing::random_set(rng, 4, 5);
    HfSet u = set_union(a, b);
    HfSet n = set_intersection(a, b);
    HfSet d = set_difference(a, b);
    CHECK(is_subset(a, u));
    CHECK(is_subset(b, u));
    CHECK(is_subset(n, a));
    CHECK(is_subset(n, b));
    CHECK(set_union(n, d) == a);
    CHECK(set_intersection(d, b) == zero());
    for (HfSet x : u.elements()) CHECK((a.contains(x) || b.contains(x)));
    CHECK(union_of(make_set({a, b})) == u);
  }
}

TEST_CASE("powerset, separation and replacement") {
  HfSet three = make_set({zero(), one(), two()});
  HfSet p = powerset(three);
  CHECK(p.size() == 8);
  for (HfSet s : p.elements()) CHECK(is_subset(s, three));
  CHECK(powerset(zero()) == one());
  CHECK(separate(three, [](HfSet x) { return x.rank() >= 1; }) == make_set({one(), two()}));
  CHECK(replace(three, [](HfSet) { return zero(); }) == one());
}

TEST_CASE("iterated powerset sizes") {
  HfSet v = zero();
  std::size_t sizes[] = {1, 2, 4, 16};
  for (std::size_t s : sizes) {
    v = powerset(v);
    CHECK(v.size() == s);
  }
}

TEST_CASE("descendant set and transitive closure") {
  CHECK(descendant_set(two()) == make_set({zero(), one(), two()}));
  CHECK(transitive_closure(two()) == two());
  CHECK(is_transitive(two()));
  CHECK_FALSE(is_transitive(make_set({one()})));
  HfSet x = make_set({singleton(one())});
  CHECK(descendant_set(x) == make_set({x, singleton(one()), one(), zero()}));
}

TEST_CASE("truth values") {
  CHECK(truth(false) == zero());
  CHECK(truth(true) == one());
}

TEST_CASE("node budget") {
  Store& store = Store::instance();
  std::size_t old = store.node_limit();
  store.set_node_limit(store.node_count() + 10);
  HfSet big = zero();
  std::vector<HfSet> chain;
  for (int i = 0; i < 5; ++i) {
    big = singleton(big);
  }
  CHECK_THROWS_AS(powerset(make_set({zero(), one(), two(), big, singleton(two())})), BudgetError);
  store.set_node_limit(old);
}

TEST_CASE("concurrent interning is race-free") {
  std::vector<std::vector<HfSet>> results(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([t, &results] {
      std::mt19937_64 rng(99);
      for (int i = 0; i < 3000; ++i) results[t].push_back(testing::random_set(rng, 6, 3));
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) CHECK(results[t] == results[0]);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    HfSet a = testing::random_set(rng, 6, 3);
    CHECK(a == results[0][i]);
    CHECK(parse_hfset(serialize(a)) == a);
  }
}
