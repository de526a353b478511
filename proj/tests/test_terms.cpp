#include <doctest.h>

#include <random>

#include "broadgen/error.hpp"
#include "broadgen/terms.hpp"
#include "fixtures.hpp"

using namespace broadgen;
using broadgen::testing::args;
using broadgen::testing::nat;

namespace {

HfSet leaf(std::uint64_t i) { return testing::leaf_term(i); }
using testing::figure_term;

// Count of terms of height <= d, by the recursion c(d) = sum_i c(d-1)^|K_i|.
std::size_t term_count(const Signature& s, std::size_t d) {
  if (d == 0) return 0;
  std::size_t prev = term_count(s, d - 1), total = 0;
  for (const auto& [sym, arity] : s.arities) {
    std::size_t p = 1;
    for (std::size_t k = 0; k < arity.size(); ++k) p *= prev;
    total += p;
  }
  return total;
}

Signature small_signature() {
  Signature s;
  s.arities[nat(0)] = HfSet();
  s.arities[nat(1)] = testing::positions({0});
  s.arities[nat(2)] = testing::positions({0, 1});
  return s;
}

}  // namespace

TEST_CASE("depth-2 terms of the example signature") {
  Signature s = testing::example_signature();
  ThingSet d1 = generate_terms(s, 1);
  CHECK(d1 == ThingSet{leaf(6), leaf(7)});
  ThingSet d2 = generate_terms(s, 2);
  CHECK(d2.size() == 26);
  CHECK(d2.count(make_term(nat(5), args({leaf(7), leaf(6), leaf(7), leaf(7)}))));
  CHECK(generate_terms(s, 0).empty());
}

TEST_CASE("the depth-3 population contains the figure term") {
  Signature s = testing::example_signature();
  ThingSet d3 = generate_terms(s, 3);
  CHECK(d3.size() == 474'554);
  CHECK(d3.size() == term_count(s, 3));
  CHECK(d3.count(figure_term()));
  CHECK(d3.count(leaf(6)));
}

TEST_CASE("branches and results of the figure term") {
  HfSet t = figure_term();
  CHECK(branches(t).size() == 8);
  CHECK(branch_result(t, {}) == nat(8));
  CHECK(branch_result(t, {nat(0), nat(3)}) == nat(7));
  CHECK(branch_result(t, {nat(0), nat(1)}) == nat(6));
  CHECK(branch_result(t, {nat(2)}) == nat(6));
  CHECK_THROWS_AS(branch_result(t, {nat(1), nat(0)}), DomainError);
  CHECK(term_height(t) == 3);
  CHECK(term_to_text(t) == "8(0->5(0->7(),1->6(),2->7(),3->7()),1->7(),2->6())");
}

TEST_CASE("is_term checks symbols and arities") {
  Signature s = testing::example_signature();
  CHECK(is_term(s, figure_term()));
  CHECK_FALSE(is_term(s, make_term(nat(5), args({leaf(7)}))));
  CHECK_FALSE(is_term(s, make_term(nat(9), {})));
  CHECK_FALSE(is_term(s, nat(3)));
}

TEST_CASE("property: generated counts follow the arity recursion") {
  Signature small = small_signature();
  for (std::size_t d = 0; d <= 4; ++d) {
    ThingSet ts = generate_terms(small, d);
    CHECK(ts.size() == term_count(small, d));
    for (HfSet t : ts) {
      CHECK(is_term(small, t));
      CHECK(term_height(t) <= d);
    }
  }
}

TEST_CASE("property: generation is monotone in depth") {
  Signature s = testing::example_signature();
  ThingSet prev;
  for (std::size_t d = 0; d <= 2; ++d) {
    ThingSet cur = generate_terms(s, d);
    for (HfSet t : prev) CHECK(cur.count(t));
    prev = cur;
  }
}

TEST_CASE("property: equal_by_branches coincides with equality (exhaustive)") {
  std::vector<HfSet> pool;
  for (HfSet t : generate_terms(testing::example_signature(), 2)) pool.push_back(t);
  for (HfSet t : generate_terms(small_signature(), 4)) pool.push_back(t);
  std::size_t checked = 0;
  for (HfSet a : pool) {
    for (HfSet b : pool) {
      CHECK(equal_by_branches(a, b) == (a == b));
      ++checked;
    }
  }
  CHECK(checked > 30'000);
}

TEST_CASE("property: equal_by_branches on depth-3 samples and single-leaf mutations") {
  Signature s = testing::example_signature();
  std::vector<HfSet> d2;
  for (HfSet t : generate_terms(s, 2)) d2.push_back(t);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, d2.size() - 1);
  auto random_d3 = [&]() {
    return make_term(nat(8), args({d2[pick(rng)], d2[pick(rng)], d2[pick(rng)]}));
  };
  for (int i = 0; i < 3000; ++i) {
    HfSet a = random_d3();
    HfSet b = random_d3();
    CHECK(equal_by_branches(a, b) == (a == b));
    // swap one leaf deep inside a
    auto parts = split_term(a);
    Tuple kids = parts->second;
    HfSet first = kids.at(nat(0));
    auto inner = split_term(first);
    if (inner && !inner->second.empty()) {
      Tuple ik = inner->second;
      HfSet& slot = ik.begin()->second;
      slot = slot == leaf(6) ? leaf(7) : leaf(6);
      kids[nat(0)] = make_term(inner->first, ik);
      HfSet mutated = make_term(nat(8), kids);
      CHECK_FALSE(equal_by_branches(a, mutated));
      CHECK(equal_by_branches(mutated, mutated));
    }
  }
}

TEST_CASE("term budget") {
  CHECK_THROWS_AS(generate_terms(testing::example_signature(), 3, 1000), BudgetError);
}
