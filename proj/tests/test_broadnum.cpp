#include <doctest.h>

#include <random>

#include "broadgen/broadnum.hpp"
#include "broadgen/error.hpp"
#include "example_rubrics.hpp"
#include "fixtures.hpp"
#include "random_signatures.hpp"

using namespace broadgen;
using broadgen::testing::nat;

namespace {

Budget depth(std::size_t d) {
  Budget b;
  b.depth = d;
  return b;
}

HfSet build0(HfSet x, std::uint64_t i) { return build(x, nat(i), {}); }

// The four listed numbers for the example broad signature.
std::vector<HfSet> listed_broad_numbers() {
  HfSet s5 = build0(start(), 5);
  HfSet s6 = build0(start(), 6);
  HfSet big = build(s6, nat(8), {{nat(0), start()}, {nat(1), s5}});
  return {start(), s5, s6, big};
}

std::vector<BroadSignature> test_signatures() {
  std::mt19937_64 rng(0xb40ad);
  std::vector<BroadSignature> out;
  for (int n = 0; n < 12; ++n) out.push_back(testing::random_broad_signature(rng));
  return out;
}

}  // namespace

TEST_CASE("example broad signature") {
  BroadSignature g = testing::example_broad_signature();
  auto zero = generate_broad(g, depth(0));
  CHECK(zero.set == ThingSet{start()});
  auto two = generate_broad(g, depth(2));
  for (HfSet w : listed_broad_numbers()) {
    CHECK(two.set.count(w) == 1);
    CHECK(is_broad_number(g, w));
  }
  CHECK_FALSE(two.stabilized);
  CHECK(two.stages == 3);

  auto listed = listed_broad_numbers();
  CHECK(broad_rank(g, listed[0]) == Ordinal::finite(0));
  CHECK(broad_rank(g, listed[1]) == Ordinal::finite(1));
  CHECK(broad_rank(g, listed[3]) == Ordinal::finite(2));
  CHECK(broad_to_text(listed[3]) == "Build(Build(Start,6,[]),8,[0->Start,1->Build(Start,5,[])])");

  // 9 is a symbol only under Build(Start,6,[]); 7 has arity {0,1}
  CHECK_FALSE(is_broad_number(g, build0(start(), 9)));
  CHECK_FALSE(is_broad_number(g, build0(build0(start(), 6), 7)));
  CHECK_THROWS_AS(broad_rank(g, build0(start(), 9)), DomainError);
  CHECK_FALSE(is_broad_number(g, nat(2)));
}

TEST_CASE("example reduced broad signature") {
  ReducedBroadSignature f = testing::example_reduced_signature();
  HfSet m = make(HfSet(), {});
  HfSet third = make(m, {{nat(0), HfSet()}, {nat(1), m}});
  HfSet fourth = make(third, {});
  auto r = generate_reduced(f, depth(3));
  for (HfSet w : {HfSet(), m, third, fourth}) {
    CHECK(r.set.count(w) == 1);
    CHECK(is_reduced_broad_number(f, w));
  }
  CHECK(generate_reduced(f, depth(0)).set == ThingSet{HfSet()});
  CHECK(reduced_to_text(third) == "Make(Make(Begin,[]),[0->Begin,1->Make(Begin,[])])");
  CHECK_FALSE(is_reduced_broad_number(f, make(m, {})));
}

TEST_CASE("empty arities give a chain of Makes") {
  ReducedBroadSignature f;
  for (std::size_t d = 0; d < 6; ++d) {
    auto r = generate_reduced(f, depth(d));
    CHECK(r.set.size() == d + 1);
    CHECK_FALSE(r.stabilized);
  }
  HfSet x;
  for (int k = 0; k < 5; ++k) x = make(x, {});
  CHECK(generate_reduced(f, depth(5)).set.count(x) == 1);
}

TEST_CASE("empty broad signature stabilizes at once") {
  BroadSignature g;
  auto r = generate_broad(g, depth(4));
  CHECK(r.set == ThingSet{start()});
  CHECK(r.stabilized);
  CHECK(r.stages == 1);
}

TEST_CASE("generation budgets") {
  BroadSignature g = testing::example_broad_signature();
  Budget b = depth(3);
  b.max_elements = 50;
  CHECK_THROWS_AS(generate_broad(g, b), BudgetError);
  b = depth(3);
  b.fuel = 10;
  CHECK_THROWS_AS(generate_broad(g, b), BudgetError);
}

TEST_CASE("property: direct generation matches the bracket rubric") {
  auto sigs = test_signatures();
  sigs.push_back(testing::example_broad_signature());
  for (std::size_t n = 0; n < sigs.size(); ++n) {
    const BroadSignature& g = sigs[n];
    std::size_t d = n + 1 == sigs.size() ? 2 : 3;
    CAPTURE(n);
    auto direct = generate_broad(g, depth(d));
    auto via = generate_set(bracket_broadsig(g), depth(d + 1));
    CHECK(direct.set == via.set);
    CHECK(direct.stabilized == via.stabilized);
  }
  ReducedBroadSignature f = testing::example_reduced_signature();
  for (std::size_t d = 0; d <= 3; ++d) {
    CHECK(generate_reduced(f, depth(d)).set ==
          generate_set(bracket_reduced(f), depth(d + 1)).set);
  }
}

TEST_CASE("property: fragments are downward closed and ranks match stages") {
  for (const BroadSignature& g : test_signatures()) {
    const std::size_t d = 3;
    auto frag = generate_broad(g, depth(d));
    auto chain = inductive_chain(bracket_broadsig(g), d + 1);
    for (HfSet w : frag.set) {
      CHECK(is_broad_number(g, w));
      Ordinal r = broad_rank(g, w);
      REQUIRE(r.as_finite());
      std::size_t k = *r.as_finite();
      CHECK(k <= d);
      CHECK(chain[k + 1].count(w) == 1);
      CHECK(chain[k].count(w) == 0);
      Decoded dec = classify(w, Group::broad);
      if (dec.tag == Tag::build) {
        CHECK(frag.set.count(dec.args[0]) == 1);
        Tuple args = *decode_tuple(dec.args[2]);
        for (const auto& [pos, a] : args) CHECK(frag.set.count(a) == 1);
      }
    }
  }
}

TEST_CASE("theta on the Bu2 fragment") {
  BroadSignature g = testing::example_broad_signature();
  CHECK(start_p() == make(HfSet(), {}));
  CHECK(theta_reduce(Direction::forward, start_p(), g) == start());
  HfSet sig = g.at(start()).encode();
  HfSet u = encode(Tag::bu2, {start_p(), sig, nat(5), HfSet()});
  CHECK(theta_reduce(Direction::forward, u, g) == build0(start(), 5));
  CHECK(theta_reduce(Direction::backward, build0(start(), 5), g) == u);
  CHECK(theta_reduce(Direction::backward, start(), g) == start_p());
  CHECK_THROWS_AS(theta_reduce(Direction::forward, nat(3), g), DomainError);
  CHECK_THROWS_AS(theta_reduce(Direction::backward, build0(start(), 9), g), DomainError);
}

TEST_CASE("property: theta commutes with generation") {
  auto sigs = test_signatures();
  sigs.push_back(testing::example_broad_signature());
  for (std::size_t n = 0; n < sigs.size(); ++n) {
    const BroadSignature& g = sigs[n];
    std::size_t d = n + 1 == sigs.size() ? 2 : 3;
    CAPTURE(n);
    auto u = generate_reduced_image(g, depth(d));
    auto b = generate_broad(g, depth(d));
    ThingSet image;
    for (HfSet x : u.set) {
      HfSet y = theta_reduce(Direction::forward, x, g);
      image.insert(y);
      CHECK(theta_reduce(Direction::backward, y, g) == x);
    }
    CHECK(image == b.set);
    CHECK(image.size() == u.set.size());
  }
}

TEST_CASE("property: the Bu2 fragment consists of reduced broad numbers") {
  for (const BroadSignature& g : test_signatures()) {
    auto u = generate_reduced_image(g, depth(2));
    ReducedBroadSignature f = reduced_signature_for(g, u.set);
    for (HfSet x : u.set) CHECK(is_reduced_broad_number(f, x));
  }
  // small enough to generate the reduced side outright
  BroadSignature tiny;
  tiny.table[start()].arities[nat(0)] = HfSet();
  tiny.table[start()].arities[nat(1)] = testing::positions({0});
  auto u = generate_reduced_image(tiny, depth(1));
  CHECK(u.set.size() == 3);
  ReducedBroadSignature f = reduced_signature_for(tiny, u.set);
  CHECK(f.at(make(start_p(), {})).size() == 3);
  auto r = generate_reduced(f, depth(3));
  for (HfSet x : u.set) CHECK(r.set.count(x) == 1);
}

TEST_CASE("theta on derivations") {
  HfSet d = basic_p(nat(1), {}, nat(50));
  CHECK(theta_derivs(Direction::forward, d) == basic(nat(1), {}, nat(50)));
  CHECK(theta_derivs(Direction::backward, basic(nat(1), {}, nat(50))) == d);
  CHECK_THROWS_AS(theta_derivs(Direction::forward, basic(nat(1), {}, nat(50))), DomainError);
  CHECK_THROWS_AS(theta_derivs(Direction::backward, nat(4)), DomainError);

  BroadRubric b = testing::truncated_example_broad_rubric();
  Budget bud = depth(2);
  auto pseudo = generate_pseudo_family(b, bud);
  auto plain = generate_family(b, bud);
  std::map<HfSet, HfSet> mapped;
  for (const auto& [dp, value] : pseudo.entries) {
    HfSet dd = theta_derivs(Direction::forward, dp);
    CHECK(eval_derivation(b, dd) == value);
    CHECK(theta_derivs(Direction::backward, dd) == dp);
    mapped.emplace(dd, value);
  }
  CHECK(mapped == plain.entries);
  // 100 triggers a nullary rule with values 1000 and 1001
  CHECK(family_range(plain).count(nat(1000)) == 1);
}

TEST_CASE("property: theta on random derivation shapes round trips") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> small(0, 9);
  std::function<HfSet(int)> random_derivation = [&](int h) -> HfSet {
    Tuple g;
    if (h > 0) {
      int n = small(rng) % 3;
      for (int k = 0; k < n; ++k) g[nat(k)] = random_derivation(h - 1);
    }
    if (h > 0 && small(rng) < 4) {
      return trigger(random_derivation(h - 1), nat(small(rng)), g, nat(small(rng)));
    }
    return basic(nat(small(rng)), g, nat(small(rng)));
  };
  for (int n = 0; n < 200; ++n) {
    HfSet d = random_derivation(3);
    HfSet p = theta_derivs(Direction::backward, d);
    CHECK(classify(p, Group::pseudo).tag.has_value());
    CHECK(theta_derivs(Direction::forward, p) == d);
  }
}
