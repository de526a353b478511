#include <doctest.h>

#include <algorithm>
#include <random>

#include "broadgen/encodings.hpp"
#include "broadgen/error.hpp"
#include "broadgen/ordinal.hpp"
#include "oracle/oracle.hpp"
#include "random_sets.hpp"

using namespace broadgen;

namespace {

Ordinal random_ordinal(std::mt19937_64& rng) {
  std::vector<Ordinal::Term> terms;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) terms.push_back({rng() % 4, rng() % 4});
  std::erase_if(terms, [](const Ordinal::Term& t) { return t.coef == 0; });
  return Ordinal::sum(terms);
}

Ordinal w() { return Ordinal::omega(); }
Ordinal fin(std::uint64_t n) { return Ordinal::finite(n); }

}  // namespace

TEST_CASE("normal form text") {
  Ordinal a = Ordinal::parse("w^2*3+w*1+4");
  CHECK(a.to_string() == "w^2*3+w*1+4");
  CHECK(Ordinal::parse("w").to_string() == "w*1");
  CHECK(Ordinal::parse("3 + w") == w());
  CHECK(Ordinal::parse("w+w") == Ordinal::omega_power(1, 2));
  CHECK(Ordinal::parse("w + 1").is_successor());
  CHECK(Ordinal::parse("\xcf\x89^2") == Ordinal::omega_power(2));
  CHECK(Ordinal().to_string() == "0");
  CHECK(Ordinal::parse("0").is_zero());
  CHECK_THROWS_AS(Ordinal::parse("w^"), ParseError);
  CHECK_THROWS_AS(Ordinal::parse("w+"), ParseError);
  CHECK_THROWS_AS(Ordinal::parse("x"), ParseError);
}

TEST_CASE("sup, ssup and successor") {
  std::vector<Ordinal> xs{fin(3), w(), fin(5)};
  CHECK(sup(xs) == w());
  CHECK(ssup(xs) == w().succ());
  std::vector<Ordinal> fins{fin(0), fin(4), fin(2)};
  CHECK(ssup(fins) == fin(5));
  CHECK(ssup(std::vector<Ordinal>{}) == fin(0));
  CHECK(fin(1).is_successor());
  CHECK(w().is_limit());
  CHECK_FALSE(fin(0).is_limit());
}

TEST_CASE("completeness and regularity") {
  CHECK(is_k_complete(fin(5), 3));
  CHECK(is_k_complete(fin(5), 0));
  CHECK_FALSE(is_k_complete(fin(0), 0));
  CHECK_FALSE(is_omega_complete(w()));
  CHECK(is_omega_complete(w().succ()));
  CHECK(is_omega_complete(fin(7)));
  CHECK(is_regular(w()));
  CHECK(is_regular(fin(1)));
  CHECK_FALSE(is_regular(fin(2)));
  CHECK_FALSE(is_regular(Ordinal::omega_power(1, 2)));
  CHECK_FALSE(is_regular(Ordinal::omega_power(2)));
}

TEST_CASE("property: omega witnesses are increasing and cofinal") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    Ordinal a = random_ordinal(rng);
    if (!a.is_limit()) continue;
    for (std::uint64_t n = 0; n < 20; ++n) {
      CHECK(omega_witness(a, n) < omega_witness(a, n + 1));
      CHECK(omega_witness(a, n) < a);
    }
    Ordinal below = random_ordinal(rng);
    if (below < a) {
      bool passed = false;
      for (std::uint64_t n = 0; n < 200 && !passed; ++n) passed = below < omega_witness(a, n);
      CHECK(passed);
    }
  }
}

TEST_CASE("property: ordinal arithmetic laws") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 2000; ++round) {
    Ordinal a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
    CHECK(Ordinal::parse(a.to_string()) == a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a <= a + b);
    CHECK(b <= a + b);
    CHECK(a < a.succ());
    if (b < c) CHECK(a + b < a + c);
    CHECK(((a <=> b) == 0) == (a == b));
    CHECK((a < b) == (b > a));
  }
  for (std::uint64_t x = 0; x < 20; ++x) {
    for (std::uint64_t y = 0; y < 20; ++y) {
      CHECK(fin(x) + fin(y) == fin(x + y));
      CHECK((fin(x) < fin(y)) == (x < y));
    }
  }
}

TEST_CASE("well-order validation") {
  HfSet a = von_neumann(0), b = von_neumann(1), c = von_neumann(2);
  WellOrder ok = WellOrder::from_sequence({c, a, b});
  CHECK_NOTHROW(ok.validate());
  WellOrder cyc{{a, b}, {{a, b}, {b, a}}};
  CHECK_THROWS_AS(cyc.validate(), DomainError);
  WellOrder nontrans{{a, b, c}, {{a, b}, {b, c}}};
  CHECK_THROWS_AS(nontrans.validate(), DomainError);
  WellOrder flat{{a, b}, {}};
  CHECK_THROWS_AS(flat.validate(), DomainError);
  WellOrder outside{{a}, {{a, b}}};
  CHECK_THROWS_AS(outside.validate(), DomainError);
}

TEST_CASE("property: order types of random linear orders") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 300; ++round) {
    std::size_t n = rng() % 6;
    std::vector<HfSet> seq;
    while (seq.size() < n) {
      HfSet x = testing::random_set(rng, 3, 3);
      if (std::find(seq.begin(), seq.end(), x) == seq.end()) seq.push_back(x);
    }
    OrderType t = order_type(WellOrder::from_sequence(seq));
    CHECK(t.type == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(t.rank_of.at(seq[i]) == von_neumann(i));
  }
}

TEST_CASE("Hartogs and Lindenbaum numbers of finite sets") {
  CHECK(hartogs(HfSet()) == 1);
  CHECK(lindenbaum(HfSet()) == 1);
  for (std::uint64_t n = 0; n <= 4; ++n) {
    HfSet k = von_neumann(n);
    CHECK(hartogs(k) == n + 1);
    CHECK(lindenbaum(k) == n + 1);
    CHECK(hartogs(k) == oracle::hartogs_by_injection(k));
    CHECK(lindenbaum(k) == oracle::lindenbaum_by_surjection(k));
  }
  CHECK_THROWS_AS(hartogs(von_neumann(7)), BudgetError);
}

TEST_CASE("property: preorders agree with brute-force maps") {
  std::mt19937_64 rng(31);
  std::vector<HfSet> pool;
  for (int i = 0; i < 40; ++i) {
    HfSet x = testing::random_set(rng, 3, 4);
    if (x.size() <= 4) pool.push_back(x);
  }
  for (HfSet a : pool) {
    for (HfSet b : pool) {
      CHECK(preceq(a, b) == oracle::brute_injection(a, b).has_value());
      CHECK(preceq_star(a, b) == oracle::brute_partial_surjection(b, a).has_value());
      CHECK(preceq(a, b) == (a.size() <= b.size()));
    }
  }
}

TEST_CASE("cumulative hierarchy stages") {
  std::size_t sizes[] = {0, 1, 2, 4, 16, 65536};
  for (std::size_t n = 0; n <= 5; ++n) CHECK(v_stage(n).size() == sizes[n]);
  for (HfSet x : v_stage(4).elements()) CHECK(x.rank() < 4);
  CHECK_THROWS_AS(v_stage(6), BudgetError);
}
