#include <random>
#include <set>

#include "doctest.h"
#include "dehn/complexity.hpp"
#include "fixtures.hpp"

using namespace dehn;

namespace {

using T = ComplexityTriple;
using S = FComplexitySet;

std::vector<T> box(int b1, int b2, int b3) {
  std::vector<T> out;
  for (int a = 1; a <= b1; ++a)
    for (int b = 0; b <= b2; ++b)
      for (int c = 0; c <= b3; ++c) out.push_back({a, b, c});
  return out;
}

S random_set(std::mt19937& rng, int max_size) {
  std::vector<T> t;
  int n = rng() % (max_size + 1);
  for (int i = 0; i < n; ++i) t.push_back({long(1 + rng() % 3), long(rng() % 4), long(rng() % 3)});
  return S(t);
}

S join(const std::vector<S>& parts) {
  S out;
  for (auto& p : parts)
    for (auto& t : p.triples) out.insert(t);
  return out;
}

// a set no larger than s: some triples lowered, some dropped
S shrink(const S& s, std::mt19937& rng) {
  std::vector<T> out;
  for (T t : s.triples) {
    int r = rng() % 4;
    if (r == 0) continue;
    if (r == 1) {
      if (t.c3 > 0) --t.c3;
      else if (t.c2 > 0) --t.c2;
    }
    out.push_back(t);
  }
  return S(out);
}

}  // namespace

TEST_CASE("index formulas") {
  CHECK(index_of_component(1, 4) == 2);
  CHECK(index_of_component(0, 0) == 0);
  CHECK(index_of_component(1, 2) == 0);
  CHECK(index_of_0handle(2, 0) == 0);
  CHECK(index_of_0handle(1, 1) == 0);
  CHECK(index_of_0handle(3, 1) == 2);
}

TEST_CASE("F-complexity sets") {
  ComponentData base{4, 6, 4, 0};
  CHECK(base.index() == 4);
  // the index is the sum over the four valence-three zero-handles
  CHECK(base.index() == 4 * index_of_0handle(3, 0));
  CHECK(f_complexity({base}) == S({{7, 4, 4}}));
  ComponentData disc{1, 0, 1, 2};
  CHECK(f_complexity({disc}).triples.empty());
  CHECK(f_complexity_all({disc}) == S({{1, 0, 1}}));
  CHECK(f_complexity({base, base}).triples.size() == 2);

  Complexity c = complexity_of({tetrahedron_pattern()});
  CHECK(c.cf == S({{7, 4, 4}}));
  CHECK(c.n == 1);
  CHECK(extended_complexity_of({tetrahedron_pattern(), tetrahedron_pattern(0x1, 0)}).cf_plus.triples.size() == 2);
  CHECK(complexity_of({tetrahedron_pattern(0x1, 0)}).n == 0);
  CHECK(S({{1, 0, 0}, {2, 0, 0}}).str() == "{(2,0,0),(1,0,0)}");
}

TEST_CASE("orderings on the examples") {
  using std::strong_ordering;
  CHECK(compare_triples({2, 1, 3}, {1, 5, 9}) == strong_ordering::greater);
  CHECK(compare_triples({1, 2, 0}, {1, 2, 0}) == strong_ordering::equal);
  CHECK(compare_triples({1, 2, 0}, {1, 2, 1}) == strong_ordering::less);
  CHECK(compare_sets(S({{2, 1, 1}}), S({{1, 3, 3}, {1, 2, 2}})) == strong_ordering::greater);
  CHECK(compare_sets(S(), S({{1, 0, 0}})) == strong_ordering::less);
  CHECK(compare_sets(S({{1, 1, 1}, {1, 1, 1}}), S({{1, 1, 1}})) == strong_ordering::greater);
  CHECK(compare_complexity({S({{1, 1, 1}}), 2}, {S({{1, 1, 1}}), 3}) == strong_ordering::greater);
  CHECK(compare_complexity({S({{2, 1, 1}}), 5}, {S({{1, 9, 9}}), 1}) == strong_ordering::greater);
  CHECK(compare_complexity({S({{2, 1, 1}}), 5}, {S({{2, 1, 1}}), 5}) == strong_ordering::equal);
  CHECK(compare_extended({S({{1, 0, 1}}), 0}, {S(), 0}) == strong_ordering::greater);
  CHECK(compare_extended({S({{1, 0, 1}}), 1}, {S({{1, 0, 1}}), 2}) == strong_ordering::greater);
  CHECK(compare_vertical({1, 5}, {2, 0}) == strong_ordering::less);
  CHECK(compare_vertical({2, 1}, {2, 0}) == strong_ordering::greater);
}

TEST_CASE("orderings are total orders") {
  std::mt19937 rng(11);
  std::vector<S> sets;
  for (int i = 0; i < 120; ++i) sets.push_back(random_set(rng, 4));
  for (auto& a : sets)
    for (auto& b : sets) {
      auto ab = compare_sets(a, b), ba = compare_sets(b, a);
      CHECK((ab == 0) == (a == b));
      CHECK((ab < 0) == (ba > 0));
      for (int k = 0; k < 3; ++k) {
        const S& c = sets[rng() % sets.size()];
        if (ab < 0 && compare_sets(b, c) < 0) CHECK(compare_sets(a, c) < 0);
      }
    }
  for (int i = 0; i < 2000; ++i) {
    T a{long(1 + rng() % 3), long(rng() % 3), long(rng() % 3)}, b{long(1 + rng() % 3), long(rng() % 3), long(rng() % 3)},
        c{long(1 + rng() % 3), long(rng() % 3), long(rng() % 3)};
    auto ab = compare_triples(a, b);
    CHECK((ab < 0) == (compare_triples(b, a) > 0));
    if (ab <= 0 && compare_triples(b, c) <= 0) CHECK(compare_triples(a, c) <= 0);
    Complexity x{S({a}), int(rng() % 3)}, y{S({b}), int(rng() % 3)};
    CHECK((compare_complexity(x, y) < 0) == (compare_complexity(y, x) > 0));
  }
}

TEST_CASE("bounded descents are finite") {
  // every set of at most three triples from a small box, in increasing order:
  // a strict chain through all of them, so no cycle and no longer descent exists
  auto triples = box(2, 2, 2);
  std::vector<S> all{S()};
  for (std::size_t i = 0; i < triples.size(); ++i) {
    all.push_back(S({triples[i]}));
    for (std::size_t j = i; j < triples.size(); ++j) {
      all.push_back(S({triples[i], triples[j]}));
      for (std::size_t k = j; k < triples.size(); ++k) all.push_back(S({triples[i], triples[j], triples[k]}));
    }
  }
  std::sort(all.begin(), all.end(), [](const S& a, const S& b) { return compare_sets(a, b) < 0; });
  std::size_t longest = 0;
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(compare_sets(all[i - 1], all[i]) < 0);
    ++longest;
  }
  for (std::size_t i = 0; i < all.size(); i += 37)
    for (std::size_t j = i + 1; j < all.size(); j += 13) CHECK(compare_sets(all[i], all[j]) < 0);
  CHECK(longest + 1 == all.size());
}

TEST_CASE("partition monotonicity") {
  std::mt19937 rng(5);
  for (int it = 0; it < 3000; ++it) {
    int parts = 1 + rng() % 4;
    std::vector<S> a, b;
    bool strict = false;
    for (int i = 0; i < parts; ++i) {
      a.push_back(random_set(rng, 3));
      b.push_back(rng() % 3 ? shrink(a.back(), rng) : a.back());
      REQUIRE(compare_sets(b.back(), a.back()) <= 0);
      if (compare_sets(b.back(), a.back()) < 0) strict = true;
    }
    auto r = compare_sets(join(b), join(a));
    CHECK(r <= 0);
    if (strict) CHECK(r < 0);
  }
}

TEST_CASE("surgery bound and framing polynomial") {
  CHECK(surgery_bound(-1, 0, 2) == 1);
  CHECK(surgery_bound(1, 2, 2) == 0);
  CHECK(surgery_bound(0, 6, 4) == 1);
  CHECK(surgery_bound(-2, 1, 3) == mpq_class(5, 4));
  CHECK_THROWS_AS(surgery_bound(0, 0, 1), DomainError);
  CHECK(framing_polynomial(0, 1, 0, 5) == 5);
  CHECK(framing_polynomial(1, 1, 0, 2) == 6);
  std::map<mpz_class, int> seen;
  int collisions = 0;
  for (int n = -100; n <= 100; ++n)
    if (++seen[framing_polynomial(3, 7, -2, n)] > 1) ++collisions;
  CHECK(collisions <= 1);
}
