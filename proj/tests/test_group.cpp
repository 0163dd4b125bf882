#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "polytopo/errors.hpp"
#include "polytopo/group.hpp"

using namespace polytopo;

namespace {

using Perm = std::vector<int>;

Perm apply_word(const std::vector<Perm>& gens, const std::vector<Perm>& invs, const Word& w,
                std::size_t k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  for (int l : w) {
    const Perm& g = l > 0 ? gens[l - 1] : invs[-l - 1];
    for (auto& v : p) v = g[v];
  }
  return p;
}

bool transitive(const std::vector<Perm>& gens, std::size_t k) {
  std::vector<bool> seen(k, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t n = 1;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (const auto& g : gens)
      for (int d : {g[c], static_cast<int>(std::find(g.begin(), g.end(), c) - g.begin())})
        if (!seen[d]) {
          seen[d] = true;
          ++n;
          stack.push_back(d);
        }
  }
  return n == k;
}

struct Oracle {
  std::size_t subgroups = 0;
  std::size_t classes = 0;
};

// Subgroups of index k <-> transitive actions on {0..k-1} with 0 marked,
// counted as transitive tuples / (k-1)!. Classes are orbits of S_k acting
// by simultaneous conjugation.
Oracle brute_force(const GroupPresentation& p, std::size_t k) {
  std::vector<Perm> all;
  Perm id(k);
  std::iota(id.begin(), id.end(), 0);
  Perm q = id;
  do all.push_back(q);
  while (std::next_permutation(q.begin(), q.end()));

  const std::size_t r = p.rank();
  std::size_t tuples = 0;
  std::set<std::vector<Perm>> canon;
  std::vector<std::size_t> idx(r, 0);
  for (;;) {
    std::vector<Perm> gens, invs;
    for (auto i : idx) {
      gens.push_back(all[i]);
      Perm inv(k);
      for (std::size_t j = 0; j < k; ++j) inv[all[i][j]] = static_cast<int>(j);
      invs.push_back(inv);
    }
    bool ok = k == 1 || transitive(gens, k);
    for (const auto& rel : p.relators())
      if (ok && apply_word(gens, invs, rel, k) != id) ok = false;
    if (ok) {
      ++tuples;
      std::vector<Perm> best;
      for (const auto& s : all) {
        // s g s^-1
        Perm sinv(k);
        for (std::size_t j = 0; j < k; ++j) sinv[s[j]] = static_cast<int>(j);
        std::vector<Perm> conj;
        for (const auto& g : gens) {
          Perm c(k);
          for (std::size_t j = 0; j < k; ++j) c[j] = s[g[sinv[j]]];
          conj.push_back(c);
        }
        if (best.empty() || conj < best) best = conj;
      }
      canon.insert(best);
    }
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == all.size()) idx[pos++] = 0;
    if (pos == r) break;
  }
  std::size_t fact = 1;
  for (std::size_t j = 2; j < k; ++j) fact *= j;
  return {tuples / fact, canon.size()};
}

}  // namespace

TEST_CASE("words and parsing") {
  CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
  CHECK(cyclic_reduce({-1, 2, 3, 1}) == Word{2, 3});
  CHECK(inverse({1, -2}) == Word{2, -1});
  auto pt = parse_presentation("gens: a b ; rels: a^2, b^3, (a*b)^3 ; sub: a*b");
  CHECK(pt.presentation.rank() == 2);
  REQUIRE(pt.presentation.relators().size() == 3);
  CHECK(pt.presentation.relators()[2] == Word{1, 2, 1, 2, 1, 2});
  CHECK(pt.subgroup == std::vector<Word>{{1, 2}});
  CHECK(pt.presentation.parse_word("a^-2*b") == Word{-1, -1, 2});
  CHECK(pt.presentation.parse_word("1").empty());
  CHECK(pt.presentation.format_word({-1, -1, 2}) == "a^-2*b");
  CHECK_THROWS_AS(pt.presentation.parse_word("a*c"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rels: a"), InputError);
  CHECK(default_generator_names(28)[27] == "g28");
}

TEST_CASE("todd-coxeter indices") {
  auto cyclic = parse_presentation("gens: a ; rels: a^5").presentation;
  auto t = todd_coxeter(cyclic, {});
  CHECK(t.size() == 5);
  CHECK(verify_coset_table(cyclic, t));

  auto a4 = parse_presentation("gens: a b ; rels: a^2, b^3, (a*b)^3").presentation;
  auto ta = todd_coxeter(a4, {});
  CHECK(ta.size() == 12);
  CHECK(verify_coset_table(a4, ta));
  auto tb = todd_coxeter(a4, {{2}});
  CHECK(tb.size() == 4);
  CHECK(verify_coset_table(a4, tb, {{2}}));

  auto z = parse_presentation("gens: a ; rels: ; sub: a^3");
  auto tz = todd_coxeter(z.presentation, z.subgroup);
  CHECK(tz.size() == 3);

  // S3 as <a,b | a^3, b^2, (ab)^2>, and a larger Coxeter group.
  auto s3 = parse_presentation("gens: a b ; rels: a^3, b^2, (a*b)^2").presentation;
  CHECK(todd_coxeter(s3, {}).size() == 6);
  auto s5 = parse_presentation("gens: a b ; rels: a^2, b^5, (a*b)^4, (a*b^-1*a*b)^3").presentation;
  CHECK(todd_coxeter(s5, {}).size() == 120);

  CHECK_THROWS_AS(todd_coxeter(GroupPresentation::free_group(2), {}, 100), CapacityError);
}

TEST_CASE("relator order does not change the table") {
  auto p1 = parse_presentation("gens: a b ; rels: a^2, b^3, (a*b)^3").presentation;
  auto p2 = parse_presentation("gens: a b ; rels: (a*b)^3, b^3, a^2").presentation;
  CHECK(todd_coxeter(p1, {}) == todd_coxeter(p2, {}));
  CHECK(low_index_subgroups(p1, 4).tables == low_index_subgroups(p2, 4).tables);
}

TEST_CASE("low-index counts for the free group of rank 2") {
  auto f2 = GroupPresentation::free_group(2);
  const std::size_t expected[] = {1, 3, 13, 71, 461};
  for (std::size_t k = 1; k <= 5; ++k) {
    auto r = low_index_subgroups(f2, k);
    CHECK(r.subgroup_count == expected[k - 1]);
    for (const auto& t : r.tables) CHECK(verify_coset_table(f2, t));
  }
  CHECK(low_index_subgroups(f2, 3).conjugacy_class_count == 7);
  CHECK(low_index_subgroups(f2, 2).conjugacy_class_count == 3);
}

TEST_CASE("low-index agrees with a permutation brute force") {
  const char* texts[] = {
      "gens: a ; rels: ",
      "gens: a b ; rels: ",
      "gens: a b ; rels: a^2, b^3, (a*b)^3",
      "gens: a b ; rels: a*b*a^-1*b^-1",
      "gens: a b ; rels: a^2, b^2",
      "gens: a ; rels: a^4",
  };
  for (const char* text : texts) {
    auto p = parse_presentation(text).presentation;
    for (std::size_t k = 1; k <= 4; ++k) {
      CAPTURE(text);
      CAPTURE(k);
      auto r = low_index_subgroups(p, k);
      auto o = brute_force(p, k);
      CHECK(r.subgroup_count == o.subgroups);
      CHECK(r.conjugacy_class_count == o.classes);
    }
  }
}

TEST_CASE("hall recursion") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 1; k <= 5; ++k) {
      if (n == 3 && k == 5) continue;  // brute force would be slow
      CAPTURE(n);
      CAPTURE(k);
      CHECK(hall_count_free(n, k) ==
            Integer(static_cast<unsigned long>(
                low_index_subgroups(GroupPresentation::free_group(n), k).subgroup_count)));
    }
  CHECK(hall_count_free(1, 7) == 1);
  CHECK(hall_count_free(2, 3) == 13);
  CHECK(hall_count_free(2, 4) == 71);
}

TEST_CASE("small groups and edge cases") {
  auto z2sq = parse_presentation("gens: a b ; rels: a*b*a^-1*b^-1").presentation;
  CHECK(low_index_subgroups(z2sq, 2).subgroup_count == 3);
  auto trivial = GroupPresentation::free_group(0);
  CHECK(low_index_subgroups(trivial, 1).subgroup_count == 1);
  CHECK(low_index_subgroups(trivial, 2).subgroup_count == 0);
  CHECK(todd_coxeter(trivial, {}).size() == 1);
  auto z5 = parse_presentation("gens: a ; rels: a^5").presentation;
  CHECK(low_index_subgroups(z5, 5).subgroup_count == 1);
  CHECK(low_index_subgroups(z5, 2).subgroup_count == 0);
  CHECK_THROWS_AS(low_index_subgroups(GroupPresentation::free_group(3), 6, 50), CapacityError);
}
