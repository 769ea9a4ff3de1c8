#include <algorithm>
#include <set>

#include "cloning/thompson.hpp"
#include "cloning/tree.hpp"
#include "doctest.h"

using namespace cloning;

namespace {

// Independent count of d-ary trees with c carets: t(c) = sum over ordered
// d-tuples of child caret counts summing to c-1.
unsigned long long count_trees(int d, int c) {
  std::vector<std::vector<unsigned long long>> ways(static_cast<std::size_t>(d + 1),
                                                    std::vector<unsigned long long>(static_cast<std::size_t>(c + 1)));
  std::vector<unsigned long long> t(static_cast<std::size_t>(c + 1));
  t[0] = 1;
  for (int n = 1; n <= c; ++n) {
    // ways[j][s]: j subtrees with s carets in total, using t[0..n-1].
    for (auto& row : ways) std::fill(row.begin(), row.end(), 0);
    ways[0][0] = 1;
    for (int j = 1; j <= d; ++j) {
      for (int s = 0; s <= n - 1; ++s) {
        for (int a = 0; a <= s; ++a) ways[j][s] += ways[j - 1][s - a] * t[a];
      }
    }
    t[n] = ways[d][n - 1];
  }
  return t[c];
}

}  // namespace

TEST_CASE("leaf and caret basics") {
  const Tree leaf = Tree::leaf(2);
  CHECK(leaf.str() == ".");
  CHECK(leaf.expand_at(1) == Tree::caret(2));
  CHECK(Tree::caret(3).str() == "(...)");
  CHECK(Tree::caret(3).expand_at(2).leaf_count() == 5);
  CHECK_THROWS_AS(leaf.expand_at(2), std::out_of_range);
  CHECK_THROWS_AS(Tree::caret(2).expand_at(0), std::out_of_range);
}

TEST_CASE("parse round-trips and rejects malformed text") {
  for (const char* s : {"(.(..))", "((..).)", "((..)(..))", "(.(...).)"}) {
    CHECK(Tree::parse(s, 0).str() == s);
  }
  CHECK(Tree::parse("(...)", 0).arity() == 3);
  CHECK_THROWS(Tree::parse("(..", 2));
  CHECK_THROWS(Tree::parse("(...)", 2));
  CHECK_THROWS(Tree::parse("(..)x", 2));
}

TEST_CASE("expansion commutes past an index shift") {
  Rng rng(11);
  for (int d : {2, 3, 4}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Tree t = random_tree(d, uniform_int(rng, 0, 5), rng);
      for (int k = 1; k <= t.leaf_count(); ++k) {
        for (int l = k + 1; l <= t.leaf_count(); ++l) {
          CHECK(t.expand_at(l).expand_at(k) == t.expand_at(k).expand_at(l + d - 1));
        }
      }
    }
  }
  const Tree lam = Tree::caret(2);
  CHECK(lam.expand_at(2).expand_at(1) == lam.expand_at(1).expand_at(3));
}

TEST_CASE("removable carets") {
  CHECK(Tree::leaf(2).removable_carets().empty());
  CHECK(Tree::caret(3).removable_carets() == std::vector<int>{1});
  CHECK(Tree::caret(2).expand_at(1).removable_carets() == std::vector<int>{1});
  CHECK(Tree::parse("((..)(..))", 2).removable_carets() == std::vector<int>{1, 3});
  CHECK(Tree::parse("((..)(..))", 2).contract_at(3) == Tree::parse("((..).)", 2));
  CHECK_THROWS(Tree::parse("((..).)", 2).contract_at(2));
}

TEST_CASE("leaf words and indices are inverse and ordered") {
  Rng rng(5);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 30; ++trial) {
      const Tree t = random_tree(d, uniform_int(rng, 0, 6), rng);
      const auto words = t.leaf_words();
      REQUIRE(static_cast<int>(words.size()) == t.leaf_count());
      for (int k = 1; k <= t.leaf_count(); ++k) {
        CHECK(t.leaf_index(t.leaf_word(k)) == k);
        CHECK(t.leaf_depth(k) == static_cast<int>(t.leaf_word(k).size()));
        if (k > 1) CHECK(words[static_cast<std::size_t>(k - 2)] < words[static_cast<std::size_t>(k - 1)]);
      }
    }
  }
  const Tree t = Tree::parse("(.(..))", 2);
  CHECK(t.leaf_words() == std::vector<Word>{"1", "21", "22"});
  CHECK_FALSE(t.leaf_index("2").has_value());
}

TEST_CASE("common expansion") {
  const Tree lam = Tree::caret(2);
  const auto same = common_expansion(lam, lam);
  CHECK(same.tree == lam);
  CHECK(same.path_first.empty());
  CHECK(same.path_second.empty());

  const auto c = common_expansion(lam.expand_at(1), lam.expand_at(2));
  CHECK(c.tree.str() == "((..)(..))");
  CHECK(c.path_first == ExpansionPath{3});
  CHECK(c.path_second == ExpansionPath{1});

  Rng rng(3);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Tree t = random_tree(d, uniform_int(rng, 0, 5), rng);
      const Tree u = random_tree(d, uniform_int(rng, 0, 5), rng);
      const auto e = common_expansion(t, u);
      CHECK(t.expand_along(e.path_first) == e.tree);
      CHECK(u.expand_along(e.path_second) == e.tree);
      CHECK(common_expansion(u, t).tree == e.tree);
      // Minimality: the caret count is that of the shape union, which never
      // exceeds the sum and is at least the max.
      CHECK(e.tree.caret_count() <= t.caret_count() + u.caret_count());
      CHECK(e.tree.caret_count() >= std::max(t.caret_count(), u.caret_count()));
      const auto from_leaf = common_expansion(Tree::leaf(d), t);
      CHECK(from_leaf.tree == t);
      CHECK(from_leaf.path_second.empty());
      CHECK(static_cast<int>(from_leaf.path_first.size()) == t.caret_count());
    }
  }
}

TEST_CASE("agree away from") {
  const Tree lam = Tree::caret(2);
  const auto same = agree_away_from(lam, lam);
  REQUIRE(same.has_value());
  CHECK(same->vertex == "1");

  CHECK_FALSE(agree_away_from(lam.expand_at(1), lam.expand_at(2)).has_value());

  // Caret with (.(..)) and ((..).) grafted at leaf 1.
  const Tree t = lam.graft("1", Tree::parse("(.(..))", 2));
  const Tree u = lam.graft("1", Tree::parse("((..).)", 2));
  const auto a = agree_away_from(t, u);
  REQUIRE(a.has_value());
  CHECK(a->vertex == "1");
  CHECK(a->prefix == lam);
  CHECK(a->prefix.graft(a->vertex, t.subtree(a->vertex)) == t);
  CHECK(a->prefix.graft(a->vertex, u.subtree(a->vertex)) == u);
}

TEST_CASE("enumeration matches the Fuss-Catalan numbers") {
  for (int d : {2, 3, 4}) {
    for (int c = 0; c <= 5; ++c) {
      const auto trees = enumerate_trees(d, c);
      CHECK(trees.size() == count_trees(d, c));
      CHECK(fuss_catalan(d, c) == count_trees(d, c));
      const std::set<Tree> distinct(trees.begin(), trees.end());
      CHECK(distinct.size() == trees.size());
      CHECK(std::is_sorted(trees.begin(), trees.end(), [](const Tree& a, const Tree& b) { return a.str() < b.str(); }));
    }
  }
  CHECK(fuss_catalan(2, 4) == 14);
  CHECK(fuss_catalan(3, 3) == 12);
}
