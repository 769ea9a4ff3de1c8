#include <set>

#include "cloning/analysis.hpp"
#include "doctest.h"

using namespace cloning;

namespace {

// Ball size computed in the Cantor model: distinct normalized rule tables
// over all pairs of trees with the same caret count.
std::size_t ball_size_by_maps(const SystemPtr& sys, int radius) {
  std::set<std::string> tables;
  const int d = sys->arity();
  for (int c = 0; c <= radius; ++c) {
    const auto trees = enumerate_trees(d, c);
    for (const auto& t : trees) {
      for (const auto& u : trees) {
        std::vector<Rule> rules;
        for (int i = 1; i <= u.leaf_count(); ++i) rules.push_back({u.leaf_word(i), t.leaf_word(i), {}});
        tables.insert(normalize(PrefixMap(d, Automaton::trivial(d), rules)).str());
      }
    }
  }
  return tables.size();
}

std::size_t conjugates_by_maps(const Element& x, const FdBall& ball) {
  std::set<std::string> tables;
  const PrefixMap fx = from_tree_pair(x);
  for (const auto& f : ball.elements) {
    const PrefixMap ff = from_tree_pair(f);
    tables.insert(normalize(compose(invert(ff), compose(fx, ff))).str());
  }
  return tables.size();
}

std::size_t cosets_naive(const Element& x, const FdBall& ball) {
  std::vector<Element> reps;
  for (const auto& f : ball.elements) {
    const Element y = mul(f, x);
    bool known = false;
    for (const auto& r : reps) known = known || in_Fd(mul(inv(r), y));
    if (!known) reps.push_back(y);
  }
  return reps.size();
}

Element tuple_element(const SystemPtr& sys, const char* tree, const char* g) {
  const Tree t = Tree::parse(tree, sys->arity());
  return Element(sys, {t, sys->group().parse(t.leaf_count(), g), t});
}

}  // namespace

TEST_CASE("F_d balls") {
  for (int d : {2, 3}) {
    const SystemPtr f = make_system("F:" + std::to_string(d));
    CHECK(enumerate_fd_ball(f, 0).elements.size() == 1);
    CHECK(enumerate_fd_ball(f, 1).elements.size() == 1);
    for (int radius = 2; radius <= 4; ++radius) {
      const FdBall ball = enumerate_fd_ball(f, radius);
      CHECK_FALSE(ball.truncated);
      CHECK(ball.elements.size() == ball_size_by_maps(f, radius));
      std::set<std::string> texts;
      for (const auto& e : ball.elements) texts.insert(e.str());
      for (const auto& e : ball.elements) CHECK(texts.count(inv(e).str()) == 1);
      CHECK(texts.count(Element::identity(f).str()) == 1);
    }
  }
  const SystemPtr f2 = make_system("F");
  const FdBall b2 = enumerate_fd_ball(f2, 2);
  CHECK(b2.elements.size() == 3);
  std::set<std::string> texts;
  for (const auto& e : b2.elements) texts.insert(e.str());
  CHECK(texts.count(fd_generator(f2, 0).str()) == 1);
  CHECK(texts.count(inv(fd_generator(f2, 0)).str()) == 1);

  BallLimits tight;
  tight.max_elements = 10;
  CHECK(enumerate_fd_ball(f2, 4, tight).truncated);
}

TEST_CASE("conjugate counts") {
  const SystemPtr v = make_system("V");
  const Element swap = parse_element(v, "[(..) ; [2,1] ; (..)]");
  std::vector<std::size_t> counts;
  for (int radius = 1; radius <= 4; ++radius) {
    const FdBall ball = enumerate_fd_ball(v, radius);
    counts.push_back(conjugate_count(swap, ball));
    CHECK(counts.back() == conjugates_by_maps(swap, ball));
    CHECK(conjugate_count(Element::identity(v), ball) == 1);
  }
  for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] > counts[i - 1]);

  const SystemPtr prod = make_system("prod:Z3:id,id");
  const Element fixed = tuple_element(prod, ".", "(1)");
  for (int radius = 1; radius <= 4; ++radius) CHECK(conjugate_count(fixed, enumerate_fd_ball(prod, radius)) == 1);
}

TEST_CASE("normalizer tests") {
  const SystemPtr prod = make_system("prod:Z3:id,id");
  const FdBall ball = enumerate_fd_ball(prod, 3);
  CHECK(normalizes_up_to(tuple_element(prod, "((..).)", "(2,2,2)"), ball, false).normalizes);
  CHECK(normalizes_up_to(fd_generator(prod, 1), ball, false).normalizes);
  const NormalizerVerdict bad = normalizes_up_to(tuple_element(prod, "(..)", "(1,0)"), ball, false);
  CHECK_FALSE(bad.normalizes);
  REQUIRE(bad.witness.has_value());
  CHECK(in_Fd(*bad.witness));

  const SystemPtr v = make_system("V");
  const NormalizerVerdict vs = normalizes_up_to(parse_element(v, "[(..) ; [2,1] ; (..)]"), enumerate_fd_ball(v, 3), true);
  CHECK_FALSE(vs.normalizes);
  CHECK(vs.side == "x^-1 f x");
}

TEST_CASE("coset orbits") {
  const SystemPtr v = make_system("V");
  const Element swap = parse_element(v, "[(..) ; [2,1] ; (..)]");
  std::vector<std::size_t> counts;
  for (int radius = 1; radius <= 3; ++radius) {
    const FdBall ball = enumerate_fd_ball(v, radius);
    counts.push_back(coset_orbit_count(swap, ball));
    CHECK(counts.back() == cosets_naive(swap, ball));
    CHECK(coset_orbit_count(fd_generator(v, 0), ball) == 1);
  }
  for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] > counts[i - 1]);

  Rng rng(13);
  const SystemPtr psi = make_system("psi:Z3:id,inv");
  for (int trial = 0; trial < 5; ++trial) {
    const Element x = sample_non_fd(psi, 2, rng);
    const FdBall ball = enumerate_fd_ball(psi, 3);
    CHECK(coset_orbit_count(x, ball) == cosets_naive(x, ball));
  }

  const SystemPtr prod = make_system("prod:Z3:id,id");
  const Element fixed = tuple_element(prod, ".", "(2)");
  for (int radius = 1; radius <= 3; ++radius) CHECK(coset_orbit_count(fixed, enumerate_fd_ball(prod, radius)) == 1);
}

TEST_CASE("commuting pair") {
  const Tree caret = Tree::caret(2);
  const Tree first = Tree::parse("(.(..))", 2);
  const Tree second = Tree::parse("((..).)", 2);
  for (const char* key : {"psi:Z3:id,id", "psi:Z3:id,inv", "prod:Z3:id,id", "prod:F2:id,swap"}) {
    INFO(key);
    const SystemPtr sys = make_system(key);
    const GroupElement g = sys->group().parse(2, std::string(key).find("F2") == std::string::npos ? "(0,1)" : "(1,ab)");
    const MixingWitness w = mixing_witness(sys, caret, "1", g, first, second);
    CHECK(w.commutes);
    CHECK(w.f_nontrivial);
    CHECK_FALSE(in_Fd(w.x));
    CHECK(in_Fd(w.f));
    CHECK(w.f.left().str() == "((.(..)).)");
    CHECK(w.f.right().str() == "(((..).).)");
  }
  const SystemPtr psi = make_system("psi:Z3:id,id");
  const MixingWitness trivial = mixing_witness(psi, caret, "1", psi->group().identity(2), first, second);
  CHECK(in_Fd(trivial.x));
  CHECK(trivial.commutes);
}

TEST_CASE("fixed-point-free suite") {
  FpfBounds bounds;
  bounds.max_n = 4;
  bounds.max_m = 4;
  const ExperimentReport z3 = fpf_suite("Z3", "inv", bounds, 1);
  CHECK(z3.pass);
  CHECK(z3.series.at("premise_violations") == std::vector<long long>{0});
  const ExperimentReport f2 = fpf_suite("F2", "swap", bounds, 2);
  CHECK(f2.pass);
  const ExperimentReport z2 = fpf_suite("Z2", "inv", bounds, 3);
  CHECK_FALSE(z2.pass);
  CHECK(z2.series.at("premise_violations").front() > 0);

  const SystemPtr sys = make_system("prod:Z3:id,inv");
  for (const char* text : {"(..)", "(.(..))", "((..)(..))"}) {
    const Tree t = Tree::parse(text, 2);
    const int n = t.leaf_count();
    const Element base(sys, {t.expand_at(1), sys->group().identity(n + 1), t.expand_at(n)});
    for (int m = 1; m <= 4; ++m) CHECK(fpf_element(sys, t, m) == pow(base, m + 1));
  }
}
