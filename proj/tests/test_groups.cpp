#include "cloning/groups.hpp"
#include "doctest.h"

using namespace cloning;

TEST_CASE("permutation algebra") {
  const Permutation a = Permutation::cycle(3, {1, 2, 3});
  const Permutation b = Permutation::cycle(3, {1, 2});
  CHECK(a.str() == "[2,3,1]");
  CHECK((a * b)(1) == a(b(1)));
  CHECK((a * b).str() == "[3,2,1]");
  CHECK((a * a.inverse()).is_identity());
  CHECK(Permutation::parse("[2,3,1]") == a);
  CHECK(a.cycle_str() == "(1 2 3)");
  CHECK(Permutation::identity(4).cycle_str() == "()");
  CHECK_THROWS_AS(Permutation({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS(Permutation::parse("[1,3]"));
}

TEST_CASE("free reduction") {
  CHECK(free_reduce("aA").is_identity());
  CHECK(free_reduce("abBa").letters() == "aa");
  CHECK(free_reduce("abAaBA").is_identity());
  CHECK(free_reduce("1").str() == "1");
  CHECK(free_reduce(free_reduce("baABab").letters()) == free_reduce("baABab"));
  CHECK_THROWS(free_reduce("abc"));
}

TEST_CASE("monomorphisms") {
  const auto f2 = make_base_group("F2");
  const Monomorphism swap = make_monomorphism("swap", *f2);
  CHECK(std::get<FreeWord>(swap.apply(free_reduce("ab"))).letters() == "ba");
  CHECK(std::get<FreeWord>(swap.apply(free_reduce("abA"))).letters() == "baB");

  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const BaseElement g = f2->sample(rng);
    const BaseElement h = f2->sample(rng);
    CHECK(swap.apply(swap.apply(g)) == g);
    CHECK(swap.apply(f2->mul(g, h)) == f2->mul(swap.apply(g), swap.apply(h)));
    CHECK(swap.try_preimage(swap.apply(g)) == g);
    if (!f2->is_identity(g)) CHECK_FALSE(swap.apply(g) == g);
  }

  for (int m : {3, 5, 7}) {
    const auto zm = make_base_group("Z" + std::to_string(m));
    const Monomorphism inv = make_monomorphism("inv", *zm);
    for (const auto& g : *zm->enumerate()) {
      CHECK(std::get<Residue>(inv.apply(g)).value == (m - std::get<Residue>(g).value) % m);
      if (!zm->is_identity(g)) CHECK_FALSE(inv.apply(g) == g);
    }
  }
  // Inversion has fixed points on 2-torsion.
  const auto z2 = make_base_group("Z2");
  const Monomorphism inv2 = make_monomorphism("inv", *z2);
  CHECK(inv2.apply(Residue{1, 2}) == BaseElement{Residue{1, 2}});

  CHECK_THROWS(make_monomorphism("swap", *make_base_group("Z3")));
  CHECK_THROWS(make_base_group("Q8"));
}

TEST_CASE("permutation family sizes") {
  CHECK(PermutationFamily(PermutationFamily::Kind::Symmetric).enumerate(3).size() == 6);
  CHECK(PermutationFamily(PermutationFamily::Kind::FixLast).enumerate(4).size() == 6);
  CHECK(PermutationFamily(PermutationFamily::Kind::Cyclic).enumerate(3).size() == 3);
  CHECK(PermutationFamily(PermutationFamily::Kind::Trivial).enumerate(5).size() == 1);
  for (const auto& g : PermutationFamily(PermutationFamily::Kind::FixLast).enumerate(4)) {
    CHECK(as_permutation(g)(4) == 4);
  }
}

TEST_CASE("group axioms on every family") {
  Rng rng(23);
  const auto z3 = make_base_group("Z3");
  const auto f2 = make_base_group("F2");
  std::vector<std::unique_ptr<GroupFamily>> families;
  families.push_back(std::make_unique<PermutationFamily>(PermutationFamily::Kind::Symmetric));
  families.push_back(std::make_unique<PermutationFamily>(PermutationFamily::Kind::Cyclic));
  families.push_back(std::make_unique<PermutationFamily>(PermutationFamily::Kind::FixLast));
  families.push_back(std::make_unique<TupleFamily>(z3, false));
  families.push_back(std::make_unique<TupleFamily>(z3, true));
  families.push_back(std::make_unique<TupleFamily>(f2, false));
  families.push_back(std::make_unique<TupleFamily>(f2, true));
  for (const auto& fam : families) {
    INFO(fam->name());
    for (int n = 1; n <= 5; ++n) {
      const GroupElement e = fam->identity(n);
      for (int i = 0; i < 30; ++i) {
        const GroupElement a = fam->sample(n, rng);
        const GroupElement b = fam->sample(n, rng);
        const GroupElement c = fam->sample(n, rng);
        CHECK(fam->contains(n, a));
        CHECK(fam->contains(n, fam->mul(a, b)));
        CHECK(fam->mul(fam->mul(a, b), c) == fam->mul(a, fam->mul(b, c)));
        CHECK(fam->mul(a, e) == a);
        CHECK(fam->mul(e, a) == a);
        CHECK(fam->is_identity(fam->mul(a, fam->inv(a))));
        CHECK(fam->parse(n, fam->format(a)) == a);
        CHECK(fam->hash(a) == fam->hash(fam->parse(n, fam->format(a))));
      }
    }
  }
  CHECK_THROWS_AS(TupleFamily(f2, false).enumerate(2), UnsupportedError);
  CHECK(TupleFamily(z3, true).enumerate(3).size() == 9);
  CHECK(TupleFamily(z3, true).format(TupleFamily(z3, true).identity(3)) == "(0,0,0)");
  CHECK_FALSE(TupleFamily(z3, true).contains(2, TupleFamily(z3, false).parse(2, "(1,0)")));
}
