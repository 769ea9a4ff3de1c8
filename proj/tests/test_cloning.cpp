#include <map>

#include "cloning/properties.hpp"
#include "doctest.h"

using namespace cloning;

namespace {

// Standard clone via sub-points: point k splits into (k,0..d-1), every other
// point i stays (i,0); both sides are numbered in lexicographic order.
Permutation clone_by_subpoints(const Permutation& s, int k, int d) {
  std::map<std::pair<int, int>, int> dom;
  std::map<std::pair<int, int>, int> cod;
  for (int i = 1; i <= s.size(); ++i) {
    const int width = i == k ? d : 1;
    for (int j = 0; j < width; ++j) {
      dom[{i, j}] = 0;
      cod[{s(i), j}] = 0;
    }
  }
  int pos = 0;
  for (auto& [key, v] : dom) v = ++pos;
  pos = 0;
  for (auto& [key, v] : cod) v = ++pos;
  std::vector<int> images(dom.size());
  for (const auto& [key, v] : dom) images[static_cast<std::size_t>(v - 1)] = cod.at({s(key.first), key.second});
  return Permutation(images);
}

}  // namespace

TEST_CASE("standard symmetric clone") {
  const Permutation c123 = Permutation::cycle(3, {1, 2, 3});
  CHECK(standard_symmetric_clone(c123, 3, 3) == Permutation::cycle(5, {1, 4, 2, 5, 3}));
  CHECK(standard_symmetric_clone(Permutation::cycle(2, {1, 2}), 1, 2) == Permutation::cycle(3, {1, 2, 3}));
  CHECK(standard_symmetric_clone(Permutation::identity(4), 2, 3).is_identity());
  CHECK_THROWS_AS(standard_symmetric_clone(c123, 4, 2), std::out_of_range);

  const PermutationFamily sym(PermutationFamily::Kind::Symmetric);
  for (int d : {2, 3}) {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& g : sym.enumerate(n)) {
        const Permutation& s = as_permutation(g);
        for (int k = 1; k <= n; ++k) {
          const Permutation c = standard_symmetric_clone(s, k, d);
          CHECK(c == clone_by_subpoints(s, k, d));
          CHECK(standard_symmetric_unclone(c, k, d) == s);
        }
      }
    }
  }
  CHECK_FALSE(standard_symmetric_unclone(Permutation::cycle(3, {1, 2}), 1, 2).has_value());
}

TEST_CASE("registry") {
  CHECK(make_system("V")->arity() == 2);
  CHECK(make_system("T:3")->arity() == 3);
  CHECK(make_system("prod:Z3:id,inv")->arity() == 2);
  CHECK(make_system("psi:F2:id,swap,id")->arity() == 3);
  CHECK_THROWS_AS(make_system("W"), std::invalid_argument);
  CHECK_THROWS_AS(make_system("prod:Z3:swap,id"), std::invalid_argument);
  CHECK_THROWS_AS(make_system("V:1"), std::invalid_argument);
}

TEST_CASE("axioms hold exhaustively on permutation systems") {
  Rng rng(1);
  for (const char* key : {"F", "T", "V", "Vhat", "F:3", "T:3", "V:3", "Vhat:3"}) {
    INFO(key);
    const SystemPtr sys = make_system(key);
    const AxiomReport r = verify_axioms(*sys, 4, true, 0, rng);
    CHECK(r.exhaustive);
    CHECK(r.ok());
    CHECK(r.checks > 0);
  }
}

TEST_CASE("axioms hold on tuple systems") {
  Rng rng(2);
  for (const char* key : {"prod:Z3:id,id", "prod:Z3:id,inv", "psi:Z3:id,inv", "prod:F2:id,swap", "psi:F2:swap,id",
                          "prod:Z5:inv,id,inv"}) {
    INFO(key);
    const SystemPtr sys = make_system(key);
    const AxiomReport r = verify_axioms(*sys, 6, false, 100, rng);
    CHECK(r.ok());
  }
}

TEST_CASE("clone properties on sampled inputs") {
  Rng rng(4);
  for (const char* key : {"V", "Vhat:3", "T", "prod:F2:id,swap", "psi:Z3:id,inv"}) {
    INFO(key);
    const SystemPtr sys = make_system(key);
    const auto& G = sys->group();
    const int d = sys->arity();
    for (int trial = 0; trial < 100; ++trial) {
      const int n = uniform_int(rng, 1, 6);
      const int k = uniform_int(rng, 1, n);
      const GroupElement g = G.sample(n, rng);
      const GroupElement c = sys->clone(n, k, g);
      CHECK(G.contains(n + d - 1, c));
      CHECK(sys->try_unclone(n, k, c) == g);
      // ((g)kappa_k)^-1 = (g^-1)kappa_{rho(g)k}
      CHECK(G.inv(c) == sys->clone(n, sys->rho(n, g)(k), G.inv(g)));
      CHECK(G.is_identity(sys->clone(n, k, G.identity(n))));
    }
  }
  const SystemPtr vhat = make_system("Vhat");
  CHECK_FALSE(vhat->try_unclone(2, 1, Permutation::cycle(3, {1, 2, 3})).has_value());
}

TEST_CASE("property probes") {
  Rng rng(6);
  const SystemPtr v = make_system("V");
  CHECK(probe_property(*v, Property::FullyCompatible, 4, 1000, rng).status == ProbeStatus::HoldsExhaustive);
  const ProbeResult pure = probe_property(*v, Property::Pure, 3, 1000, rng);
  CHECK(pure.status == ProbeStatus::Counterexample);
  CHECK_FALSE(pure.counterexample.empty());

  const SystemPtr vhat = make_system("Vhat");
  CHECK(probe_property(*vhat, Property::SlightlyPure, 4, 1000, rng).status == ProbeStatus::HoldsExhaustive);
  CHECK(probe_property(*vhat, Property::Pure, 4, 1000, rng).status == ProbeStatus::Counterexample);
  CHECK(probe_property(*make_system("T"), Property::SlightlyPure, 3, 1000, rng).status ==
        ProbeStatus::Counterexample);

  const SystemPtr fpf = make_system("prod:F2:id,swap");
  const ProbeResult u = probe_property(*fpf, Property::Uniform, 2, 200, rng);
  CHECK(u.status == ProbeStatus::Counterexample);
  CHECK(probe_property(*make_system("prod:F2:id,id"), Property::Uniform, 3, 200, rng).status ==
        ProbeStatus::HoldsOnSamples);
  CHECK(probe_property(*make_system("prod:Z3:id,id"), Property::Pure, 3, 200, rng).status ==
        ProbeStatus::HoldsExhaustive);

  CHECK(parse_property("slightly-pure") == Property::SlightlyPure);
  CHECK_THROWS_AS(parse_property("pur"), std::invalid_argument);
}

TEST_CASE("the uniformity failure matches the stated tuples") {
  // (g1, g2)(kappa_2 o kappa_2) = (g1, g2, phi g2, phi g2) while
  // (g1, g2)(kappa_2 o kappa_3) = (g1, g2, phi g2, g2).
  const SystemPtr sys = make_system("prod:F2:id,swap");
  const auto& G = sys->group();
  const GroupElement g = G.parse(2, "(ab,aab)");
  const GroupElement once = sys->clone(2, 2, g);
  CHECK(G.format(sys->clone(3, 2, once)) == "(ab,aab,bba,bba)");
  CHECK(G.format(sys->clone(3, 3, once)) == "(ab,aab,bba,aab)");
}

TEST_CASE("image membership") {
  const SystemPtr prod = make_system("prod:Z3:id,id");
  const auto& G = prod->group();
  for (int k = 1; k <= 3; ++k) {
    CHECK(image_membership(*prod, 3, k, G.identity(4)));
    CHECK(image_membership(*prod, 3, k, G.parse(4, "(2,2,2,2)")));
  }
  CHECK(in_all_images(*prod, 3, G.parse(4, "(1,1,1,1)")));
  const SystemPtr psi = make_system("psi:Z3:id,id");
  CHECK_FALSE(image_membership(*psi, 3, 1, psi->group().parse(4, "(0,1,0,0)")));
}

TEST_CASE("diversity") {
  Rng rng(8);
  const DiversityResult v = diversity_witness(*make_system("V"), 3, 1000, rng);
  CHECK(v.exhaustive);
  CHECK_FALSE(v.witness.has_value());

  for (int n = 1; n <= 3; ++n) {
    const DiversityResult psi = diversity_witness(*make_system("psi:Z3:id,id"), n, 100000, rng);
    CHECK(psi.exhaustive);
    CHECK_FALSE(psi.witness.has_value());
  }

  const SystemPtr prod = make_system("prod:Z3:id,id");
  const DiversityResult p = diversity_witness(*prod, 3, 1000, rng);
  REQUIRE(p.witness.has_value());
  CHECK(in_all_images(*prod, 3, *p.witness));
  CHECK_FALSE(prod->group().is_identity(*p.witness));

  // Alternating witnesses for the fixed-point-free system, both parities.
  const SystemPtr fpf = make_system("prod:F2:id,swap");
  for (int n : {3, 4, 5}) {
    const DiversityResult f = diversity_witness(*fpf, n, 200, rng);
    REQUIRE(f.witness.has_value());
    CHECK(in_all_images(*fpf, n, *f.witness));
  }
}
