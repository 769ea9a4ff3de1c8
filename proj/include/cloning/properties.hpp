#pragma once

// Exact axiom checks, property probes and diversity search for cloning systems.

#include <optional>
#include <string>
#include <vector>

#include "cloning/cloning_system.hpp"

namespace cloning {

struct AxiomCheck {
  bool holds = true;
  /// Human-readable description of the inputs when the identity fails.
  std::string detail;
};

/// C1: (gh)kappa_k = (g)kappa_{rho(h)k} (h)kappa_k.
AxiomCheck check_c1(const CloningSystem& sys, int n, const GroupElement& g, const GroupElement& h, int k);
/// C2 for k < l: kappa_l^n then kappa_k equals kappa_k^n then kappa_{l+d-1}.
AxiomCheck check_c2(const CloningSystem& sys, int n, const GroupElement& g, int k, int l);
/// C3 for i outside k..k+d-1: rho((g)kappa_k)(i) = (rho(g))varsigma_k(i).
AxiomCheck check_c3(const CloningSystem& sys, int n, const GroupElement& g, int k, int i);

struct AxiomReport {
  long checks = 0;
  bool exhaustive = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Runs C1-C3 for n = 1..max_n. Finite G_n are enumerated when `exhaustive`
/// is set; otherwise each axiom gets `samples` random inputs per level.
AxiomReport verify_axioms(const CloningSystem& sys, int max_n, bool exhaustive, long samples, Rng& rng);

enum class Property { Pure, SlightlyPure, FullyCompatible, Uniform };
enum class ProbeStatus { HoldsExhaustive, HoldsOnSamples, Counterexample };

Property parse_property(const std::string& text);
std::string to_string(Property p);
std::string to_string(ProbeStatus s);

struct ProbeResult {
  ProbeStatus status = ProbeStatus::HoldsOnSamples;
  long checked = 0;
  std::string counterexample;
};

/// Tests the property at level n. G_n is enumerated when finite and no larger
/// than `budget`; otherwise `budget` seeded samples are drawn.
ProbeResult probe_property(const CloningSystem& sys, Property prop, int n, long budget, Rng& rng);

/// x in Im kappa_k^n.
bool image_membership(const CloningSystem& sys, int n, int k, const GroupElement& x);

/// x lies in the image of every kappa_k^n, k = 1..n.
bool in_all_images(const CloningSystem& sys, int n, const GroupElement& x);

struct DiversityResult {
  std::optional<GroupElement> witness;
  /// True when the search covered all of Im kappa_1^n.
  bool exhaustive = false;
  long checked = 0;
};

/// Searches for a nontrivial element of the intersection of the images of
/// kappa_1^n..kappa_n^n.
DiversityResult diversity_witness(const CloningSystem& sys, int n, long budget, Rng& rng);

}  // namespace cloning
