#include "cloning/properties.hpp"

#include <stdexcept>

namespace cloning {
namespace {

std::string fmt(const CloningSystem& sys, const GroupElement& g) { return sys.group().format(g); }

// Enumerated G_n when finite and at most `limit` elements, otherwise nullopt.
std::optional<std::vector<GroupElement>> small_enumeration(const CloningSystem& sys, int n, long limit) {
  if (!sys.group().is_finite()) return std::nullopt;
  try {
    auto all = sys.group().enumerate(n);
    if (static_cast<long>(all.size()) > limit) return std::nullopt;
    return all;
  } catch (const UnsupportedError&) {
    return std::nullopt;
  }
}

void record(AxiomReport& report, const AxiomCheck& c) {
  ++report.checks;
  if (!c.holds && report.failures.size() < 20) report.failures.push_back(c.detail);
}

std::optional<std::string> probe_one(const CloningSystem& sys, Property prop, int n, const GroupElement& g) {
  const int d = sys.arity();
  const Permutation r = sys.rho(n, g);
  switch (prop) {
    case Property::Pure:
      if (!r.is_identity()) return "rho_" + std::to_string(n) + "(" + fmt(sys, g) + ") = " + r.str();
      return std::nullopt;
    case Property::SlightlyPure:
      if (r(n) != n) return "rho_" + std::to_string(n) + "(" + fmt(sys, g) + ") moves " + std::to_string(n);
      return std::nullopt;
    case Property::FullyCompatible:
      for (int k = 1; k <= n; ++k) {
        const Permutation lhs = sys.rho(n + d - 1, sys.clone(n, k, g));
        const Permutation rhs = standard_symmetric_clone(r, k, d);
        if (lhs != rhs) {
          return "g=" + fmt(sys, g) + " k=" + std::to_string(k) + ": rho(clone) = " + lhs.str() +
                 " but standard clone = " + rhs.str();
        }
      }
      return std::nullopt;
    case Property::Uniform:
      for (int k = 1; k <= n; ++k) {
        const GroupElement once = sys.clone(n, k, g);
        const GroupElement first = sys.clone(n + d - 1, k, once);
        for (int l = k + 1; l <= k + d - 1; ++l) {
          const GroupElement other = sys.clone(n + d - 1, l, once);
          if (!(other == first)) {
            return "g=" + fmt(sys, g) + " k=" + std::to_string(k) + ": cloning at " + std::to_string(k) +
                   " gives " + fmt(sys, first) + ", at " + std::to_string(l) + " gives " + fmt(sys, other);
          }
        }
      }
      return std::nullopt;
  }
  return std::nullopt;
}

// Hard-coded candidates for tuple systems: constant tuples and tuples
// alternating between g and phi_d(g).
std::vector<GroupElement> tuple_candidates(const ProductSystem& sys, int len, const BaseElement& g) {
  Tuple constant;
  Tuple alternating;
  const BaseElement phi_g = sys.monomorphisms().back().apply(g);
  for (int i = 0; i < len; ++i) {
    constant.entries.push_back(g);
    alternating.entries.push_back(i % 2 == 0 ? g : phi_g);
  }
  return {constant, alternating};
}

}  // namespace

AxiomCheck check_c1(const CloningSystem& sys, int n, const GroupElement& g, const GroupElement& h, int k) {
  const auto& G = sys.group();
  const GroupElement lhs = sys.clone(n, k, G.mul(g, h));
  const GroupElement rhs = G.mul(sys.clone(n, sys.rho(n, h)(k), g), sys.clone(n, k, h));
  if (lhs == rhs) return {};
  return {false, "C1 n=" + std::to_string(n) + " k=" + std::to_string(k) + " g=" + fmt(sys, g) +
                     " h=" + fmt(sys, h) + ": " + fmt(sys, lhs) + " != " + fmt(sys, rhs)};
}

AxiomCheck check_c2(const CloningSystem& sys, int n, const GroupElement& g, int k, int l) {
  if (!(1 <= k && k < l && l <= n)) throw std::out_of_range("C2 needs 1 <= k < l <= n");
  const int d = sys.arity();
  const GroupElement lhs = sys.clone(n + d - 1, k, sys.clone(n, l, g));
  const GroupElement rhs = sys.clone(n + d - 1, l + d - 1, sys.clone(n, k, g));
  if (lhs == rhs) return {};
  return {false, "C2 n=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                     " g=" + fmt(sys, g) + ": " + fmt(sys, lhs) + " != " + fmt(sys, rhs)};
}

AxiomCheck check_c3(const CloningSystem& sys, int n, const GroupElement& g, int k, int i) {
  const int d = sys.arity();
  if (i < 1 || i > n + d - 1 || (i >= k && i <= k + d - 1)) {
    throw std::out_of_range("C3 needs i in 1..n+d-1 outside the cloned block");
  }
  const int lhs = sys.rho(n + d - 1, sys.clone(n, k, g))(i);
  const int rhs = standard_symmetric_clone(sys.rho(n, g), k, d)(i);
  if (lhs == rhs) return {};
  return {false, "C3 n=" + std::to_string(n) + " k=" + std::to_string(k) + " i=" + std::to_string(i) +
                     " g=" + fmt(sys, g) + ": " + std::to_string(lhs) + " != " + std::to_string(rhs)};
}

AxiomReport verify_axioms(const CloningSystem& sys, int max_n, bool exhaustive, long samples, Rng& rng) {
  AxiomReport report;
  report.exhaustive = exhaustive;
  const int d = sys.arity();
  const auto& G = sys.group();
  for (int n = 1; n <= max_n; ++n) {
    std::optional<std::vector<GroupElement>> all;
    if (exhaustive) all = small_enumeration(sys, n, 5040);
    if (all) {
      for (const auto& g : *all) {
        for (int k = 1; k <= n; ++k) {
          for (const auto& h : *all) record(report, check_c1(sys, n, g, h, k));
          for (int l = k + 1; l <= n; ++l) record(report, check_c2(sys, n, g, k, l));
          for (int i = 1; i <= n + d - 1; ++i) {
            if (i < k || i > k + d - 1) record(report, check_c3(sys, n, g, k, i));
          }
        }
      }
      continue;
    }
    report.exhaustive = false;
    for (long s = 0; s < samples; ++s) {
      const GroupElement g = G.sample(n, rng);
      const GroupElement h = G.sample(n, rng);
      const int k = uniform_int(rng, 1, n);
      record(report, check_c1(sys, n, g, h, k));
      if (n >= 2) {
        const int a = uniform_int(rng, 1, n - 1);
        const int b = uniform_int(rng, a + 1, n);
        record(report, check_c2(sys, n, g, a, b));
      }
      if (n + d - 1 > d) {
        int i = uniform_int(rng, 1, n - 1);
        if (i >= k) i += d;
        record(report, check_c3(sys, n, g, k, i));
      }
    }
  }
  return report;
}

Property parse_property(const std::string& text) {
  if (text == "pure") return Property::Pure;
  if (text == "slightly_pure" || text == "slightly-pure") return Property::SlightlyPure;
  if (text == "fully_compatible" || text == "fully-compatible") return Property::FullyCompatible;
  if (text == "uniform") return Property::Uniform;
  throw std::invalid_argument("unknown property '" + text +
                              "' (expected pure, slightly_pure, fully_compatible, uniform)");
}

std::string to_string(Property p) {
  switch (p) {
    case Property::Pure: return "pure";
    case Property::SlightlyPure: return "slightly_pure";
    case Property::FullyCompatible: return "fully_compatible";
    case Property::Uniform: return "uniform";
  }
  return "?";
}

std::string to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::HoldsExhaustive: return "holds-exhaustive";
    case ProbeStatus::HoldsOnSamples: return "holds-on-samples";
    case ProbeStatus::Counterexample: return "counterexample";
  }
  return "?";
}

ProbeResult probe_property(const CloningSystem& sys, Property prop, int n, long budget, Rng& rng) {
  ProbeResult result;
  auto try_one = [&](const GroupElement& g) {
    ++result.checked;
    if (auto bad = probe_one(sys, prop, n, g)) {
      result.status = ProbeStatus::Counterexample;
      result.counterexample = *bad;
      return false;
    }
    return true;
  };
  if (auto all = small_enumeration(sys, n, budget)) {
    for (const auto& g : *all) {
      if (!try_one(g)) return result;
    }
    result.status = ProbeStatus::HoldsExhaustive;
    return result;
  }
  for (long s = 0; s < budget; ++s) {
    if (!try_one(sys.group().sample(n, rng))) return result;
  }
  result.status = ProbeStatus::HoldsOnSamples;
  return result;
}

bool image_membership(const CloningSystem& sys, int n, int k, const GroupElement& x) {
  return sys.try_unclone(n, k, x).has_value();
}

bool in_all_images(const CloningSystem& sys, int n, const GroupElement& x) {
  for (int k = 1; k <= n; ++k) {
    if (!image_membership(sys, n, k, x)) return false;
  }
  return true;
}

DiversityResult diversity_witness(const CloningSystem& sys, int n, long budget, Rng& rng) {
  if (n < 1) throw std::out_of_range("diversity_witness needs n >= 1");
  DiversityResult result;
  const auto& G = sys.group();
  auto test = [&](const GroupElement& x) {
    ++result.checked;
    if (!G.is_identity(x) && in_all_images(sys, n, x)) {
      result.witness = x;
      return true;
    }
    return false;
  };

  // The intersection sits inside Im kappa_1, so enumerating G_n is exhaustive.
  if (auto all = small_enumeration(sys, n, budget)) {
    result.exhaustive = true;
    for (const auto& g : *all) {
      if (test(sys.clone(n, 1, g))) return result;
    }
    return result;
  }

  const int d = sys.arity();
  if (const auto* prod = dynamic_cast<const ProductSystem*>(&sys)) {
    const BaseGroup& base = prod->tuples().base();
    std::vector<BaseElement> seeds;
    if (auto elems = base.enumerate()) {
      seeds = *elems;
    } else {
      seeds = {base.parse("a"), base.parse("b"), base.parse("ab")};
    }
    for (const auto& g : seeds) {
      if (base.is_identity(g)) continue;
      for (const auto& x : tuple_candidates(*prod, n + d - 1, g)) {
        if (test(x)) return result;
      }
    }
  }
  for (long s = 0; s < budget; ++s) {
    if (test(sys.clone(n, 1, G.sample(n, rng)))) return result;
  }
  return result;
}

}  // namespace cloning
