#include "cloning/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace cloning {
namespace {

// Contracts carets of (T, g) that an expansion of [T, g, V] could have
// produced for some V; equal keys mean equal cosets [T, g, V] F_d.
std::string half_reduced_key(const Element& y) {
  const CloningSystem& sys = y.system();
  const int d = sys.arity();
  Tree t = y.left();
  GroupElement g = y.middle();
  for (bool changed = true; changed && t.leaf_count() > 1;) {
    changed = false;
    const int m = t.leaf_count() - d + 1;
    for (int k = 1; k <= m; ++k) {
      auto smaller = sys.try_unclone(m, k, g);
      if (!smaller) continue;
      const int j = sys.rho(m, *smaller)(k);
      if (!t.has_removable_caret_at(j)) continue;
      t = t.contract_at(j);
      g = std::move(*smaller);
      changed = true;
      break;
    }
  }
  return t.str() + "|" + sys.group().format(g);
}

}  // namespace

FdBall enumerate_fd_ball(SystemPtr sys, int radius, const BallLimits& limits) {
  if (radius < 0) throw std::out_of_range("ball radius must be non-negative");
  const int d = sys->arity();
  FdBall ball;
  ball.radius = radius;
  std::unordered_set<std::string> seen;
  for (int c = 0; c <= radius; ++c) {
    if (c * (d - 1) + 1 > limits.max_leaves) {
      ball.truncated = true;
      break;
    }
    const auto trees = enumerate_trees(d, c);
    const GroupElement one = sys->group().identity(c * (d - 1) + 1);
    for (const auto& t : trees) {
      for (const auto& u : trees) {
        if (ball.elements.size() >= limits.max_elements) {
          ball.truncated = true;
          return ball;
        }
        Element e(sys, {t, one, u});
        if (seen.insert(e.str()).second) ball.elements.push_back(std::move(e));
      }
    }
  }
  return ball;
}

std::vector<Element> enumerate_system_ball(SystemPtr sys, int radius, const BallLimits& limits) {
  const int d = sys->arity();
  std::vector<Element> out;
  std::unordered_set<std::string> seen;
  for (int c = 0; c <= radius && c * (d - 1) + 1 <= limits.max_leaves; ++c) {
    const auto trees = enumerate_trees(d, c);
    const auto middles = sys->group().enumerate(c * (d - 1) + 1);
    for (const auto& t : trees) {
      for (const auto& g : middles) {
        for (const auto& u : trees) {
          if (out.size() >= limits.max_elements) return out;
          Element e(sys, {t, g, u});
          if (seen.insert(e.str()).second) out.push_back(std::move(e));
        }
      }
    }
  }
  return out;
}

std::size_t conjugate_count(const Element& x, const FdBall& ball) {
  std::unordered_map<std::size_t, std::vector<Element>> buckets;
  std::size_t count = 0;
  for (const auto& f : ball.elements) {
    Element y = mul(mul(inv(f), x), f);
    auto& bucket = buckets[std::hash<Element>{}(y)];
    bool known = false;
    for (const auto& e : bucket) {
      if (e == y || equal_by_mul(e, y)) {
        known = true;
        break;
      }
    }
    if (!known) {
      bucket.push_back(std::move(y));
      ++count;
    }
  }
  return count;
}

NormalizerVerdict normalizes_up_to(const Element& x, const FdBall& ball, bool one_sided) {
  const Element xi = inv(x);
  for (const auto& f : ball.elements) {
    if (!in_Fd(mul(mul(xi, f), x))) return {false, f, "x^-1 f x"};
    if (!one_sided && !in_Fd(mul(mul(x, f), xi))) return {false, f, "x f x^-1"};
  }
  return {};
}

std::size_t coset_orbit_count(const Element& x, const FdBall& ball) {
  std::unordered_map<std::string, std::size_t> key_to_rep;
  std::vector<Element> reps;
  for (const auto& f : ball.elements) {
    Element y = mul(f, x);
    const std::string key = half_reduced_key(y);
    if (key_to_rep.count(key)) continue;
    std::optional<std::size_t> same;
    const Element yi = inv(y);
    for (std::size_t i = 0; i < reps.size() && !same; ++i) {
      if (in_Fd(mul(yi, reps[i]))) same = i;
    }
    if (same) {
      key_to_rep.emplace(key, *same);
    } else {
      key_to_rep.emplace(key, reps.size());
      reps.push_back(std::move(y));
    }
  }
  return reps.size();
}

MixingWitness mixing_witness(SystemPtr sys, const Tree& r, const Word& v, const GroupElement& g, const Tree& first,
                             const Tree& second) {
  if (!r.leaf_index(v)) throw std::invalid_argument("'" + v + "' is not a leaf of " + r.str());
  if (first.leaf_count() != second.leaf_count()) {
    throw std::invalid_argument("grafted trees must have the same number of leaves");
  }
  Element x(sys, {r, g, r});
  const Tree t = r.graft(v, first);
  const Tree u = r.graft(v, second);
  Element f(sys, {t, sys->group().identity(t.leaf_count()), u});
  const bool commutes = mul(x, f) == mul(f, x);
  const bool nontrivial = !f.is_identity();
  return {std::move(x), std::move(f), commutes, nontrivial};
}

Element fpf_element(SystemPtr sys, const Tree& t, int m) {
  if (m < 1) throw std::out_of_range("f_m needs m >= 1");
  const int n = t.leaf_count();
  Tree left = t;
  for (int i = 0; i <= m; ++i) left = left.expand_at(1);
  Tree right = t;
  for (int i = 0; i <= m; ++i) right = right.expand_at(n + i);
  GroupElement one = sys->group().identity(left.leaf_count());
  return Element(std::move(sys), {std::move(left), std::move(one), std::move(right)});
}

Element sample_non_fd(SystemPtr sys, int max_carets, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Element x = random_element(sys, max_carets, rng);
    if (!in_Fd(x)) return x;
  }
  throw std::runtime_error("no element outside F_d found in " + sys->name());
}

ExperimentReport fpf_suite(const std::string& group, const std::string& phi, const FpfBounds& bounds,
                           std::uint64_t seed) {
  ExperimentReport report;
  report.experiment = "fpf";
  report.system = "prod:" + group + ":id," + phi;
  report.seed = seed;
  report.params = {{"group", group},
                   {"phi", phi},
                   {"n", std::to_string(bounds.max_n)},
                   {"m", std::to_string(bounds.max_m)},
                   {"budget", std::to_string(bounds.samples)}};
  Rng rng(seed);

  const auto base = make_base_group(group);
  const Monomorphism mono = make_monomorphism(phi, *base);

  // Premise: phi is an involution without nontrivial fixed points.
  std::vector<BaseElement> probe;
  if (auto all = base->enumerate()) {
    probe = *all;
  } else {
    for (long i = 0; i < bounds.samples * 10; ++i) probe.push_back(base->sample(rng));
  }
  long premise_bad = 0;
  for (const auto& g : probe) {
    const BaseElement pg = mono.apply(g);
    if (!(mono.apply(pg) == g)) {
      ++premise_bad;
      report.notes.push_back("phi is not an involution at " + base->format(g));
    } else if (!base->is_identity(g) && pg == g) {
      ++premise_bad;
      report.notes.push_back("phi fixes " + base->format(g));
    }
    if (report.notes.size() >= 5) break;
  }
  report.series["premise_violations"] = {premise_bad};
  if (premise_bad > 0) {
    report.pass = false;
    report.notes.insert(report.notes.begin(), "premise failed: phi must be a fixed-point-free involution");
    return report;
  }

  const SystemPtr sys = make_system(report.system);

  // (a) non-diversity witnesses in every image.
  auto& found = report.series["witness_found"];
  for (int n = 1; n <= bounds.max_n; ++n) {
    const DiversityResult r = diversity_witness(*sys, n, bounds.samples, rng);
    found.push_back(r.witness ? 1 : 0);
    if (r.witness) {
      report.witnesses.push_back("n=" + std::to_string(n) + " " + sys->group().format(*r.witness));
    } else {
      report.pass = false;
      report.notes.push_back("no non-diversity witness at n=" + std::to_string(n));
    }
  }

  // (b) f_m = [T_1, T_n]^{m+1}.
  auto& fm = report.series["fm_matches"];
  for (int m = 1; m <= bounds.max_m; ++m) {
    long ok = 0;
    long total = 0;
    for (int c = 1; c <= 3; ++c) {
      for (const auto& t : enumerate_trees(2, c)) {
        const int n = t.leaf_count();
        const Element base_pair(sys, {t.expand_at(1), sys->group().identity(n + 1), t.expand_at(n)});
        ++total;
        if (fpf_element(sys, t, m) == pow(base_pair, m + 1)) ++ok;
      }
    }
    fm.push_back(ok);
    if (ok != total) {
      report.pass = false;
      report.notes.push_back("f_m mismatch at m=" + std::to_string(m));
    }
  }

  // (c) conjugates by f_{n_l}, n_l = (l-1)n + 1, are pairwise distinct.
  auto& distinct = report.series["distinct_conjugates"];
  for (long s = 0; s < bounds.samples; ++s) {
    Element x = Element::identity(sys);
    while (x.is_identity()) {
      const Tree t = random_tree(2, uniform_int(rng, 0, 3), rng);
      x = Element(sys, {t, sys->group().sample(t.leaf_count(), rng), t});
    }
    const int n = x.left().leaf_count();
    std::vector<Element> conj;
    bool all_distinct = true;
    for (int l = 1; l <= bounds.conjugate_levels; ++l) {
      const Element f = fpf_element(sys, x.left(), (l - 1) * n + 1);
      Element c = mul(mul(inv(f), x), f);
      for (const auto& e : conj) all_distinct = all_distinct && !(e == c);
      conj.push_back(std::move(c));
    }
    distinct.push_back(all_distinct ? 1 : 0);
    if (!all_distinct) {
      report.pass = false;
      report.witnesses.push_back("repeated conjugate of " + x.str());
    }
  }

  // (d) the system is not uniform.
  const ProbeResult uniform = probe_property(*sys, Property::Uniform, 1, std::max<long>(bounds.samples, 50), rng);
  report.series["uniform_counterexample"] = {uniform.status == ProbeStatus::Counterexample ? 1 : 0};
  if (uniform.status == ProbeStatus::Counterexample) {
    report.witnesses.push_back("uniformity fails: " + uniform.counterexample);
  } else {
    report.pass = false;
    report.notes.push_back("no uniformity counterexample found");
  }
  return report;
}

}  // namespace cloning
