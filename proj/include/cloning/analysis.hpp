#pragma once

// Finite-scale experiments over balls of F_d: conjugate growth, normalizer
// tests, coset orbits, commuting pairs and the fixed-point-free suite.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cloning/cantor.hpp"
#include "cloning/properties.hpp"
#include "cloning/thompson.hpp"

namespace cloning {

struct BallLimits {
  std::size_t max_elements = 20000;
  int max_leaves = 40;
};

/// Reduced tree pairs [T, 1, U] with at most `radius` carets per tree.
struct FdBall {
  int radius = 0;
  std::vector<Element> elements;
  bool truncated = false;
};

FdBall enumerate_fd_ball(SystemPtr sys, int radius, const BallLimits& limits = {});

/// Reduced [T, g, U] with at most `radius` carets per tree and g ranging
/// over all of G_n. Throws UnsupportedError for infinite families.
std::vector<Element> enumerate_system_ball(SystemPtr sys, int radius, const BallLimits& limits = {});

/// Number of distinct f^-1 x f over f in the ball.
std::size_t conjugate_count(const Element& x, const FdBall& ball);

struct NormalizerVerdict {
  bool normalizes = true;
  std::optional<Element> witness;
  /// "x^-1 f x" or "x f x^-1" for the failing side.
  std::string side;
};

/// Checks x^-1 f x in F_d for every ball element f, and x f x^-1 unless one_sided.
NormalizerVerdict normalizes_up_to(const Element& x, const FdBall& ball, bool one_sided);

/// Number of distinct cosets (f x) F_d over f in the ball.
std::size_t coset_orbit_count(const Element& x, const FdBall& ball);

struct MixingWitness {
  Element x;
  Element f;
  bool commutes = false;
  bool f_nontrivial = false;
};

/// x = [R, g, R] and f = [R with `first` grafted at v, R with `second` grafted at v].
MixingWitness mixing_witness(SystemPtr sys, const Tree& r, const Word& v, const GroupElement& g, const Tree& first,
                             const Tree& second);

struct ExperimentReport {
  std::string experiment;
  std::string system;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::map<std::string, std::vector<long long>> series;
  std::vector<std::string> witnesses;
  bool pass = true;
  /// "exhaustive-proof" or "consistent-with-theorem".
  std::string label = "consistent-with-theorem";
  std::vector<std::string> notes;
  long long runtime_ms = 0;
};

struct FpfBounds {
  int max_n = 5;
  int max_m = 5;
  int conjugate_levels = 4;
  long samples = 20;
};

/// Runs the fixed-point-free checks on prod^n(G) with phi_1 = id, phi_2 = phi:
/// premise (phi^2 = 1, no nontrivial fixed points), non-diversity witnesses,
/// f_m = [T_1, T_n]^{m+1}, distinct conjugates f_{n_l}^-1 x f_{n_l}, and the
/// failure of uniformity.
ExperimentReport fpf_suite(const std::string& group, const std::string& phi, const FpfBounds& bounds,
                           std::uint64_t seed);

/// f_m = [T expanded m+1 times at leaf 1, T_n expanded at n+1, ..., n+m].
Element fpf_element(SystemPtr sys, const Tree& t, int m);

/// A sampled element outside F_d with both trees of at most `max_carets` carets.
Element sample_non_fd(SystemPtr sys, int max_carets, Rng& rng);

}  // namespace cloning
