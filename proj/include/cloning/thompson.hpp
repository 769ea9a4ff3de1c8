#pragma once

// Elements [T, g, U] of the Thompson-like group of a cloning system.
//
// U is the domain tree and T the range tree; expanding at leaf k of U puts a
// caret on leaf rho(g)(k) of T and replaces g by (g)kappa_k. Products follow
// [T, g, U][U, h, W] = [T, gh, W].

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cloning/cloning_system.hpp"
#include "cloning/tree.hpp"

namespace cloning {

struct Triple {
  Tree left;
  GroupElement middle;
  Tree right;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Throws std::invalid_argument if leaf counts differ or g is not in G_n.
void validate_triple(const CloningSystem& sys, const Triple& t);

Triple expand_triple(const CloningSystem& sys, const Triple& t, int k);

/// Expansion that puts a caret on leaf j of the left tree.
Triple expand_left(const CloningSystem& sys, const Triple& t, int j);

/// Applies reductions until none is possible. With `rng`, the reduction site
/// is chosen at random among the available ones.
Triple reduce(const CloningSystem& sys, Triple t, Rng* rng = nullptr);

class Element {
 public:
  /// Validates and reduces `t`.
  Element(SystemPtr sys, Triple t);
  static Element identity(SystemPtr sys);

  const Triple& triple() const { return t_; }
  const Tree& left() const { return t_.left; }
  const GroupElement& middle() const { return t_.middle; }
  const Tree& right() const { return t_.right; }
  const CloningSystem& system() const { return *sys_; }
  const SystemPtr& system_ptr() const { return sys_; }

  bool is_identity() const;
  /// "[T ; g ; U]".
  std::string str() const;

  friend bool operator==(const Element& a, const Element& b) { return a.t_ == b.t_; }

 private:
  SystemPtr sys_;
  Triple t_;
};

Element mul(const Element& x, const Element& y);
Element inv(const Element& x);
/// Negative exponents use the inverse.
Element pow(const Element& x, int m);
/// x^-1 y^-1 x y.
Element commutator(const Element& x, const Element& y);

bool in_Fd(const Element& x);

/// Equality decided by multiplying: x y^-1 == 1.
bool equal_by_mul(const Element& x, const Element& y);

/// Parses "[T ; g ; U]"; Throws std::invalid_argument.
Element parse_element(SystemPtr sys, std::string_view text);

/// [T expanded at k m times, T_l expanded at l+(d-1), ..., l+(m-1)(d-1)].
Element powers_closed_form(SystemPtr sys, const Tree& t, int k, int l, int m);

/// (g)(kappa_{k1} o ... o kappa_{km}), applying kappa_{k1} first.
GroupElement clone_chain(const CloningSystem& sys, int n, const GroupElement& g, const std::vector<int>& ks);

struct CompositeInverse {
  GroupElement element;
  std::vector<int> alphas;
};

/// (g^-1)(kappa_{a1} o ... o kappa_{am}) with a1 = rho_n(g)k1 and
/// a_i = rho((g)(kappa_{k1} o ... o kappa_{k(i-1)}))k_i.
CompositeInverse composite_inverse_closed_form(const CloningSystem& sys, int n, const GroupElement& g,
                                               const std::vector<int>& ks);

/// [T, rho(g), U] in the V_d system. Throws UnsupportedError unless the system
/// is fully compatible.
Element pi_to_Vd(const Element& x);
bool in_kernel_Kd(const Element& x);

/// Generator x_i of F_d: with q = floor(i/(d-1)) and R the right spine of
/// q+1 carets, x_i = [R_{i+1}, 1, R_{n(R)}].
Element fd_generator(SystemPtr sys, int i);

/// (left-end depth of T - left-end depth of U, right-end depth difference).
/// Throws std::domain_error unless x is in F_d.
std::pair<int, int> endpoint_slope_character(const Element& x);

/// Tree grown by `carets` expansions at uniformly random leaves.
Tree random_tree(int arity, int carets, Rng& rng);

/// Random triple with both trees of the same random caret count in
/// [0, max_carets] and a sampled middle; reduced.
Element random_element(SystemPtr sys, int max_carets, Rng& rng);
Element random_fd_element(SystemPtr sys, int max_carets, Rng& rng);

}  // namespace cloning

template <>
struct std::hash<cloning::Element> {
  std::size_t operator()(const cloning::Element& x) const noexcept { return std::hash<std::string>{}(x.str()); }
};
