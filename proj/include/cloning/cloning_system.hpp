#pragma once

// d-ary cloning systems: (G_n, rho_n, kappa_k^n) plus a partial inverse of
// each cloning map. Indices are 1-based throughout.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloning/groups.hpp"

namespace cloning {

class CloningSystem {
 public:
  virtual ~CloningSystem() = default;
  virtual std::string name() const = 0;
  virtual int arity() const = 0;
  virtual const GroupFamily& group() const = 0;
  virtual Permutation rho(int n, const GroupElement& g) const = 0;
  /// (g)kappa_k^n in G_{n+d-1}. Throws std::out_of_range unless 1 <= k <= n.
  virtual GroupElement clone(int n, int k, const GroupElement& g) const = 0;
  /// The g with clone(n, k, g) == x, if any.
  virtual std::optional<GroupElement> try_unclone(int n, int k, const GroupElement& x) const = 0;
  /// Compatibility holds at every index, including the cloned block.
  virtual bool declared_fully_compatible() const = 0;
  /// G_n acts on leaves by the permutation itself (F, T, V, Vhat).
  virtual bool acts_by_leaf_permutation() const = 0;
};

using SystemPtr = std::shared_ptr<const CloningSystem>;

/// The standard clone varsigma_k: arrow k -> s(k) becomes d parallel arrows.
Permutation standard_symmetric_clone(const Permutation& s, int k, int d);

/// Inverse of standard_symmetric_clone, if the block at k is d parallel arrows.
std::optional<Permutation> standard_symmetric_unclone(const Permutation& x, int k, int d);

/// Subgroups of S_n closed under the standard clone.
class SymmetricSystem final : public CloningSystem {
 public:
  SymmetricSystem(int arity, PermutationFamily::Kind kind, std::string name);
  std::string name() const override { return name_; }
  int arity() const override { return d_; }
  const GroupFamily& group() const override { return family_; }
  Permutation rho(int n, const GroupElement& g) const override;
  GroupElement clone(int n, int k, const GroupElement& g) const override;
  std::optional<GroupElement> try_unclone(int n, int k, const GroupElement& x) const override;
  bool declared_fully_compatible() const override { return true; }
  bool acts_by_leaf_permutation() const override { return true; }

 private:
  int d_;
  PermutationFamily family_;
  std::string name_;
};

/// prod^n(G) (or Psi^n(G)) with monomorphisms phi_1..phi_d: entry k is
/// replaced by the block (phi_1(g_k), ..., phi_d(g_k)). rho is trivial.
class ProductSystem final : public CloningSystem {
 public:
  ProductSystem(std::shared_ptr<const BaseGroup> base, std::vector<Monomorphism> monos, bool psi, std::string name);
  std::string name() const override { return name_; }
  int arity() const override { return static_cast<int>(monos_.size()); }
  const GroupFamily& group() const override { return family_; }
  const TupleFamily& tuples() const { return family_; }
  const std::vector<Monomorphism>& monomorphisms() const { return monos_; }
  Permutation rho(int n, const GroupElement& g) const override;
  GroupElement clone(int n, int k, const GroupElement& g) const override;
  std::optional<GroupElement> try_unclone(int n, int k, const GroupElement& x) const override;
  bool declared_fully_compatible() const override { return true; }
  bool acts_by_leaf_permutation() const override { return false; }

 private:
  TupleFamily family_;
  std::vector<Monomorphism> monos_;
  std::string name_;
};

/// Registry keys: F, T, V, Vhat with an optional ":d" suffix (default d=2);
/// prod:<G>:<m1,...,md> and psi:<G>:<m1,...,md> with G in {Z<m>, F2} and
/// monomorphisms in {id, swap, inv}. Throws std::invalid_argument.
SystemPtr make_system(std::string_view key);

/// The V_d system of the given arity.
SystemPtr make_symmetric_system(int arity);

}  // namespace cloning
