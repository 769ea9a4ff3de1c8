#pragma once

// Base groups and the group families G_n used by the built-in systems.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cloning/errors.hpp"

namespace cloning {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
int uniform_int(Rng& rng, int lo, int hi);

class Permutation {
 public:
  Permutation() = default;
  /// One-line notation, 1-based. Throws std::invalid_argument if not a bijection.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  /// The cycle (c1 c2 ... cr) acting on {1..n}.
  static Permutation cycle(int n, const std::vector<int>& points);
  /// Accepts "[p1,...,pn]".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  std::string str() const;
  /// Disjoint-cycle notation, "()" for the identity.
  std::string cycle_str() const;

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Freely reduced word over a, b; capitals are inverses.
class FreeWord {
 public:
  FreeWord() = default;
  const std::string& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  FreeWord inverse() const;
  /// "1" for the empty word.
  std::string str() const { return letters_.empty() ? "1" : letters_; }

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  friend FreeWord free_reduce(std::string_view word);
  std::string letters_;
};

/// Cancels adjacent inverse pairs. Throws on letters outside a,A,b,B,1.
FreeWord free_reduce(std::string_view word);

struct Residue {
  int value = 0;
  int modulus = 1;
  friend bool operator==(const Residue&, const Residue&) = default;
  friend auto operator<=>(const Residue&, const Residue&) = default;
};

using BaseElement = std::variant<Residue, FreeWord>;

/// Componentwise element of a product of copies of one base group.
struct Tuple {
  std::vector<BaseElement> entries;
  friend bool operator==(const Tuple&, const Tuple&) = default;
};

using GroupElement = std::variant<Permutation, Tuple>;

class BaseGroup {
 public:
  virtual ~BaseGroup() = default;
  virtual std::string name() const = 0;
  virtual BaseElement identity() const = 0;
  virtual BaseElement mul(const BaseElement& a, const BaseElement& b) const = 0;
  virtual BaseElement inv(const BaseElement& a) const = 0;
  virtual bool is_identity(const BaseElement& a) const = 0;
  virtual BaseElement sample(Rng& rng) const = 0;
  /// All elements, or nullopt for an infinite group.
  virtual std::optional<std::vector<BaseElement>> enumerate() const = 0;
  virtual std::string format(const BaseElement& a) const = 0;
  virtual BaseElement parse(std::string_view text) const = 0;
};

/// Z/m written additively; elements print as their residue.
class CyclicGroup final : public BaseGroup {
 public:
  explicit CyclicGroup(int modulus);
  int modulus() const { return m_; }
  std::string name() const override { return "Z" + std::to_string(m_); }
  BaseElement identity() const override { return Residue{0, m_}; }
  BaseElement mul(const BaseElement& a, const BaseElement& b) const override;
  BaseElement inv(const BaseElement& a) const override;
  bool is_identity(const BaseElement& a) const override;
  BaseElement sample(Rng& rng) const override;
  std::optional<std::vector<BaseElement>> enumerate() const override;
  std::string format(const BaseElement& a) const override;
  BaseElement parse(std::string_view text) const override;

 private:
  int m_;
};

/// Free group on a, b. Samples have length at most max_sample_length.
class FreeGroup2 final : public BaseGroup {
 public:
  explicit FreeGroup2(int max_sample_length = 8) : max_len_(max_sample_length) {}
  std::string name() const override { return "F2"; }
  BaseElement identity() const override { return FreeWord{}; }
  BaseElement mul(const BaseElement& a, const BaseElement& b) const override;
  BaseElement inv(const BaseElement& a) const override;
  bool is_identity(const BaseElement& a) const override;
  BaseElement sample(Rng& rng) const override;
  std::optional<std::vector<BaseElement>> enumerate() const override { return std::nullopt; }
  std::string format(const BaseElement& a) const override;
  BaseElement parse(std::string_view text) const override;

 private:
  int max_len_;
};

/// Parses "Z<m>" or "F2".
std::shared_ptr<const BaseGroup> make_base_group(std::string_view key);

struct Monomorphism {
  std::string label;
  std::function<BaseElement(const BaseElement&)> apply;
  std::function<std::optional<BaseElement>(const BaseElement&)> try_preimage;
};

/// "id" on any group, "swap" (a <-> b) on F2, "inv" (x -> -x) on Z/m.
Monomorphism make_monomorphism(std::string_view label, const BaseGroup& group);

class GroupFamily {
 public:
  virtual ~GroupFamily() = default;
  virtual std::string name() const = 0;
  virtual GroupElement identity(int n) const = 0;
  virtual GroupElement mul(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inv(const GroupElement& a) const = 0;
  virtual bool contains(int n, const GroupElement& g) const = 0;
  virtual GroupElement sample(int n, Rng& rng) const = 0;
  virtual bool is_finite() const = 0;
  /// Throws UnsupportedError when G_n is infinite.
  virtual std::vector<GroupElement> enumerate(int n) const = 0;
  virtual std::string format(const GroupElement& g) const = 0;
  virtual GroupElement parse(int n, std::string_view text) const = 0;

  bool is_identity(const GroupElement& g) const;
  std::size_t hash(const GroupElement& g) const { return std::hash<std::string>{}(format(g)); }
  /// |G_n| when finite and representable.
  std::optional<std::uint64_t> order(int n) const;
};

class PermutationFamily final : public GroupFamily {
 public:
  enum class Kind { Trivial, Cyclic, Symmetric, FixLast };
  explicit PermutationFamily(Kind kind) : kind_(kind) {}
  Kind kind() const { return kind_; }
  std::string name() const override;
  GroupElement identity(int n) const override { return Permutation::identity(n); }
  GroupElement mul(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv(const GroupElement& a) const override;
  bool contains(int n, const GroupElement& g) const override;
  GroupElement sample(int n, Rng& rng) const override;
  bool is_finite() const override { return true; }
  std::vector<GroupElement> enumerate(int n) const override;
  std::string format(const GroupElement& g) const override;
  GroupElement parse(int n, std::string_view text) const override;

 private:
  Kind kind_;
};

/// prod^n(G), or with psi set the subgroup {1} x prod^{n-1}(G).
class TupleFamily final : public GroupFamily {
 public:
  TupleFamily(std::shared_ptr<const BaseGroup> base, bool psi) : base_(std::move(base)), psi_(psi) {}
  const BaseGroup& base() const { return *base_; }
  bool psi() const { return psi_; }
  std::string name() const override;
  GroupElement identity(int n) const override;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv(const GroupElement& a) const override;
  bool contains(int n, const GroupElement& g) const override;
  GroupElement sample(int n, Rng& rng) const override;
  bool is_finite() const override { return base_->enumerate().has_value(); }
  std::vector<GroupElement> enumerate(int n) const override;
  std::string format(const GroupElement& g) const override;
  GroupElement parse(int n, std::string_view text) const override;

 private:
  std::shared_ptr<const BaseGroup> base_;
  bool psi_;
};

const Permutation& as_permutation(const GroupElement& g);
const Tuple& as_tuple(const GroupElement& g);

}  // namespace cloning
