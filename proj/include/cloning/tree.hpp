#pragma once

// Finite rooted d-ary trees.
//
// A tree is stored as its canonical preorder text: '.' for a leaf and
// '(' c1 ... cd ')' for a node with d children. Leaves are numbered 1..n
// from left to right. Vertices are addressed by words over the letters
// '1'..'d' (the root is the empty word), so arity is limited to 2..9.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cloning {

/// Root-to-vertex path; letter '1' is the leftmost child.
using Word = std::string;

/// Sequence of leaf indices fed to Tree::expand_at one after another.
using ExpansionPath = std::vector<int>;

class Tree {
 public:
  static Tree leaf(int arity);
  static Tree caret(int arity);
  /// Right spine with `carets` carets, each glued to the last leaf.
  static Tree right_spine(int arity, int carets);
  /// Parses the canonical text form. A lone "." needs the arity supplied.
  static Tree parse(std::string_view text, int arity);

  int arity() const { return arity_; }
  int leaf_count() const { return leaves_; }
  int caret_count() const { return (leaves_ - 1) / (arity_ - 1); }
  bool is_leaf() const { return leaves_ == 1; }
  const std::string& str() const { return code_; }

  /// T_k: glue a caret to leaf k. Throws std::out_of_range.
  Tree expand_at(int k) const;
  Tree expand_along(const ExpansionPath& path) const;
  /// Inverse of expand_at; requires leaves k..k+d-1 to share a parent.
  Tree contract_at(int k) const;

  std::vector<int> removable_carets() const;
  bool has_removable_caret_at(int k) const;

  Word leaf_word(int k) const;
  std::vector<Word> leaf_words() const;
  /// 1-based leaf index of `w`, or nullopt when `w` is not a leaf.
  std::optional<int> leaf_index(const Word& w) const;
  int leaf_depth(int k) const;

  bool has_vertex(const Word& v) const;
  /// Subtree hanging at vertex `v`.
  Tree subtree(const Word& v) const;
  /// Replace the subtree at vertex `v` by `sub`.
  Tree graft(const Word& v, const Tree& sub) const;

  friend bool operator==(const Tree&, const Tree&) = default;
  friend auto operator<=>(const Tree&, const Tree&) = default;

 private:
  Tree(int arity, std::string code, int leaves)
      : arity_(arity), code_(std::move(code)), leaves_(leaves) {}

  // Offset of the k-th '.' in code_.
  std::size_t leaf_offset(int k) const;
  // [begin, end) of the subtree rooted at vertex v, or nullopt.
  std::optional<std::pair<std::size_t, std::size_t>> span_of(const Word& v) const;
  std::size_t subtree_end(std::size_t begin) const;

  int arity_ = 2;
  std::string code_ = ".";
  int leaves_ = 1;
};

struct CommonExpansion {
  Tree tree;
  ExpansionPath path_first;
  ExpansionPath path_second;
};

/// Union of the two shapes, with the expansion sequences reaching it.
CommonExpansion common_expansion(const Tree& t, const Tree& u);

/// Expansion sequence taking `from` to `to`; `to` must contain `from`.
ExpansionPath expansion_path(const Tree& from, const Tree& to);

struct AgreeAway {
  Word vertex;
  /// Common part of both trees with a leaf at `vertex`.
  Tree prefix;
};

/// Deepest nonempty vertex v such that t and u differ only inside the
/// subtrees at v. Identical trees give their first leaf.
std::optional<AgreeAway> agree_away_from(const Tree& t, const Tree& u);

/// All trees with exactly `carets` carets, in lexicographic order of text.
std::vector<Tree> enumerate_trees(int arity, int carets);

/// Number of d-ary trees with c carets: C(dc, c) / ((d-1)c + 1).
unsigned long long fuss_catalan(int arity, int carets);

}  // namespace cloning

template <>
struct std::hash<cloning::Tree> {
  std::size_t operator()(const cloning::Tree& t) const noexcept {
    return std::hash<std::string>{}(t.str()) ^ static_cast<std::size_t>(t.arity());
  }
};
