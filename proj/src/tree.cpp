#include "cloning/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cloning {
namespace {

void check_arity(int arity) {
  if (arity < 2 || arity > 9) {
    throw std::invalid_argument("tree arity must lie in 2..9, got " + std::to_string(arity));
  }
}

std::string caret_code(int arity) { return "(" + std::string(static_cast<std::size_t>(arity), '.') + ")"; }

// Recursive-descent validation of the preorder text; returns leaf count.
int parse_node(std::string_view text, std::size_t& pos, int& arity) {
  if (pos >= text.size()) throw std::invalid_argument("tree text ended early");
  if (text[pos] == '.') {
    ++pos;
    return 1;
  }
  if (text[pos] != '(') {
    throw std::invalid_argument(std::string("unexpected character '") + text[pos] + "' in tree text");
  }
  ++pos;
  int children = 0;
  int leaves = 0;
  while (pos < text.size() && text[pos] != ')') {
    leaves += parse_node(text, pos, arity);
    ++children;
  }
  if (pos >= text.size()) throw std::invalid_argument("unbalanced tree text");
  ++pos;
  if (arity == 0) {
    check_arity(children);
    arity = children;
  } else if (children != arity) {
    throw std::invalid_argument("node with " + std::to_string(children) + " children in a " +
                                std::to_string(arity) + "-ary tree");
  }
  return leaves;
}

struct Union {
  int arity;
  std::string out;
  int leaves = 0;
  ExpansionPath first;
  ExpansionPath second;

  // Copy the subtree of `code` at `pos`; the other tree has a leaf here and
  // records the expansions that grow it into this subtree.
  void copy(const std::string& code, std::size_t& pos, ExpansionPath& other) {
    if (code[pos] == '.') {
      out += '.';
      ++leaves;
      ++pos;
      return;
    }
    other.push_back(leaves + 1);
    out += '(';
    ++pos;
    for (int c = 0; c < arity; ++c) copy(code, pos, other);
    out += ')';
    ++pos;
  }

  void merge(const std::string& t, std::size_t& pt, const std::string& u, std::size_t& pu) {
    const bool t_leaf = t[pt] == '.';
    const bool u_leaf = u[pu] == '.';
    if (t_leaf && u_leaf) {
      out += '.';
      ++leaves;
      ++pt;
      ++pu;
    } else if (t_leaf) {
      ++pt;
      copy(u, pu, first);
    } else if (u_leaf) {
      ++pu;
      copy(t, pt, second);
    } else {
      out += '(';
      ++pt;
      ++pu;
      for (int c = 0; c < arity; ++c) merge(t, pt, u, pu);
      out += ')';
      ++pt;
      ++pu;
    }
  }
};

void skip_subtree(const std::string& code, std::size_t& pos) {
  int depth = 0;
  do {
    if (code[pos] == '(') ++depth;
    if (code[pos] == ')') --depth;
    ++pos;
  } while (depth > 0);
}

void collect_differences(const std::string& t, std::size_t& pt, const std::string& u, std::size_t& pu,
                         int arity, Word& path, std::vector<Word>& diffs) {
  const bool t_leaf = t[pt] == '.';
  const bool u_leaf = u[pu] == '.';
  if (t_leaf || u_leaf) {
    if (t_leaf != u_leaf) diffs.push_back(path);
    if (t_leaf) ++pt; else skip_subtree(t, pt);
    if (u_leaf) ++pu; else skip_subtree(u, pu);
    return;
  }
  ++pt;
  ++pu;
  for (int c = 1; c <= arity; ++c) {
    path.push_back(static_cast<char>('0' + c));
    collect_differences(t, pt, u, pu, arity, path, diffs);
    path.pop_back();
  }
  ++pt;
  ++pu;
}

}  // namespace

Tree Tree::leaf(int arity) {
  check_arity(arity);
  return Tree(arity, ".", 1);
}

Tree Tree::caret(int arity) {
  check_arity(arity);
  return Tree(arity, caret_code(arity), arity);
}

Tree Tree::right_spine(int arity, int carets) {
  Tree t = leaf(arity);
  for (int i = 0; i < carets; ++i) t = t.expand_at(t.leaf_count());
  return t;
}

Tree Tree::parse(std::string_view text, int arity) {
  std::string compact;
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\n') compact += c;
  }
  int inferred = 0;
  std::size_t pos = 0;
  const int leaves = parse_node(compact, pos, inferred);
  if (pos != compact.size()) throw std::invalid_argument("trailing characters after tree text");
  if (inferred == 0) inferred = arity;
  check_arity(inferred);
  if (arity != 0 && inferred != arity) {
    throw std::invalid_argument("tree arity " + std::to_string(inferred) + " does not match expected " +
                                std::to_string(arity));
  }
  return Tree(inferred, std::move(compact), leaves);
}

std::size_t Tree::leaf_offset(int k) const {
  if (k < 1 || k > leaves_) {
    throw std::out_of_range("leaf index " + std::to_string(k) + " outside 1.." + std::to_string(leaves_));
  }
  int seen = 0;
  for (std::size_t i = 0; i < code_.size(); ++i) {
    if (code_[i] == '.' && ++seen == k) return i;
  }
  throw std::logic_error("corrupt tree code");
}

Tree Tree::expand_at(int k) const {
  const std::size_t off = leaf_offset(k);
  std::string code = code_.substr(0, off) + caret_code(arity_) + code_.substr(off + 1);
  return Tree(arity_, std::move(code), leaves_ + arity_ - 1);
}

Tree Tree::expand_along(const ExpansionPath& path) const {
  Tree t = *this;
  for (int k : path) t = t.expand_at(k);
  return t;
}

bool Tree::has_removable_caret_at(int k) const {
  if (k < 1 || k + arity_ - 1 > leaves_) return false;
  const std::size_t off = leaf_offset(k);
  if (off == 0 || code_[off - 1] != '(') return false;
  for (int i = 0; i < arity_; ++i) {
    if (code_[off + static_cast<std::size_t>(i)] != '.') return false;
  }
  return code_[off + static_cast<std::size_t>(arity_)] == ')';
}

Tree Tree::contract_at(int k) const {
  if (!has_removable_caret_at(k)) {
    throw std::invalid_argument("no removable caret at leaf " + std::to_string(k) + " of " + code_);
  }
  const std::size_t off = leaf_offset(k);
  std::string code = code_.substr(0, off - 1) + "." + code_.substr(off + static_cast<std::size_t>(arity_) + 1);
  return Tree(arity_, std::move(code), leaves_ - arity_ + 1);
}

std::vector<int> Tree::removable_carets() const {
  std::vector<int> out;
  int seen = 0;
  const auto d = static_cast<std::size_t>(arity_);
  for (std::size_t i = 0; i < code_.size(); ++i) {
    if (code_[i] == '.') {
      ++seen;
      continue;
    }
    if (code_[i] != '(' || i + d + 1 >= code_.size() || code_[i + d + 1] != ')') continue;
    bool all_leaves = true;
    for (std::size_t j = 1; j <= d; ++j) all_leaves = all_leaves && code_[i + j] == '.';
    if (all_leaves) out.push_back(seen + 1);
  }
  return out;
}

std::vector<Word> Tree::leaf_words() const {
  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(leaves_));
  Word path;
  std::vector<int> next_child;
  for (char c : code_) {
    if (c == ')') {
      next_child.pop_back();
      if (!next_child.empty()) path.pop_back();
      continue;
    }
    if (!next_child.empty()) path.push_back(static_cast<char>('0' + ++next_child.back()));
    if (c == '.') {
      words.push_back(path);
      if (!next_child.empty()) path.pop_back();
    } else {
      next_child.push_back(0);
    }
  }
  return words;
}

Word Tree::leaf_word(int k) const {
  if (k < 1 || k > leaves_) {
    throw std::out_of_range("leaf index " + std::to_string(k) + " outside 1.." + std::to_string(leaves_));
  }
  return leaf_words()[static_cast<std::size_t>(k - 1)];
}

std::optional<int> Tree::leaf_index(const Word& w) const {
  const auto words = leaf_words();
  const auto it = std::find(words.begin(), words.end(), w);
  if (it == words.end()) return std::nullopt;
  return static_cast<int>(it - words.begin()) + 1;
}

int Tree::leaf_depth(int k) const { return static_cast<int>(leaf_word(k).size()); }

std::size_t Tree::subtree_end(std::size_t begin) const {
  std::size_t pos = begin;
  skip_subtree(code_, pos);
  return pos;
}

std::optional<std::pair<std::size_t, std::size_t>> Tree::span_of(const Word& v) const {
  std::size_t pos = 0;
  for (char letter : v) {
    const int child = letter - '0';
    if (child < 1 || child > arity_ || code_[pos] != '(') return std::nullopt;
    ++pos;
    for (int c = 1; c < child; ++c) pos = subtree_end(pos);
  }
  return std::make_pair(pos, subtree_end(pos));
}

bool Tree::has_vertex(const Word& v) const { return span_of(v).has_value(); }

Tree Tree::subtree(const Word& v) const {
  const auto span = span_of(v);
  if (!span) throw std::invalid_argument("no vertex '" + v + "' in " + code_);
  return parse(std::string_view(code_).substr(span->first, span->second - span->first), arity_);
}

Tree Tree::graft(const Word& v, const Tree& sub) const {
  if (sub.arity_ != arity_) throw std::invalid_argument("graft arity mismatch");
  const auto span = span_of(v);
  if (!span) throw std::invalid_argument("no vertex '" + v + "' in " + code_);
  std::string code = code_.substr(0, span->first) + sub.code_ + code_.substr(span->second);
  return parse(code, arity_);
}

CommonExpansion common_expansion(const Tree& t, const Tree& u) {
  if (t.arity() != u.arity()) throw std::invalid_argument("common_expansion: arity mismatch");
  Union un{t.arity(), {}, 0, {}, {}};
  std::size_t pt = 0;
  std::size_t pu = 0;
  un.merge(t.str(), pt, u.str(), pu);
  return {Tree::parse(un.out, t.arity()), std::move(un.first), std::move(un.second)};
}

ExpansionPath expansion_path(const Tree& from, const Tree& to) {
  auto ce = common_expansion(from, to);
  if (!ce.path_second.empty()) {
    throw std::invalid_argument(to.str() + " is not an expansion of " + from.str());
  }
  return std::move(ce.path_first);
}

std::optional<AgreeAway> agree_away_from(const Tree& t, const Tree& u) {
  if (t.arity() != u.arity()) throw std::invalid_argument("agree_away_from: arity mismatch");
  if (t.leaf_count() != u.leaf_count()) {
    throw std::invalid_argument("agree_away_from: leaf counts differ");
  }
  std::vector<Word> diffs;
  Word path;
  std::size_t pt = 0;
  std::size_t pu = 0;
  collect_differences(t.str(), pt, u.str(), pu, t.arity(), path, diffs);
  if (diffs.empty()) return AgreeAway{t.leaf_word(1), t};

  Word v = diffs.front();
  for (const Word& w : diffs) {
    std::size_t common = 0;
    while (common < v.size() && common < w.size() && v[common] == w[common]) ++common;
    v.resize(common);
  }
  if (v.empty()) return std::nullopt;
  return AgreeAway{v, t.graft(v, Tree::leaf(t.arity()))};
}

std::vector<Tree> enumerate_trees(int arity, int carets) {
  check_arity(arity);
  if (carets < 0) throw std::invalid_argument("negative caret count");
  std::vector<std::vector<std::string>> by_size(static_cast<std::size_t>(carets) + 1);
  by_size[0] = {"."};
  for (int c = 1; c <= carets; ++c) {
    std::vector<std::string>& out = by_size[static_cast<std::size_t>(c)];
    // Distribute c-1 carets over the arity children in order.
    std::vector<int> parts(static_cast<std::size_t>(arity), 0);
    auto emit = [&](auto&& self, int child, int remaining, const std::string& prefix) -> void {
      if (child == arity - 1) {
        for (const auto& s : by_size[static_cast<std::size_t>(remaining)]) out.push_back(prefix + s + ")");
        return;
      }
      for (int take = 0; take <= remaining; ++take) {
        for (const auto& s : by_size[static_cast<std::size_t>(take)]) self(self, child + 1, remaining - take, prefix + s);
      }
    };
    emit(emit, 0, c - 1, "(");
    std::sort(out.begin(), out.end());
  }
  std::vector<Tree> trees;
  for (const auto& code : by_size[static_cast<std::size_t>(carets)]) trees.push_back(Tree::parse(code, arity));
  return trees;
}

unsigned long long fuss_catalan(int arity, int carets) {
  const unsigned long long n = static_cast<unsigned long long>(arity) * static_cast<unsigned long long>(carets);
  const auto k = static_cast<unsigned long long>(carets);
  unsigned __int128 binom = 1;
  for (unsigned long long i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
  return static_cast<unsigned long long>(binom / (static_cast<unsigned long long>(arity - 1) * k + 1));
}

}  // namespace cloning
