#pragma once

// Prefix-exchange homeomorphisms of the d-ary Cantor space {1..d}^N with
// states drawn from a finite self-similar automaton.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cloning/groups.hpp"
#include "cloning/thompson.hpp"
#include "cloning/tree.hpp"

namespace cloning {

/// Eventually periodic infinite word pre . period^inf in canonical form: the
/// period is primitive and the preperiod is as short as possible.
class CantorWord {
 public:
  static CantorWord make(Word pre, Word period);
  /// "pre(period)", e.g. "1(2)".
  static CantorWord parse(std::string_view text);

  const Word& pre() const { return pre_; }
  const Word& period() const { return period_; }
  char at(std::size_t i) const;
  Word prefix(std::size_t len) const;
  bool has_prefix(const Word& w) const;
  /// The tail after removing the first `len` letters.
  CantorWord drop(std::size_t len) const;
  std::string str() const { return pre_ + "(" + period_ + ")"; }

  friend bool operator==(const CantorWord&, const CantorWord&) = default;
  friend auto operator<=>(const CantorWord&, const CantorWord&) = default;

 private:
  CantorWord(Word pre, Word period) : pre_(std::move(pre)), period_(std::move(period)) {}
  Word pre_;
  Word period_;
};

/// Two words share an infinite tail (up to shifting).
bool tail_equivalent(const CantorWord& a, const CantorWord& b);

struct AutomatonState {
  std::string name;
  Permutation perm;
  /// next[a-1] is the section at input letter a.
  std::vector<int> next;
};

/// Product s_1 o ... o s_r of automaton states; s_r acts first. Empty is 1.
using StateWord = std::vector<int>;

/// Finite automaton closed under sections. The constructor appends an
/// inverse state for every given state, so words can always be inverted.
class Automaton {
 public:
  /// Throws std::invalid_argument on a bad permutation or a dangling transition.
  Automaton(int arity, std::vector<AutomatonState> states);

  static std::shared_ptr<const Automaton> trivial(int arity);
  /// One state "h" with perm i -> d-i+1 and every section equal to itself.
  static std::shared_ptr<const Automaton> full_reflection(int arity);

  int arity() const { return d_; }
  int size() const { return static_cast<int>(states_.size()); }
  const AutomatonState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
  int find(std::string_view name) const;

  StateWord inverse(const StateWord& w) const;
  Permutation root_perm(const StateWord& w) const;
  int act_letter(const StateWord& w, int letter) const;
  StateWord section(const StateWord& w, int letter) const;
  /// Image of a finite word.
  Word act(const StateWord& w, const Word& input) const;
  /// Section after reading `input`.
  StateWord section_along(const StateWord& w, const Word& input) const;
  CantorWord act(const StateWord& w, const CantorWord& input) const;

  /// Drops trivial states and rewrites adjacent pairs that equal 1 or a
  /// single state.
  StateWord simplify(StateWord w) const;

  struct Verdict {
    bool equal = true;
    /// False when the search hit its cap and only checked words up to the depth bound.
    bool exact = true;
  };
  /// Bisimulation over pairs of sections; falls back to a depth bound when
  /// the reachable pair set exceeds `cap`.
  Verdict compare(const StateWord& a, const StateWord& b, int depth = 12, std::size_t cap = 20000) const;
  bool equal(const StateWord& a, const StateWord& b) const { return compare(a, b).equal; }
  bool is_identity(const StateWord& w) const { return equal(w, {}); }

  /// "1" for the empty word, otherwise names joined by '*'.
  std::string format(const StateWord& w) const;
  StateWord parse_word(std::string_view text) const;

 private:
  Verdict compare_raw(const StateWord& a, const StateWord& b, bool simplified, int depth, std::size_t cap) const;

  int d_;
  std::vector<AutomatonState> states_;
  std::vector<bool> trivial_;
  // pair_[s][t]: -2 none, -1 equals 1, otherwise the single equal state.
  std::vector<std::vector<int>> pair_;
};

struct AutomatonElement {
  std::shared_ptr<const Automaton> automaton;
  StateWord word;
};

AutomatonElement full_reflection(int arity);

struct Rule {
  Word domain;
  Word range;
  StateWord state;
  friend bool operator==(const Rule&, const Rule&) = default;
};

/// True when every infinite word has exactly one prefix in `code`.
bool is_complete_prefix_code(const std::vector<Word>& code, int arity);

class PrefixMap {
 public:
  /// Throws std::invalid_argument unless domains and ranges are complete
  /// prefix codes and every state index is valid.
  PrefixMap(int arity, std::shared_ptr<const Automaton> automaton, std::vector<Rule> rules);
  static PrefixMap identity(int arity);
  /// The map whose single rule carries the full reflection.
  static PrefixMap reflection(int arity);
  /// Lines "w+ -> w- [state]"; the empty word is written "e".
  static PrefixMap parse(std::string_view text, int arity, std::shared_ptr<const Automaton> automaton);

  int arity() const { return d_; }
  const Automaton& automaton() const { return *aut_; }
  const std::shared_ptr<const Automaton>& automaton_ptr() const { return aut_; }
  const std::vector<Rule>& rules() const { return rules_; }

  CantorWord apply(const CantorWord& x) const;
  std::string str() const;

 private:
  int d_;
  std::shared_ptr<const Automaton> aut_;
  std::vector<Rule> rules_;
};

/// f o g: g acts first.
PrefixMap compose(const PrefixMap& f, const PrefixMap& g);
PrefixMap invert(const PrefixMap& f);
/// Merges complete sibling groups whenever a single rule with state 1 or a
/// single automaton state reproduces them; rules sorted by domain.
PrefixMap normalize(const PrefixMap& f);
/// States are compared with the automaton's bisimulation, falling back to
/// words of length `depth` when the search is capped.
bool is_identity_map(const PrefixMap& f, int depth = 12);
bool equivalent(const PrefixMap& f, const PrefixMap& g, int depth = 12);

/// Rule i maps the cone at U's i-th leaf to the cone at T's rho(g)(i)-th
/// leaf. Throws UnsupportedError unless the system acts by leaf permutation.
PrefixMap from_tree_pair(const Element& x);

bool is_order_preserving(const PrefixMap& f);

/// Test words whose image shares no infinite tail with them.
std::vector<CantorWord> tail_equivalence_violations(const PrefixMap& f, const std::vector<CantorWord>& words);

/// All words pre(period) with |pre| <= max_pre and 1 <= |period| <= max_period,
/// deduplicated after canonicalisation.
std::vector<CantorWord> eventually_periodic_words(int arity, int max_pre, int max_period);

}  // namespace cloning
