#include "cloning/cantor.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace cloning {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

void check_letters(const Word& w) {
  for (char c : w) {
    if (c < '1' || c > '9') throw std::invalid_argument("letters must be digits 1..9, got '" + w + "'");
  }
}

char letter_char(int a) { return static_cast<char>('0' + a); }

bool complete_from(std::vector<Word> code, std::size_t depth, int arity) {
  if (code.empty()) return false;
  for (const auto& w : code) {
    if (w.size() == depth) return code.size() == 1;
  }
  for (int a = 1; a <= arity; ++a) {
    std::vector<Word> sub;
    for (const auto& w : code) {
      if (w[depth] == letter_char(a)) sub.push_back(w);
    }
    if (!complete_from(std::move(sub), depth + 1, arity)) return false;
  }
  // Letters outside 1..arity leave words unaccounted for.
  std::size_t covered = 0;
  for (const auto& w : code) covered += (w[depth] >= '1' && w[depth] <= letter_char(arity)) ? 1 : 0;
  return covered == code.size();
}

std::string show_word(const Word& w) { return w.empty() ? "e" : w; }

}  // namespace

// ------------------------------------------------------------------ CantorWord

CantorWord CantorWord::make(Word pre, Word period) {
  if (period.empty()) throw std::invalid_argument("period must be nonempty");
  check_letters(pre);
  check_letters(period);
  const std::size_t n = period.size();
  for (std::size_t l = 1; l < n; ++l) {
    if (n % l != 0) continue;
    bool repeats = true;
    for (std::size_t i = l; i < n && repeats; ++i) repeats = period[i] == period[i - l];
    if (repeats) {
      period.resize(l);
      break;
    }
  }
  while (!pre.empty() && pre.back() == period.back()) {
    pre.pop_back();
    std::rotate(period.begin(), period.end() - 1, period.end());
  }
  return CantorWord(std::move(pre), std::move(period));
}

CantorWord CantorWord::parse(std::string_view text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')') {
    throw std::invalid_argument("infinite word must look like pre(period): " + t);
  }
  return make(t.substr(0, open), t.substr(open + 1, t.size() - open - 2));
}

char CantorWord::at(std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return period_[(i - pre_.size()) % period_.size()];
}

Word CantorWord::prefix(std::size_t len) const {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w += at(i);
  return w;
}

bool CantorWord::has_prefix(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (at(i) != w[i]) return false;
  }
  return true;
}

CantorWord CantorWord::drop(std::size_t len) const {
  if (len <= pre_.size()) return make(pre_.substr(len), period_);
  const std::size_t off = (len - pre_.size()) % period_.size();
  return make("", period_.substr(off) + period_.substr(0, off));
}

bool tail_equivalent(const CantorWord& a, const CantorWord& b) {
  return a.period().size() == b.period().size() && (a.period() + a.period()).find(b.period()) != std::string::npos;
}

// ------------------------------------------------------------------- Automaton

Automaton::Automaton(int arity, std::vector<AutomatonState> states) : d_(arity) {
  const int n = static_cast<int>(states.size());
  for (const auto& s : states) {
    if (s.perm.size() != arity || static_cast<int>(s.next.size()) != arity) {
      throw std::invalid_argument("state " + s.name + " does not match arity " + std::to_string(arity));
    }
    for (int t : s.next) {
      if (t < 0 || t >= n) throw std::invalid_argument("state " + s.name + " has a section outside the automaton");
    }
  }
  states_ = states;
  for (const auto& s : states) {
    AutomatonState inv{s.name + "^-1", s.perm.inverse(), std::vector<int>(static_cast<std::size_t>(arity))};
    for (int b = 1; b <= arity; ++b) {
      inv.next[static_cast<std::size_t>(b - 1)] = s.next[static_cast<std::size_t>(inv.perm(b) - 1)] + n;
    }
    states_.push_back(std::move(inv));
  }

  const int total = size();
  trivial_.assign(static_cast<std::size_t>(total), false);
  for (int i = 0; i < total; ++i) trivial_[static_cast<std::size_t>(i)] = state(i).perm.is_identity();
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < total; ++i) {
      if (!trivial_[static_cast<std::size_t>(i)]) continue;
      for (int t : state(i).next) {
        if (!trivial_[static_cast<std::size_t>(t)]) {
          trivial_[static_cast<std::size_t>(i)] = false;
          changed = true;
          break;
        }
      }
    }
  }

  pair_.assign(static_cast<std::size_t>(total), std::vector<int>(static_cast<std::size_t>(total), -2));
  for (int s = 0; s < total; ++s) {
    for (int t = 0; t < total; ++t) {
      const StateWord st{s, t};
      auto v = compare_raw(st, {}, false, 12, 20000);
      if (v.equal && v.exact) {
        pair_[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = -1;
        continue;
      }
      for (int u = 0; u < total; ++u) {
        v = compare_raw(st, {u}, false, 12, 20000);
        if (v.equal && v.exact) {
          pair_[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = u;
          break;
        }
      }
    }
  }
}

std::shared_ptr<const Automaton> Automaton::trivial(int arity) {
  return std::make_shared<Automaton>(arity, std::vector<AutomatonState>{});
}

std::shared_ptr<const Automaton> Automaton::full_reflection(int arity) {
  std::vector<int> images;
  for (int i = 1; i <= arity; ++i) images.push_back(arity - i + 1);
  AutomatonState h{"h", Permutation(images), std::vector<int>(static_cast<std::size_t>(arity), 0)};
  return std::make_shared<Automaton>(arity, std::vector<AutomatonState>{h});
}

int Automaton::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (state(i).name == name) return i;
  }
  throw std::invalid_argument("no automaton state named '" + std::string(name) + "'");
}

StateWord Automaton::inverse(const StateWord& w) const {
  const int half = size() / 2;
  StateWord out(w.rbegin(), w.rend());
  for (int& s : out) s = s < half ? s + half : s - half;
  return out;
}

Permutation Automaton::root_perm(const StateWord& w) const {
  Permutation p = Permutation::identity(d_);
  for (int s : w) p = p * state(s).perm;
  return p;
}

int Automaton::act_letter(const StateWord& w, int letter) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) letter = state(*it).perm(letter);
  return letter;
}

StateWord Automaton::section(const StateWord& w, int letter) const {
  StateWord out(w.size());
  for (std::size_t i = w.size(); i-- > 0;) {
    const AutomatonState& s = state(w[i]);
    out[i] = s.next[static_cast<std::size_t>(letter - 1)];
    letter = s.perm(letter);
  }
  return out;
}

Word Automaton::act(const StateWord& w, const Word& input) const {
  Word out;
  StateWord cur = w;
  for (char c : input) {
    out += letter_char(act_letter(cur, c - '0'));
    cur = simplify(section(cur, c - '0'));
  }
  return out;
}

StateWord Automaton::section_along(const StateWord& w, const Word& input) const {
  StateWord cur = w;
  for (char c : input) cur = simplify(section(cur, c - '0'));
  return cur;
}

CantorWord Automaton::act(const StateWord& w, const CantorWord& input) const {
  StateWord cur = simplify(w);
  if (cur.empty()) return input;
  Word out;
  for (char c : input.pre()) {
    out += letter_char(act_letter(cur, c - '0'));
    cur = simplify(section(cur, c - '0'));
  }
  // The state at each period boundary ranges over a finite set, so it repeats.
  std::map<StateWord, std::size_t> seen;
  while (true) {
    const auto [it, fresh] = seen.emplace(cur, out.size());
    if (!fresh) return CantorWord::make(out.substr(0, it->second), out.substr(it->second));
    for (char c : input.period()) {
      out += letter_char(act_letter(cur, c - '0'));
      cur = simplify(section(cur, c - '0'));
    }
  }
}

StateWord Automaton::simplify(StateWord w) const {
  for (bool changed = true; changed;) {
    changed = false;
    const auto before = w.size();
    w.erase(std::remove_if(w.begin(), w.end(), [&](int s) { return trivial_[static_cast<std::size_t>(s)]; }),
            w.end());
    changed = w.size() != before;
    if (pair_.empty()) break;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const int p = pair_[static_cast<std::size_t>(w[i])][static_cast<std::size_t>(w[i + 1])];
      if (p == -2) continue;
      if (p == -1) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      } else {
        w[i] = p;
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      }
      changed = true;
      break;
    }
  }
  return w;
}

Automaton::Verdict Automaton::compare(const StateWord& a, const StateWord& b, int depth, std::size_t cap) const {
  return compare_raw(a, b, true, depth, cap);
}

Automaton::Verdict Automaton::compare_raw(const StateWord& a, const StateWord& b, bool simplified, int depth,
                                          std::size_t cap) const {
  auto norm = [&](StateWord w) { return simplified ? simplify(std::move(w)) : w; };
  std::set<std::pair<StateWord, StateWord>> seen;
  std::vector<std::pair<StateWord, StateWord>> frontier{{norm(a), norm(b)}};
  seen.insert(frontier.front());
  for (int level = 0; !frontier.empty(); ++level) {
    if (seen.size() > cap && level >= depth) return {true, false};
    std::vector<std::pair<StateWord, StateWord>> next;
    for (const auto& [u, v] : frontier) {
      if (root_perm(u) != root_perm(v)) return {false, true};
      for (int x = 1; x <= d_; ++x) {
        std::pair<StateWord, StateWord> p{norm(section(u, x)), norm(section(v, x))};
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  return {true, true};
}

std::string Automaton::format(const StateWord& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '*';
    s += state(w[i]).name;
  }
  return s;
}

StateWord Automaton::parse_word(std::string_view text) const {
  const std::string t = trim(text);
  if (t == "1" || t.empty()) return {};
  StateWord w;
  std::size_t start = 0;
  while (start <= t.size()) {
    const auto star = t.find('*', start);
    const auto end = star == std::string::npos ? t.size() : star;
    w.push_back(find(trim(std::string_view(t).substr(start, end - start))));
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return w;
}

AutomatonElement full_reflection(int arity) { return {Automaton::full_reflection(arity), {0}}; }

// ------------------------------------------------------------------- PrefixMap

bool is_complete_prefix_code(const std::vector<Word>& code, int arity) { return complete_from(code, 0, arity); }

PrefixMap::PrefixMap(int arity, std::shared_ptr<const Automaton> automaton, std::vector<Rule> rules)
    : d_(arity), aut_(std::move(automaton)), rules_(std::move(rules)) {
  if (!aut_ || aut_->arity() != arity) throw std::invalid_argument("automaton arity mismatch");
  std::vector<Word> dom;
  std::vector<Word> ran;
  for (const auto& r : rules_) {
    check_letters(r.domain);
    check_letters(r.range);
    for (int s : r.state) {
      if (s < 0 || s >= aut_->size()) throw std::invalid_argument("rule state outside the automaton");
    }
    dom.push_back(r.domain);
    ran.push_back(r.range);
  }
  if (!is_complete_prefix_code(dom, arity)) throw std::invalid_argument("domain words are not a complete prefix code");
  if (!is_complete_prefix_code(ran, arity)) throw std::invalid_argument("range words are not a complete prefix code");
}

PrefixMap PrefixMap::identity(int arity) { return PrefixMap(arity, Automaton::trivial(arity), {{"", "", {}}}); }

PrefixMap PrefixMap::reflection(int arity) {
  return PrefixMap(arity, Automaton::full_reflection(arity), {{"", "", {0}}});
}

PrefixMap PrefixMap::parse(std::string_view text, int arity, std::shared_ptr<const Automaton> automaton) {
  std::vector<Rule> rules;
  std::size_t start = 0;
  const std::string all(text);
  while (start < all.size()) {
    auto end = all.find('\n', start);
    if (end == std::string::npos) end = all.size();
    const std::string line = trim(std::string_view(all).substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;
    const auto arrow = line.find("->");
    const auto open = line.find('[');
    if (arrow == std::string::npos || open == std::string::npos || line.back() != ']' || open < arrow) {
      throw std::invalid_argument("rule must look like 'w+ -> w- [state]': " + line);
    }
    auto word = [](std::string w) { return w == "e" ? std::string() : w; };
    rules.push_back({word(trim(line.substr(0, arrow))), word(trim(line.substr(arrow + 2, open - arrow - 2))),
                     automaton->parse_word(line.substr(open + 1, line.size() - open - 2))});
  }
  return PrefixMap(arity, std::move(automaton), std::move(rules));
}

CantorWord PrefixMap::apply(const CantorWord& x) const {
  for (const auto& r : rules_) {
    if (!x.has_prefix(r.domain)) continue;
    const CantorWord tail = aut_->act(r.state, x.drop(r.domain.size()));
    return CantorWord::make(r.range + tail.pre(), tail.period());
  }
  throw std::logic_error("no rule matches " + x.str());
}

std::string PrefixMap::str() const {
  std::string s;
  for (const auto& r : rules_) {
    s += show_word(r.domain) + " -> " + show_word(r.range) + " [" + aut_->format(r.state) + "]\n";
  }
  return s;
}

PrefixMap compose(const PrefixMap& f, const PrefixMap& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("compose: arity mismatch");
  std::shared_ptr<const Automaton> aut;
  if (f.automaton().size() == 0) aut = g.automaton_ptr();
  else if (g.automaton().size() == 0 || f.automaton_ptr() == g.automaton_ptr()) aut = f.automaton_ptr();
  else throw std::invalid_argument("compose: maps use different automata");

  std::unordered_map<Word, const Rule*> f_by_domain;
  for (const auto& r : f.rules()) f_by_domain.emplace(r.domain, &r);

  std::vector<Rule> out;
  std::deque<Rule> pending(g.rules().begin(), g.rules().end());
  while (!pending.empty()) {
    Rule cur = std::move(pending.front());
    pending.pop_front();
    const Rule* hit = nullptr;
    std::size_t plen = 0;
    for (std::size_t len = 0; len <= cur.range.size() && !hit; ++len) {
      auto it = f_by_domain.find(cur.range.substr(0, len));
      if (it != f_by_domain.end()) {
        hit = it->second;
        plen = len;
      }
    }
    if (hit) {
      const Word rest = cur.range.substr(plen);
      StateWord state = aut->section_along(hit->state, rest);
      state.insert(state.end(), cur.state.begin(), cur.state.end());
      out.push_back({cur.domain, hit->range + aut->act(hit->state, rest), aut->simplify(std::move(state))});
      continue;
    }
    const Permutation p = aut->root_perm(cur.state);
    for (int a = 1; a <= f.arity(); ++a) {
      pending.push_back({cur.domain + letter_char(a), cur.range + letter_char(p(a)),
                         aut->simplify(aut->section(cur.state, a))});
    }
  }
  return PrefixMap(f.arity(), aut, std::move(out));
}

PrefixMap invert(const PrefixMap& f) {
  std::vector<Rule> out;
  for (const auto& r : f.rules()) out.push_back({r.range, r.domain, f.automaton().inverse(r.state)});
  return PrefixMap(f.arity(), f.automaton_ptr(), std::move(out));
}

PrefixMap normalize(const PrefixMap& f) {
  const Automaton& aut = f.automaton();
  const int d = f.arity();
  std::vector<Rule> rules = f.rules();
  for (auto& r : rules) r.state = aut.simplify(r.state);
  std::vector<StateWord> candidates{{}};
  for (int s = 0; s < aut.size(); ++s) candidates.push_back({s});

  for (bool changed = true; changed;) {
    changed = false;
    std::map<Word, std::vector<std::size_t>> by_parent;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (!rules[i].domain.empty()) by_parent[rules[i].domain.substr(0, rules[i].domain.size() - 1)].push_back(i);
    }
    for (auto& [parent, idx] : by_parent) {
      if (static_cast<int>(idx.size()) != d) continue;
      std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rules[a].domain < rules[b].domain; });
      const Word& r0 = rules[idx[0]].range;
      if (r0.empty()) continue;
      const Word q = r0.substr(0, r0.size() - 1);
      bool siblings = true;
      for (std::size_t i : idx) {
        const Word& r = rules[i].range;
        siblings = siblings && r.size() == r0.size() && r.compare(0, q.size(), q) == 0;
      }
      if (!siblings) continue;
      for (const auto& cand : candidates) {
        const Permutation p = aut.root_perm(cand);
        bool fits = true;
        for (int a = 1; a <= d && fits; ++a) {
          const Rule& r = rules[idx[static_cast<std::size_t>(a - 1)]];
          fits = r.range.back() == letter_char(p(a)) && aut.equal(aut.section(cand, a), r.state);
        }
        if (!fits) continue;
        std::vector<Rule> next;
        for (std::size_t i = 0; i < rules.size(); ++i) {
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(rules[i]);
        }
        next.push_back({parent, q, cand});
        rules = std::move(next);
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.domain < b.domain; });
  return PrefixMap(d, f.automaton_ptr(), std::move(rules));
}

bool is_identity_map(const PrefixMap& f, int depth) {
  for (const auto& r : f.rules()) {
    if (r.domain != r.range || !f.automaton().compare(r.state, {}, depth).equal) return false;
  }
  return true;
}

bool equivalent(const PrefixMap& f, const PrefixMap& g, int depth) {
  return is_identity_map(compose(f, invert(g)), depth);
}

PrefixMap from_tree_pair(const Element& x) {
  const CloningSystem& sys = x.system();
  if (!sys.acts_by_leaf_permutation()) {
    throw UnsupportedError("system " + sys.name() + " does not act on leaves by its group elements");
  }
  const int n = x.right().leaf_count();
  const Permutation sigma = sys.rho(n, x.middle());
  const auto dom = x.right().leaf_words();
  const auto ran = x.left().leaf_words();
  std::vector<Rule> rules;
  for (int i = 1; i <= n; ++i) {
    rules.push_back({dom[static_cast<std::size_t>(i - 1)], ran[static_cast<std::size_t>(sigma(i) - 1)], {}});
  }
  return PrefixMap(sys.arity(), Automaton::trivial(sys.arity()), std::move(rules));
}

bool is_order_preserving(const PrefixMap& f) {
  std::vector<Rule> rules = f.rules();
  for (const auto& r : rules) {
    if (!f.automaton().is_identity(r.state)) return false;
  }
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) { return a.domain < b.domain; });
  for (std::size_t i = 1; i < rules.size(); ++i) {
    if (!(rules[i - 1].range < rules[i].range)) return false;
  }
  return true;
}

std::vector<CantorWord> tail_equivalence_violations(const PrefixMap& f, const std::vector<CantorWord>& words) {
  std::vector<CantorWord> out;
  for (const auto& w : words) {
    if (!tail_equivalent(w, f.apply(w))) out.push_back(w);
  }
  return out;
}

std::vector<CantorWord> eventually_periodic_words(int arity, int max_pre, int max_period) {
  auto all_words = [arity](int len) {
    std::vector<Word> out{""};
    for (int i = 0; i < len; ++i) {
      std::vector<Word> next;
      for (const auto& w : out) {
        for (int a = 1; a <= arity; ++a) next.push_back(w + letter_char(a));
      }
      out = std::move(next);
    }
    return out;
  };
  std::set<CantorWord> found;
  for (int p = 0; p <= max_pre; ++p) {
    for (int q = 1; q <= max_period; ++q) {
      for (const auto& pre : all_words(p)) {
        for (const auto& period : all_words(q)) found.insert(CantorWord::make(pre, period));
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace cloning
