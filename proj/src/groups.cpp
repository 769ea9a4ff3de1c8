#include "cloning/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cloning {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on commas that are not nested inside brackets.
std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

char invert_letter(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    case 'B': return 'b';
    default: throw std::invalid_argument(std::string("not a free-group letter: ") + c);
  }
}

const Residue& as_residue(const BaseElement& a) { return std::get<Residue>(a); }
const FreeWord& as_word(const BaseElement& a) { return std::get<FreeWord>(a); }

}  // namespace

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int p : images_) {
    if (p < 1 || p > size() || seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("not a permutation: " + str());
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  return Permutation(std::move(p));
}

Permutation Permutation::cycle(int n, const std::vector<int>& points) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int from = points[i];
    const int to = points[(i + 1) % points.size()];
    if (from < 1 || from > n) throw std::out_of_range("cycle point outside 1..n");
    p[static_cast<std::size_t>(from - 1)] = to;
  }
  return Permutation(std::move(p));
}

Permutation Permutation::parse(std::string_view text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw std::invalid_argument("permutation must look like [p1,...,pn]: " + t);
  }
  std::vector<int> p;
  const std::string body = t.substr(1, t.size() - 2);
  if (!trim(body).empty()) {
    for (const auto& part : split_top_level(body)) p.push_back(std::stoi(part));
  }
  return Permutation(std::move(p));
}

Permutation Permutation::inverse() const {
  std::vector<int> q(images_.size());
  for (int i = 1; i <= size(); ++i) q[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(std::move(q));
}

bool Permutation::is_identity() const {
  for (int i = 1; i <= size(); ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(images_[i]);
  }
  return s + "]";
}

std::string Permutation::cycle_str() const {
  std::string s;
  std::vector<bool> done(images_.size() + 1, false);
  for (int i = 1; i <= size(); ++i) {
    if (done[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
    s += "(";
    for (int j = i; !done[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      done[static_cast<std::size_t>(j)] = true;
      if (j != i) s += ' ';
      s += std::to_string(j);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> c(a.images_.size());
  for (int i = 1; i <= a.size(); ++i) c[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(c));
}

// ------------------------------------------------------------------ FreeWord

FreeWord free_reduce(std::string_view word) {
  FreeWord w;
  for (char c : word) {
    if (c == '1' || c == ' ') continue;
    const char inv = invert_letter(c);
    if (!w.letters_.empty() && w.letters_.back() == inv) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(c);
    }
  }
  return w;
}

FreeWord FreeWord::inverse() const {
  std::string s(letters_.rbegin(), letters_.rend());
  for (char& c : s) c = invert_letter(c);
  return free_reduce(s);
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) { return free_reduce(a.letters_ + b.letters_); }

// ---------------------------------------------------------------- base groups

CyclicGroup::CyclicGroup(int modulus) : m_(modulus) {
  if (modulus < 1) throw std::invalid_argument("cyclic group modulus must be positive");
}

BaseElement CyclicGroup::mul(const BaseElement& a, const BaseElement& b) const {
  return Residue{(as_residue(a).value + as_residue(b).value) % m_, m_};
}

BaseElement CyclicGroup::inv(const BaseElement& a) const { return Residue{(m_ - as_residue(a).value) % m_, m_}; }

bool CyclicGroup::is_identity(const BaseElement& a) const { return as_residue(a).value == 0; }

BaseElement CyclicGroup::sample(Rng& rng) const { return Residue{uniform_int(rng, 0, m_ - 1), m_}; }

std::optional<std::vector<BaseElement>> CyclicGroup::enumerate() const {
  std::vector<BaseElement> out;
  for (int v = 0; v < m_; ++v) out.emplace_back(Residue{v, m_});
  return out;
}

std::string CyclicGroup::format(const BaseElement& a) const { return std::to_string(as_residue(a).value); }

BaseElement CyclicGroup::parse(std::string_view text) const {
  const int v = std::stoi(trim(text));
  return Residue{((v % m_) + m_) % m_, m_};
}

BaseElement FreeGroup2::mul(const BaseElement& a, const BaseElement& b) const { return as_word(a) * as_word(b); }

BaseElement FreeGroup2::inv(const BaseElement& a) const { return as_word(a).inverse(); }

bool FreeGroup2::is_identity(const BaseElement& a) const { return as_word(a).is_identity(); }

BaseElement FreeGroup2::sample(Rng& rng) const {
  static constexpr char kLetters[] = {'a', 'A', 'b', 'B'};
  const int len = uniform_int(rng, 0, max_len_);
  std::string s;
  while (static_cast<int>(s.size()) < len) {
    const char c = kLetters[uniform_int(rng, 0, 3)];
    if (!s.empty() && s.back() == invert_letter(c)) continue;
    s.push_back(c);
  }
  return free_reduce(s);
}

std::string FreeGroup2::format(const BaseElement& a) const { return as_word(a).str(); }

BaseElement FreeGroup2::parse(std::string_view text) const { return free_reduce(trim(text)); }

std::shared_ptr<const BaseGroup> make_base_group(std::string_view key) {
  if (key == "F2") return std::make_shared<FreeGroup2>();
  if (key.size() >= 2 && key[0] == 'Z') {
    const std::string digits(key.substr(1));
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      return std::make_shared<CyclicGroup>(std::stoi(digits));
    }
  }
  throw std::invalid_argument("unknown base group '" + std::string(key) + "' (expected Z<m> or F2)");
}

Monomorphism make_monomorphism(std::string_view label, const BaseGroup& group) {
  if (label == "id") {
    return {"id", [](const BaseElement& g) { return g; },
            [](const BaseElement& g) -> std::optional<BaseElement> { return g; }};
  }
  if (label == "swap") {
    if (group.name() != "F2") throw std::invalid_argument("swap is only defined on F2");
    auto swap = [](const BaseElement& g) -> BaseElement {
      std::string s = std::get<FreeWord>(g).letters();
      for (char& c : s) {
        if (c == 'a') c = 'b';
        else if (c == 'b') c = 'a';
        else if (c == 'A') c = 'B';
        else if (c == 'B') c = 'A';
      }
      return free_reduce(s);
    };
    return {"swap", swap, [swap](const BaseElement& g) -> std::optional<BaseElement> { return swap(g); }};
  }
  if (label == "inv") {
    const auto* cyclic = dynamic_cast<const CyclicGroup*>(&group);
    if (!cyclic) throw std::invalid_argument("inv is only a homomorphism on the abelian groups Z<m>");
    const int m = cyclic->modulus();
    auto neg = [m](const BaseElement& g) -> BaseElement {
      return Residue{(m - std::get<Residue>(g).value) % m, m};
    };
    return {"inv", neg, [neg](const BaseElement& g) -> std::optional<BaseElement> { return neg(g); }};
  }
  throw std::invalid_argument("unknown monomorphism '" + std::string(label) + "' (expected id, swap, inv)");
}

// -------------------------------------------------------------- group family

bool GroupFamily::is_identity(const GroupElement& g) const {
  if (const auto* p = std::get_if<Permutation>(&g)) return p->is_identity();
  return g == identity(static_cast<int>(std::get<Tuple>(g).entries.size()));
}

std::optional<std::uint64_t> GroupFamily::order(int n) const {
  if (!is_finite()) return std::nullopt;
  return enumerate(n).size();
}

const Permutation& as_permutation(const GroupElement& g) {
  if (const auto* p = std::get_if<Permutation>(&g)) return *p;
  throw std::invalid_argument("expected a permutation element");
}

const Tuple& as_tuple(const GroupElement& g) {
  if (const auto* t = std::get_if<Tuple>(&g)) return *t;
  throw std::invalid_argument("expected a tuple element");
}

std::string PermutationFamily::name() const {
  switch (kind_) {
    case Kind::Trivial: return "trivial";
    case Kind::Cyclic: return "cyclic";
    case Kind::Symmetric: return "symmetric";
    case Kind::FixLast: return "fix-last";
  }
  return "?";
}

GroupElement PermutationFamily::mul(const GroupElement& a, const GroupElement& b) const {
  return as_permutation(a) * as_permutation(b);
}

GroupElement PermutationFamily::inv(const GroupElement& a) const { return as_permutation(a).inverse(); }

bool PermutationFamily::contains(int n, const GroupElement& g) const {
  const auto* p = std::get_if<Permutation>(&g);
  if (!p || p->size() != n) return false;
  switch (kind_) {
    case Kind::Trivial: return p->is_identity();
    case Kind::Symmetric: return true;
    case Kind::FixLast: return (*p)(n) == n;
    case Kind::Cyclic: {
      const int shift = (*p)(1) - 1;
      for (int i = 1; i <= n; ++i) {
        if ((*p)(i) != (i - 1 + shift) % n + 1) return false;
      }
      return true;
    }
  }
  return false;
}

GroupElement PermutationFamily::sample(int n, Rng& rng) const {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  switch (kind_) {
    case Kind::Trivial: break;
    case Kind::Symmetric: std::shuffle(p.begin(), p.end(), rng); break;
    case Kind::FixLast: std::shuffle(p.begin(), p.end() - 1, rng); break;
    case Kind::Cyclic: std::rotate(p.begin(), p.begin() + uniform_int(rng, 0, n - 1), p.end()); break;
  }
  return Permutation(std::move(p));
}

std::vector<GroupElement> PermutationFamily::enumerate(int n) const {
  if (n > 9) throw UnsupportedError("refusing to enumerate permutations of more than 9 points");
  std::vector<GroupElement> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  do {
    Permutation perm(p);
    if (contains(n, perm)) out.emplace_back(std::move(perm));
  } while (kind_ != Kind::Trivial && std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string PermutationFamily::format(const GroupElement& g) const { return as_permutation(g).str(); }

GroupElement PermutationFamily::parse(int n, std::string_view text) const {
  Permutation p = Permutation::parse(text);
  if (!contains(n, p)) {
    throw std::invalid_argument(p.str() + " is not in the " + name() + " group on " + std::to_string(n) +
                                " points");
  }
  return p;
}

std::string TupleFamily::name() const { return std::string(psi_ ? "psi" : "prod") + "(" + base_->name() + ")"; }

GroupElement TupleFamily::identity(int n) const {
  return Tuple{std::vector<BaseElement>(static_cast<std::size_t>(n), base_->identity())};
}

GroupElement TupleFamily::mul(const GroupElement& a, const GroupElement& b) const {
  const auto& x = as_tuple(a).entries;
  const auto& y = as_tuple(b).entries;
  if (x.size() != y.size()) throw std::invalid_argument("tuple length mismatch");
  Tuple out;
  out.entries.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.entries.push_back(base_->mul(x[i], y[i]));
  return out;
}

GroupElement TupleFamily::inv(const GroupElement& a) const {
  Tuple out;
  for (const auto& e : as_tuple(a).entries) out.entries.push_back(base_->inv(e));
  return out;
}

bool TupleFamily::contains(int n, const GroupElement& g) const {
  const auto* t = std::get_if<Tuple>(&g);
  if (!t || static_cast<int>(t->entries.size()) != n) return false;
  return !psi_ || base_->is_identity(t->entries.front());
}

GroupElement TupleFamily::sample(int n, Rng& rng) const {
  Tuple out;
  for (int i = 0; i < n; ++i) out.entries.push_back(base_->sample(rng));
  if (psi_) out.entries.front() = base_->identity();
  return out;
}

std::vector<GroupElement> TupleFamily::enumerate(int n) const {
  const auto elems = base_->enumerate();
  if (!elems) throw UnsupportedError("cannot enumerate tuples over the infinite group " + base_->name());
  const int free_slots = psi_ ? n - 1 : n;
  double size = 1;
  for (int i = 0; i < free_slots; ++i) size *= static_cast<double>(elems->size());
  if (size > 2e6) throw UnsupportedError("tuple group too large to enumerate");

  std::vector<GroupElement> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(free_slots), 0);
  while (true) {
    Tuple t;
    if (psi_) t.entries.push_back(base_->identity());
    for (std::size_t i : idx) t.entries.push_back((*elems)[i]);
    out.emplace_back(std::move(t));
    std::size_t pos = idx.size();
    while (pos > 0 && ++idx[pos - 1] == elems->size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return out;
}

std::string TupleFamily::format(const GroupElement& g) const {
  std::string s = "(";
  const auto& e = as_tuple(g).entries;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += base_->format(e[i]);
  }
  return s + ")";
}

GroupElement TupleFamily::parse(int n, std::string_view text) const {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
    throw std::invalid_argument("tuple must look like (g1,...,gn): " + t);
  }
  Tuple out;
  for (const auto& part : split_top_level(t.substr(1, t.size() - 2))) out.entries.push_back(base_->parse(part));
  if (!contains(n, out)) {
    throw std::invalid_argument(t + " is not an element of " + name() + " at level " + std::to_string(n));
  }
  return out;
}

}  // namespace cloning
