#include "cloning/thompson.hpp"

#include <cctype>
#include <stdexcept>

namespace cloning {
namespace {

void require_same_system(const Element& x, const Element& y) {
  if (x.system_ptr() != y.system_ptr() && x.system().name() != y.system().name()) {
    throw std::invalid_argument("elements of different systems: " + x.system().name() + " and " +
                                y.system().name());
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct ReductionSite {
  int k;
  int j;
  GroupElement smaller;
};

}  // namespace

void validate_triple(const CloningSystem& sys, const Triple& t) {
  if (t.left.arity() != sys.arity() || t.right.arity() != sys.arity()) {
    throw std::invalid_argument("tree arity does not match the system arity " + std::to_string(sys.arity()));
  }
  if (t.left.leaf_count() != t.right.leaf_count()) {
    throw std::invalid_argument("trees " + t.left.str() + " and " + t.right.str() + " have different leaf counts");
  }
  if (!sys.group().contains(t.left.leaf_count(), t.middle)) {
    throw std::invalid_argument("middle element is not in G_" + std::to_string(t.left.leaf_count()));
  }
}

Triple expand_triple(const CloningSystem& sys, const Triple& t, int k) {
  const int n = t.right.leaf_count();
  if (k < 1 || k > n) throw std::out_of_range("expansion index outside 1.." + std::to_string(n));
  const int j = sys.rho(n, t.middle)(k);
  return {t.left.expand_at(j), sys.clone(n, k, t.middle), t.right.expand_at(k)};
}

Triple expand_left(const CloningSystem& sys, const Triple& t, int j) {
  const int n = t.left.leaf_count();
  if (j < 1 || j > n) throw std::out_of_range("expansion index outside 1.." + std::to_string(n));
  return expand_triple(sys, t, sys.rho(n, t.middle).inverse()(j));
}

Triple reduce(const CloningSystem& sys, Triple t, Rng* rng) {
  const int d = sys.arity();
  while (t.right.leaf_count() > 1) {
    const int m = t.right.leaf_count() - d + 1;
    std::vector<ReductionSite> sites;
    for (int k : t.right.removable_carets()) {
      auto smaller = sys.try_unclone(m, k, t.middle);
      if (!smaller) continue;
      const int j = sys.rho(m, *smaller)(k);
      if (!t.left.has_removable_caret_at(j)) continue;
      sites.push_back({k, j, std::move(*smaller)});
      if (!rng) break;
    }
    if (sites.empty()) break;
    const std::size_t pick = rng ? static_cast<std::size_t>(uniform_int(*rng, 0, static_cast<int>(sites.size()) - 1)) : 0;
    ReductionSite& s = sites[pick];
    t = {t.left.contract_at(s.j), std::move(s.smaller), t.right.contract_at(s.k)};
  }
  return t;
}

Element::Element(SystemPtr sys, Triple t) : sys_(std::move(sys)), t_(std::move(t)) {
  if (!sys_) throw std::invalid_argument("null system");
  validate_triple(*sys_, t_);
  t_ = reduce(*sys_, std::move(t_));
}

Element Element::identity(SystemPtr sys) {
  const int d = sys->arity();
  GroupElement one = sys->group().identity(1);
  return Element(std::move(sys), {Tree::leaf(d), std::move(one), Tree::leaf(d)});
}

bool Element::is_identity() const { return t_.left.is_leaf() && sys_->group().is_identity(t_.middle); }

std::string Element::str() const {
  return "[" + t_.left.str() + " ; " + sys_->group().format(t_.middle) + " ; " + t_.right.str() + "]";
}

Element mul(const Element& x, const Element& y) {
  require_same_system(x, y);
  const CloningSystem& sys = x.system();
  const CommonExpansion ce = common_expansion(x.right(), y.left());
  Triple a = x.triple();
  for (int k : ce.path_first) a = expand_triple(sys, a, k);
  Triple b = y.triple();
  for (int j : ce.path_second) b = expand_left(sys, b, j);
  return Element(x.system_ptr(), {a.left, sys.group().mul(a.middle, b.middle), b.right});
}

Element inv(const Element& x) {
  return Element(x.system_ptr(), {x.right(), x.system().group().inv(x.middle()), x.left()});
}

Element pow(const Element& x, int m) {
  const Element base = m < 0 ? inv(x) : x;
  Element out = Element::identity(x.system_ptr());
  for (int i = 0; i < (m < 0 ? -m : m); ++i) out = mul(out, base);
  return out;
}

Element commutator(const Element& x, const Element& y) { return mul(mul(inv(x), inv(y)), mul(x, y)); }

bool in_Fd(const Element& x) { return x.system().group().is_identity(x.middle()); }

bool equal_by_mul(const Element& x, const Element& y) { return mul(x, inv(y)).is_identity(); }

Element parse_element(SystemPtr sys, std::string_view text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw std::invalid_argument("element must look like [T ; g ; U]: " + t);
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char c : t.substr(1, t.size() - 2)) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw std::invalid_argument("element needs three ';'-separated parts: " + t);
  Tree left = Tree::parse(trim(parts[0]), sys->arity());
  Tree right = Tree::parse(trim(parts[2]), sys->arity());
  GroupElement g = sys->group().parse(left.leaf_count(), parts[1]);
  return Element(std::move(sys), {std::move(left), std::move(g), std::move(right)});
}

Element powers_closed_form(SystemPtr sys, const Tree& t, int k, int l, int m) {
  if (!(1 <= k && k < l && l <= t.leaf_count())) throw std::out_of_range("powers_closed_form needs 1 <= k < l <= n(T)");
  if (m < 1) throw std::out_of_range("powers_closed_form needs m >= 1");
  const int d = t.arity();
  Tree left = t;
  for (int i = 0; i < m; ++i) left = left.expand_at(k);
  Tree right = t;
  for (int i = 0; i < m; ++i) right = right.expand_at(l + i * (d - 1));
  GroupElement one = sys->group().identity(left.leaf_count());
  return Element(std::move(sys), {std::move(left), std::move(one), std::move(right)});
}

GroupElement clone_chain(const CloningSystem& sys, int n, const GroupElement& g, const std::vector<int>& ks) {
  GroupElement cur = g;
  for (int k : ks) {
    cur = sys.clone(n, k, cur);
    n += sys.arity() - 1;
  }
  return cur;
}

CompositeInverse composite_inverse_closed_form(const CloningSystem& sys, int n, const GroupElement& g,
                                               const std::vector<int>& ks) {
  CompositeInverse out{sys.group().inv(g), {}};
  GroupElement cur = g;
  int level = n;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i > 0) {
      cur = sys.clone(level, ks[i - 1], cur);
      level += sys.arity() - 1;
    }
    if (ks[i] < 1 || ks[i] > level) throw std::out_of_range("cloning index outside 1.." + std::to_string(level));
    out.alphas.push_back(sys.rho(level, cur)(ks[i]));
  }
  out.element = clone_chain(sys, n, out.element, out.alphas);
  return out;
}

Element pi_to_Vd(const Element& x) {
  const CloningSystem& sys = x.system();
  if (!sys.declared_fully_compatible()) {
    throw UnsupportedError("the map to V_d needs a fully compatible system; " + sys.name() + " is not");
  }
  const int n = x.left().leaf_count();
  return Element(make_symmetric_system(sys.arity()), {x.left(), sys.rho(n, x.middle()), x.right()});
}

bool in_kernel_Kd(const Element& x) { return pi_to_Vd(x).is_identity(); }

Element fd_generator(SystemPtr sys, int i) {
  if (i < 0) throw std::out_of_range("generator index must be non-negative");
  const int d = sys->arity();
  const int q = i / (d - 1);
  const Tree r = Tree::right_spine(d, q + 1);
  Tree left = r.expand_at(i + 1);
  Tree right = r.expand_at(r.leaf_count());
  GroupElement one = sys->group().identity(left.leaf_count());
  return Element(std::move(sys), {std::move(left), std::move(one), std::move(right)});
}

std::pair<int, int> endpoint_slope_character(const Element& x) {
  if (!in_Fd(x)) throw std::domain_error("endpoint_slope_character needs an element of F_d");
  const int n = x.left().leaf_count();
  return {x.left().leaf_depth(1) - x.right().leaf_depth(1), x.left().leaf_depth(n) - x.right().leaf_depth(n)};
}

Tree random_tree(int arity, int carets, Rng& rng) {
  Tree t = Tree::leaf(arity);
  for (int c = 0; c < carets; ++c) t = t.expand_at(uniform_int(rng, 1, t.leaf_count()));
  return t;
}

Element random_element(SystemPtr sys, int max_carets, Rng& rng) {
  const int d = sys->arity();
  const int c = uniform_int(rng, 0, max_carets);
  Tree left = random_tree(d, c, rng);
  Tree right = random_tree(d, c, rng);
  GroupElement g = sys->group().sample(left.leaf_count(), rng);
  return Element(std::move(sys), {std::move(left), std::move(g), std::move(right)});
}

Element random_fd_element(SystemPtr sys, int max_carets, Rng& rng) {
  const int d = sys->arity();
  const int c = uniform_int(rng, 0, max_carets);
  Tree left = random_tree(d, c, rng);
  Tree right = random_tree(d, c, rng);
  GroupElement one = sys->group().identity(left.leaf_count());
  return Element(std::move(sys), {std::move(left), std::move(one), std::move(right)});
}

}  // namespace cloning
