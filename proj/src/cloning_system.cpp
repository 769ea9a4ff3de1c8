#include "cloning/cloning_system.hpp"

#include <stdexcept>

namespace cloning {
namespace {

void check_clone_index(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::out_of_range("cloning index " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Permutation standard_symmetric_clone(const Permutation& s, int k, int d) {
  const int n = s.size();
  check_clone_index(n, k);
  const int shift = d - 1;
  const int target = s(k);
  std::vector<int> out(static_cast<std::size_t>(n + shift));
  for (int i = 1; i <= n; ++i) {
    if (i == k) {
      for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(k - 1 + j)] = target + j;
      continue;
    }
    const int src = i > k ? i + shift : i;
    const int dst = s(i) > target ? s(i) + shift : s(i);
    out[static_cast<std::size_t>(src - 1)] = dst;
  }
  return Permutation(std::move(out));
}

std::optional<Permutation> standard_symmetric_unclone(const Permutation& x, int k, int d) {
  const int shift = d - 1;
  const int n = x.size() - shift;
  if (n < 1 || k < 1 || k > n) return std::nullopt;
  const int target = x(k);
  for (int j = 1; j < d; ++j) {
    if (x(k + j) != target + j) return std::nullopt;
  }
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const int src = i > k ? i + shift : i;
    const int y = x(src);
    out[static_cast<std::size_t>(i - 1)] = y > target ? y - shift : y;
  }
  return Permutation(std::move(out));
}

SymmetricSystem::SymmetricSystem(int arity, PermutationFamily::Kind kind, std::string name)
    : d_(arity), family_(kind), name_(std::move(name)) {
  if (arity < 2 || arity > 9) throw std::invalid_argument("arity must lie in 2..9");
}

Permutation SymmetricSystem::rho(int n, const GroupElement& g) const {
  const Permutation& p = as_permutation(g);
  if (p.size() != n) throw std::invalid_argument("element is not in G_" + std::to_string(n));
  return p;
}

GroupElement SymmetricSystem::clone(int n, int k, const GroupElement& g) const {
  const Permutation& p = as_permutation(g);
  if (p.size() != n) throw std::invalid_argument("element is not in G_" + std::to_string(n));
  return standard_symmetric_clone(p, k, d_);
}

std::optional<GroupElement> SymmetricSystem::try_unclone(int n, int k, const GroupElement& x) const {
  const auto* p = std::get_if<Permutation>(&x);
  if (!p || p->size() != n + d_ - 1) return std::nullopt;
  auto g = standard_symmetric_unclone(*p, k, d_);
  if (!g || !family_.contains(n, *g)) return std::nullopt;
  return GroupElement(std::move(*g));
}

ProductSystem::ProductSystem(std::shared_ptr<const BaseGroup> base, std::vector<Monomorphism> monos, bool psi,
                             std::string name)
    : family_(std::move(base), psi), monos_(std::move(monos)), name_(std::move(name)) {
  if (monos_.size() < 2 || monos_.size() > 9) throw std::invalid_argument("need 2..9 monomorphisms");
}

Permutation ProductSystem::rho(int n, const GroupElement&) const { return Permutation::identity(n); }

GroupElement ProductSystem::clone(int n, int k, const GroupElement& g) const {
  check_clone_index(n, k);
  const auto& e = as_tuple(g).entries;
  if (static_cast<int>(e.size()) != n) throw std::invalid_argument("element is not in G_" + std::to_string(n));
  Tuple out;
  out.entries.reserve(e.size() + monos_.size() - 1);
  for (int i = 1; i <= n; ++i) {
    const BaseElement& gi = e[static_cast<std::size_t>(i - 1)];
    if (i == k) {
      for (const auto& phi : monos_) out.entries.push_back(phi.apply(gi));
    } else {
      out.entries.push_back(gi);
    }
  }
  return out;
}

std::optional<GroupElement> ProductSystem::try_unclone(int n, int k, const GroupElement& x) const {
  const auto* t = std::get_if<Tuple>(&x);
  const int d = arity();
  if (!t || static_cast<int>(t->entries.size()) != n + d - 1 || k < 1 || k > n) return std::nullopt;
  const auto& e = t->entries;
  const auto pre = monos_.front().try_preimage(e[static_cast<std::size_t>(k - 1)]);
  if (!pre) return std::nullopt;
  for (int j = 1; j < d; ++j) {
    if (!(monos_[static_cast<std::size_t>(j)].apply(*pre) == e[static_cast<std::size_t>(k - 1 + j)])) {
      return std::nullopt;
    }
  }
  Tuple out;
  for (int i = 1; i <= n; ++i) {
    if (i < k) out.entries.push_back(e[static_cast<std::size_t>(i - 1)]);
    else if (i == k) out.entries.push_back(*pre);
    else out.entries.push_back(e[static_cast<std::size_t>(i + d - 2)]);
  }
  if (!family_.contains(n, out)) return std::nullopt;
  return GroupElement(std::move(out));
}

SystemPtr make_symmetric_system(int arity) {
  return std::make_shared<SymmetricSystem>(arity, PermutationFamily::Kind::Symmetric,
                                           arity == 2 ? "V" : "V:" + std::to_string(arity));
}

SystemPtr make_system(std::string_view key) {
  const auto parts = split(key, ':');
  const std::string& head = parts.front();
  using Kind = PermutationFamily::Kind;
  if (head == "F" || head == "T" || head == "V" || head == "Vhat") {
    if (parts.size() > 2) throw std::invalid_argument("bad system key '" + std::string(key) + "'");
    int d = 2;
    if (parts.size() == 2) {
      if (parts[1].empty() || parts[1].find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("bad arity in system key '" + std::string(key) + "'");
      }
      d = std::stoi(parts[1]);
    }
    const Kind kind = head == "F"   ? Kind::Trivial
                      : head == "T" ? Kind::Cyclic
                      : head == "V" ? Kind::Symmetric
                                    : Kind::FixLast;
    return std::make_shared<SymmetricSystem>(d, kind, d == 2 ? head : head + ":" + std::to_string(d));
  }
  if (head == "prod" || head == "psi") {
    if (parts.size() != 3) {
      throw std::invalid_argument("expected " + head + ":<group>:<m1,...,md>, got '" + std::string(key) + "'");
    }
    auto base = make_base_group(parts[1]);
    std::vector<Monomorphism> monos;
    for (const auto& label : split(parts[2], ',')) monos.push_back(make_monomorphism(label, *base));
    return std::make_shared<ProductSystem>(base, std::move(monos), head == "psi", std::string(key));
  }
  throw std::invalid_argument("unknown system '" + std::string(key) +
                              "' (expected F, T, V, Vhat, prod:<G>:<monos>, psi:<G>:<monos>)");
}

}  // namespace cloning
