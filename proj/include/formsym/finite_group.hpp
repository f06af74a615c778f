#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "formsym/abelian_group.hpp"

namespace formsym {

/// A group axiom failing on a multiplication table.
struct AxiomViolation {
  std::string axiom;
  std::vector<std::size_t> witness;
};

/// Finite group given by its multiplication table over 0..order-1.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  explicit FiniteGroup(Table table, std::string name = {}) : table_(std::move(table)), name_(std::move(name)) {
    if (auto v = check_axioms(table_))
      fail(ErrorCode::kValidation, "multiplication table violates " + v->axiom);
    const std::size_t n = table_.size();
    for (std::size_t e = 0; e < n; ++e) {
      bool ok = true;
      for (std::size_t g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
      if (ok) {
        identity_ = e;
        break;
      }
    }
    inverse_.assign(n, 0);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        if (table_[g][h] == identity_) inverse_[g] = h;
    abelian_ = true;
    for (std::size_t g = 0; g < n && abelian_; ++g)
      for (std::size_t h = 0; h < n; ++h)
        if (table_[g][h] != table_[h][g]) {
          abelian_ = false;
          break;
        }
  }

  /// Closure, associativity, identity and inverses; nothing on success.
  static std::optional<AxiomViolation> check_axioms(const Table& t) {
    const std::size_t n = t.size();
    if (n == 0) return AxiomViolation{"nonemptiness", {}};
    for (std::size_t g = 0; g < n; ++g) {
      if (t[g].size() != n) return AxiomViolation{"closure", {g}};
      for (std::size_t h = 0; h < n; ++h)
        if (t[g][h] >= n) return AxiomViolation{"closure", {g, h}};
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (t[t[a][b]][c] != t[a][t[b][c]]) return AxiomViolation{"associativity", {a, b, c}};
    std::optional<std::size_t> e;
    for (std::size_t x = 0; x < n && !e; ++x) {
      bool ok = true;
      for (std::size_t g = 0; g < n && ok; ++g) ok = t[x][g] == g && t[g][x] == g;
      if (ok) e = x;
    }
    if (!e) return AxiomViolation{"identity", {}};
    for (std::size_t g = 0; g < n; ++g) {
      bool found = false;
      for (std::size_t h = 0; h < n && !found; ++h) found = t[g][h] == *e && t[h][g] == *e;
      if (!found) return AxiomViolation{"inverses", {g}};
    }
    return std::nullopt;
  }

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  bool is_abelian() const noexcept { return abelian_; }
  const std::string& name() const noexcept { return name_; }
  const Table& table() const noexcept { return table_; }

  std::size_t multiply(std::size_t g, std::size_t h) const { return table_.at(g).at(h); }
  std::size_t inverse(std::size_t g) const { return inverse_.at(g); }

  std::size_t element_order(std::size_t g) const {
    std::size_t k = 1, x = g;
    while (x != identity_) {
      x = multiply(x, g);
      ++k;
    }
    return k;
  }

  std::size_t exponent() const {
    std::size_t e = 1;
    for (std::size_t g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
    return e;
  }

 private:
  Table table_;
  std::string name_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
  bool abelian_ = true;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

namespace groups {

inline GroupPtr cyclic(std::size_t n) {
  require(n >= 1, ErrorCode::kValidation, "cyclic group of order 0");
  FiniteGroup::Table t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return std::make_shared<FiniteGroup>(std::move(t), "Z" + std::to_string(n));
}

/// Elements (g, h) indexed g * |H| + h.
inline GroupPtr product(const FiniteGroup& g, const FiniteGroup& h, std::string name = {}) {
  const std::size_t m = h.order(), n = g.order() * m;
  FiniteGroup::Table t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[a][b] = g.multiply(a / m, b / m) * m + h.multiply(a % m, b % m);
  if (name.empty()) name = g.name() + "x" + h.name();
  return std::make_shared<FiniteGroup>(std::move(t), std::move(name));
}

inline GroupPtr klein_four() { return product(*cyclic(2), *cyclic(2), "Z2xZ2"); }

/// Permutations of {0,1,2} in lexicographic order; index 0 is the identity.
inline GroupPtr symmetric3() {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::vector<std::size_t>& q) {
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  FiniteGroup::Table t(6, std::vector<std::size_t>(6));
  // (a * b)(i) = a(b(i)): apply b first.
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::vector<std::size_t> c(3);
      for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index(c);
    }
  return std::make_shared<FiniteGroup>(std::move(t), "S3");
}

/// Quaternion group: index 2k + s stands for (-1)^s u_k with u = (1, i, j, k).
inline GroupPtr quaternion8() {
  // unit products u_a u_b = sign * u_c
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  FiniteGroup::Table t(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      std::size_t a = x / 2, b = y / 2;
      int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign[a][b];
      t[x][y] = static_cast<std::size_t>(unit[a][b]) * 2 + (s < 0 ? 1 : 0);
    }
  return std::make_shared<FiniteGroup>(std::move(t), "Q8");
}

/// Cayley table of a finite abelian group, elements in AbelianGroup::elements() order.
inline GroupPtr from_abelian(const AbelianGroup& a) {
  auto elems = a.elements();
  const std::size_t n = elems.size();
  FiniteGroup::Table t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a.index_of(a.add(elems[i], elems[j]));
  return std::make_shared<FiniteGroup>(std::move(t), a.to_string());
}

/// Library names: Zn (1 <= n <= 12), Z2xZ2, S3, Q8.
inline GroupPtr by_name(const std::string& name) {
  if (name == "Z2xZ2") return klein_four();
  if (name == "S3") return symmetric3();
  if (name == "Q8") return quaternion8();
  if (name.size() >= 2 && name[0] == 'Z' &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    std::size_t n = std::stoul(name.substr(1));
    if (n >= 1 && n <= 12) return cyclic(n);
  }
  fail(ErrorCode::kValidation, "unknown group '" + name + "'");
}

}  // namespace groups

/// Some isomorphism G -> H as an element map, found by backtracking over
/// images of a generating set.
inline std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order();
  if (n != h.order() || g.is_abelian() != h.is_abelian()) return std::nullopt;
  // Greedy generating set of G.
  std::vector<std::size_t> gens;
  std::vector<bool> in_span(n, false);
  in_span[g.identity()] = true;
  auto close = [&](std::vector<bool>& span, const std::vector<std::size_t>& gs) {
    std::vector<std::size_t> queue;
    for (std::size_t x = 0; x < n; ++x)
      if (span[x]) queue.push_back(x);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (std::size_t s : gs) {
        std::size_t y = g.multiply(queue[qi], s);
        if (!span[y]) {
          span[y] = true;
          queue.push_back(y);
        }
      }
  };
  for (std::size_t x = 0; x < n; ++x)
    if (!in_span[x]) {
      gens.push_back(x);
      close(in_span, gens);
    }

  std::vector<std::size_t> images(gens.size());
  auto extend = [&]() -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> phi(n, n);
    phi[g.identity()] = h.identity();
    std::vector<std::size_t> queue{g.identity()};
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::size_t y = g.multiply(queue[qi], gens[k]);
        std::size_t im = h.multiply(phi[queue[qi]], images[k]);
        if (phi[y] == n) {
          phi[y] = im;
          queue.push_back(y);
        } else if (phi[y] != im) {
          return std::nullopt;
        }
      }
    std::vector<bool> hit(n, false);
    for (std::size_t x = 0; x < n; ++x) {
      if (hit[phi[x]]) return std::nullopt;
      hit[phi[x]] = true;
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (phi[g.multiply(a, b)] != h.multiply(phi[a], phi[b])) return std::nullopt;
    return phi;
  };
  std::function<std::optional<std::vector<std::size_t>>(std::size_t)> search =
      [&](std::size_t k) -> std::optional<std::vector<std::size_t>> {
    if (k == gens.size()) return extend();
    for (std::size_t y = 0; y < n; ++y) {
      if (h.element_order(y) != g.element_order(gens[k])) continue;
      images[k] = y;
      if (auto r = search(k + 1)) return r;
    }
    return std::nullopt;
  };
  return search(0);
}

}  // namespace formsym
