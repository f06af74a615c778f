#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "formsym/abelian_group.hpp"
#include "formsym/finite_group.hpp"
#include "formsym/smith.hpp"

namespace formsym {

/// A Z/N-valued function on G x G, the N-torsion shadow of a U(1)-valued
/// 2-cochain. Whether it is a normalized cocycle is checked separately.
struct Cocycle2 {
  GroupPtr group;
  std::int64_t modulus = 2;
  std::vector<std::vector<std::int64_t>> values;

  Cocycle2() = default;
  Cocycle2(GroupPtr g, std::int64_t n, std::vector<std::vector<std::int64_t>> table)
      : group(std::move(g)), modulus(n), values(std::move(table)) {
    require(group != nullptr, ErrorCode::kValidation, "cocycle over a null group");
    require(modulus >= 2, ErrorCode::kValidation, "cocycle modulus must be at least 2");
    require(values.size() == group->order(), ErrorCode::kValidation, "cocycle table must be |G| x |G|");
    for (auto& row : values) {
      require(row.size() == group->order(), ErrorCode::kValidation, "cocycle table must be |G| x |G|");
      for (auto& v : row) v = ((v % modulus) + modulus) % modulus;
    }
  }

  static Cocycle2 zero(GroupPtr g, std::int64_t n) {
    std::size_t k = g->order();
    return Cocycle2(std::move(g), n, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
  }

  std::int64_t operator()(std::size_t g, std::size_t h) const { return values.at(g).at(h); }

  friend bool operator==(const Cocycle2& a, const Cocycle2& b) {
    return a.group->table() == b.group->table() && a.modulus == b.modulus && a.values == b.values;
  }
};

struct CocycleCheck {
  bool ok = true;
  /// The failing (g, h, k); for a normalization failure k is the identity.
  std::array<std::size_t, 3> triple{};
  std::string reason;
};

inline CocycleCheck check_cocycle(const Cocycle2& c) {
  const auto& g = *c.group;
  const std::size_t n = g.order(), e = g.identity();
  const std::int64_t m = c.modulus;
  CocycleCheck r;
  for (std::size_t a = 0; a < n; ++a)
    if (c(e, a) != 0 || c(a, e) != 0) {
      r.ok = false;
      r.triple = {a, e, e};
      r.reason = "not normalized at element " + std::to_string(a);
      return r;
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k) {
        std::int64_t lhs = c(a, b) + c(g.multiply(a, b), k), rhs = c(b, k) + c(a, g.multiply(b, k));
        if ((lhs - rhs) % m != 0) {
          r.ok = false;
          r.triple = {a, b, k};
          r.reason = "cocycle identity fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                     std::to_string(k) + ")";
          return r;
        }
      }
  return r;
}

/// Z/N x G with (s,g)(t,h) = (s + t + c(g,h), gh); element (s,g) has index s|G| + g.
struct CentralExtension {
  Cocycle2 cocycle;
  GroupPtr group;
  bool kernel_central = false;
  bool exact = false;

  std::size_t index(std::int64_t s, std::size_t g) const {
    return static_cast<std::size_t>(s) * cocycle.group->order() + g;
  }
  std::size_t projection(std::size_t x) const { return x % cocycle.group->order(); }
  std::int64_t fiber(std::size_t x) const { return static_cast<std::int64_t>(x / cocycle.group->order()); }
};

/// Multiplication table of the twisted product, valid or not.
inline FiniteGroup::Table twisted_product_table(const Cocycle2& c) {
  const std::size_t n = c.group->order(), total = n * static_cast<std::size_t>(c.modulus);
  FiniteGroup::Table t(total, std::vector<std::size_t>(total));
  for (std::size_t x = 0; x < total; ++x)
    for (std::size_t y = 0; y < total; ++y) {
      std::size_t g = x % n, h = y % n;
      std::int64_t s = static_cast<std::int64_t>(x / n), u = static_cast<std::int64_t>(y / n);
      std::int64_t f = (s + u + c(g, h)) % c.modulus;
      t[x][y] = static_cast<std::size_t>(f) * n + c.group->multiply(g, h);
    }
  return t;
}

inline CentralExtension build_central_extension(const Cocycle2& c) {
  auto check = check_cocycle(c);
  require(check.ok, ErrorCode::kPrecondition, "not a normalized 2-cocycle: " + check.reason);
  CentralExtension ext;
  ext.cocycle = c;
  ext.group = std::make_shared<FiniteGroup>(twisted_product_table(c));
  const auto& big = *ext.group;
  const std::size_t n = c.group->order(), e = c.group->identity();
  ext.kernel_central = true;
  for (std::int64_t s = 0; s < c.modulus; ++s)
    for (std::size_t y = 0; y < big.order(); ++y)
      if (big.multiply(ext.index(s, e), y) != big.multiply(y, ext.index(s, e))) ext.kernel_central = false;
  // projection is a surjective homomorphism whose kernel is Z/N x {e}
  bool hom = true;
  for (std::size_t x = 0; x < big.order(); ++x)
    for (std::size_t y = 0; y < big.order(); ++y)
      hom = hom && ext.projection(big.multiply(x, y)) == c.group->multiply(ext.projection(x), ext.projection(y));
  std::size_t kernel = 0;
  for (std::size_t x = 0; x < big.order(); ++x) kernel += ext.projection(x) == e;
  ext.exact = hom && big.identity() == ext.index(0, e) && kernel == static_cast<std::size_t>(c.modulus) &&
              big.order() == n * static_cast<std::size_t>(c.modulus);
  return ext;
}

/// The coboundary (db)(g,h) = b(g) + b(h) - b(gh) of a normalized 1-cochain.
inline Cocycle2 coboundary(const GroupPtr& g, std::int64_t modulus, const std::vector<std::int64_t>& b) {
  require(b.size() == g->order(), ErrorCode::kValidation, "1-cochain must have |G| entries");
  require(b[g->identity()] % modulus == 0, ErrorCode::kValidation, "1-cochain must vanish at the identity");
  auto c = Cocycle2::zero(g, modulus);
  for (std::size_t x = 0; x < g->order(); ++x)
    for (std::size_t y = 0; y < g->order(); ++y)
      c.values[x][y] = (((b[x] + b[y] - b[g->multiply(x, y)]) % modulus) + modulus) % modulus;
  return c;
}

namespace detail {

/// Normalized bar cochains: functions on (G - e)^n, tuples in lexicographic
/// order of the non-identity elements.
class BarComplex {
 public:
  explicit BarComplex(const FiniteGroup& g) : g_(g) {
    for (std::size_t x = 0; x < g.order(); ++x)
      if (x != g.identity()) {
        position_.push_back(others_.size());
        others_.push_back(x);
      } else {
        position_.push_back(SIZE_MAX);
      }
  }

  std::size_t rank(int n) const {
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) r *= others_.size();
    return r;
  }

  /// delta_n : C^n -> C^{n+1} as a rank(n+1) x rank(n) matrix.
  IntMatrix coboundary(int n) const {
    const std::size_t m = others_.size();
    IntMatrix d(rank(n + 1), rank(n));
    std::vector<std::size_t> tuple(static_cast<std::size_t>(n) + 1);
    for (std::size_t row = 0; row < d.rows(); ++row) {
      std::size_t r = row;
      for (int i = n; i >= 0; --i) {
        tuple[static_cast<std::size_t>(i)] = others_[r % m];
        r /= m;
      }
      // (df)(g_0..g_n) = f(g_1..g_n) + sum_i (-1)^{i+1} f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_0..g_{n-1})
      add(d, row, tuple, 1, n + 1, std::nullopt, 1);
      for (int i = 0; i < n; ++i) add(d, row, tuple, 0, n + 1, i, (i % 2 == 0) ? -1 : 1);
      add(d, row, tuple, 0, n, std::nullopt, (n + 1) % 2 == 0 ? 1 : -1);
    }
    return d;
  }

 private:
  // f evaluated on tuple[begin..end), with positions merge, merge+1 multiplied
  void add(IntMatrix& d, std::size_t row, const std::vector<std::size_t>& t, int begin, int end,
           std::optional<int> merge, int sign) const {
    std::size_t col = 0;
    const std::size_t m = others_.size();
    for (int i = begin; i < end; ++i) {
      std::size_t x = t[static_cast<std::size_t>(i)];
      if (merge && i == *merge) x = g_.multiply(x, t[static_cast<std::size_t>(++i)]);
      if (x == g_.identity()) return;
      col = col * m + position_[x];
    }
    d(row, col) += sign;
  }

  const FiniteGroup& g_;
  std::vector<std::size_t> others_;
  std::vector<std::size_t> position_;
};

inline void check_bar_budget(const BarComplex& bar, int n, std::size_t max_entries) {
  double entries = static_cast<double>(bar.rank(n)) * static_cast<double>(bar.rank(n + 1));
  require(entries <= static_cast<double>(max_entries), ErrorCode::kBudget,
          "bar complex in degree " + std::to_string(n) + " exceeds " + std::to_string(max_entries) + " entries");
}

}  // namespace detail

/// delta o delta on the normalized bar complex, C^n -> C^{n+2}.
inline bool bar_complex_squares_to_zero(const FiniteGroup& g, int n) {
  detail::BarComplex bar(g);
  IntMatrix dd = bar.coboundary(n + 1) * bar.coboundary(n);
  for (std::size_t i = 0; i < dd.rows(); ++i)
    for (std::size_t j = 0; j < dd.cols(); ++j)
      if (dd(i, j) != 0) return false;
  return true;
}

/// H^k(G; Z) from the normalized bar complex.
inline AbelianGroup group_cohomology_Z(const FiniteGroup& g, int k, std::size_t max_entries = 4'000'000) {
  require(k >= 0 && k <= 4, ErrorCode::kValidation, "group cohomology degree must be between 0 and 4");
  detail::BarComplex bar(g);
  detail::check_bar_budget(bar, k, max_entries);
  IntMatrix incoming = k == 0 ? IntMatrix(1, 0) : bar.coboundary(k - 1);
  return Subquotient(bar.coboundary(k), incoming, bar.rank(k), 0).group();
}

struct CohomologyWitness {
  bool cohomologous = false;
  /// b with c' - c = db when cohomologous.
  std::vector<std::int64_t> witness;
};

/// Solves c' - c = db over Z/N for a normalized 1-cochain b.
inline CohomologyWitness are_cohomologous(const Cocycle2& c, const Cocycle2& d) {
  require(c.group->table() == d.group->table() && c.modulus == d.modulus, ErrorCode::kMismatch,
          "cocycles over different groups or moduli");
  const auto& g = *c.group;
  detail::BarComplex bar(g);
  IntMatrix d1 = bar.coboundary(1);
  const std::size_t rows = d1.rows(), cols = d1.cols();
  // [d1 | N I] x = c' - c on the non-identity pairs
  IntMatrix a(rows, cols + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = d1(i, j);
    a(i, cols + i) = c.modulus;
  }
  std::vector<std::size_t> others;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (x != g.identity()) others.push_back(x);
  Vector rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t x = others[i / others.size()], y = others[i % others.size()];
    rhs[i] = d(x, y) - c(x, y);
  }
  CohomologyWitness r;
  // coboundaries of normalized cochains vanish on pairs involving e
  for (std::size_t x = 0; x < g.order(); ++x)
    if (c(x, g.identity()) != d(x, g.identity()) || c(g.identity(), x) != d(g.identity(), x)) return r;
  auto sol = solve_integer(a, rhs);
  if (!sol) return r;
  r.cohomologous = true;
  r.witness.assign(g.order(), 0);
  for (std::size_t j = 0; j < cols; ++j)
    r.witness[others[j]] = static_cast<std::int64_t>(mod_floor((*sol)[j], c.modulus));
  return r;
}

namespace detail {

/// Homomorphisms G -> Z/e, as value tables, by assigning images to a
/// greedy generating set and propagating.
inline std::vector<std::vector<std::int64_t>> characters(const FiniteGroup& g, std::int64_t e) {
  const std::size_t n = g.order();
  std::vector<std::size_t> gens;
  std::vector<bool> span(n, false);
  span[g.identity()] = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (span[x]) continue;
    gens.push_back(x);
    std::vector<std::size_t> queue;
    for (std::size_t y = 0; y < n; ++y)
      if (span[y]) queue.push_back(y);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (std::size_t s : gens)
        if (std::size_t z = g.multiply(queue[qi], s); !span[z]) {
          span[z] = true;
          queue.push_back(z);
        }
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> images(gens.size(), 0);
  while (true) {
    std::vector<std::int64_t> chi(n, -1);
    chi[g.identity()] = 0;
    std::vector<std::size_t> queue{g.identity()};
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::size_t y = g.multiply(queue[qi], gens[k]);
        std::int64_t v = (chi[queue[qi]] + images[k]) % e;
        if (chi[y] < 0) {
          chi[y] = v;
          queue.push_back(y);
        } else if (chi[y] != v) {
          ok = false;
          break;
        }
      }
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) ok = chi[g.multiply(a, b)] == (chi[a] + chi[b]) % e;
    if (ok) out.push_back(chi);
    std::size_t i = 0;
    while (i < images.size() && ++images[i] == e) images[i++] = 0;
    if (i == images.size()) break;
  }
  return out;
}

}  // namespace detail

struct AnomalyClassification {
  /// H^2(G; U(1)), computed from Z/N cocycles modulo coboundaries and the
  /// image of the Bockstein Hom(G, U(1)) -> H^2(G; Z/N).
  AbelianGroup group;
  /// H^3(G; Z), which is isomorphic to it.
  AbelianGroup predicted;
  std::int64_t modulus = 0;
  /// One normalized cocycle per class, in the order of group.elements().
  std::vector<Cocycle2> representatives;
  bool counts_match = false;
};

/// Anomalies of a 0-form symmetry G: H^2(G; U(1)) with explicit cocycles.
inline AnomalyClassification classify_anomalies_zero_form(const GroupPtr& gp, std::size_t max_order = 8) {
  const auto& g = *gp;
  require(g.order() <= max_order, ErrorCode::kBudget,
          "group order " + std::to_string(g.order()) + " exceeds the bound " + std::to_string(max_order));
  detail::BarComplex bar(g);
  std::vector<std::size_t> others;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (x != g.identity()) others.push_back(x);
  const std::size_t cells = bar.rank(2);

  AnomalyClassification out;
  out.predicted = group_cohomology_Z(g, 3);
  const Integer predicted_order = out.predicted.order();
  std::vector<std::int64_t> candidates{static_cast<std::int64_t>(g.exponent())};
  if (g.order() != g.exponent()) candidates.push_back(static_cast<std::int64_t>(g.order()));
  if (g.order() == 1) candidates = {2};

  for (std::int64_t n : candidates) {
    IntMatrix incoming = bar.coboundary(1);
    // carry cocycles: chi = r/E with r in [0, E), d(chi/N) = r(g) + r(h) - r(gh) over E
    const std::int64_t e = static_cast<std::int64_t>(g.exponent());
    std::vector<Vector> extra;
    for (const auto& chi : detail::characters(g, e)) {
      Vector col(cells);
      for (std::size_t i = 0; i < cells; ++i) {
        std::size_t x = others[i / others.size()], y = others[i % others.size()];
        col[i] = (chi[x] + chi[y] - chi[g.multiply(x, y)]) / e;
      }
      extra.push_back(col);
    }
    IntMatrix relations(cells, incoming.cols() + extra.size());
    for (std::size_t i = 0; i < cells; ++i) {
      for (std::size_t j = 0; j < incoming.cols(); ++j) relations(i, j) = incoming(i, j);
      for (std::size_t j = 0; j < extra.size(); ++j) relations(i, incoming.cols() + j) = extra[j][i];
    }
    Subquotient h(bar.coboundary(2), relations, cells, n);
    out.group = h.group();
    out.modulus = n;
    out.counts_match = out.group.order() == predicted_order;
    if (!out.counts_match) continue;
    out.representatives.clear();
    for (const auto& cls : out.group.elements()) {
      Vector z = h.representative(cls);
      auto c = Cocycle2::zero(gp, n);
      for (std::size_t i = 0; i < cells; ++i)
        c.values[others[i / others.size()]][others[i % others.size()]] =
            static_cast<std::int64_t>(mod_floor(z[i], n));
      out.representatives.push_back(std::move(c));
    }
    break;
  }
  return out;
}

/// Anomalies of higher-form finite symmetries need Eilenberg-MacLane space
/// cohomology, which is not available.
inline AnomalyClassification classify_anomalies(const GroupPtr& g, int form_degree) {
  require(form_degree == 0, ErrorCode::kUnsupported,
          "anomalies of " + std::to_string(form_degree) + "-form symmetries are not supported");
  return classify_anomalies_zero_form(g);
}

}  // namespace formsym
