#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "formsym/abelian_group.hpp"
#include "formsym/complex.hpp"

namespace formsym {

/// A chain whose coefficient on each basis cell lies in A: one row per
/// cell, one column per canonical generator of A.
using CoefficientChain = IntMatrix;

/// z (x) a for an integral chain z and an element a of A.
inline CoefficientChain tensor(const Vector& z, const Element& a) {
  CoefficientChain c(z.size(), a.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) = z[i] * a[j];
  return c;
}

/// ker(outgoing) / im(incoming) for a free integral complex tensored with a
/// finitely generated A, computed one cyclic summand of A at a time.
class CoefficientHomology {
 public:
  CoefficientHomology() = default;

  CoefficientHomology(const IntMatrix& outgoing, const IntMatrix& incoming, std::size_t ambient,
                      AbelianGroup coefficients)
      : coefficients_(std::move(coefficients)), ambient_(ambient) {
    std::map<Integer, Subquotient> by_modulus;
    std::vector<AbelianGroup> parts;
    for (std::size_t j = 0; j < coefficients_.dimension(); ++j) {
      Integer m = coefficients_.modulus(j);
      auto it = by_modulus.find(m);
      if (it == by_modulus.end()) it = by_modulus.emplace(m, Subquotient(outgoing, incoming, ambient, m)).first;
      parts_.push_back(it->second);
      parts.push_back(it->second.group());
    }
    sum_ = direct_sum(parts);
  }

  const AbelianGroup& group() const noexcept { return sum_.group; }
  const AbelianGroup& coefficients() const noexcept { return coefficients_; }
  std::size_t ambient() const noexcept { return ambient_; }

  bool is_cycle(const CoefficientChain& c) const {
    check_shape(c);
    for (std::size_t j = 0; j < parts_.size(); ++j)
      if (!parts_[j].is_cycle(c.column(j))) return false;
    return true;
  }

  Element class_of(const CoefficientChain& c) const {
    check_shape(c);
    std::vector<Element> pieces;
    for (std::size_t j = 0; j < parts_.size(); ++j) pieces.push_back(parts_[j].class_of(c.column(j)));
    return sum_.combine(pieces);
  }

  CoefficientChain representative(const Element& x) const {
    CoefficientChain c(ambient_, parts_.size());
    for (std::size_t j = 0; j < parts_.size(); ++j) c.set_column(j, parts_[j].representative(sum_.projections[j].apply(x)));
    return c;
  }

 private:
  void check_shape(const CoefficientChain& c) const {
    require(c.rows() == ambient_ && c.cols() == parts_.size(), ErrorCode::kValidation,
            "coefficient chain has wrong shape");
  }

  AbelianGroup coefficients_;
  std::size_t ambient_ = 0;
  std::vector<Subquotient> parts_;
  DirectSum sum_ = direct_sum({});
};

/// Boundary matrices d_0 .. d_{dim+1} of a complex; d_k maps C_k to C_{k-1}.
inline std::vector<IntMatrix> boundary_matrices(const SimplicialComplex& k) {
  std::vector<IntMatrix> out;
  for (int n = 0; n <= k.dimension() + 1; ++n) out.push_back(k.boundary(n));
  return out;
}

/// Consecutive composites vanish.
inline bool is_chain_complex(const std::vector<IntMatrix>& differentials) {
  for (std::size_t i = 0; i + 1 < differentials.size(); ++i) {
    const auto& a = differentials[i];
    const auto& b = differentials[i + 1];
    if (a.cols() != b.rows()) return false;
    if (a.rows() > 0 && b.cols() > 0 && !(a * b).is_zero()) return false;
  }
  return true;
}

inline CoefficientHomology chain_homology(const SimplicialComplex& k, int n, const AbelianGroup& a) {
  require(n >= 0, ErrorCode::kValidation, "negative degree");
  return CoefficientHomology(k.boundary(n), k.boundary(n + 1), k.count(n), a);
}

/// H_n(K; A).
inline AbelianGroup homology(const SimplicialComplex& k, int n, const AbelianGroup& a) {
  if (n < 0 || n > k.dimension()) return AbelianGroup::trivial();
  return chain_homology(k, n, a).group();
}

inline AbelianGroup homology(const Subcomplex& k, int n, const AbelianGroup& a) {
  return homology(*k.as_complex(), n, a);
}

/// Euler characteristic from integral Betti numbers.
inline long betti_euler_characteristic(const SimplicialComplex& k) {
  long chi = 0;
  for (int n = 0; n <= k.dimension(); ++n)
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(homology(k, n, AbelianGroup::free(1)).rank());
  return chi;
}

namespace detail {

/// Coboundary C^n -> C^{n+1} restricted to the given cells.
inline IntMatrix restricted_coboundary(const SimplicialComplex& x, const std::vector<SimplexId>& from,
                                       const std::vector<SimplexId>& to) {
  IntMatrix m(to.size(), from.size());
  if (from.empty() || to.empty()) return m;
  std::vector<std::size_t> col(x.size(), SIZE_MAX);
  for (std::size_t j = 0; j < from.size(); ++j) col[from[j]] = j;
  for (std::size_t i = 0; i < to.size(); ++i) {
    const auto& fs = x.faces(to[i]);
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (col[fs[j]] != SIZE_MAX) m(i, col[fs[j]]) = (j % 2 == 0) ? 1 : -1;
  }
  return m;
}

}  // namespace detail

/// Coboundary matrices of the cochains supported on U, degrees 0..d.
inline std::vector<IntMatrix> supported_coboundaries(const StarOpen& u) {
  const auto& x = u.complex();
  std::vector<IntMatrix> out;
  for (int n = -1; n <= x.dimension(); ++n)
    out.push_back(detail::restricted_coboundary(x, u.ids_of_dim(n), u.ids_of_dim(n + 1)));
  return out;
}

/// H^n_c(U; A) = H^n(X, X \ U): cochains on the simplices of U with the
/// ambient coboundary. Up-closure of U makes the restriction a subcomplex
/// of the cochain complex.
class CompactCohomology {
 public:
  CompactCohomology(StarOpen open, int degree, const AbelianGroup& a)
      : open_(std::move(open)), degree_(degree), cells_(open_.ids_of_dim(degree)) {
    require(degree >= 0, ErrorCode::kValidation, "negative degree");
    const auto& x = open_.complex();
    auto below = open_.ids_of_dim(degree - 1), above = open_.ids_of_dim(degree + 1);
    data_ = CoefficientHomology(detail::restricted_coboundary(x, cells_, above),
                                detail::restricted_coboundary(x, below, cells_), cells_.size(), a);
  }

  const StarOpen& open() const noexcept { return open_; }
  int degree() const noexcept { return degree_; }
  const AbelianGroup& group() const noexcept { return data_.group(); }
  const AbelianGroup& coefficients() const noexcept { return data_.coefficients(); }
  /// Basis cells: the degree-n simplices of U in parent id order.
  const std::vector<SimplexId>& cells() const noexcept { return cells_; }

  bool is_cocycle(const CoefficientChain& c) const { return data_.is_cycle(c); }
  Element class_of(const CoefficientChain& c) const { return data_.class_of(c); }
  CoefficientChain representative(const Element& x) const { return data_.representative(x); }

  /// Cochain on these cells from values keyed by parent simplex id.
  CoefficientChain cochain(const std::map<SimplexId, Element>& values) const {
    CoefficientChain c(cells_.size(), coefficients().dimension());
    for (const auto& [id, v] : values) {
      auto it = std::lower_bound(cells_.begin(), cells_.end(), id);
      require(it != cells_.end() && *it == id, ErrorCode::kValidation, "cochain value outside the open set");
      for (std::size_t j = 0; j < v.size(); ++j) c(static_cast<std::size_t>(it - cells_.begin()), j) = v[j];
    }
    return c;
  }

 private:
  StarOpen open_;
  int degree_;
  std::vector<SimplexId> cells_;
  CoefficientHomology data_;
};

inline AbelianGroup compactly_supported_cohomology(const StarOpen& u, int n, const AbelianGroup& a) {
  if (n < 0 || n > u.complex().dimension()) return AbelianGroup::trivial();
  return CompactCohomology(u, n, a).group();
}

/// Extension by zero H^n_c(U) -> H^n_c(V) for U inside V.
inline GroupHom extension_map(const CompactCohomology& from, const CompactCohomology& to) {
  require(from.degree() == to.degree() && from.coefficients() == to.coefficients(), ErrorCode::kMismatch,
          "extension between different degrees or coefficients");
  require(from.open().is_subset_of(to.open()), ErrorCode::kPrecondition, "extension needs nested open sets");
  std::vector<std::size_t> row(from.open().complex().size(), SIZE_MAX);
  for (std::size_t i = 0; i < to.cells().size(); ++i) row[to.cells()[i]] = i;
  const std::size_t width = from.coefficients().dimension();
  std::vector<Element> images;
  for (std::size_t g = 0; g < from.group().dimension(); ++g) {
    CoefficientChain small = from.representative(from.group().generator(g));
    CoefficientChain big(to.cells().size(), width);
    for (std::size_t i = 0; i < from.cells().size(); ++i)
      for (std::size_t j = 0; j < width; ++j) big(row[from.cells()[i]], j) = small(i, j);
    images.push_back(to.class_of(big));
  }
  return GroupHom::from_images(from.group(), to.group(), images);
}

inline GroupHom extension_map(const StarOpen& u, const StarOpen& v, int n, const AbelianGroup& a) {
  return extension_map(CompactCohomology(u, n, a), CompactCohomology(v, n, a));
}

/// pi_i of the space of compactly supported maps U -> B^n A: H^{n-i}_c(U; A)
/// for i <= n, zero above.
inline AbelianGroup homotopy_groups_of_symmetry_space(const StarOpen& u, int n, const AbelianGroup& a, int i) {
  require(n >= 1 && i >= 0, ErrorCode::kValidation, "need n >= 1 and i >= 0");
  if (i > n) return AbelianGroup::trivial();
  return compactly_supported_cohomology(u, n - i, a);
}

/// A top simplex of sd(X) as the nested chain tau_0 < ... < tau_d, with
/// the coefficient it carries in the subdivided fundamental cycle.
struct SignedFlag {
  std::vector<SimplexId> chain;
  int sign;
};

/// Subdivided fundamental cycle. Subdivision is the cone construction
/// S(s) = b_s * S(ds), which lists a flag from the top simplex downwards;
/// the sign accumulates the positions of the dropped vertices, and
/// reversing to increasing order costs (-1)^{d(d+1)/2}.
/// Signs are per top simplex in local order; a zero sign omits the simplex.
inline std::vector<SignedFlag> fundamental_flags(const SimplicialComplex& x, const std::vector<int>& signs) {
  const int d = x.dimension();
  std::vector<SignedFlag> out;
  std::vector<SimplexId> down;
  const int reversal = (d * (d + 1) / 2) % 2 == 0 ? 1 : -1;
  auto walk = [&](auto&& self, SimplexId s, int sign) -> void {
    down.push_back(s);
    if (x.dim_of(s) == 0) {
      out.push_back({std::vector<SimplexId>(down.rbegin(), down.rend()), sign * reversal});
    } else {
      const auto& fs = x.faces(s);
      for (std::size_t j = 0; j < fs.size(); ++j) self(self, fs[j], j % 2 == 0 ? sign : -sign);
    }
    down.pop_back();
  };
  for (SimplexId t : x.of_dim(d))
    if (int sign = signs.at(x.local_index(t)); sign != 0) walk(walk, t, sign);
  return out;
}

inline std::vector<SignedFlag> fundamental_flags(const Orientation& o) {
  return fundamental_flags(*o.parent(), o.signs());
}

/// Cap product with the fundamental cycle, H^p_c(U; A) -> H_{d-p}(N(U); A).
/// A cochain on X is pulled back to sd(X) along the simplicial approximation
/// b(tau) -> max vertex of tau, then capped with the subdivided fundamental
/// cycle (front p-face evaluated, back face kept). The result is supported
/// on chains of simplices of U, which is the nerve model.
class DualityMap {
 public:
  DualityMap(const Orientation& o, const StarOpen& u)
      : flags_(fundamental_flags(o)), open_(u), nerve_(nerve_model(u)) {
    require(same_complex(o.parent(), u.parent()), ErrorCode::kMismatch, "orientation and open set differ in complex");
  }

  /// From a relative fundamental chain: signed top simplices of U whose
  /// boundary lies outside U.
  DualityMap(std::vector<SignedFlag> flags, const StarOpen& u)
      : flags_(std::move(flags)), open_(u), nerve_(nerve_model(u)) {}

  const Subdivision& nerve() const noexcept { return nerve_; }

  /// Chain-level image of a supported p-cochain (rows indexed by cells).
  CoefficientChain apply(const CompactCohomology& hc, const CoefficientChain& cochain) const {
    const auto& x = open_.complex();
    const int d = x.dimension(), p = hc.degree();
    const std::size_t width = hc.coefficients().dimension();
    if (!nerve_.complex) return CoefficientChain(0, width);
    const auto& n = *nerve_.complex;
    CoefficientChain out(n.count(d - p), width);
    std::vector<std::size_t> row(x.size(), SIZE_MAX);
    for (std::size_t i = 0; i < hc.cells().size(); ++i) row[hc.cells()[i]] = i;
    for (const auto& f : flags_) {
      Simplex image;
      for (int i = 0; i <= p; ++i) {
        Vertex top = x.simplex(f.chain[static_cast<std::size_t>(i)]).back();
        if (!image.empty() && image.back() == top) break;
        image.push_back(top);
      }
      if (static_cast<int>(image.size()) != p + 1) continue;
      SimplexId face = x.id(image);
      if (row[face] == SIZE_MAX) continue;
      Simplex back;
      for (int i = p; i <= d; ++i) back.push_back(static_cast<Vertex>(f.chain[static_cast<std::size_t>(i)]));
      std::size_t target = n.local_index(n.id(back));
      for (std::size_t j = 0; j < width; ++j) out(target, j) += f.sign * cochain(row[face], j);
    }
    return out;
  }

  /// The induced map on classes.
  GroupHom on_classes(const CompactCohomology& hc, const CoefficientHomology& hn) const {
    std::vector<Element> images;
    for (std::size_t g = 0; g < hc.group().dimension(); ++g)
      images.push_back(hn.class_of(apply(hc, hc.representative(hc.group().generator(g)))));
    return GroupHom::from_images(hc.group(), hn.group(), images);
  }

  /// Homology of the nerve model in degree k.
  CoefficientHomology nerve_homology(int k, const AbelianGroup& a) const {
    if (!nerve_.complex || k < 0 || k > nerve_.complex->dimension())
      return CoefficientHomology(IntMatrix(0, 0), IntMatrix(0, 0), 0, a);
    return chain_homology(*nerve_.complex, k, a);
  }

 private:
  std::vector<SignedFlag> flags_;
  StarOpen open_;
  Subdivision nerve_;
};

/// Whether an orientation yields a valid fundamental class with coefficients in A.
inline bool orientation_serves(const Orientation& o, const AbelianGroup& a) {
  return o.modulus() == 0 || (a.is_finite() && 2 % a.exponent() == 0);
}

struct DualityDegree {
  int degree;  // n, the cohomological degree
  AbelianGroup compact_cohomology;
  AbelianGroup nerve_homology;  // in degree d - n
  bool groups_match;
  std::optional<bool> map_is_isomorphism;
};

struct DualityReport {
  std::vector<DualityDegree> degrees;
  bool orientation_used = false;
  bool pass() const {
    for (const auto& d : degrees)
      if (!d.groups_match || d.map_is_isomorphism == false) return false;
    return true;
  }
};

/// Compares H^n_c(U; A) with H_{d-n}(N(U); A) in every degree. With an
/// orientation valid for A the cap-product map is also built and tested.
inline DualityReport poincare_duality_check(const ComplexPtr& x, const std::optional<Orientation>& o,
                                            const StarOpen& u, const AbelianGroup& a) {
  const int d = x->dimension();
  require(check_closed_pseudomanifold(*x, d), ErrorCode::kPrecondition, "duality needs a closed pseudomanifold");
  require(same_complex(x, u.parent()), ErrorCode::kMismatch, "open set is not on this complex");
  DualityReport r;
  std::optional<DualityMap> map;
  if (o && orientation_serves(*o, a)) {
    map.emplace(*o, u);
    r.orientation_used = true;
  }
  Subdivision nerve = map ? map->nerve() : nerve_model(u);
  for (int n = 0; n <= d; ++n) {
    CompactCohomology hc(u, n, a);
    DualityDegree entry{n, hc.group(), AbelianGroup::trivial(), false, std::nullopt};
    if (map) {
      CoefficientHomology hn = map->nerve_homology(d - n, a);
      entry.nerve_homology = hn.group();
      entry.map_is_isomorphism = map->on_classes(hc, hn).is_isomorphism();
    } else if (nerve.complex) {
      entry.nerve_homology = homology(*nerve.complex, d - n, a);
    }
    entry.groups_match = entry.compact_cohomology == entry.nerve_homology;
    r.degrees.push_back(std::move(entry));
  }
  return r;
}

}  // namespace formsym
