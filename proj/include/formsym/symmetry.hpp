#pragma once

#include <concepts>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formsym/finite_group.hpp"
#include "formsym/homology.hpp"

namespace formsym {

/// Short printable name of an open set: its minimal generators.
inline std::string describe_open(const StarOpen& u) {
  if (u.empty()) return "{}";
  std::string out;
  for (const auto& g : u.minimal_generators()) out += "[" + simplex_to_string(g) + "]";
  return out;
}

/// A multiplication map of a prefactorization algebra: from the sum of the
/// values on disjoint inputs to the value on the containing open.
struct StructureMap {
  DirectSum source;
  GroupHom map;
};

template <class F>
concept Prefactorization = requires(const F& f, const StarOpen& u, const std::vector<StarOpen>& inputs) {
  { f.complex() } -> std::convertible_to<ComplexPtr>;
  { f.value(u) } -> std::convertible_to<AbelianGroup>;
  { f.structure_map(inputs, u) } -> std::same_as<StructureMap>;
};

namespace detail {

inline void check_configuration(const ComplexPtr& x, const std::vector<StarOpen>& inputs, const StarOpen& target) {
  require(same_complex(x, target.parent()), ErrorCode::kMismatch, "open set belongs to another complex");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    require(same_complex(x, inputs[i].parent()), ErrorCode::kMismatch, "open set belongs to another complex");
    require(inputs[i].is_subset_of(target), ErrorCode::kPrecondition,
            "input " + describe_open(inputs[i]) + " is not contained in " + describe_open(target));
    for (std::size_t j = 0; j < i; ++j)
      if (auto w = inputs[i].overlap_witness(inputs[j]))
        fail(ErrorCode::kDisjointness, "inputs " + std::to_string(j) + " and " + std::to_string(i) +
                                           " overlap in simplex {" + simplex_to_string(x->simplex(*w)) + "}");
  }
}

}  // namespace detail

/// U -> H^{q+1}_c(U; A) on the open sets of X, with extension by zero as
/// the structure maps. Values and extension maps are memoized; the caches
/// are guarded so one algebra can be queried from several threads.
class QFormAlgebra {
 public:
  static std::shared_ptr<const QFormAlgebra> create(ComplexPtr x, int q, AbelianGroup a) {
    return std::shared_ptr<const QFormAlgebra>(new QFormAlgebra(std::move(x), q, std::move(a)));
  }

  const ComplexPtr& complex() const noexcept { return x_; }
  int dimension() const noexcept { return x_->dimension(); }
  int q() const noexcept { return q_; }
  int degree() const noexcept { return q_ + 1; }
  const AbelianGroup& coefficients() const noexcept { return a_; }

  const CompactCohomology& cohomology(const StarOpen& u) const {
    require(same_complex(x_, u.parent()), ErrorCode::kMismatch, "open set belongs to another complex");
    std::lock_guard lock(mutex_);
    auto it = values_.find(u.members());
    if (it == values_.end()) it = values_.emplace(u.members(), std::make_shared<CompactCohomology>(u, degree(), a_)).first;
    return *it->second;
  }

  AbelianGroup value(const StarOpen& u) const { return cohomology(u).group(); }

  GroupHom extension(const StarOpen& u, const StarOpen& v) const {
    const auto& hu = cohomology(u);
    const auto& hv = cohomology(v);
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(u.members(), v.members());
    auto it = extensions_.find(key);
    if (it == extensions_.end()) it = extensions_.emplace(key, extension_map(hu, hv)).first;
    return it->second;
  }

  StructureMap structure_map(const std::vector<StarOpen>& inputs, const StarOpen& target) const {
    detail::check_configuration(x_, inputs, target);
    std::vector<AbelianGroup> values;
    std::vector<GroupHom> maps;
    for (const auto& u : inputs) {
      values.push_back(value(u));
      maps.push_back(extension(u, target));
    }
    DirectSum sum = direct_sum(values);
    GroupHom m = hom_from_sum(sum, maps, value(target));
    return {std::move(sum), std::move(m)};
  }

  /// a -> the class dual to a * [M] in H^{q+1}_c(star(M); A), cached per
  /// (M, orientation of M). See defect_operator.
  GroupHom defect_map(const Subcomplex& m, const Orientation& m_orientation) const;

 private:
  QFormAlgebra(ComplexPtr x, int q, AbelianGroup a) : x_(std::move(x)), q_(q), a_(std::move(a)) {
    require(x_ != nullptr, ErrorCode::kValidation, "algebra over a null complex");
    require(q_ >= 0 && q_ + 1 <= x_->dimension(), ErrorCode::kValidation, "need 0 <= q and q + 1 <= d");
  }

  ComplexPtr x_;
  int q_;
  AbelianGroup a_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<bool>, std::shared_ptr<const CompactCohomology>> values_;
  mutable std::map<std::pair<std::vector<bool>, std::vector<bool>>, GroupHom> extensions_;
  mutable std::map<std::tuple<std::vector<bool>, std::vector<int>, int>, GroupHom> defects_;
};

using AlgebraPtr = std::shared_ptr<const QFormAlgebra>;

/// Opens U_{i,j} inside V_i inside W, each level pairwise disjoint.
struct Nesting {
  struct Group {
    StarOpen middle;
    std::vector<StarOpen> inner;
  };
  std::vector<Group> groups;
  StarOpen outer;
};

struct CoherenceResult {
  bool commutes = false;
  GroupHom composite;  // through the middle level
  GroupHom direct;
  std::string counterexample;
};

/// Compares (+)F(U_ij) -> (+)F(V_i) -> F(W) with (+)F(U_ij) -> F(W).
template <Prefactorization F>
CoherenceResult check_coherence(const F& f, const Nesting& n) {
  std::vector<StarOpen> middles, flat;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < n.groups.size(); ++i) {
    middles.push_back(n.groups[i].middle);
    for (const auto& u : n.groups[i].inner) {
      flat.push_back(u);
      owner.push_back(i);
    }
  }
  StructureMap outer = f.structure_map(middles, n.outer);
  StructureMap direct = f.structure_map(flat, n.outer);
  std::vector<StructureMap> level;
  for (const auto& g : n.groups) level.push_back(f.structure_map(g.inner, g.middle));

  std::vector<GroupHom> pieces;
  std::vector<std::size_t> position(n.groups.size(), 0);
  for (std::size_t k = 0; k < flat.size(); ++k) {
    std::size_t i = owner[k];
    const StructureMap& m = level[i];
    pieces.push_back(outer.source.injections[i].compose(m.map).compose(m.source.injections[position[i]++]));
  }
  GroupHom to_middle = hom_from_sum(direct.source, pieces, outer.source.group);
  CoherenceResult r;
  r.composite = outer.map.compose(to_middle);
  r.direct = direct.map;
  r.commutes = r.composite == r.direct;
  if (!r.commutes)
    for (std::size_t k = 0; k < flat.size(); ++k)
      if (!(r.composite.compose(direct.source.injections[k]) == r.direct.compose(direct.source.injections[k]))) {
        r.counterexample = "input " + describe_open(flat[k]) + " maps differently through " +
                           describe_open(middles[owner[k]]);
        break;
      }
  return r;
}

/// Isomorphism between two direct sums whose summands are a reordering:
/// to.summands[k] == from.summands[perm[k]].
inline GroupHom reorder_summands(const DirectSum& from, const DirectSum& to, const std::vector<std::size_t>& perm) {
  require(perm.size() == to.summands.size() && perm.size() == from.summands.size(), ErrorCode::kMismatch,
          "permutation has wrong length");
  GroupHom out = GroupHom::zero(from.group, to.group);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    require(to.summands[k] == from.summands[perm[k]], ErrorCode::kMismatch, "summands are not a reordering");
    out = out + to.injections[k].compose(from.projections[perm[k]]);
  }
  return out;
}

/// Structure map on permuted inputs, transported back: equals the original
/// map exactly when the structure maps are symmetric.
template <Prefactorization F>
bool structure_map_is_symmetric(const F& f, const std::vector<StarOpen>& inputs, const StarOpen& target,
                                const std::vector<std::size_t>& perm) {
  std::vector<StarOpen> permuted;
  for (std::size_t k : perm) permuted.push_back(inputs.at(k));
  StructureMap a = f.structure_map(inputs, target);
  StructureMap b = f.structure_map(permuted, target);
  return b.map.compose(reorder_summands(a.source, b.source, perm)) == a.map;
}

namespace detail {

/// Signs on the top simplices inside U, propagated across codimension-one
/// faces that lie in U; each component starts at +1 on its lowest simplex.
inline std::optional<std::vector<int>> orient_open(const StarOpen& u) {
  const auto& x = u.complex();
  const int d = x.dimension();
  std::vector<int> sign(x.count(d), 0);
  for (SimplexId start : u.ids_of_dim(d)) {
    if (sign[x.local_index(start)] != 0) continue;
    sign[x.local_index(start)] = 1;
    std::vector<SimplexId> queue{start};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      SimplexId s = queue[qi];
      const auto& fs = x.faces(s);
      for (std::size_t j = 0; j < fs.size(); ++j) {
        if (!u.contains(fs[j])) continue;
        for (SimplexId t : x.cofaces(fs[j])) {
          if (t == s) continue;
          const auto& ft = x.faces(t);
          std::size_t k = static_cast<std::size_t>(std::find(ft.begin(), ft.end(), fs[j]) - ft.begin());
          int want = -sign[x.local_index(s)] * (j % 2 == 0 ? 1 : -1) * (k % 2 == 0 ? 1 : -1);
          int& have = sign[x.local_index(t)];
          if (have == 0) {
            have = want;
            queue.push_back(t);
          } else if (have != want) {
            return std::nullopt;
          }
        }
      }
    }
  }
  return sign;
}

}  // namespace detail

inline GroupHom QFormAlgebra::defect_map(const Subcomplex& m, const Orientation& m_orientation) const {
  require(same_complex(x_, m.parent()), ErrorCode::kMismatch, "defect support belongs to another complex");
  const int k = dimension() - degree();
  ComplexPtr mc = m.as_complex();
  require(m.dimension() == k, ErrorCode::kPrecondition,
          "defect support must have dimension " + std::to_string(k));
  require(check_closed_pseudomanifold(*mc, k), ErrorCode::kPrecondition,
          "defect support must be a closed connected pseudomanifold");
  require(same_complex(mc, m_orientation.parent()), ErrorCode::kMismatch,
          "orientation is not on the defect support");
  require(orientation_serves(m_orientation, a_), ErrorCode::kOrientability,
          "a mod 2 orientation of the support does not pin classes with coefficients " + a_.to_string());

  auto key = std::make_tuple(m.members(), m_orientation.signs(), m_orientation.modulus());
  {
    std::lock_guard lock(mutex_);
    auto it = defects_.find(key);
    if (it != defects_.end()) return it->second;
  }

  StarOpen u = star_open(m);
  // orientation of the ambient top simplices near M
  std::vector<int> signs;
  if (auto o = orient(x_); o.orientable()) {
    signs = o.orientation->signs();
  } else if (auto local = detail::orient_open(u)) {
    signs = *local;
  } else {
    require(a_.is_finite() && 2 % a_.exponent() == 0, ErrorCode::kOrientability,
            "neighborhood of the support is not orientable and 2A != 0");
    signs.assign(x_->count(dimension()), 1);
  }
  std::vector<int> restricted = signs;
  for (SimplexId t : x_->of_dim(dimension()))
    if (!u.contains(t)) restricted[x_->local_index(t)] = 0;

  DualityMap dual(fundamental_flags(*x_, restricted), u);
  const auto& hc = cohomology(u);
  CoefficientHomology hn = dual.nerve_homology(k, a_);
  GroupHom d = dual.on_classes(hc, hn);
  require(d.is_isomorphism(), ErrorCode::kInternal, "duality map on the neighborhood is not an isomorphism");

  // fundamental cycle of M, subdivided, inside the nerve model of U
  const auto& nerve = *dual.nerve().complex;
  Vector z(nerve.count(k));
  for (const auto& f : fundamental_flags(m_orientation)) {
    Simplex chain;
    for (SimplexId s : f.chain) chain.push_back(static_cast<Vertex>(x_->id(mc->simplex(s))));
    z[nerve.local_index(nerve.id(chain))] += f.sign;
  }
  std::vector<Element> images;
  for (std::size_t j = 0; j < a_.dimension(); ++j) images.push_back(hn.class_of(tensor(z, a_.generator(j))));
  GroupHom fundamental = GroupHom::from_images(a_, hn.group(), images);
  require(fundamental.is_isomorphism(), ErrorCode::kOrientability,
          "A -> H^" + std::to_string(degree()) + "_c(star(M); A) is not an isomorphism: M is not " +
              a_.to_string() + "-orientable or its neighborhood is not a product");
  GroupHom result = d.inverse().compose(fundamental);
  std::lock_guard lock(mutex_);
  defects_.emplace(key, result);
  return result;
}

struct DefectLabel {
  Subcomplex support;
  Element label;
  Orientation orientation;
};

/// A class in H^{q+1}_c(U; A), optionally remembered as a labeled defect.
struct SymmetryOperator {
  AlgebraPtr algebra;
  StarOpen open;
  Element value;
  std::optional<DefectLabel> defect;

  bool is_identity() const { return algebra->value(open).is_zero(value); }
};

inline SymmetryOperator defect_operator(const AlgebraPtr& f, const Subcomplex& m, const Element& a,
                                        const Orientation& m_orientation) {
  Element label = f->coefficients().reduce(a);
  GroupHom map = f->defect_map(m, m_orientation);
  return {f, star_open(m), map.apply(label), DefectLabel{m, label, m_orientation}};
}

/// Product in H^{q+1}_c(U; A) of two operators on the same open.
inline SymmetryOperator fuse(const SymmetryOperator& x, const SymmetryOperator& y) {
  require(x.algebra == y.algebra, ErrorCode::kMismatch, "operators from different algebras");
  require(x.open == y.open, ErrorCode::kMismatch, "fuse needs operators on the same open set; use fuse_into");
  const AbelianGroup h = x.algebra->value(x.open);
  SymmetryOperator out{x.algebra, x.open, h.add(x.value, y.value), std::nullopt};
  if (x.defect && y.defect && x.defect->support == y.defect->support &&
      x.defect->orientation == y.defect->orientation) {
    const auto& a = x.algebra->coefficients();
    out.defect = DefectLabel{x.defect->support, a.add(x.defect->label, y.defect->label), x.defect->orientation};
  }
  return out;
}

/// Operators on disjoint opens inside W, multiplied through the structure map.
inline SymmetryOperator fuse_into(const StarOpen& w, const SymmetryOperator& x, const SymmetryOperator& y) {
  require(x.algebra == y.algebra, ErrorCode::kMismatch, "operators from different algebras");
  StructureMap m = x.algebra->structure_map({x.open, y.open}, w);
  return {x.algebra, w, m.map.apply(m.source.combine({x.value, y.value})), std::nullopt};
}

/// Equality of the two classes after extension into W.
inline bool compare_in(const StarOpen& w, const SymmetryOperator& x, const SymmetryOperator& y) {
  require(x.algebra == y.algebra, ErrorCode::kMismatch, "operators from different algebras");
  const auto& f = *x.algebra;
  return f.value(w).equal(f.extension(x.open, w).apply(x.value), f.extension(y.open, w).apply(y.value));
}

/// A G-valued locally constant function on a two-sided hypersurface M.
/// Stacking puts the left operand farther along the collar direction, so
/// with collar +1, stack(f, g)(c) = f(c) g(c); with -1 the order flips.
class ZeroFormOperator {
 public:
  ZeroFormOperator(GroupPtr g, Subcomplex hypersurface, std::vector<std::size_t> values, int collar = 1)
      : g_(std::move(g)), m_(std::move(hypersurface)), values_(std::move(values)), collar_(collar) {
    require(g_ != nullptr, ErrorCode::kValidation, "null group");
    require(collar_ == 1 || collar_ == -1, ErrorCode::kValidation, "collar direction must be +1 or -1");
    require(m_.dimension() == m_.complex().dimension() - 1, ErrorCode::kPrecondition,
            "a 0-form operator lives on a codimension-one subcomplex");
    components_ = m_.as_complex()->components();
    require(values_.size() == components_.size(), ErrorCode::kValidation,
            "one group element per component required, got " + std::to_string(values_.size()) + " for " +
                std::to_string(components_.size()));
    for (std::size_t v : values_) require(v < g_->order(), ErrorCode::kValidation, "group element out of range");
  }

  static ZeroFormOperator identity(GroupPtr g, Subcomplex m, int collar = 1) {
    std::size_t n = m.as_complex()->components().size();
    std::size_t e = g->identity();
    return ZeroFormOperator(std::move(g), std::move(m), std::vector<std::size_t>(n, e), collar);
  }

  const GroupPtr& group() const noexcept { return g_; }
  const Subcomplex& support() const noexcept { return m_; }
  const std::vector<std::size_t>& values() const noexcept { return values_; }
  std::size_t component_count() const noexcept { return components_.size(); }
  int collar() const noexcept { return collar_; }

  ZeroFormOperator inverse() const {
    std::vector<std::size_t> v;
    for (std::size_t x : values_) v.push_back(g_->inverse(x));
    return ZeroFormOperator(g_, m_, std::move(v), collar_);
  }

  friend bool operator==(const ZeroFormOperator& a, const ZeroFormOperator& b) {
    return a.g_->table() == b.g_->table() && a.m_ == b.m_ && a.values_ == b.values_ && a.collar_ == b.collar_;
  }

 private:
  GroupPtr g_;
  Subcomplex m_;
  std::vector<std::size_t> values_;
  int collar_;
  std::vector<std::vector<SimplexId>> components_;
};

inline ZeroFormOperator stack(const ZeroFormOperator& a, const ZeroFormOperator& b) {
  require(a.group()->table() == b.group()->table(), ErrorCode::kMismatch, "stacking operators of different groups");
  require(a.support() == b.support(), ErrorCode::kMismatch, "stacking operators on different hypersurfaces");
  require(a.collar() == b.collar(), ErrorCode::kMismatch, "stacking operators with different collars");
  std::vector<std::size_t> v;
  for (std::size_t c = 0; c < a.values().size(); ++c)
    v.push_back(a.collar() > 0 ? a.group()->multiply(a.values()[c], b.values()[c])
                               : a.group()->multiply(b.values()[c], a.values()[c]));
  return ZeroFormOperator(a.group(), a.support(), std::move(v), a.collar());
}

/// Every operator on M: all assignments of group elements to components.
inline std::vector<ZeroFormOperator> all_zero_form_operators(const GroupPtr& g, const Subcomplex& m, int collar = 1) {
  std::size_t n = m.as_complex()->components().size();
  std::vector<ZeroFormOperator> out;
  std::vector<std::size_t> v(n, 0);
  while (true) {
    out.emplace_back(g, m, v, collar);
    std::size_t i = 0;
    while (i < n && ++v[i] == g->order()) v[i++] = 0;
    if (i == n) break;
  }
  return out;
}

/// U -> (+)_j H^{n_j}_c(U; A_j): the higher-group algebra of a target
/// whose Postnikov tower splits as a product of Eilenberg-MacLane spaces.
class ProductTargetAlgebra {
 public:
  struct Factor {
    AbelianGroup group;
    int degree;  // n_j >= 1
  };

  ProductTargetAlgebra(ComplexPtr x, std::vector<Factor> factors) : x_(std::move(x)), factors_(std::move(factors)) {
    for (const auto& f : factors_) {
      require(f.degree >= 1, ErrorCode::kValidation, "factor degree must be at least 1");
      parts_.push_back(QFormAlgebra::create(x_, f.degree - 1, f.group));
    }
  }

  /// Nonzero k-invariants have no finite recipe here and are refused.
  ProductTargetAlgebra(ComplexPtr x, std::vector<Factor> factors, const std::vector<bool>& nontrivial_k_invariants)
      : ProductTargetAlgebra(std::move(x), std::move(factors)) {
    for (bool k : nontrivial_k_invariants)
      require(!k, ErrorCode::kUnsupported, "nontrivial Postnikov k-invariants are not supported");
  }

  const ComplexPtr& complex() const noexcept { return x_; }
  const std::vector<AlgebraPtr>& factors() const noexcept { return parts_; }

  DirectSum value_sum(const StarOpen& u) const {
    require(same_complex(x_, u.parent()), ErrorCode::kMismatch, "open set belongs to another complex");
    std::vector<AbelianGroup> vs;
    for (const auto& p : parts_) vs.push_back(p->value(u));
    return direct_sum(vs);
  }

  AbelianGroup value(const StarOpen& u) const { return value_sum(u).group; }

  StructureMap structure_map(const std::vector<StarOpen>& inputs, const StarOpen& target) const {
    detail::check_configuration(x_, inputs, target);
    std::vector<AbelianGroup> values;
    std::vector<GroupHom> maps;
    DirectSum to = value_sum(target);
    for (const auto& u : inputs) {
      DirectSum from = value_sum(u);
      std::vector<GroupHom> ext;
      for (const auto& p : parts_) ext.push_back(p->extension(u, target));
      values.push_back(from.group);
      maps.push_back(sum_of_homs(from, to, ext));
    }
    DirectSum sum = direct_sum(values);
    GroupHom m = hom_from_sum(sum, maps, to.group);
    return {std::move(sum), std::move(m)};
  }

  /// pi_i of the compactly supported mapping space: the sum over factors.
  AbelianGroup homotopy_group(const StarOpen& u, int i) const {
    std::vector<AbelianGroup> vs;
    for (std::size_t j = 0; j < factors_.size(); ++j)
      vs.push_back(homotopy_groups_of_symmetry_space(u, factors_[j].degree, factors_[j].group, i));
    return direct_sum(vs).group;
  }

 private:
  ComplexPtr x_;
  std::vector<Factor> factors_;
  std::vector<AlgebraPtr> parts_;
};

static_assert(Prefactorization<QFormAlgebra>);
static_assert(Prefactorization<ProductTargetAlgebra>);

/// A family of disjoint inputs inside a target open.
struct Configuration {
  std::vector<StarOpen> inputs;
  StarOpen target;
};

/// Component homs J(U): S(U) -> T(U) on a finite test family of opens.
template <Prefactorization S, Prefactorization T>
class PrefactorizationMap {
 public:
  PrefactorizationMap(std::shared_ptr<const S> source, std::shared_ptr<const T> target)
      : source_(std::move(source)), target_(std::move(target)) {
    require(same_complex(source_->complex(), target_->complex()), ErrorCode::kMismatch,
            "prefactorization algebras over different complexes");
  }

  void set(const StarOpen& u, GroupHom j) {
    require(j.source() == source_->value(u) && j.target() == target_->value(u), ErrorCode::kInvalidHom,
            "component on " + describe_open(u) + " has wrong source or target");
    components_.insert_or_assign(u.members(), std::move(j));
  }

  bool has(const StarOpen& u) const { return components_.count(u.members()) > 0; }

  const GroupHom& at(const StarOpen& u) const {
    auto it = components_.find(u.members());
    require(it != components_.end(), ErrorCode::kValidation,
            "test family is not closed: no component on " + describe_open(u));
    return it->second;
  }

  const S& source() const { return *source_; }
  const T& target() const { return *target_; }

 private:
  std::shared_ptr<const S> source_;
  std::shared_ptr<const T> target_;
  std::map<std::vector<bool>, GroupHom> components_;
};

struct MorphismCheck {
  bool commutes = true;
  std::size_t squares_checked = 0;
  std::string counterexample;
};

/// J(V) o m^S = m^T o (+)J(U_i) for every listed configuration.
template <Prefactorization S, Prefactorization T>
MorphismCheck check_prefactorization_morphism(const PrefactorizationMap<S, T>& j,
                                              const std::vector<Configuration>& family) {
  MorphismCheck r;
  for (std::size_t c = 0; c < family.size(); ++c) {
    const auto& conf = family[c];
    StructureMap ms = j.source().structure_map(conf.inputs, conf.target);
    StructureMap mt = j.target().structure_map(conf.inputs, conf.target);
    std::vector<GroupHom> comps;
    for (const auto& u : conf.inputs) comps.push_back(j.at(u));
    GroupHom left = j.at(conf.target).compose(ms.map);
    GroupHom right = mt.map.compose(sum_of_homs(ms.source, mt.source, comps));
    ++r.squares_checked;
    if (!(left == right) && r.commutes) {
      r.commutes = false;
      std::string names;
      for (const auto& u : conf.inputs) names += (names.empty() ? "" : ", ") + describe_open(u);
      r.counterexample = "configuration " + std::to_string(c) + ": (" + names + ") -> " + describe_open(conf.target);
    }
  }
  return r;
}

}  // namespace formsym
