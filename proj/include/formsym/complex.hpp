#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "formsym/colimit.hpp"
#include "formsym/matrix.hpp"

namespace formsym {

using Vertex = std::uint32_t;
/// Strictly increasing vertex tuple.
using Simplex = std::vector<Vertex>;
using SimplexId = std::size_t;

class SimplicialComplex;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline std::string simplex_to_string(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

/// Finite abstract simplicial complex, closed under faces. Simplex ids are
/// assigned by dimension, then lexicographically, so a chain of nested
/// simplices has increasing ids.
class SimplicialComplex {
 public:
  /// Face closure of the given facets.
  static ComplexPtr from_facets(const std::vector<Simplex>& facets) {
    std::set<Simplex> all;
    for (const auto& f : facets) {
      require(!f.empty(), ErrorCode::kValidation, "empty facet");
      Simplex s = f;
      std::sort(s.begin(), s.end());
      require(std::adjacent_find(s.begin(), s.end()) == s.end(), ErrorCode::kValidation,
              "facet {" + simplex_to_string(f) + "} repeats a vertex");
      require(s.size() <= 24, ErrorCode::kValidation, "facet dimension too large");
      const std::size_t k = s.size();
      for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (1u << i)) face.push_back(s[i]);
        all.insert(std::move(face));
      }
    }
    return std::shared_ptr<SimplicialComplex>(new SimplicialComplex(all));
  }

  /// Complex from an already face-closed family.
  static ComplexPtr from_closed(const std::set<Simplex>& simplices) {
    for (const auto& s : simplices)
      if (s.size() > 1)
        for (std::size_t j = 0; j < s.size(); ++j) {
          Simplex f = s;
          f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
          require(simplices.count(f) > 0, ErrorCode::kValidation, "family is not closed under faces");
        }
    return std::shared_ptr<SimplicialComplex>(new SimplicialComplex(simplices));
  }

  int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t size() const noexcept { return simplices_.size(); }
  std::size_t vertex_count() const noexcept { return count(0); }

  /// Whether simplex t is a face of simplex s (or equal to it).
  bool is_face(SimplexId t, SimplexId s) const {
    const auto &a = simplex(t), &b = simplex(s);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }
  std::size_t count(int k) const noexcept {
    return k >= 0 && k <= dimension() ? by_dim_[static_cast<std::size_t>(k)].size() : 0;
  }

  const Simplex& simplex(SimplexId id) const { return simplices_.at(id); }
  int dim_of(SimplexId id) const { return static_cast<int>(simplices_.at(id).size()) - 1; }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }

  const std::vector<SimplexId>& of_dim(int k) const {
    static const std::vector<SimplexId> none;
    return k >= 0 && k <= dimension() ? by_dim_[static_cast<std::size_t>(k)] : none;
  }
  /// Position of a simplex within of_dim(dim_of(id)).
  std::size_t local_index(SimplexId id) const { return id - dim_start_.at(static_cast<std::size_t>(dim_of(id))); }

  std::optional<SimplexId> find(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  SimplexId id(const Simplex& s) const {
    auto f = find(s);
    require(f.has_value(), ErrorCode::kValidation, "unknown simplex {" + simplex_to_string(s) + "}");
    return *f;
  }

  /// Codimension-one faces; entry j drops the j-th vertex.
  const std::vector<SimplexId>& faces(SimplexId id) const { return faces_.at(id); }
  const std::vector<SimplexId>& cofaces(SimplexId id) const { return cofaces_.at(id); }

  std::vector<SimplexId> facets() const {
    std::vector<SimplexId> out;
    for (SimplexId i = 0; i < size(); ++i)
      if (cofaces_[i].empty()) out.push_back(i);
    return out;
  }

  /// Boundary d_k : C_k -> C_{k-1}, rows (k-1)-simplices, cols k-simplices.
  IntMatrix boundary(int k) const {
    IntMatrix m(count(k - 1), count(k));
    if (k <= 0) return m;
    for (SimplexId s : of_dim(k)) {
      const auto& fs = faces_[s];
      for (std::size_t j = 0; j < fs.size(); ++j) m(local_index(fs[j]), local_index(s)) = (j % 2 == 0) ? 1 : -1;
    }
    return m;
  }

  long euler_characteristic() const {
    long chi = 0;
    for (int k = 0; k <= dimension(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(count(k));
    return chi;
  }

  /// Connected components as lists of vertex simplex ids.
  std::vector<std::vector<SimplexId>> components() const {
    const auto& verts = of_dim(0);
    UnionFind uf(verts.size());
    for (SimplexId e : of_dim(1)) uf.unite(local_index(faces_[e][0]), local_index(faces_[e][1]));
    std::map<std::size_t, std::vector<SimplexId>> groups;
    for (std::size_t i = 0; i < verts.size(); ++i) groups[uf.find(i)].push_back(verts[i]);
    std::vector<std::vector<SimplexId>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.simplices_ == b.simplices_;
  }

 private:
  explicit SimplicialComplex(const std::set<Simplex>& all) {
    std::size_t max_size = 0;
    for (const auto& s : all) max_size = std::max(max_size, s.size());
    by_dim_.resize(max_size);
    std::vector<std::vector<Simplex>> buckets(max_size);
    for (const auto& s : all) buckets[s.size() - 1].push_back(s);
    for (std::size_t k = 0; k < max_size; ++k) {
      dim_start_.push_back(simplices_.size());
      for (auto& s : buckets[k]) {
        index_.emplace(s, simplices_.size());
        by_dim_[k].push_back(simplices_.size());
        simplices_.push_back(std::move(s));
      }
    }
    faces_.resize(simplices_.size());
    cofaces_.resize(simplices_.size());
    for (SimplexId id = 0; id < simplices_.size(); ++id) {
      const Simplex& s = simplices_[id];
      if (s.size() < 2) continue;
      for (std::size_t j = 0; j < s.size(); ++j) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
        SimplexId fid = index_.at(f);
        faces_[id].push_back(fid);
        cofaces_[fid].push_back(id);
      }
    }
  }

  std::vector<Simplex> simplices_;
  std::vector<std::vector<SimplexId>> by_dim_;
  std::vector<std::size_t> dim_start_;
  std::map<Simplex, SimplexId> index_;
  std::vector<std::vector<SimplexId>> faces_;
  std::vector<std::vector<SimplexId>> cofaces_;
};

inline ComplexPtr build_complex(const std::vector<Simplex>& facets) { return SimplicialComplex::from_facets(facets); }

inline bool same_complex(const ComplexPtr& a, const ComplexPtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace detail {

/// Membership flags over the simplices of a parent complex.
class SimplexSet {
 public:
  SimplexSet() = default;
  SimplexSet(ComplexPtr parent, std::vector<bool> members) : parent_(std::move(parent)), members_(std::move(members)) {
    require(parent_ != nullptr, ErrorCode::kValidation, "simplex set without a parent complex");
    require(members_.size() == parent_->size(), ErrorCode::kValidation, "membership vector has wrong size");
  }

  const ComplexPtr& parent() const noexcept { return parent_; }
  const SimplicialComplex& complex() const { return *parent_; }
  bool contains(SimplexId id) const { return members_.at(id); }
  bool contains(const Simplex& s) const {
    auto id = parent_->find(s);
    return id && members_[*id];
  }
  const std::vector<bool>& members() const noexcept { return members_; }
  bool empty() const { return std::none_of(members_.begin(), members_.end(), [](bool b) { return b; }); }
  std::size_t size() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true)); }

  std::vector<SimplexId> ids() const {
    std::vector<SimplexId> out;
    for (SimplexId i = 0; i < members_.size(); ++i)
      if (members_[i]) out.push_back(i);
    return out;
  }
  /// Member simplices of dimension k, in parent id order.
  std::vector<SimplexId> ids_of_dim(int k) const {
    std::vector<SimplexId> out;
    for (SimplexId i : parent_->of_dim(k))
      if (members_[i]) out.push_back(i);
    return out;
  }
  std::vector<Simplex> simplex_list() const {
    std::vector<Simplex> out;
    for (SimplexId i : ids()) out.push_back(parent_->simplex(i));
    return out;
  }

 protected:
  void check_parent(const SimplexSet& other) const {
    require(same_complex(parent_, other.parent_), ErrorCode::kMismatch, "sets live on different complexes");
  }

  ComplexPtr parent_;
  std::vector<bool> members_;
};

}  // namespace detail

/// Down-closed set of simplices of a parent complex.
class Subcomplex : public detail::SimplexSet {
 public:
  Subcomplex() = default;
  Subcomplex(ComplexPtr parent, std::vector<bool> members) : SimplexSet(std::move(parent), std::move(members)) {
    for (SimplexId i = 0; i < members_.size(); ++i)
      if (members_[i])
        for (SimplexId f : parent_->faces(i))
          require(members_[f], ErrorCode::kValidation, "subcomplex is not closed under faces");
  }

  /// Closure of the given simplices, which must belong to the parent.
  static Subcomplex closure(ComplexPtr parent, const std::vector<Simplex>& facets) {
    std::vector<bool> m(parent->size(), false);
    std::vector<SimplexId> stack;
    for (const auto& f : facets) {
      Simplex s = f;
      std::sort(s.begin(), s.end());
      stack.push_back(parent->id(s));
    }
    while (!stack.empty()) {
      SimplexId i = stack.back();
      stack.pop_back();
      if (m[i]) continue;
      m[i] = true;
      for (SimplexId f : parent->faces(i)) stack.push_back(f);
    }
    return Subcomplex(std::move(parent), std::move(m));
  }

  int dimension() const {
    int d = -1;
    for (SimplexId i : ids()) d = std::max(d, parent_->dim_of(i));
    return d;
  }

  /// The subcomplex as a complex in its own right (same vertex labels).
  ComplexPtr as_complex() const {
    std::set<Simplex> all;
    for (SimplexId i : ids()) all.insert(parent_->simplex(i));
    return SimplicialComplex::from_closed(all);
  }

  friend bool operator==(const Subcomplex& a, const Subcomplex& b) {
    return same_complex(a.parent_, b.parent_) && a.members_ == b.members_;
  }
};

/// Up-closed set of simplices: the union of the open stars of its members,
/// an open subset of the realization whose complement is a subcomplex.
class StarOpen : public detail::SimplexSet {
 public:
  StarOpen() = default;
  StarOpen(ComplexPtr parent, std::vector<bool> members) : SimplexSet(std::move(parent), std::move(members)) {
    for (SimplexId i = 0; i < members_.size(); ++i)
      if (members_[i])
        for (SimplexId c : parent_->cofaces(i))
          require(members_[c], ErrorCode::kValidation, "open set is not closed under cofaces");
  }

  static StarOpen empty_open(ComplexPtr parent) {
    std::size_t n = parent->size();
    return StarOpen(std::move(parent), std::vector<bool>(n, false));
  }
  static StarOpen whole(ComplexPtr parent) {
    std::size_t n = parent->size();
    return StarOpen(std::move(parent), std::vector<bool>(n, true));
  }

  /// Simplices not in the open set.
  Subcomplex complement() const {
    std::vector<bool> m(members_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = !members_[i];
    return Subcomplex(parent_, std::move(m));
  }

  StarOpen intersect(const StarOpen& other) const {
    check_parent(other);
    std::vector<bool> m(members_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] && other.members_[i];
    return StarOpen(parent_, std::move(m));
  }

  StarOpen unite(const StarOpen& other) const {
    check_parent(other);
    std::vector<bool> m(members_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] || other.members_[i];
    return StarOpen(parent_, std::move(m));
  }

  bool disjoint(const StarOpen& other) const { return !overlap_witness(other).has_value(); }

  std::optional<SimplexId> overlap_witness(const StarOpen& other) const {
    check_parent(other);
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i] && other.members_[i]) return i;
    return std::nullopt;
  }

  bool is_subset_of(const StarOpen& other) const {
    check_parent(other);
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i] && !other.members_[i]) return false;
    return true;
  }

  /// Members with no proper face in the set; their stars generate it.
  std::vector<Simplex> minimal_generators() const {
    std::vector<Simplex> out;
    for (SimplexId i : ids()) {
      bool minimal = true;
      for (SimplexId f : parent_->faces(i)) minimal = minimal && !members_[f];
      if (minimal) out.push_back(parent_->simplex(i));
    }
    return out;
  }

  friend bool operator==(const StarOpen& a, const StarOpen& b) {
    return same_complex(a.parent_, b.parent_) && a.members_ == b.members_;
  }
  friend bool operator<(const StarOpen& a, const StarOpen& b) { return a.members_ < b.members_; }
};

/// Up-closure {rho : rho contains some generator}.
inline StarOpen star_open(const ComplexPtr& parent, const std::vector<Simplex>& generators) {
  std::vector<bool> m(parent->size(), false);
  std::vector<SimplexId> stack;
  for (const auto& g : generators) {
    Simplex s = g;
    std::sort(s.begin(), s.end());
    stack.push_back(parent->id(s));
  }
  while (!stack.empty()) {
    SimplexId i = stack.back();
    stack.pop_back();
    if (m[i]) continue;
    m[i] = true;
    for (SimplexId c : parent->cofaces(i)) stack.push_back(c);
  }
  return StarOpen(parent, std::move(m));
}

/// Open regular neighborhood of a subcomplex: the up-closure of its simplices.
inline StarOpen star_open(const Subcomplex& sub) { return star_open(sub.parent(), sub.simplex_list()); }

/// X minus a closed subcomplex.
inline StarOpen open_complement(const Subcomplex& k) {
  std::vector<bool> m = k.members();
  m.flip();
  return StarOpen(k.parent(), std::move(m));
}

/// Every (d-1)-simplex lies in exactly two d-simplices, every simplex lies
/// in a d-simplex, and the d-simplices are connected through shared faces.
inline bool check_closed_pseudomanifold(const SimplicialComplex& x, int d) {
  if (x.dimension() != d || d < 0) return false;
  for (SimplexId f : x.facets())
    if (x.dim_of(f) != d) return false;
  if (d >= 1)
    for (SimplexId r : x.of_dim(d - 1))
      if (x.cofaces(r).size() != 2) return false;
  const auto& top = x.of_dim(d);
  UnionFind uf(top.size());
  if (d >= 1)
    for (SimplexId r : x.of_dim(d - 1)) {
      const auto& c = x.cofaces(r);
      uf.unite(x.local_index(c[0]), x.local_index(c[1]));
    }
  return uf.classes() == 1;
}

/// Signs on top simplices relative to sorted vertex order. With modulus 2
/// only the mod-2 fundamental cycle is claimed.
class Orientation {
 public:
  Orientation(ComplexPtr parent, std::vector<int> signs, int modulus = 0)
      : parent_(std::move(parent)), signs_(std::move(signs)), modulus_(modulus) {
    require(modulus_ == 0 || modulus_ == 2, ErrorCode::kValidation, "orientation modulus must be 0 or 2");
    require(signs_.size() == parent_->count(parent_->dimension()), ErrorCode::kValidation,
            "one sign per top simplex required");
    for (int s : signs_) require(s == 1 || s == -1, ErrorCode::kValidation, "orientation signs must be +-1");
    Vector z = fundamental_cycle();
    Vector b = parent_->boundary(parent_->dimension()) * z;
    for (const auto& x : b)
      require(mod_floor(x, modulus_) == 0, ErrorCode::kValidation, "signed top simplices do not form a cycle");
  }

  /// The all-plus mod-2 fundamental cycle of a closed pseudomanifold.
  static Orientation mod_two(ComplexPtr parent) {
    std::size_t n = parent->count(parent->dimension());
    return Orientation(std::move(parent), std::vector<int>(n, 1), 2);
  }

  const ComplexPtr& parent() const noexcept { return parent_; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  int modulus() const noexcept { return modulus_; }
  int sign(SimplexId top) const { return signs_.at(parent_->local_index(top)); }

  Vector fundamental_cycle() const {
    Vector z(signs_.size());
    for (std::size_t i = 0; i < signs_.size(); ++i) z[i] = signs_[i];
    return z;
  }

  Orientation reversed() const {
    std::vector<int> s = signs_;
    for (int& x : s) x = -x;
    return Orientation(parent_, std::move(s), modulus_);
  }

  friend bool operator==(const Orientation& a, const Orientation& b) {
    return same_complex(a.parent_, b.parent_) && a.signs_ == b.signs_ && a.modulus_ == b.modulus_;
  }

 private:
  ComplexPtr parent_;
  std::vector<int> signs_;
  int modulus_ = 0;
};

struct OrientResult {
  std::optional<Orientation> orientation;
  /// Top simplices along a closed path of adjacent simplices on which sign
  /// propagation is contradictory.
  std::vector<Simplex> witness_cycle;
  bool orientable() const noexcept { return orientation.has_value(); }
};

/// Consistent orientation by sign propagation across shared codimension-one faces.
inline OrientResult orient(const ComplexPtr& x) {
  const int d = x->dimension();
  require(check_closed_pseudomanifold(*x, d), ErrorCode::kPrecondition,
          "orientation requires a closed pseudomanifold");
  const auto& top = x->of_dim(d);
  std::vector<int> sign(top.size(), 0);
  std::vector<std::size_t> parent(top.size(), SIZE_MAX);
  auto incidence = [&](SimplexId s, SimplexId face) {
    const auto& fs = x->faces(s);
    std::size_t j = static_cast<std::size_t>(std::find(fs.begin(), fs.end(), face) - fs.begin());
    return j % 2 == 0 ? 1 : -1;
  };
  auto path_to_root = [&](std::size_t i) {
    std::vector<std::size_t> p;
    for (; i != SIZE_MAX; i = parent[i]) p.push_back(i);
    return p;
  };
  sign[0] = 1;
  std::vector<std::size_t> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t a = queue[qi];
    SimplexId sa = top[a];
    if (d == 0) break;
    for (SimplexId face : x->faces(sa)) {
      const auto& cf = x->cofaces(face);
      SimplexId sb = cf[0] == sa ? cf[1] : cf[0];
      std::size_t b = x->local_index(sb);
      // induced orientations on the shared face must cancel
      int want = -sign[a] * incidence(sa, face) * incidence(sb, face);
      if (sign[b] == 0) {
        sign[b] = want;
        parent[b] = a;
        queue.push_back(b);
      } else if (sign[b] != want) {
        auto pa = path_to_root(a), pb = path_to_root(b);
        while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
          pa.pop_back();
          pb.pop_back();
        }
        OrientResult r;
        for (std::size_t i : pa) r.witness_cycle.push_back(x->simplex(top[i]));
        for (std::size_t k = pb.size() - 1; k-- > 0;) r.witness_cycle.push_back(x->simplex(top[pb[k]]));
        // pb's last entry is the shared ancestor, already listed from pa
        std::reverse(r.witness_cycle.begin(), r.witness_cycle.end());
        return r;
      }
    }
  }
  OrientResult r;
  r.orientation.emplace(x, std::move(sign));
  return r;
}

/// A complex obtained by barycentric subdivision (or as an order complex)
/// whose vertices are labeled by simplex ids of a base complex.
struct Subdivision {
  ComplexPtr complex;
  ComplexPtr base;

  /// The base simplex whose interior contains the interior of a chain: its largest element.
  SimplexId carrier(SimplexId id) const { return complex->simplex(id).back(); }
};

namespace detail {

/// Strict supersets of every simplex, each list increasing.
inline std::vector<std::vector<SimplexId>> strict_supersets(const SimplicialComplex& x) {
  std::vector<std::vector<SimplexId>> up(x.size());
  for (SimplexId s = x.size(); s-- > 0;) {
    std::set<SimplexId> all;
    for (SimplexId c : x.cofaces(s)) {
      all.insert(c);
      all.insert(up[c].begin(), up[c].end());
    }
    up[s].assign(all.begin(), all.end());
  }
  return up;
}

inline void extend_chains(const std::vector<std::vector<SimplexId>>& up, const std::vector<bool>* allowed,
                          Simplex& chain, std::set<Simplex>& out) {
  out.insert(chain);
  for (SimplexId c : up[chain.back()]) {
    if (allowed && !(*allowed)[c]) continue;
    chain.push_back(static_cast<Vertex>(c));
    extend_chains(up, allowed, chain, out);
    chain.pop_back();
  }
}

inline std::set<Simplex> flag_simplices(const SimplicialComplex& x, const std::vector<bool>* allowed) {
  const auto up = strict_supersets(x);
  std::set<Simplex> out;
  for (SimplexId s = 0; s < x.size(); ++s) {
    if (allowed && !(*allowed)[s]) continue;
    Simplex chain{static_cast<Vertex>(s)};
    extend_chains(up, allowed, chain, out);
  }
  return out;
}

}  // namespace detail

/// Vertices are the simplices of X; simplices are chains in the face poset.
inline Subdivision barycentric_subdivide(const ComplexPtr& x) {
  return {SimplicialComplex::from_closed(detail::flag_simplices(*x, nullptr)), x};
}

/// Order complex of the member poset of U: the full subcomplex of sd(X) on
/// the barycenters of members of U, onto which U deformation retracts.
inline Subdivision nerve_model(const StarOpen& u) {
  auto flags = detail::flag_simplices(u.complex(), &u.members());
  if (flags.empty()) return {nullptr, u.parent()};
  return {SimplicialComplex::from_closed(flags), u.parent()};
}

/// The open set of sd(X) occupying the same region as U: chains whose carrier lies in U.
inline StarOpen refine_open(const StarOpen& u, const Subdivision& sd) {
  require(same_complex(u.parent(), sd.base), ErrorCode::kMismatch, "open set is not on the subdivided complex");
  std::vector<bool> m(sd.complex->size());
  for (SimplexId i = 0; i < m.size(); ++i) m[i] = u.contains(sd.carrier(i));
  return StarOpen(sd.complex, std::move(m));
}

/// sd(K) for a subcomplex K: chains of simplices of K.
inline Subcomplex refine_subcomplex(const Subcomplex& k, const Subdivision& sd) {
  require(same_complex(k.parent(), sd.base), ErrorCode::kMismatch, "subcomplex is not on the subdivided complex");
  std::vector<bool> m(sd.complex->size());
  for (SimplexId i = 0; i < m.size(); ++i) m[i] = k.contains(sd.carrier(i));
  return Subcomplex(sd.complex, std::move(m));
}

}  // namespace formsym
