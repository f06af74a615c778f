#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "formsym/matrix.hpp"
#include "formsym/smith.hpp"

namespace formsym {

/// An element in canonical coordinates: torsion coordinates first, each
/// reduced into [0, d_i), followed by the free coordinates.
using Element = Vector;

/// Finitely generated abelian group Z/d_1 + ... + Z/d_t + Z^r with
/// d_1 | d_2 | ... | d_t and every d_i >= 2.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  static AbelianGroup from_invariants(Vector torsion, std::size_t rank) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      require(torsion[i] >= 2, ErrorCode::kValidation, "invariant factor below 2");
      if (i > 0)
        require(torsion[i] % torsion[i - 1] == 0, ErrorCode::kValidation,
                "invariant factors do not form a divisibility chain");
    }
    AbelianGroup g;
    g.torsion_ = std::move(torsion);
    g.rank_ = rank;
    return g;
  }

  static AbelianGroup trivial() { return {}; }
  static AbelianGroup free(std::size_t rank) { return from_invariants({}, rank); }
  /// Z/n, with n == 0 meaning Z and n == 1 the trivial group.
  static AbelianGroup cyclic(const Integer& n) {
    if (n == 0) return free(1);
    if (n == 1) return trivial();
    return from_invariants({boost::multiprecision::abs(n)}, 0);
  }

  std::size_t rank() const noexcept { return rank_; }
  const Vector& torsion() const noexcept { return torsion_; }
  std::size_t dimension() const noexcept { return torsion_.size() + rank_; }
  bool is_trivial() const noexcept { return dimension() == 0; }
  bool is_finite() const noexcept { return rank_ == 0; }

  /// Order of the i-th canonical generator; 0 for free generators.
  Integer modulus(std::size_t i) const { return i < torsion_.size() ? torsion_[i] : Integer(0); }

  Integer order() const {
    require(is_finite(), ErrorCode::kUnsupported, "order of an infinite group");
    Integer n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  /// Exponent of the torsion part (1 for torsion-free groups).
  Integer exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

  Element zero() const { return Element(dimension()); }

  Element reduce(Element x) const {
    require(x.size() == dimension(), ErrorCode::kValidation, "element has wrong length");
    for (std::size_t i = 0; i < torsion_.size(); ++i) x[i] = mod_floor(x[i], torsion_[i]);
    return x;
  }

  Element generator(std::size_t i) const {
    Element e = zero();
    e.at(i) = 1;
    return e;
  }

  Element add(const Element& a, const Element& b) const {
    Element c(dimension());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) + b.at(i);
    return reduce(std::move(c));
  }
  Element negate(const Element& a) const {
    Element c(a);
    for (auto& x : c) x = -x;
    return reduce(std::move(c));
  }
  Element scale(const Element& a, const Integer& k) const {
    Element c(a);
    for (auto& x : c) x *= k;
    return reduce(std::move(c));
  }
  bool is_zero(const Element& a) const {
    Element r = reduce(a);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }
  bool equal(const Element& a, const Element& b) const { return reduce(a) == reduce(b); }

  /// Every element, in lexicographic order of canonical coordinates.
  std::vector<Element> elements() const {
    require(is_finite(), ErrorCode::kUnsupported, "cannot enumerate an infinite group");
    std::vector<Element> out;
    Element cur = zero();
    for (;;) {
      out.push_back(cur);
      std::size_t i = torsion_.size();
      while (i > 0) {
        --i;
        cur[i] += 1;
        if (cur[i] < torsion_[i]) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
      if (torsion_.empty()) return out;
    }
  }

  /// Position of a reduced element in elements().
  std::size_t index_of(const Element& a) const {
    Element r = reduce(a);
    Integer idx = 0;
    for (std::size_t i = 0; i < torsion_.size(); ++i) idx = idx * torsion_[i] + r[i];
    return static_cast<std::size_t>(idx);
  }

  /// Diagonal relation matrix (dimension x torsion count).
  IntMatrix presentation() const {
    IntMatrix m(dimension(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) m(i, i) = torsion_[i];
    return m;
  }

  /// Canonical printing "Z^r + Z/d1 + Z/d2", "0" for the trivial group.
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank_ > 0) {
      os << (rank_ == 1 ? std::string("Z") : "Z^" + std::to_string(rank_));
      first = false;
    }
    for (const auto& d : torsion_) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    return os.str();
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.rank_ == b.rank_ && a.torsion_ == b.torsion_;
  }

 private:
  Vector torsion_;
  std::size_t rank_ = 0;
};

/// Cokernel of a relation matrix together with the coordinate changes
/// between the original generators and the canonical ones.
/// Coordinates as "(a,b,...)"; the element of the trivial group is "()".
inline std::string element_to_string(const Element& e) {
  std::string out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + e[i].str();
  return out + ")";
}

struct PresentedGroup {
  AbelianGroup group;
  IntMatrix relations;       // generators x relations
  IntMatrix to_canonical;    // dim(group) x generators
  IntMatrix from_canonical;  // generators x dim(group)

  Element canonical(const Vector& generator_coords) const {
    return group.reduce(to_canonical * generator_coords);
  }
  Vector lift(const Element& e) const { return from_canonical * e; }
};

/// coker(relations : Z^m -> Z^g).
inline PresentedGroup present(const IntMatrix& relations, std::size_t generators) {
  require(relations.rows() == generators || relations.cols() == 0, ErrorCode::kValidation,
          "relation matrix has wrong row count");
  IntMatrix rel = relations.cols() == 0 ? IntMatrix(generators, 0) : relations;
  SmithForm s = smith_normal_form(rel, kLeft | kLeftInverse);
  std::vector<std::size_t> torsion_rows, free_rows;
  Vector torsion;
  for (std::size_t i = 0; i < generators; ++i) {
    if (i < s.rank) {
      if (s.diagonal(i, i) != 1) {
        torsion_rows.push_back(i);
        torsion.push_back(s.diagonal(i, i));
      }
    } else {
      free_rows.push_back(i);
    }
  }
  std::vector<std::size_t> kept = torsion_rows;
  kept.insert(kept.end(), free_rows.begin(), free_rows.end());
  PresentedGroup p;
  p.group = AbelianGroup::from_invariants(std::move(torsion), free_rows.size());
  p.relations = rel;
  p.to_canonical = s.left.select_rows(kept);
  p.from_canonical = s.left_inverse.select_cols(kept);
  return p;
}

/// Homomorphism between canonical groups; the matrix has one column per
/// source generator, with torsion rows stored reduced.
class GroupHom {
 public:
  GroupHom() = default;

  GroupHom(AbelianGroup source, AbelianGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() == 0 && matrix_.cols() == 0)
      matrix_ = IntMatrix(target_.dimension(), source_.dimension());
    require(matrix_.rows() == target_.dimension() && matrix_.cols() == source_.dimension(),
            ErrorCode::kInvalidHom, "homomorphism matrix has wrong shape");
    for (std::size_t i = 0; i < target_.torsion().size(); ++i)
      for (std::size_t j = 0; j < matrix_.cols(); ++j)
        matrix_(i, j) = mod_floor(matrix_(i, j), target_.torsion()[i]);
    for (std::size_t j = 0; j < source_.torsion().size(); ++j) {
      Vector image = matrix_.column(j);
      for (auto& x : image) x *= source_.torsion()[j];
      require(target_.is_zero(image), ErrorCode::kInvalidHom,
              "matrix does not respect the relations of the source");
    }
  }

  static GroupHom identity(const AbelianGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.dimension()));
  }
  static GroupHom zero(const AbelianGroup& s, const AbelianGroup& t) {
    return GroupHom(s, t, IntMatrix(t.dimension(), s.dimension()));
  }
  static GroupHom from_images(const AbelianGroup& s, const AbelianGroup& t,
                              const std::vector<Element>& images) {
    return GroupHom(s, t, IntMatrix::from_columns(t.dimension(), images));
  }

  const AbelianGroup& source() const noexcept { return source_; }
  const AbelianGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  Element apply(const Element& x) const { return target_.reduce(matrix_ * x); }

  /// (*this) o inner
  GroupHom compose(const GroupHom& inner) const {
    require(inner.target_ == source_, ErrorCode::kMismatch, "composition of incompatible homs");
    return GroupHom(inner.source_, target_, matrix_ * inner.matrix_);
  }

  GroupHom operator+(const GroupHom& other) const {
    require(source_ == other.source_ && target_ == other.target_, ErrorCode::kMismatch,
            "sum of homs with different endpoints");
    return GroupHom(source_, target_, matrix_ + other.matrix_);
  }
  GroupHom scaled(const Integer& k) const { return GroupHom(source_, target_, k * matrix_); }

  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }

  /// Image generators together with the target relations.
  IntMatrix image_relations() const { return matrix_.hstack(target_.presentation()); }

  AbelianGroup cokernel() const {
    return present(image_relations(), target_.dimension()).group;
  }

  bool is_surjective() const { return cokernel().is_trivial(); }

  /// Finitely generated abelian groups are Hopfian, so a surjection between
  /// isomorphic groups is an isomorphism.
  bool is_isomorphism() const { return source_ == target_ && is_surjective(); }

  std::optional<Element> preimage(const Element& y) const {
    auto sol = solve_integer(image_relations(), target_.reduce(y));
    if (!sol) return std::nullopt;
    Vector x(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(source_.dimension()));
    return source_.reduce(std::move(x));
  }

  /// Inverse of an isomorphism.
  GroupHom inverse() const {
    require(is_isomorphism(), ErrorCode::kPrecondition, "inverse of a non-isomorphism");
    std::vector<Element> cols;
    for (std::size_t j = 0; j < target_.dimension(); ++j) cols.push_back(*preimage(target_.generator(j)));
    return from_images(target_, source_, cols);
  }

 private:
  AbelianGroup source_;
  AbelianGroup target_;
  IntMatrix matrix_;
};

/// Canonical direct sum with its injections and projections.
struct DirectSum {
  AbelianGroup group;
  std::vector<AbelianGroup> summands;
  std::vector<GroupHom> injections;
  std::vector<GroupHom> projections;

  /// Element of the sum from one element per summand.
  Element combine(const std::vector<Element>& parts) const {
    Element e = group.zero();
    for (std::size_t j = 0; j < parts.size(); ++j) e = group.add(e, injections.at(j).apply(parts[j]));
    return e;
  }
};

inline DirectSum direct_sum(const std::vector<AbelianGroup>& groups) {
  std::vector<IntMatrix> blocks;
  std::size_t gens = 0;
  for (const auto& g : groups) {
    blocks.push_back(g.presentation());
    gens += g.dimension();
  }
  PresentedGroup p = present(block_diagonal(blocks), gens);
  DirectSum s;
  s.group = p.group;
  s.summands = groups;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    std::vector<std::size_t> idx(g.dimension());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = offset + k;
    s.injections.emplace_back(g, s.group, p.to_canonical.select_cols(idx));
    s.projections.emplace_back(s.group, g, p.from_canonical.select_rows(idx));
    offset += g.dimension();
  }
  return s;
}

/// Sum of f_j o proj_j for f_j : summand_j -> target.
inline GroupHom hom_from_sum(const DirectSum& sum, const std::vector<GroupHom>& maps,
                             const AbelianGroup& target) {
  require(maps.size() == sum.summands.size(), ErrorCode::kMismatch, "one map per summand required");
  GroupHom out = GroupHom::zero(sum.group, target);
  for (std::size_t j = 0; j < maps.size(); ++j) out = out + maps[j].compose(sum.projections[j]);
  return out;
}

/// Block map (+)_j f_j between two direct sums.
inline GroupHom sum_of_homs(const DirectSum& from, const DirectSum& to, const std::vector<GroupHom>& maps) {
  require(maps.size() == from.summands.size() && maps.size() == to.summands.size(), ErrorCode::kMismatch,
          "block map needs matching summand counts");
  GroupHom out = GroupHom::zero(from.group, to.group);
  for (std::size_t j = 0; j < maps.size(); ++j)
    out = out + to.injections[j].compose(maps[j]).compose(from.projections[j]);
  return out;
}

/// H = {z : outgoing * z == 0 mod e} / (image(incoming) + e Z^N), e == 0
/// meaning integer coefficients. Holds the lattice bases needed to move
/// between representatives and canonical classes.
class Subquotient {
 public:
  Subquotient() = default;

  Subquotient(const IntMatrix& outgoing, const IntMatrix& incoming, std::size_t ambient, Integer modulus)
      : ambient_(ambient), modulus_(std::move(modulus)), outgoing_(outgoing) {
    require(outgoing.cols() == ambient || outgoing.rows() == 0, ErrorCode::kValidation,
            "outgoing map has wrong column count");
    require(incoming.rows() == ambient || incoming.cols() == 0, ErrorCode::kValidation,
            "incoming map has wrong row count");
    if (outgoing_.cols() != ambient) outgoing_ = IntMatrix(0, ambient);
    SmithForm s = smith_normal_form(outgoing_, kRight | kRightInverse);
    // z = V w; f z == 0 (mod e) iff d_i w_i == 0 (mod e) for i < rank.
    for (std::size_t i = 0; i < ambient_; ++i) {
      Integer f = 1;
      if (i < s.rank) f = modulus_ == 0 ? Integer(0) : modulus_ / gcd(modulus_, s.diagonal(i, i));
      if (f == 0) continue;
      kept_.push_back(i);
      divisors_.push_back(f);
    }
    to_kernel_ = s.right_inverse.select_rows(kept_);
    kernel_basis_ = IntMatrix(ambient_, kept_.size());
    for (std::size_t k = 0; k < kept_.size(); ++k)
      for (std::size_t r = 0; r < ambient_; ++r) kernel_basis_(r, k) = s.right(r, kept_[k]) * divisors_[k];

    std::vector<Vector> rel;
    IntMatrix in = incoming.cols() == 0 ? IntMatrix(ambient_, 0) : incoming;
    for (std::size_t j = 0; j < in.cols(); ++j) rel.push_back(kernel_coords(in.column(j), true));
    if (modulus_ != 0)
      for (std::size_t j = 0; j < ambient_; ++j) {
        Vector e(ambient_);
        e[j] = modulus_;
        rel.push_back(kernel_coords(e, true));
      }
    presented_ = present(IntMatrix::from_columns(kept_.size(), rel), kept_.size());
  }

  const AbelianGroup& group() const noexcept { return presented_.group; }
  std::size_t ambient() const noexcept { return ambient_; }
  const Integer& modulus() const noexcept { return modulus_; }

  bool is_cycle(const Vector& z) const {
    Vector img = outgoing_ * z;
    for (const auto& x : img)
      if (mod_floor(x, modulus_) != 0) return false;
    return true;
  }

  Element class_of(const Vector& z) const {
    require(z.size() == ambient_, ErrorCode::kValidation, "representative has wrong length");
    require(is_cycle(z), ErrorCode::kPrecondition, "representative is not a cycle");
    return presented_.canonical(kernel_coords(z, false));
  }

  /// A representative cycle, entries reduced into [0, e) when e > 0.
  Vector representative(const Element& c) const {
    Vector y = presented_.lift(group().reduce(c));
    Vector z = kernel_basis_ * y;
    for (auto& x : z) x = mod_floor(x, modulus_);
    return z;
  }

  std::vector<Vector> generators() const {
    std::vector<Vector> out;
    for (std::size_t j = 0; j < group().dimension(); ++j) out.push_back(representative(group().generator(j)));
    return out;
  }

 private:
  Vector kernel_coords(const Vector& z, bool relation) const {
    Vector w = to_kernel_ * z;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] % divisors_[k] != 0)
        fail(ErrorCode::kInternal, relation ? "relation outside the cycle lattice" : "not a cycle");
      w[k] /= divisors_[k];
    }
    return w;
  }

  std::size_t ambient_ = 0;
  Integer modulus_ = 0;
  IntMatrix outgoing_;
  std::vector<std::size_t> kept_;
  Vector divisors_;
  IntMatrix to_kernel_;
  IntMatrix kernel_basis_;
  PresentedGroup presented_;
};

}  // namespace formsym
