#pragma once

#include <map>
#include <optional>
#include <utility>

#include "formsym/finite_group.hpp"
#include "formsym/smith.hpp"

namespace formsym {

/// Finitely supported integer combination of elements of a finite group.
class GroupRingElement {
 public:
  using Coefficients = std::map<std::size_t, Integer>;

  explicit GroupRingElement(GroupPtr group, Coefficients coeffs = {}) : group_(std::move(group)) {
    require(group_ != nullptr, ErrorCode::kValidation, "group ring over a null group");
    for (auto& [g, c] : coeffs) {
      require(g < group_->order(), ErrorCode::kValidation, "group ring element outside the group");
      if (c != 0) coeffs_.emplace(g, std::move(c));
    }
  }

  static GroupRingElement delta(GroupPtr group, std::size_t g, Integer c = 1) {
    return GroupRingElement(std::move(group), {{g, std::move(c)}});
  }
  static GroupRingElement one(GroupPtr group) {
    std::size_t e = group->identity();
    return delta(std::move(group), e);
  }

  const GroupPtr& group() const noexcept { return group_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Integer coefficient(std::size_t g) const {
    auto it = coeffs_.find(g);
    return it == coeffs_.end() ? Integer(0) : it->second;
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return same_group(a, b) && a.coeffs_ == b.coeffs_;
  }

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    check_same(a, b);
    Coefficients c = a.coeffs_;
    for (const auto& [g, x] : b.coeffs_) c[g] += x;
    return GroupRingElement(a.group_, std::move(c));
  }

  /// Convolution: (xy)(k) = sum over gh = k of x(g) y(h).
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    check_same(a, b);
    Coefficients c;
    for (const auto& [g, x] : a.coeffs_)
      for (const auto& [h, y] : b.coeffs_) c[a.group_->multiply(g, h)] += x * y;
    return GroupRingElement(a.group_, std::move(c));
  }

  friend GroupRingElement operator*(const Integer& k, const GroupRingElement& a) {
    Coefficients c = a.coeffs_;
    for (auto& [g, x] : c) x *= k;
    return GroupRingElement(a.group_, std::move(c));
  }

  /// Matrix of y -> x * y in the basis of group elements.
  IntMatrix regular_representation() const {
    const std::size_t n = group_->order();
    IntMatrix m(n, n);
    for (std::size_t h = 0; h < n; ++h)
      for (const auto& [g, x] : coeffs_) m(group_->multiply(g, h), h) += x;
    return m;
  }

 private:
  static bool same_group(const GroupRingElement& a, const GroupRingElement& b) {
    return a.group_ == b.group_ || a.group_->table() == b.group_->table();
  }
  static void check_same(const GroupRingElement& a, const GroupRingElement& b) {
    require(same_group(a, b), ErrorCode::kMismatch, "group ring elements over different groups");
  }

  GroupPtr group_;
  Coefficients coeffs_;
};

struct UnitTest {
  bool unit = false;
  Integer determinant;
  std::optional<GroupRingElement> inverse;
};

/// x is a unit of Z[G] iff its regular representation has determinant +-1.
inline UnitTest is_unit(const GroupRingElement& x) {
  UnitTest out;
  IntMatrix reg = x.regular_representation();
  out.determinant = determinant(reg);
  if (boost::multiprecision::abs(out.determinant) != 1) return out;
  const std::size_t n = x.group()->order();
  Vector e(n);
  e[x.group()->identity()] = 1;
  auto sol = solve_integer(reg, e);
  require(sol.has_value(), ErrorCode::kInternal, "unimodular system without integral solution");
  GroupRingElement::Coefficients c;
  for (std::size_t g = 0; g < n; ++g) c[g] = (*sol)[g];
  GroupRingElement inv(x.group(), std::move(c));
  GroupRingElement one = GroupRingElement::one(x.group());
  require(x * inv == one && inv * x == one, ErrorCode::kInternal, "computed inverse fails verification");
  out.unit = true;
  out.inverse = std::move(inv);
  return out;
}

/// Units are only decided over finite groups; an infinite abelian group is refused.
inline GroupPtr group_ring_carrier(const AbelianGroup& a) {
  require(a.is_finite(), ErrorCode::kUnsupported, "group ring of an infinite group is not supported");
  return groups::from_abelian(a);
}

}  // namespace formsym
