#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "formsym/matrix.hpp"

namespace formsym {

/// Which change-of-basis matrices the reduction should accumulate.
enum Witness : unsigned {
  kNoWitness = 0,
  kLeft = 1u << 0,
  kLeftInverse = 1u << 1,
  kRight = 1u << 2,
  kRightInverse = 1u << 3,
  kAllWitnesses = kLeft | kLeftInverse | kRight | kRightInverse,
};

/// left * input * right == diagonal, with unimodular witnesses. Only the
/// witnesses requested at construction are populated.
struct SmithForm {
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix diagonal;
  IntMatrix right;
  IntMatrix right_inverse;
  std::size_t rank = 0;

  /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank, all positive.
  Vector invariants() const {
    Vector out;
    out.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal(i, i));
    return out;
  }
};

namespace detail {

class SmithReducer {
 public:
  SmithReducer(IntMatrix m, unsigned witnesses) : a_(std::move(m)), w_(witnesses) {
    if (w_ & kLeft) out_.left = IntMatrix::identity(a_.rows());
    if (w_ & kLeftInverse) out_.left_inverse = IntMatrix::identity(a_.rows());
    if (w_ & kRight) out_.right = IntMatrix::identity(a_.cols());
    if (w_ & kRightInverse) out_.right_inverse = IntMatrix::identity(a_.cols());
  }

  SmithForm run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (!move_min_to(t)) break;
      reduce_at(t);
      if (a_(t, t) < 0) negate_row(t);
    }
    out_.rank = t;
    out_.diagonal = std::move(a_);
    return std::move(out_);
  }

 private:
  // Row/column operations mirrored onto the requested witnesses.
  void swap_rows(std::size_t i, std::size_t j) {
    a_.swap_rows(i, j);
    if (w_ & kLeft) out_.left.swap_rows(i, j);
    if (w_ & kLeftInverse) out_.left_inverse.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a_.swap_cols(i, j);
    if (w_ & kRight) out_.right.swap_cols(i, j);
    if (w_ & kRightInverse) out_.right_inverse.swap_rows(i, j);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    a_.add_row_multiple(dst, src, k);
    if (w_ & kLeft) out_.left.add_row_multiple(dst, src, k);
    if (w_ & kLeftInverse) out_.left_inverse.add_col_multiple(src, dst, -k);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    a_.add_col_multiple(dst, src, k);
    if (w_ & kRight) out_.right.add_col_multiple(dst, src, k);
    if (w_ & kRightInverse) out_.right_inverse.add_row_multiple(src, dst, -k);
  }
  void negate_row(std::size_t r) {
    a_.negate_row(r);
    if (w_ & kLeft) out_.left.negate_row(r);
    if (w_ & kLeftInverse) out_.left_inverse.negate_col(r);
  }

  // Minimal-|entry| pivot of the trailing block moved to (t, t).
  bool move_min_to(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        Integer ax = boost::multiprecision::abs(x);
        if (!found || ax < best) {
          best = std::move(ax);
          bi = i;
          bj = j;
          found = true;
          if (best == 1) goto done;
        }
      }
  done:
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        Integer q = a_(i, t) / a_(t, t);
        add_row(i, t, -q);
        if (a_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        Integer q = a_(t, j) / a_(t, t);
        add_col(j, t, -q);
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) {
        pivot_smallest_in_cross(t);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row.
      bool divides = true;
      for (std::size_t i = t + 1; i < a_.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
          if (a_(i, j) != 0 && a_(i, j) % a_(t, t) != 0) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) return;
    }
  }

  void pivot_smallest_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    Integer best = boost::multiprecision::abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (a_(i, t) == 0) continue;
      Integer ax = boost::multiprecision::abs(a_(i, t));
      if (ax < best) {
        best = std::move(ax);
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (a_(t, j) == 0) continue;
      Integer ax = boost::multiprecision::abs(a_(t, j));
      if (ax < best) {
        best = std::move(ax);
        bi = t;
        bj = j;
      }
    }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  IntMatrix a_;
  unsigned w_;
  SmithForm out_;
};

}  // namespace detail

/// Smith normal form by minimal-pivot Euclidean reduction.
inline SmithForm smith_normal_form(const IntMatrix& m, unsigned witnesses = kAllWitnesses) {
  return detail::SmithReducer(m, witnesses).run();
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  require(m.rows() == m.cols(), ErrorCode::kValidation, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Some integer x with a * x == b, or nothing when no integral solution exists.
inline std::optional<Vector> solve_integer(const IntMatrix& a, const Vector& b) {
  require(a.rows() == b.size(), ErrorCode::kValidation, "solve: right-hand side length mismatch");
  SmithForm s = smith_normal_form(a, kLeft | kRight);
  Vector lb = s.left * b;
  Vector y(a.cols());
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (i < s.rank) {
      const Integer& d = s.diagonal(i, i);
      if (lb[i] % d != 0) return std::nullopt;
      y[i] = lb[i] / d;
    } else if (lb[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

}  // namespace formsym
