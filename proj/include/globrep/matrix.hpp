#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "rational.hpp"
#include "util.hpp"

namespace globrep {

// Dense rational matrix, row-major. Zero-row and zero-column shapes are
// first-class: shape is tracked even when there are no entries.
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * static_cast<size_t>(c)) {
    if (r < 0 || c < 0) throw internal_error("negative matrix shape");
  }
  Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    a_.reserve(static_cast<size_t>(r_) * c_);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c_) throw internal_error("ragged initializer");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat zeros(int r, int c) { return Mat(r, c); }

  int rows() const { return r_; }
  int cols() const { return c_; }

  Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  bool operator==(const Mat& o) const = default;

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  bool same_shape(const Mat& o) const { return r_ == o.r_ && c_ == o.c_; }

 private:
  int r_, c_;
  std::vector<Rational> a_;
};

inline Mat mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw internal_error("mul shape mismatch");
  Mat out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Rational& bkj = b(k, j);
        if (bkj != 0) out(i, j) += aik * bkj;
      }
    }
  return out;
}

inline Mat add(const Mat& a, const Mat& b) {
  if (!a.same_shape(b)) throw internal_error("add shape mismatch");
  Mat out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

inline Mat sub(const Mat& a, const Mat& b) {
  if (!a.same_shape(b)) throw internal_error("sub shape mismatch");
  Mat out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

inline Mat scale(const Rational& c, const Mat& a) {
  Mat out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = c * a(i, j);
  return out;
}

inline Mat transpose(const Mat& a) {
  Mat out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

inline Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw internal_error("hstack shape mismatch");
  Mat out(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

inline Mat vstack(const Mat& a, const Mat& b) {
  if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
    throw internal_error("vstack shape mismatch");
  int cols = a.rows() == 0 ? b.cols() : a.cols();
  Mat out(a.rows() + b.rows(), cols);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

// Kronecker product. Acts on x (x) y with x-major index i*cols(b)+j.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Rational& aij = a(i, j);
      if (aij == 0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          const Rational& bkl = b(k, l);
          if (bkl != 0) out(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
        }
    }
  return out;
}

inline Mat direct_sum(const Mat& a, const Mat& b) {
  Mat out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

struct RrefResult {
  Mat R;
  std::vector<int> pivots;  // pivot column of each nonzero row, strictly increasing
};

// Reduced row echelon form: leading entries 1, pivot columns cleared,
// zero rows dropped. Canonical for a given row space.
inline RrefResult rref(Mat m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    Rational inv = Rational(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  Mat out(row, m.cols());
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return {out, pivots};
}

inline int rank(const Mat& m) { return rref(m).R.rows(); }

// Subspace of k^ambient_dim, stored as RREF rows. Equality of subspaces is
// syntactic equality of the stored basis.
struct Subspace {
  int ambient_dim = 0;
  Mat basis;  // dim() x ambient_dim, RREF, full row rank

  int dim() const { return basis.rows(); }
  bool operator==(const Subspace& o) const = default;

  bool contains(const Subspace& other) const;
};

inline Subspace row_space(const Mat& m) { return Subspace{m.cols(), rref(m).R}; }

// Column space of m, as a subspace of k^rows(m).
inline Subspace image_basis(const Mat& m) { return row_space(transpose(m)); }

// Null space {x : m x = 0}, canonical basis (textbook free-column vectors,
// re-echelonized so equality is syntactic).
inline Subspace kernel_basis(const Mat& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat basis(static_cast<int>(free_cols.size()), m.cols());
  for (int t = 0; t < static_cast<int>(free_cols.size()); ++t) {
    int f = free_cols[t];
    basis(t, f) = 1;
    for (int i = 0; i < static_cast<int>(rr.pivots.size()); ++i) basis(t, rr.pivots[i]) = -rr.R(i, f);
  }
  return row_space(basis);
}

inline bool Subspace::contains(const Subspace& other) const {
  if (ambient_dim != other.ambient_dim) throw internal_error("subspace ambient mismatch");
  Subspace joined = row_space(vstack(basis, other.basis));
  return joined == *this;
}

// One solution of A x = b, if consistent.
inline std::optional<std::vector<Rational>> solve(const Mat& a, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw internal_error("solve shape mismatch");
  Mat col(a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) col(i, 0) = b[i];
  Mat aug = hstack(a, col);
  RrefResult rr = rref(aug);
  std::vector<Rational> x(a.cols(), Rational(0));
  for (int i = 0; i < rr.R.rows(); ++i) {
    if (rr.pivots[i] == a.cols()) return std::nullopt;  // pivot in the augmented column
    x[rr.pivots[i]] = rr.R(i, a.cols());
  }
  return x;
}

// One solution X of A X = B, if consistent (column-wise, shared elimination).
inline std::optional<Mat> solve_matrix(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw internal_error("solve_matrix shape mismatch");
  Mat aug = hstack(a, b);
  RrefResult rr = rref(aug);
  Mat x(a.cols(), b.cols());
  for (int i = 0; i < rr.R.rows(); ++i) {
    if (rr.pivots[i] >= a.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(rr.pivots[i], j) = rr.R(i, a.cols() + j);
  }
  return x;
}

// Right inverse of a full-row-rank matrix: A X = I.
inline Mat right_inverse(const Mat& a) {
  auto x = solve_matrix(a, Mat::identity(a.rows()));
  if (!x) throw internal_error("right_inverse of a non-surjective matrix");
  return *x;
}

// Canonical surjection k^ambient_dim -> k^(ambient_dim - dim sub) whose kernel
// is exactly sub. Rows are indexed by the free (non-pivot) columns of sub.
inline Mat quotient_map(int ambient_dim, const Subspace& sub) {
  if (sub.ambient_dim != ambient_dim) throw internal_error("quotient_map ambient mismatch");
  RrefResult rr = rref(sub.basis);  // already RREF; recompute pivots
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat q(static_cast<int>(free_cols.size()), ambient_dim);
  for (int t = 0; t < static_cast<int>(free_cols.size()); ++t) {
    q(t, free_cols[t]) = 1;
    for (int i = 0; i < static_cast<int>(rr.pivots.size()); ++i) q(t, rr.pivots[i]) = -rr.R(i, free_cols[t]);
  }
  return q;
}

// Sum of subspaces inside a common ambient space.
inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim) throw internal_error("subspace_sum ambient mismatch");
  return Subspace{a.ambient_dim, rref(vstack(a.basis, b.basis)).R};
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim) throw internal_error("intersect ambient mismatch");
  // Kernel of [A^T | B^T] pairs coefficients; project onto the A part.
  Mat stacked = hstack(transpose(a.basis), transpose(b.basis));
  Subspace ker = kernel_basis(stacked);
  Mat vecs(ker.dim(), a.ambient_dim);
  for (int i = 0; i < ker.dim(); ++i)
    for (int j = 0; j < a.ambient_dim; ++j) {
      Rational acc = 0;
      for (int t = 0; t < a.dim(); ++t) acc += ker.basis(i, t) * a.basis(t, j);
      vecs(i, j) = acc;
    }
  return row_space(vecs);
}

inline bool full_column_rank(const Mat& m) { return rank(m) == m.cols(); }
inline bool full_row_rank(const Mat& m) { return rank(m) == m.rows(); }

}  // namespace globrep
