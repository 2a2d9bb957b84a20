#pragma once

// Exact integer matrices over GMP with the normal forms everything else is
// built on: row-style Hermite form with transform, Smith invariant factors,
// fraction-free determinant, kernels and rational row solving.
//
// Convention used throughout the library: vectors are rows and maps act on
// the right, so "x in the row space of M" means x = c * M for some row c.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bw/errors.hpp"

namespace bw {

using Int = mpz_class;
using Rat = mpq_class;

inline Int pow2(unsigned long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

// 2-adic valuation; v2(0) is reported as -1.
inline long v2(const Int& x) {
  if (x == 0) return -1;
  return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
}

inline bool is_pow2(const Int& x) {
  if (x <= 0) return false;
  return mpz_popcount(x.get_mpz_t()) == 1;
}

// Floor division (quotient rounded toward -infinity), b != 0.
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Nearest integer to a/b with halves rounded up; b > 0.
inline Int round_div(const Int& a, const Int& b) {
  assert(b > 0);
  return fdiv(2 * a + b, 2 * b);
}

inline Int isqrt(const Int& x) {
  assert(x >= 0);
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline int cmpabs(const Int& a, const Int& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(std::size_t r, std::size_t c) : rows_(r), cols_(c), e_(r * c) {}
  IntMat(std::size_t r, std::size_t c, std::vector<Int> entries)
      : rows_(r), cols_(c), e_(std::move(entries)) {
    assert(e_.size() == r * c);
  }

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMat from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      assert(rows[i].size() == c);
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return e_[i * cols_ + j];
  }
  const Int& at(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return e_[i * cols_ + j];
  }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const Int& x : e_)
      if (x != 0) return false;
    return true;
  }

  bool row_is_zero(std::size_t i) const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) return false;
    return true;
  }

  std::vector<Int> row(std::size_t i) const {
    std::vector<Int> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  IntMat transpose() const {
    IntMat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  IntMat operator+(const IntMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    IntMat m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
    return m;
  }

  IntMat operator-(const IntMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    IntMat m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
    return m;
  }

  IntMat operator-() const {
    IntMat m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
    return m;
  }

  IntMat operator*(const IntMat& o) const {
    assert(cols_ == o.rows_);
    IntMat m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, j) += a * o.at(k, j);
      }
    return m;
  }

  IntMat operator*(const Int& s) const {
    IntMat m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * s;
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  // row a -= q * row b
  void sub_row(std::size_t a, const Int& q, std::size_t b) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) at(a, j) -= q * at(b, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
  }

  IntMat take_rows(std::size_t begin, std::size_t end) const {
    assert(begin <= end && end <= rows_);
    IntMat m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(i - begin, j) = at(i, j);
    return m;
  }

  IntMat take_cols(std::size_t begin, std::size_t end) const {
    assert(begin <= end && end <= cols_);
    IntMat m(rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = begin; j < end; ++j) m.at(i, j - begin) = at(i, j);
    return m;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += at(i, j).get_str();
      }
      s += "]";
    }
    s += "]";
    return s;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> e_;
};

inline IntMat stack_rows(const IntMat& a, const IntMat& b) {
  assert(a.cols() == b.cols() || a.rows() == 0 || b.rows() == 0);
  std::size_t c = a.rows() ? a.cols() : b.cols();
  IntMat m(a.rows() + b.rows(), c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return m;
}

inline IntMat concat_cols(const IntMat& a, const IntMat& b) {
  assert(a.rows() == b.rows());
  IntMat m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
  }
  return m;
}

inline IntMat reverse_rows(const IntMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(m.rows() - 1 - i, j) = m.at(i, j);
  return r;
}

inline IntMat reverse_cols(const IntMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, m.cols() - 1 - j) = m.at(i, j);
  return r;
}

struct HnfResult {
  IntMat h;        // the normal form, same shape as the input
  IntMat u;        // unimodular, u * input == h
  std::size_t rank;
};

namespace detail {

// Classical row Hermite form, echelon with pivots moving right as rows go
// down, pivots positive, entries above each pivot reduced into [0, pivot).
// Zero rows end up at the bottom.
inline HnfResult hnf_upper(const IntMat& m) {
  IntMat h = m;
  IntMat u = IntMat::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
    // gcd-eliminate column j below row r
    bool any = false;
    for (std::size_t i = r; i < h.rows(); ++i)
      if (h.at(i, j) != 0) { any = true; break; }
    if (!any) continue;
    for (;;) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h.at(i, j) == 0) continue;
        if (best == h.rows() || cmpabs(h.at(i, j), h.at(best, j)) < 0) best = i;
      }
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h.at(i, j) == 0) continue;
        Int q = fdiv(h.at(i, j), h.at(r, j));
        h.sub_row(i, q, r);
        u.sub_row(i, q, r);
        if (h.at(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(r, j) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = fdiv(h.at(i, j), h.at(r, j));
      h.sub_row(i, q, r);
      u.sub_row(i, q, r);
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

}  // namespace detail

// Row Hermite form in the lower-triangular orientation: pivots are the
// trailing nonzero entries, each pivot positive, entries in the pivot's
// column below it reduced into [0, pivot), zero rows first.  For a square
// nonsingular input the result is lower triangular with positive diagonal.
// Always: u * m == h with u unimodular, and h depends only on the row span
// plus the row count, which makes it usable as a canonical form.
inline HnfResult hnf(const IntMat& m) {
  HnfResult up = detail::hnf_upper(reverse_cols(m));
  HnfResult out;
  out.h = reverse_rows(reverse_cols(up.h));
  out.u = reverse_rows(up.u);
  out.rank = up.rank;
  return out;
}

// Rows of h that are nonzero, i.e. a canonical basis of the row span.
inline IntMat hnf_basis(const IntMat& m) {
  HnfResult r = hnf(m);
  return r.h.take_rows(m.rows() - r.rank, m.rows());
}

inline std::size_t rank(const IntMat& m) { return detail::hnf_upper(m).rank; }

// Basis (canonical, saturated) of the left kernel {x : x * m == 0}.
inline IntMat left_kernel(const IntMat& m) {
  HnfResult r = hnf(m);
  std::size_t nz = m.rows() - r.rank;  // zero rows sit at the top of h
  IntMat k = r.u.take_rows(0, nz);
  return k.rows() ? hnf_basis(k) : IntMat(0, m.rows());
}

// Fraction-free determinant (Bareiss).
inline Int det(const IntMat& m) {
  assert(m.rows() == m.cols());
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

// Smith invariant factors d_1 | d_2 | ... , non-negative, min(r,c) of them
// (trailing zeros for rank-deficient input).
inline std::vector<Int> snf(const IntMat& m) {
  IntMat a = m;
  std::size_t n = std::min(a.rows(), a.cols());
  std::vector<Int> out(n, Int(0));
  for (std::size_t t = 0; t < n; ++t) {
    // locate a smallest nonzero entry in the trailing block
    std::size_t pi = a.rows(), pj = 0;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a.at(i, j) == 0) continue;
        if (pi == a.rows() || cmpabs(a.at(i, j), a.at(pi, pj)) < 0) { pi = i; pj = j; }
      }
    if (pi == a.rows()) break;  // all zero from here on
    for (;;) {
      a.swap_rows(t, pi);
      // column swap
      if (pj != t)
        for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, t), a.at(i, pj));
      bool dirty = false;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a.at(i, t) == 0) continue;
        Int q = fdiv(a.at(i, t), a.at(t, t));
        a.sub_row(i, q, t);
        if (a.at(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a.at(t, j) == 0) continue;
        Int q = fdiv(a.at(t, j), a.at(t, t));
        if (q != 0)
          for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, j) -= q * a.at(i, t);
        if (a.at(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        // divisibility: pivot must divide the whole trailing block
        bool ok = true;
        for (std::size_t i = t + 1; i < a.rows() && ok; ++i)
          for (std::size_t j = t + 1; j < a.cols() && ok; ++j)
            if (a.at(i, j) % a.at(t, t) != 0) {
              // fold that row into row t and restart the elimination
              for (std::size_t jj = 0; jj < a.cols(); ++jj) a.at(t, jj) += a.at(i, jj);
              ok = false;
            }
        if (ok) break;
      }
      // find new smallest nonzero for the next pass
      pi = a.rows();
      for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
          if (a.at(i, j) == 0) continue;
          if (pi == a.rows() || cmpabs(a.at(i, j), a.at(pi, pj)) < 0) { pi = i; pj = j; }
        }
    }
    out[t] = abs(a.at(t, t));
  }
  return out;
}

struct RowSolve {
  IntMat x;  // x * a == den * b
  Int den;   // positive
};

// Solve x * a = b over the rationals for square nonsingular a, returning the
// solution with denominators cleared: x * a == den * b, den > 0 minimal up to
// the lcm of entry denominators.  Throws Singular.
inline RowSolve solve_rows(const IntMat& a, const IntMat& b) {
  assert(a.rows() == a.cols());
  assert(b.cols() == a.rows());
  std::size_t n = a.rows(), m = b.rows();
  // Work on the transposed system a^T y = b^T with rational elimination.
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n + m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = Rat(a.at(j, i));
    for (std::size_t j = 0; j < m; ++j) w[i][n + j] = Rat(b.at(j, i));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && w[p][k] == 0) ++p;
    if (p == n) throw Singular();
    std::swap(w[k], w[p]);
    Rat inv = 1 / w[k][k];
    for (std::size_t j = k; j < n + m; ++j) w[k][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w[i][k] == 0) continue;
      Rat f = w[i][k];
      for (std::size_t j = k; j < n + m; ++j) w[i][j] -= f * w[k][j];
    }
  }
  Int den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      den = lcm(den, w[i][n + j].get_den());
  RowSolve out{IntMat(m, n), den};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rat v = w[i][n + j] * den;
      assert(v.get_den() == 1);
      out.x.at(j, i) = v.get_num();
    }
  return out;
}

// Inverse with cleared denominators: m * inv == den * identity.
inline RowSolve inverse(const IntMat& m) {
  return solve_rows(m, IntMat::identity(m.rows()));
}

// Canonical basis of the saturation of the row span: all integer vectors in
// the rational span of the rows.
inline IntMat saturate_rows(const IntMat& m) {
  IntMat right = left_kernel(m.transpose());  // rows annihilate m's columns
  if (right.rows() == 0) {
    // full column span; saturation is all of Z^cols
    return IntMat::identity(m.cols());
  }
  return left_kernel(right.transpose());
}

}  // namespace bw
