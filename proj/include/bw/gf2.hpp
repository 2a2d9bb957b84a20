#pragma once

// Dense GF(2) linear algebra on 64-bit packed rows.  Row convention matches
// the rest of the library: kernels are left kernels {x : x * m == 0}.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bw/int_mat.hpp"

namespace bw {

class Gf2Mat {
 public:
  Gf2Mat() : rows_(0), cols_(0), words_(0) {}
  Gf2Mat(std::size_t r, std::size_t c)
      : rows_(r), cols_(c), words_((c + 63) / 64), bits_(r * words_, 0) {}

  static Gf2Mat identity(std::size_t n) {
    Gf2Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static Gf2Mat from_int(const IntMat& m) {
    Gf2Mat g(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (mpz_odd_p(m.at(i, j).get_mpz_t())) g.set(i, j, true);
    return g;
  }

  IntMat to_int() const {
    IntMat m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j)) m.at(i, j) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    std::uint64_t& w = bits_[i * words_ + j / 64];
    std::uint64_t bit = std::uint64_t(1) << (j % 64);
    if (v) w |= bit; else w &= ~bit;
  }

  void xor_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w)
      bits_[dst * words_ + w] ^= bits_[src * words_ + w];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < words_; ++w)
      std::swap(bits_[a * words_ + w], bits_[b * words_ + w]);
  }

  bool row_is_zero(std::size_t i) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (bits_[i * words_ + w]) return false;
    return true;
  }

  bool operator==(const Gf2Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }

  Gf2Mat operator*(const Gf2Mat& o) const {
    assert(cols_ == o.rows_);
    Gf2Mat out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (get(i, k))
          for (std::size_t w = 0; w < o.words_; ++w)
            out.bits_[i * out.words_ + w] ^= o.bits_[k * o.words_ + w];
    return out;
  }

  Gf2Mat operator+(const Gf2Mat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Gf2Mat out = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= o.bits_[i];
    return out;
  }

  Gf2Mat transpose() const {
    Gf2Mat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j)) out.set(j, i, true);
    return out;
  }

  Gf2Mat take_rows(std::size_t b, std::size_t e) const {
    Gf2Mat out(e - b, cols_);
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t w = 0; w < words_; ++w)
        out.bits_[(i - b) * words_ + w] = bits_[i * words_ + w];
    return out;
  }

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> bits_;
};

struct Gf2Rref {
  Gf2Mat mat;                      // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots; // pivot column per nonzero row, increasing
};

inline Gf2Rref gf2_rref(const Gf2Mat& m) {
  Gf2Mat a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < a.cols() && r < a.rows(); ++j) {
    std::size_t p = r;
    while (p < a.rows() && !a.get(p, j)) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a.get(i, j)) a.xor_row(i, r);
    pivots.push_back(j);
    ++r;
  }
  return {a.take_rows(0, r), std::move(pivots)};
}

inline std::size_t gf2_rank(const Gf2Mat& m) { return gf2_rref(m).pivots.size(); }

// Basis of {x : x * m == 0}, rows in reduced echelon form.
inline Gf2Mat gf2_left_kernel(const Gf2Mat& m) {
  // kernel of x*m = 0 <-> kernel of m^T x^T = 0; use rref of m^T with tracking
  Gf2Mat mt = m.transpose();
  Gf2Rref r = gf2_rref(mt);
  // free columns of mt (= free "rows" of m) parameterize the kernel
  std::vector<bool> is_pivot(mt.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::size_t dim = mt.cols() - r.pivots.size();
  Gf2Mat out(dim, mt.cols());
  std::size_t row = 0;
  for (std::size_t j = 0; j < mt.cols(); ++j) {
    if (is_pivot[j]) continue;
    out.set(row, j, true);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      if (r.mat.get(i, j)) out.set(row, r.pivots[i], true);
    ++row;
  }
  return out;
}

inline Gf2Mat stack_gf2(const Gf2Mat& a, const Gf2Mat& b) {
  assert(a.cols() == b.cols() || a.rows() == 0 || b.rows() == 0);
  std::size_t c = a.rows() ? a.cols() : b.cols();
  Gf2Mat out(a.rows() + b.rows(), c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (a.get(i, j)) out.set(i, j, true);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (b.get(i, j)) out.set(a.rows() + i, j, true);
  return out;
}

// Is every row of v in the row space of m?
inline bool gf2_rows_contained(const Gf2Mat& m, const Gf2Mat& v) {
  return gf2_rank(m) == gf2_rank(stack_gf2(m, v));
}

}  // namespace bw
