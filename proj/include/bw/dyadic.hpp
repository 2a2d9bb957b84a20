#pragma once

// Matrices and scalars with entries in Z[1/2], kept as an integer part over a
// single power-of-two denominator, always reduced (k == 0 or some entry odd).
// Everything downstream (bases, grams, maps) lives here; general rationals
// only appear inside solvers.

#include <cstddef>
#include <string>
#include <utility>

#include "bw/errors.hpp"
#include "bw/int_mat.hpp"

namespace bw {

struct Dyadic {
  Int num;
  long k = 0;  // value = num / 2^k

  Dyadic() : num(0) {}
  Dyadic(Int n, long kk = 0) : num(std::move(n)), k(kk) { reduce(); }

  void reduce() {
    if (num == 0) { k = 0; return; }
    long v = v2(num);
    long drop = std::min(v, k);
    if (drop > 0) {
      mpz_tdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(drop));
      k -= drop;
    }
    if (k < 0) {  // scale negative powers back into the numerator
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-k));
      k = 0;
    }
  }

  bool operator==(const Dyadic& o) const { return num == o.num && k == o.k; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }

  bool is_integer() const { return k == 0; }

  Rat to_rat() const { return Rat(num) / Rat(pow2(static_cast<unsigned long>(k))); }

  std::string str() const {
    if (k == 0) return num.get_str();
    return num.get_str() + "/2^" + std::to_string(k);
  }
};

inline Dyadic dyadic_mul(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num * b.num, a.k + b.k);
}

class DyadicMat {
 public:
  DyadicMat() : k_(0) {}
  DyadicMat(IntMat num, long k) : num_(std::move(num)), k_(k) { reduce(); }
  explicit DyadicMat(IntMat num) : num_(std::move(num)), k_(0) {}

  static DyadicMat identity(std::size_t n) { return DyadicMat(IntMat::identity(n), 0); }

  const IntMat& num() const { return num_; }
  long k() const { return k_; }
  std::size_t rows() const { return num_.rows(); }
  std::size_t cols() const { return num_.cols(); }

  bool operator==(const DyadicMat& o) const { return k_ == o.k_ && num_ == o.num_; }
  bool operator!=(const DyadicMat& o) const { return !(*this == o); }

  bool is_integer() const { return k_ == 0; }

  Dyadic at(std::size_t i, std::size_t j) const { return Dyadic(num_.at(i, j), k_); }

  DyadicMat operator*(const DyadicMat& o) const {
    return DyadicMat(num_ * o.num_, k_ + o.k_);
  }

  DyadicMat operator+(const DyadicMat& o) const { return combine(o, false); }
  DyadicMat operator-(const DyadicMat& o) const { return combine(o, true); }

  DyadicMat operator-() const { return DyadicMat(-num_, k_); }

  DyadicMat transpose() const { return DyadicMat(num_.transpose(), k_); }

  // multiply by 2^e (e may be negative)
  DyadicMat shifted(long e) const { return DyadicMat(num_, k_ - e); }

  DyadicMat take_rows(std::size_t b, std::size_t e) const {
    return DyadicMat(num_.take_rows(b, e), k_);
  }

  std::string str() const {
    if (k_ == 0) return num_.str();
    return num_.str() + " / 2^" + std::to_string(k_);
  }

 private:
  DyadicMat combine(const DyadicMat& o, bool sub) const {
    assert(rows() == o.rows() && cols() == o.cols());
    long k = std::max(k_, o.k_);
    Int sa = pow2(static_cast<unsigned long>(k - k_));
    Int sb = pow2(static_cast<unsigned long>(k - o.k_));
    IntMat n = sub ? num_ * sa - o.num_ * sb : num_ * sa + o.num_ * sb;
    return DyadicMat(std::move(n), k);
  }

  void reduce() {
    if (num_.is_zero()) { k_ = 0; return; }
    long minv = -1;
    for (std::size_t i = 0; i < num_.rows() && minv != 0; ++i)
      for (std::size_t j = 0; j < num_.cols(); ++j) {
        const Int& x = num_.at(i, j);
        if (x == 0) continue;
        long v = v2(x);
        if (minv < 0 || v < minv) minv = v;
        if (minv == 0) break;
      }
    long drop = std::min(minv, k_);
    if (drop > 0) {
      for (std::size_t i = 0; i < num_.rows(); ++i)
        for (std::size_t j = 0; j < num_.cols(); ++j) {
          Int& x = num_.at(i, j);
          if (x != 0)
            mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(drop));
        }
      k_ -= drop;
    }
    if (k_ < 0) {
      for (std::size_t i = 0; i < num_.rows(); ++i)
        for (std::size_t j = 0; j < num_.cols(); ++j) {
          Int& x = num_.at(i, j);
          mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-k_));
        }
      k_ = 0;
    }
  }

  IntMat num_;
  long k_;
};

inline DyadicMat stack_rows(const DyadicMat& a, const DyadicMat& b) {
  long k = std::max(a.k(), b.k());
  IntMat an = a.num() * pow2(static_cast<unsigned long>(k - a.k()));
  IntMat bn = b.num() * pow2(static_cast<unsigned long>(k - b.k()));
  return DyadicMat(stack_rows(an, bn), k);
}

inline DyadicMat concat_cols(const DyadicMat& a, const DyadicMat& b) {
  long k = std::max(a.k(), b.k());
  IntMat an = a.num() * pow2(static_cast<unsigned long>(k - a.k()));
  IntMat bn = b.num() * pow2(static_cast<unsigned long>(k - b.k()));
  return DyadicMat(concat_cols(an, bn), k);
}

// Determinant as a dyadic scalar (only valid when it is one, i.e. always for
// dyadic entries).
inline Dyadic dyadic_det(const DyadicMat& m) {
  assert(m.rows() == m.cols());
  return Dyadic(det(m.num()), m.k() * static_cast<long>(m.rows()));
}

// Exact inverse, defined only when det is +/- 2^j.  Throws Singular or
// NonDyadicInverse.
inline DyadicMat dyadic_inverse(const DyadicMat& m) {
  assert(m.rows() == m.cols());
  Int d = det(m.num());
  if (d == 0) throw Singular();
  if (!is_pow2(abs(d))) throw NonDyadicInverse();
  RowSolve s = inverse(m.num());  // num * x == den * I, den | det so den = 2^e
  long e = v2(s.den);
  assert(pow2(static_cast<unsigned long>(e)) == s.den);
  // m = num/2^k, so m^{-1} = 2^k * num^{-1} = 2^k * x / 2^e
  return DyadicMat(s.x, e - m.k());
}

}  // namespace bw
