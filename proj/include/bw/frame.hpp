#pragma once

// A frame is the ambient quadratic space: a rank together with an integral
// symmetric positive definite gram matrix on the standard coordinates.
// Lattices and maps hold a shared pointer to their frame; two frames are
// interchangeable iff they are equal by value.

#include <cstddef>
#include <memory>
#include <utility>

#include "bw/errors.hpp"
#include "bw/int_mat.hpp"

namespace bw {

struct Frame {
  std::size_t rank;
  IntMat gram;
};

using FramePtr = std::shared_ptr<const Frame>;

inline bool frame_eq(const FramePtr& a, const FramePtr& b) {
  if (a == b) return true;
  return a->rank == b->rank && a->gram == b->gram;
}

inline void check_positive_definite(const IntMat& g) {
  // leading principal minors via fraction-free elimination; all must be > 0
  std::size_t n = g.rows();
  IntMat a = g;
  Int prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a.at(k, k) <= 0) throw NotPositiveDefinite();
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a.at(k, k);
  }
}

inline FramePtr make_frame(IntMat gram) {
  if (gram.rows() != gram.cols()) throw NotPositiveDefinite();
  if (gram != gram.transpose()) throw NotPositiveDefinite();
  check_positive_definite(gram);
  std::size_t n = gram.rows();
  return std::make_shared<Frame>(Frame{n, std::move(gram)});
}

// rank n with gram c * identity
inline FramePtr scaled_cube_frame(std::size_t n, const Int& c) {
  return make_frame(IntMat::identity(n) * c);
}

}  // namespace bw
