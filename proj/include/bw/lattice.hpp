#pragma once

// Full-rank lattices inside a frame, stored by a canonical dyadic basis
// (Hermite-form numerator over a reduced power-of-two denominator), so two
// Lattice values are equal iff they are the same subgroup.  Rank-deficient
// row modules appear only transiently; subobjects that deserve their own
// geometry are carried as Embedded, a full-rank lattice in a saturated
// sub-frame together with the primitive embedding back into the parent.

#include <cstddef>
#include <utility>
#include <vector>

#include "bw/dyadic.hpp"
#include "bw/errors.hpp"
#include "bw/frame.hpp"
#include "bw/int_mat.hpp"

namespace bw {

// canonical form of a row module given by dyadic generating rows
inline DyadicMat canon_rows(const DyadicMat& raw) {
  return DyadicMat(hnf_basis(raw.num()), raw.k());
}

inline DyadicMat sum_rows(const DyadicMat& a, const DyadicMat& b) {
  return canon_rows(stack_rows(a, b));
}

inline bool rows_contain(const DyadicMat& sup, const DyadicMat& sub) {
  return sum_rows(sup, sub) == canon_rows(sup);
}

inline DyadicMat intersect_rows(const DyadicMat& a, const DyadicMat& b) {
  long k = std::max(a.k(), b.k());
  IntMat an = a.num() * pow2(static_cast<unsigned long>(k - a.k()));
  IntMat bn = b.num() * pow2(static_cast<unsigned long>(k - b.k()));
  IntMat ker = left_kernel(stack_rows(an, -bn));
  // each kernel row (u | v) has u*an == v*bn, a point of the intersection
  IntMat u = ker.take_cols(0, an.rows());
  return canon_rows(DyadicMat(u * an, k));
}

class Lattice {
 public:
  Lattice(FramePtr frame, const DyadicMat& raw) : frame_(std::move(frame)) {
    if (raw.cols() != frame_->rank) throw RankDeficient();
    DyadicMat c = canon_rows(raw);
    if (c.rows() != frame_->rank) throw RankDeficient();
    basis_ = std::move(c);
  }

  static Lattice standard(FramePtr frame) {
    std::size_t n = frame->rank;
    return Lattice(std::move(frame), DyadicMat::identity(n));
  }

  const FramePtr& frame() const { return frame_; }
  const DyadicMat& basis() const { return basis_; }
  std::size_t rank() const { return frame_->rank; }

  bool operator==(const Lattice& o) const {
    return frame_eq(frame_, o.frame_) && basis_ == o.basis_;
  }
  bool operator!=(const Lattice& o) const { return !(*this == o); }

 private:
  FramePtr frame_;
  DyadicMat basis_;
};

// gram matrix of the basis with respect to the frame form
inline DyadicMat gram_of(const Lattice& l) {
  const DyadicMat& b = l.basis();
  return DyadicMat(b.num() * l.frame()->gram * b.num().transpose(), 2 * b.k());
}

inline bool is_integral(const Lattice& l) { return gram_of(l).is_integer(); }

inline bool is_even(const Lattice& l) {
  DyadicMat g = gram_of(l);
  if (!g.is_integer()) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (mpz_odd_p(g.num().at(i, i).get_mpz_t())) return false;
  return true;
}

inline Dyadic det_gram(const Lattice& l) { return dyadic_det(gram_of(l)); }

inline void check_same_frame(const Lattice& a, const Lattice& b) {
  if (!frame_eq(a.frame(), b.frame())) throw FrameMismatch();
}

inline Lattice sum(const Lattice& a, const Lattice& b) {
  check_same_frame(a, b);
  return Lattice(a.frame(), stack_rows(a.basis(), b.basis()));
}

inline Lattice intersect(const Lattice& a, const Lattice& b) {
  check_same_frame(a, b);
  return Lattice(a.frame(), intersect_rows(a.basis(), b.basis()));
}

inline bool contains(const Lattice& sup, const Lattice& sub) {
  check_same_frame(sup, sub);
  return rows_contain(sup.basis(), sub.basis());
}

inline bool member(const Lattice& l, const DyadicMat& v) {
  assert(v.rows() == 1 && v.cols() == l.rank());
  return rows_contain(l.basis(), v);
}

// |sup : sub| for sub a finite-index sublattice of sup
inline Int index(const Lattice& sub, const Lattice& sup) {
  check_same_frame(sub, sup);
  if (!contains(sup, sub)) throw NotASublattice();
  Rat q = abs(dyadic_det(sub.basis()).to_rat() / dyadic_det(sup.basis()).to_rat());
  assert(q.get_den() == 1);
  return q.get_num();
}

inline Lattice scaled(const Lattice& l, const Dyadic& s) {
  assert(s.num != 0);
  return Lattice(l.frame(), DyadicMat(l.basis().num() * s.num, l.basis().k() + s.k));
}

// dual with respect to the frame form; throws NonDyadicInverse when the dual
// has no power-of-two-denominator basis
inline Lattice dual(const Lattice& l) {
  DyadicMat g = gram_of(l);
  DyadicMat d = dyadic_inverse(g) * l.basis();
  return Lattice(l.frame(), d);
}

// invariant factors (> 1) of dual(L)/L for integral L
inline std::vector<Int> discriminant_group(const Lattice& l) {
  DyadicMat g = gram_of(l);
  if (!g.is_integer()) throw NotIntegral();
  std::vector<Int> s = snf(g.num());
  std::vector<Int> out;
  for (Int& x : s)
    if (x > 1) out.push_back(std::move(x));
  return out;
}

// A full-rank lattice in a saturated sub-frame, plus the primitive embedding
// of sub-frame coordinates into the parent frame.
struct Embedded {
  Lattice inner;
  FramePtr parent;
  IntMat embed;  // inner.rank() x parent->rank, saturated row basis

  DyadicMat rows_in_parent() const {
    return DyadicMat(inner.basis().num() * embed, inner.basis().k());
  }
};

// Orthogonal projection of a full-rank lattice onto the span of an embedded
// subobject, exact in inner coordinates: x -> x S E^T (E S E^T)^{-1}.
inline Lattice project_to(const Embedded& half, const Lattice& l) {
  assert(frame_eq(half.parent, l.frame()));
  const IntMat& s = l.frame()->gram;
  DyadicMat cross(l.basis().num() * (half.embed * s).transpose(), l.basis().k());
  DyadicMat inner_gram(half.embed * s * half.embed.transpose(), 0);
  return Lattice(half.inner.frame(), cross * dyadic_inverse(inner_gram));
}

// Build the Embedded object spanned by dyadic rows inside a parent frame.
// The sub-frame is the saturation of the rational span, so the embedding is
// primitive and the inner lattice is full rank.
inline Embedded embed_rows(const FramePtr& parent, const DyadicMat& raw) {
  assert(raw.cols() == parent->rank);
  IntMat generators = hnf_basis(raw.num());
  IntMat e = generators.rows() ? saturate_rows(generators) : IntMat(0, parent->rank);
  std::size_t r = e.rows();
  IntMat sub_gram = e * parent->gram * e.transpose();
  FramePtr sub = make_frame(std::move(sub_gram));
  if (r == 0) {
    return Embedded{Lattice::standard(sub), parent, std::move(e)};
  }
  // coordinates of the generators in the basis e: x * e == generators, solved
  // through the invertible square system x * (e e^T) == generators * e^T
  RowSolve s = solve_rows(e * e.transpose(), generators * e.transpose());
  assert(is_pow2(s.den));  // generators are dyadic combinations of a saturated basis
  DyadicMat inner_basis(std::move(s.x), raw.k() + v2(s.den));
  return Embedded{Lattice(sub, inner_basis), parent, std::move(e)};
}

}  // namespace bw
