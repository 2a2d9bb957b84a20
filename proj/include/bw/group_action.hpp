#pragma once

// Isometries of a frame acting on lattices from the right, and the dihedral
// package built from a pair of involutions whose product is a fourvolution
// (square = -identity).  Everything an action analysis needs is derived
// here: coordinates of a map in a lattice basis, eigenlattices and their
// direct sum, twists by powers of (f - 1), and commutator sublattices.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bw/errors.hpp"
#include "bw/frame.hpp"
#include "bw/lattice.hpp"

namespace bw {

struct FrameMap {
  FramePtr frame;
  DyadicMat mat;  // x -> x * mat
};

inline FrameMap identity_map(FramePtr f) {
  std::size_t n = f->rank;
  return {std::move(f), DyadicMat::identity(n)};
}

inline FrameMap map_from(FramePtr f, IntMat m) {
  return {std::move(f), DyadicMat(std::move(m), 0)};
}

inline bool map_eq(const FrameMap& a, const FrameMap& b) {
  return frame_eq(a.frame, b.frame) && a.mat == b.mat;
}

// apply a then b
inline FrameMap compose(const FrameMap& a, const FrameMap& b) {
  if (!frame_eq(a.frame, b.frame)) throw FrameMismatch();
  return {a.frame, a.mat * b.mat};
}

inline FrameMap negated(const FrameMap& m) { return {m.frame, -m.mat}; }

inline bool is_isometry(const FrameMap& m) {
  DyadicMat g(m.frame->gram, 0);
  return m.mat * g * m.mat.transpose() == g;
}

inline bool is_identity(const FrameMap& m) {
  return m.mat == DyadicMat::identity(m.frame->rank);
}

inline bool is_involution(const FrameMap& m) {
  return is_isometry(m) && (m.mat * m.mat) == DyadicMat::identity(m.frame->rank);
}

inline bool is_fourvolution(const FrameMap& m) {
  if (!is_isometry(m)) return false;
  DyadicMat sq = m.mat * m.mat;
  return sq == -DyadicMat::identity(m.frame->rank);
}

// Coordinates of the restriction of g to L in the basis of L, i.e. the
// integer matrix A with A * basis == basis * g.  Throws LatticeNotStable
// when L * g is not inside L.
inline IntMat map_in_basis(const Lattice& l, const FrameMap& g, const std::string& name = "map") {
  if (!frame_eq(l.frame(), g.frame)) throw FrameMismatch();
  const DyadicMat& b = l.basis();
  DyadicMat c = b * g.mat;
  RowSolve s = solve_rows(b.num(), c.num());
  // A = s.x * 2^{b.k} / (s.den * 2^{c.k}) must be integral
  Int mod = s.den * pow2(static_cast<unsigned long>(c.k()));
  Int sc = pow2(static_cast<unsigned long>(b.k()));
  IntMat a(s.x.rows(), s.x.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Int num = s.x.at(i, j) * sc;
      if (num % mod != 0) throw LatticeNotStable(name);
      a.at(i, j) = num / mod;
    }
  return a;
}

inline bool stabilizes(const FrameMap& g, const Lattice& l) {
  try {
    IntMat a = map_in_basis(l, g);
    Int d = det(a);
    return d == 1 || d == -1;
  } catch (const LatticeNotStable&) {
    return false;
  }
}

struct DihedralAction {
  Lattice lat;
  FrameMap t, u, f;  // f = t then u, f * f = -1
};

inline DihedralAction validate_dihedral(const Lattice& l, const FrameMap& t, const FrameMap& u) {
  if (!frame_eq(l.frame(), t.frame) || !frame_eq(l.frame(), u.frame)) throw FrameMismatch();
  if (!is_involution(t)) throw NotInvolution("t");
  if (!is_involution(u)) throw NotInvolution("u");
  FrameMap f = compose(t, u);
  if (!is_fourvolution(f)) throw CentralNotMinusOne();
  if (!stabilizes(t, l)) throw LatticeNotStable("t");
  if (!stabilizes(u, l)) throw LatticeNotStable("u");
  return DihedralAction{l, t, u, f};
}

// the eight elements {+-1, +-f, +-t, +-tf} in a fixed order
inline std::vector<FrameMap> dihedral_elements(const DihedralAction& a) {
  FrameMap one = identity_map(a.lat.frame());
  FrameMap tf = compose(a.t, a.f);
  return {one,        a.f,          negated(one), negated(a.f),
          a.t,        tf,           negated(a.t), negated(tf)};
}

// rows spanning {x in L : x g = eps x}; s must be an involution on L
inline DyadicMat eigen_rows(const Lattice& l, const FrameMap& s, int eps, const std::string& name = "s") {
  assert(eps == 1 || eps == -1);
  IntMat a = map_in_basis(l, s, name);
  if (a * a != IntMat::identity(a.rows())) throw NotInvolution(name);
  IntMat shifted = (eps == 1) ? a - IntMat::identity(a.rows()) : a + IntMat::identity(a.rows());
  IntMat k = left_kernel(shifted);
  return canon_rows(DyadicMat(k, 0) * l.basis());
}

inline Embedded eigenlattice(const Lattice& l, const FrameMap& s, int eps) {
  return embed_rows(l.frame(), eigen_rows(l, s, eps));
}

// direct sum of the two eigenlattices of an involution; full rank since it
// contains 2L
inline Lattice tel(const Lattice& l, const FrameMap& s) {
  DyadicMat plus = eigen_rows(l, s, +1);
  DyadicMat minus = eigen_rows(l, s, -1);
  return Lattice(l.frame(), stack_rows(plus, minus));
}

// L[k] = L (f-1)^k for a fourvolution f; k may be negative since
// (f-1)^{-1} = -(f+1)/2 is dyadic
inline Lattice twist(const Lattice& l, const FrameMap& f, long k) {
  if (!is_fourvolution(f)) throw NotFourvolution();
  std::size_t n = f.frame->rank;
  DyadicMat step = f.mat - DyadicMat::identity(n);
  DyadicMat m = DyadicMat::identity(n);
  if (k >= 0) {
    for (long i = 0; i < k; ++i) m = m * step;
  } else {
    DyadicMat inv = dyadic_inverse(step);
    for (long i = 0; i < -k; ++i) m = m * inv;
  }
  return Lattice(l.frame(), l.basis() * m);
}

// rows spanning L (g - 1)
inline DyadicMat commutator_rows(const Lattice& l, const FrameMap& g) {
  if (!frame_eq(l.frame(), g.frame)) throw FrameMismatch();
  std::size_t n = l.rank();
  return canon_rows(l.basis() * (g.mat - DyadicMat::identity(n)));
}

inline Embedded commutator_lattice(const Lattice& l, const FrameMap& g) {
  return embed_rows(l.frame(), commutator_rows(l, g));
}

// sum of L (g - 1) over a set of maps; with the whole dihedral group this is
// the commutator sublattice [L, D]
inline DyadicMat commutator_span(const Lattice& l, const std::vector<FrameMap>& gs) {
  DyadicMat acc(IntMat(0, l.rank()), 0);
  for (const FrameMap& g : gs) acc = sum_rows(acc, commutator_rows(l, g));
  return acc;
}

}  // namespace bw
