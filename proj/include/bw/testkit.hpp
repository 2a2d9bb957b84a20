#pragma once

// Ready-made dihedral actions for tests and fuzzing.  "M2" and "M4" are the
// two hand-sized building blocks: on M2 the reflection u acts trivially on
// L/Tel(t), on M4 it swaps the two generators, which is exactly the
// difference between a commutator-dense action and a non-dense one.
// random_instance direct-sums a seeded run of those blocks, moves everything
// through one unimodular change of coordinates (gram and maps together, so
// the action stays isometric), then descends through random invariant
// index-2 sublattices.

#include <cassert>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bw/barnes_wall.hpp"
#include "bw/errors.hpp"
#include "bw/gf2.hpp"
#include "bw/group_action.hpp"
#include "bw/int_mat.hpp"
#include "bw/lattice.hpp"
#include "bw/rng.hpp"

namespace bw {

namespace detail {

// t swaps the two coordinates, u negates the second
inline void put_m2(IntMat& t, IntMat& u, std::size_t off) {
  t.at(off, off + 1) = 1;
  t.at(off + 1, off) = 1;
  u.at(off, off) = 1;
  u.at(off + 1, off + 1) = -1;
}

// t swaps the two pairs, u reverses each pair and negates the second
inline void put_m4(IntMat& t, IntMat& u, std::size_t off) {
  for (std::size_t i = 0; i < 2; ++i) {
    t.at(off + i, off + 2 + i) = 1;
    t.at(off + 2 + i, off + i) = 1;
  }
  u.at(off, off + 1) = 1;
  u.at(off + 1, off) = 1;
  u.at(off + 2, off + 3) = -1;
  u.at(off + 3, off + 2) = -1;
}

inline IntMat rand_unimodular(Rng& rng, std::size_t n, int moves) {
  IntMat w = IntMat::identity(n);
  for (int s = 0; s < moves; ++s) {
    std::size_t i = rng.below(n), j = rng.below(n);
    if (i == j) {
      if (rng.coin()) w.negate_row(i);
      continue;
    }
    w.sub_row(i, Int(rng.range(-2, 2)), j);
  }
  return w;
}

}  // namespace detail

inline DihedralAction canonical(const std::string& name) {
  if (name == "M2") {
    IntMat t(2, 2), u(2, 2);
    detail::put_m2(t, u, 0);
    FramePtr fr = scaled_cube_frame(2, 1);
    return validate_dihedral(Lattice::standard(fr), map_from(fr, std::move(t)),
                             map_from(fr, std::move(u)));
  }
  if (name == "M4") {
    IntMat t(4, 4), u(4, 4);
    detail::put_m4(t, u, 0);
    FramePtr fr = scaled_cube_frame(4, 1);
    return validate_dihedral(Lattice::standard(fr), map_from(fr, std::move(t)),
                             map_from(fr, std::move(u)));
  }
  if (name.size() == 3 && name[0] == 'B' && name[1] == 'W' && name[2] >= '2' &&
      name[2] <= '6')
    return dihedral_of(construct_bw(static_cast<unsigned>(name[2] - '0')));
  throw UnknownName(name);
}

inline DihedralAction random_instance(std::uint64_t seed, std::size_t blocks,
                                      std::size_t depth) {
  assert(blocks >= 1);
  Rng rng(seed);
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    sizes.push_back(rng.coin() ? 4 : 2);
    n += sizes.back();
  }
  IntMat t(n, n), u(n, n);
  std::size_t off = 0;
  for (std::size_t s : sizes) {
    if (s == 2)
      detail::put_m2(t, u, off);
    else
      detail::put_m4(t, u, off);
    off += s;
  }

  // one change of coordinates y = x * w for the whole space; both maps are
  // conjugated and the cube gram is pushed through, so nothing stops being
  // an isometry
  IntMat w = detail::rand_unimodular(rng, n, static_cast<int>(4 * n));
  RowSolve wi = inverse(w);
  assert(wi.den == 1);
  FramePtr fr = make_frame(wi.x * wi.x.transpose());
  FrameMap tm = map_from(fr, wi.x * t * w);
  FrameMap um = map_from(fr, wi.x * u * w);
  Lattice l = Lattice::standard(fr);

  for (std::size_t step = 0; step < depth; ++step) {
    // an invariant index-2 sublattice is the kernel of a functional on L/2L
    // fixed by both generators; a 2-group always fixes one
    IntMat mt = map_in_basis(l, tm, "t");
    IntMat mu = map_in_basis(l, um, "u");
    IntMat eye = IntMat::identity(n);
    Gf2Mat cond = stack_gf2(Gf2Mat::from_int(mt - eye), Gf2Mat::from_int(mu - eye));
    Gf2Mat kern = gf2_left_kernel(cond.transpose());
    assert(kern.rows() >= 1);
    std::size_t kr = kern.rows() < 62 ? kern.rows() : 62;
    std::uint64_t mask = 1 + rng.below((std::uint64_t(1) << kr) - 1);
    Gf2Mat sel(1, kern.rows());
    for (std::size_t i = 0; i < kr; ++i)
      if ((mask >> i) & 1) sel.set(0, i, true);
    Gf2Mat psi = sel * kern;
    std::size_t p = n;
    for (std::size_t j = 0; j < n; ++j)
      if (psi.get(0, j)) {
        p = j;
        break;
      }
    assert(p < n);
    IntMat c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p) {
        c.at(i, p) = 2;
      } else {
        c.at(i, i) = 1;
        if (psi.get(0, i)) c.at(i, p) = 1;
      }
    }
    l = Lattice(fr, DyadicMat(c, 0) * l.basis());
  }
  return validate_dihedral(l, tm, um);
}

}  // namespace bw
