#pragma once

// Glue enumeration between an orthogonal pair of halves and their backward
// twists: the quotient is elementary abelian, so every intermediate lattice
// is a subspace lift.  Candidates are listed in a canonical order, flagged,
// filtered through the defining clauses, and survivors recognized by exact
// certificates.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bw/errors.hpp"
#include "bw/gf2.hpp"
#include "bw/group_action.hpp"
#include "bw/lattice.hpp"
#include "bw/svp.hpp"

namespace bw {

struct GlueCandidate {
  Gf2Mat gens;  // reduced echelon rows in quotient coordinates
  bool integral = false;
  bool even_flag = false;
  bool t_invariant = false;
  bool swap_fixed = false;        // the fixed-point subgroup of the induced swap
  std::optional<Lattice> lifted;  // populated when the enumeration is small
};

struct GlueEnumeration {
  FramePtr frame;
  Embedded l1, l2;
  FrameMap t;         // ambient swap
  FrameMap f1, f2;    // fourvolutions on the inner frames
  Lattice base, top;  // L1 perp L2 and its twisted closure
  unsigned r = 0;     // quotient = (Z/2)^r
  Gf2Mat rel;         // base written in top coordinates mod 2, reduced
  std::vector<std::size_t> rel_pivots;
  std::vector<std::size_t> free_cols;  // transversal positions for the quotient
  Gf2Mat swap_induced;                 // r x r action of t on the quotient
  std::vector<GlueCandidate> candidates;
  std::size_t swap_fixed_index = 0;
};

namespace detail {

// integer coordinate matrix of sub's basis rows in sup's basis
inline IntMat coords_in(const Lattice& sup, const Lattice& sub) {
  long k = std::max(sup.basis().k(), sub.basis().k());
  IntMat supn = sup.basis().num() * pow2(static_cast<unsigned long>(k - sup.basis().k()));
  IntMat subn = sub.basis().num() * pow2(static_cast<unsigned long>(k - sub.basis().k()));
  RowSolve s = solve_rows(supn, subn);
  if (s.den != 1) throw NotASublattice();
  return s.x;
}

inline IntMat glue_rows_ambient(const GlueEnumeration& e, const Gf2Mat& gens) {
  IntMat rows(gens.rows(), e.frame->rank);
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < e.r; ++j)
      if (gens.get(i, j)) rows.at(i, e.free_cols[j]) = 1;
  return rows;
}

}  // namespace detail

// lift a subspace of the quotient to the intermediate lattice it generates
inline Lattice lift_glue(const GlueEnumeration& e, const Gf2Mat& gens) {
  DyadicMat rows = DyadicMat(detail::glue_rows_ambient(e, gens), 0) * e.top.basis();
  return Lattice(e.frame, stack_rows(e.base.basis(), rows));
}

inline GlueEnumeration enumerate_glue(const Embedded& l1, const Embedded& l2, const FrameMap& t,
                                      const FrameMap& f1, const FrameMap& f2,
                                      unsigned max_r = 8) {
  if (!frame_eq(l2.parent, l1.parent) || !frame_eq(t.frame, l1.parent)) throw FrameMismatch();
  if (canon_rows(l1.rows_in_parent() * t.mat) != canon_rows(l2.rows_in_parent()))
    throw LatticeNotStable("swap does not interchange the halves");
  Lattice base(l1.parent, stack_rows(l1.rows_in_parent(), l2.rows_in_parent()));
  if (!is_integral(base)) throw NotIntegral();

  Lattice t1 = twist(l1.inner, f1, -1);
  Lattice t2 = twist(l2.inner, f2, -1);
  DyadicMat out1(t1.basis().num() * l1.embed, t1.basis().k());
  DyadicMat out2(t2.basis().num() * l2.embed, t2.basis().k());
  Lattice top(l1.parent, stack_rows(out1, out2));

  GlueEnumeration e{l1.parent, l1, l2, t,  f1, f2, std::move(base), std::move(top),
                    0,         {}, {}, {}, {}, {}, 0};
  if (!contains(e.top, e.base)) throw NotASublattice();
  if (!contains(e.base, scaled(e.top, Dyadic(2, 0)))) throw NotASublattice();
  Int idx = index(e.base, e.top);
  long r = v2(idx);
  assert(pow2(static_cast<unsigned long>(r)) == idx);
  if (r < 0 || static_cast<unsigned>(r) > max_r) throw QuotientTooLarge();
  e.r = static_cast<unsigned>(r);

  IntMat c = detail::coords_in(e.top, e.base);
  Gf2Rref rr = gf2_rref(Gf2Mat::from_int(c));
  e.rel = rr.mat;
  e.rel_pivots = rr.pivots;
  std::vector<bool> is_pivot(e.frame->rank, false);
  for (std::size_t p : e.rel_pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < e.frame->rank; ++j)
    if (!is_pivot[j]) e.free_cols.push_back(j);
  assert(e.free_cols.size() == e.r);

  // action of the swap on quotient coordinates
  IntMat at = map_in_basis(e.top, t, "t");
  Gf2Mat at2 = Gf2Mat::from_int(at);
  e.swap_induced = Gf2Mat(e.r, e.r);
  for (std::size_t ji = 0; ji < e.r; ++ji) {
    std::vector<bool> v(e.frame->rank);
    for (std::size_t j = 0; j < e.frame->rank; ++j) v[j] = at2.get(e.free_cols[ji], j);
    for (std::size_t i = 0; i < e.rel.rows(); ++i)
      if (v[e.rel_pivots[i]])
        for (std::size_t j = 0; j < e.frame->rank; ++j) v[j] = v[j] ^ e.rel.get(i, j);
    for (std::size_t fi = 0; fi < e.r; ++fi) e.swap_induced.set(ji, fi, v[e.free_cols[fi]]);
  }
  Gf2Mat fixed_canon =
      gf2_rref(gf2_left_kernel(e.swap_induced + Gf2Mat::identity(e.r))).mat;

  DyadicMat gram(e.frame->gram, 0);
  DyadicMat base_t = e.base.basis().transpose();
  bool small = e.r <= 6;

  // every subspace once, by reduced-echelon shape: dimension ascending, pivot
  // sets in lexicographic order, then the free entries in counting order
  for (unsigned k = 0; k <= e.r; ++k) {
    std::vector<std::size_t> piv(k);
    for (unsigned i = 0; i < k; ++i) piv[i] = i;
    for (;;) {
      std::vector<bool> pivot_col(e.r, false);
      for (std::size_t p : piv) pivot_col[p] = true;
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (unsigned i = 0; i < k; ++i)
        for (std::size_t j = piv[i] + 1; j < e.r; ++j)
          if (!pivot_col[j]) cells.push_back({i, j});
      for (unsigned long long fill = 0; fill < (1ULL << cells.size()); ++fill) {
        GlueCandidate cand;
        cand.gens = Gf2Mat(k, e.r);
        for (unsigned i = 0; i < k; ++i) cand.gens.set(i, piv[i], true);
        for (std::size_t ci = 0; ci < cells.size(); ++ci)
          if ((fill >> ci) & 1) cand.gens.set(cells[ci].first, cells[ci].second, true);

        DyadicMat rows = DyadicMat(detail::glue_rows_ambient(e, cand.gens), 0) * e.top.basis();
        DyadicMat gpp = rows * gram * rows.transpose();
        DyadicMat gpb = rows * gram * base_t;
        cand.integral = gpp.is_integer() && gpb.is_integer();
        cand.even_flag = cand.integral;
        if (cand.even_flag)
          for (std::size_t i = 0; i < k; ++i)
            if (mpz_odd_p(gpp.num().at(i, i).get_mpz_t())) cand.even_flag = false;
        cand.t_invariant = gf2_rows_contained(cand.gens, cand.gens * e.swap_induced);
        cand.swap_fixed = cand.gens == fixed_canon;
        if (cand.swap_fixed) e.swap_fixed_index = e.candidates.size();
        if (small) cand.lifted = lift_glue(e, cand.gens);
        e.candidates.push_back(std::move(cand));
      }
      // next pivot combination
      if (k == 0) break;
      long i = static_cast<long>(k) - 1;
      while (i >= 0 && piv[i] == e.r - k + static_cast<std::size_t>(i)) --i;
      if (i < 0) break;
      ++piv[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return e;
}

// clause filter: evenness, swap behavior, discriminant, projections, minimum
inline std::vector<Lattice> filter_x(const GlueEnumeration& e,
                                     unsigned long long svp_budget = kDefaultNodeBudget) {
  std::size_t rank = e.frame->rank;
  if (!is_pow2(Int(rank))) throw RankDeficient();
  unsigned d = static_cast<unsigned>(v2(Int(rank)));
  Int mu = pow2(d / 2);
  std::vector<Int> disc_want;
  if (d % 2 == 0) disc_want.assign(rank / 2, Int(2));
  Lattice tgt1 = (d % 2) ? dual(e.l1.inner) : twist(e.l1.inner, e.f1, -1);
  Lattice tgt2 = (d % 2) ? dual(e.l2.inner) : twist(e.l2.inner, e.f2, -1);

  std::vector<Lattice> out;
  for (const GlueCandidate& cand : e.candidates) {
    if (!cand.integral || !cand.even_flag || !cand.t_invariant) continue;
    Lattice m = cand.lifted ? *cand.lifted : lift_glue(e, cand.gens);
    if (!rows_contain(e.base.basis(), commutator_rows(m, e.t))) continue;
    if (discriminant_group(m) != disc_want) continue;
    if (project_to(e.l1, m) != tgt1) continue;
    if (project_to(e.l2, m) != tgt2) continue;
    if (min_norm(m, svp_budget).min != mu) continue;
    out.push_back(std::move(m));
  }
  return out;
}

struct Certificate {
  std::size_t rank = 0;
  bool even = false;
  Rat det;
  Int min;

  bool operator==(const Certificate& o) const {
    return rank == o.rank && even == o.even && det == o.det && min == o.min;
  }
  bool operator!=(const Certificate& o) const { return !(*this == o); }
};

struct Recognition {
  Certificate cert;
  std::string label;  // empty when no known profile matches
};

inline Recognition recognize(const Lattice& l, unsigned long long budget = kDefaultNodeBudget) {
  Recognition out;
  out.cert.rank = l.rank();
  out.cert.even = is_even(l);
  out.cert.det = det_gram(l).to_rat();
  out.cert.min = min_norm(l, budget).min;
  if (out.cert.even) {
    if (out.cert.rank == 4 && out.cert.det == 4 && out.cert.min == 2) out.label = "D4";
    if (out.cert.rank == 8 && out.cert.det == 1 && out.cert.min == 2) out.label = "E8";
    if (out.cert.rank == 16 && out.cert.det == 256 && out.cert.min == 4) out.label = "BW16";
  }
  return out;
}

}  // namespace bw
