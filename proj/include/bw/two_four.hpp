#pragma once

// Analysis of a dihedral action through the finite quotients between 2Tel(t)
// and (1/2)Tel(t).  The half/double quotient is a free Z/4-module of rank
// equal to the lattice rank; commutator images of the group elements live
// inside it and their orders are pinned down by the Jordan structure of u on
// L/Tel(t).  verify_lemma_suite computes every one of those identities
// exactly and reports each as a named pass/fail row, together with the
// generation predicates.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bw/gf2.hpp"
#include "bw/group_action.hpp"
#include "bw/lattice.hpp"

namespace bw {

struct JordanProfile {
  std::size_t n, d, e;  // half rank; count of size-2 blocks; of size-1 blocks
  bool operator==(const JordanProfile& o) const {
    return n == o.n && d == o.d && e == o.e;
  }
};

// A subgroup of (Z/2^c)^m, canonically represented by the Hermite basis of
// its integer preimage (which always contains 2^c Z^m).
class ModGroup {
 public:
  ModGroup(long c, std::size_t m, const IntMat& gens) : c_(c), m_(m) {
    IntMat full = stack_rows(gens, IntMat::identity(m) * pow2(static_cast<unsigned long>(c)));
    basis_ = hnf_basis(full);
    assert(basis_.rows() == m);
  }

  long c() const { return c_; }
  std::size_t m() const { return m_; }
  const IntMat& basis() const { return basis_; }

  Int order() const {
    // quotient of (2^c)^m by the covolume of the preimage
    Int full = pow2(static_cast<unsigned long>(c_ * static_cast<long>(m_)));
    Int d = det(basis_);
    assert(d > 0 && full % d == 0);
    return full / d;
  }

  bool is_trivial() const { return order() == 1; }

  bool operator==(const ModGroup& o) const {
    return c_ == o.c_ && m_ == o.m_ && basis_ == o.basis_;
  }
  bool operator!=(const ModGroup& o) const { return !(*this == o); }

  friend ModGroup sum(const ModGroup& a, const ModGroup& b) {
    assert(a.c_ == b.c_ && a.m_ == b.m_);
    return ModGroup(a.c_, a.m_, stack_rows(a.basis_, b.basis_));
  }

  friend ModGroup intersect(const ModGroup& a, const ModGroup& b) {
    assert(a.c_ == b.c_ && a.m_ == b.m_);
    DyadicMat meet = intersect_rows(DyadicMat(a.basis_, 0), DyadicMat(b.basis_, 0));
    assert(meet.k() == 0);
    return ModGroup(a.c_, a.m_, meet.num());
  }

  friend bool group_contains(const ModGroup& sup, const ModGroup& sub) {
    assert(sup.c_ == sub.c_ && sup.m_ == sub.m_);
    return rows_contain(DyadicMat(sup.basis_, 0), DyadicMat(sub.basis_, 0));
  }

 private:
  long c_;
  std::size_t m_;
  IntMat basis_;
};

// everything about the action transported into L-coordinates
struct ActionCoords {
  std::size_t rank;
  IntMat at, au, af;      // maps in the basis of L
  IntMat tel;             // rows: basis of Tel(t) in L-coordinates
  IntMat half_tel_coord;  // 2 * tel^{-1}: row i = basis vector i of L in (1/2)Tel coords
  IntMat mt, mu, mf;      // induced maps on Tel coordinates (= on (1/2)Tel coords)
};

inline ActionCoords action_coords(const DihedralAction& a) {
  ActionCoords c;
  c.rank = a.lat.rank();
  c.at = map_in_basis(a.lat, a.t, "t");
  c.au = map_in_basis(a.lat, a.u, "u");
  c.af = map_in_basis(a.lat, a.f, "f");
  Lattice telt = tel(a.lat, a.t);
  // Tel basis in L coordinates; integral because Tel(t) <= L
  RowSolve ct = solve_rows(a.lat.basis().num(), telt.basis().num());
  long shift = a.lat.basis().k() - telt.basis().k();
  IntMat tel_rows = ct.x;
  Int mod = ct.den;
  if (shift >= 0) {
    tel_rows = tel_rows * pow2(static_cast<unsigned long>(shift));
  } else {
    mod *= pow2(static_cast<unsigned long>(-shift));
  }
  c.tel = IntMat(tel_rows.rows(), tel_rows.cols());
  for (std::size_t i = 0; i < tel_rows.rows(); ++i)
    for (std::size_t j = 0; j < tel_rows.cols(); ++j) {
      assert(tel_rows.at(i, j) % mod == 0);
      c.tel.at(i, j) = tel_rows.at(i, j) / mod;
    }
  // coordinates of L's basis inside (1/2)Tel: 2 * tel^{-1}
  RowSolve inv = inverse(c.tel);
  assert(inv.den > 0);
  {
    Int two(2);
    IntMat u = inv.x * two;
    c.half_tel_coord = IntMat(u.rows(), u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i)
      for (std::size_t j = 0; j < u.cols(); ++j) {
        assert(u.at(i, j) % inv.den == 0);
        c.half_tel_coord.at(i, j) = u.at(i, j) / inv.den;
      }
  }
  auto induced = [&](const IntMat& ag) {
    // M with M * tel == tel * ag
    RowSolve s = solve_rows(c.tel, c.tel * ag);
    assert(s.den == 1);
    return s.x;
  };
  c.mt = induced(c.at);
  c.mu = induced(c.au);
  c.mf = induced(c.af);
  return c;
}

inline JordanProfile jordan_profile_from(const ActionCoords& c) {
  std::size_t rank2_tel = gf2_rank(Gf2Mat::from_int(c.tel));
  std::size_t d =
      gf2_rank(Gf2Mat::from_int(stack_rows(c.tel, c.au - IntMat::identity(c.rank)))) - rank2_tel;
  std::size_t dim_v = c.rank - rank2_tel;
  assert(dim_v >= 2 * d);
  assert(c.rank % 2 == 0);
  return JordanProfile{c.rank / 2, d, dim_v - 2 * d};
}

inline JordanProfile jordan_profile(const DihedralAction& a) {
  return jordan_profile_from(action_coords(a));
}

struct LemmaRow {
  std::string id;
  bool pass;
  std::string computed;
  std::string expected;
};

struct LemmaReport {
  JordanProfile profile{0, 0, 0};
  Int tel_index, tel2_index;
  Int b_t_order, b_u_order, b_sum_order;
  Int gap_index;
  bool density = false, gen24 = false, gen34 = false;
  std::vector<LemmaRow> rows;

  bool all_pass() const {
    for (const LemmaRow& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

inline void push_row(LemmaReport& rep, const std::string& id, const Int& got, const Int& want) {
  rep.rows.push_back({id, got == want, got.get_str(), want.get_str()});
}

inline void push_row(LemmaReport& rep, const std::string& id, bool ok, const std::string& got,
                     const std::string& want) {
  rep.rows.push_back({id, ok, got, want});
}

}  // namespace detail

// the three generation predicates, computed directly from eigenlattice sums
inline bool gen_two_of_four(const DihedralAction& a) {
  for (int et : {+1, -1})
    for (int eu : {+1, -1}) {
      DyadicMat s = sum_rows(eigen_rows(a.lat, a.t, et), eigen_rows(a.lat, a.u, eu));
      if (s == a.lat.basis()) return true;
    }
  return false;
}

inline bool gen_three_of_four(const DihedralAction& a) {
  DyadicMat telt = sum_rows(eigen_rows(a.lat, a.t, +1), eigen_rows(a.lat, a.t, -1));
  DyadicMat telu = sum_rows(eigen_rows(a.lat, a.u, +1), eigen_rows(a.lat, a.u, -1));
  for (int e : {+1, -1}) {
    if (sum_rows(telt, eigen_rows(a.lat, a.u, e)) == a.lat.basis()) return true;
    if (sum_rows(telu, eigen_rows(a.lat, a.t, e)) == a.lat.basis()) return true;
  }
  return false;
}

inline bool is_commutator_dense(const DihedralAction& a) {
  DyadicMat full = commutator_span(a.lat, dihedral_elements(a));
  return canon_rows(full) == commutator_rows(a.lat, a.f);
}

inline LemmaReport verify_lemma_suite(const DihedralAction& a) {
  LemmaReport rep;
  ActionCoords c = action_coords(a);
  rep.profile = jordan_profile_from(c);
  const std::size_t nrank = c.rank;
  const auto [n, d, e] = rep.profile;
  IntMat id = IntMat::identity(nrank);

  Lattice telt = tel(a.lat, a.t);
  Lattice tel2 = scaled(telt, Dyadic(2));
  rep.tel_index = index(telt, a.lat);
  rep.tel2_index = index(tel2, a.lat);
  detail::push_row(rep, "tel_index_formula", rep.tel_index, pow2(2 * d + e));
  detail::push_row(rep, "tel2_index_formula", rep.tel2_index, pow2(2 * n + 2 * d + e));

  // subgroups of the rank-N free Z/4-module (1/2)Tel/2Tel
  auto commutator_image = [&](const IntMat& m) { return ModGroup(2, nrank, m - id); };
  ModGroup a_t = commutator_image(c.mt);
  ModGroup a_u = commutator_image(c.mu);
  ModGroup b_t(2, nrank, (c.at - id) * c.half_tel_coord);
  ModGroup b_u(2, nrank, (c.au - id) * c.half_tel_coord);
  ModGroup b_f(2, nrank, (c.af - id) * c.half_tel_coord);
  ModGroup q01(2, nrank, id * Int(2));
  ModGroup q01_u(2, nrank, (c.mu - id) * Int(2));

  rep.b_t_order = b_t.order();
  rep.b_u_order = b_u.order();
  ModGroup b_sum = sum(b_t, b_u);
  rep.b_sum_order = b_sum.order();

  {
    ModGroup x = intersect(a_u, q01);
    ModGroup y = intersect(b_u, q01);
    bool ok = (x == q01_u) && (y == q01_u);
    detail::push_row(rep, "u_commutators_meet_q01", ok,
                     x.order().get_str() + "," + y.order().get_str(),
                     q01_u.order().get_str() + " (both equal as subgroups)");
  }
  {
    ModGroup meet = intersect(a_t, a_u);
    detail::push_row(rep, "whole_module_commutators_disjoint", meet.order(), Int(1));
  }

  // fixed cosets of u on L/Tel lift to fixed vectors: the image of the +1
  // eigenlattice of u covers the u-fixed subspace of L/Tel
  {
    DyadicMat plus_u = eigen_rows(a.lat, a.u, +1);
    RowSolve s = solve_rows(a.lat.basis().num(), plus_u.num());
    // coords of L^+(u) in L (integer since L^+(u) <= L, same denominator)
    long shift = a.lat.basis().k() - plus_u.k();
    IntMat rows = s.x;
    Int mod = s.den;
    if (shift >= 0) rows = rows * pow2(static_cast<unsigned long>(shift));
    else mod *= pow2(static_cast<unsigned long>(-shift));
    IntMat coords(rows.rows(), rows.cols());
    for (std::size_t i = 0; i < rows.rows(); ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j) {
        assert(rows.at(i, j) % mod == 0);
        coords.at(i, j) = rows.at(i, j) / mod;
      }
    ModGroup image(1, nrank, stack_rows(coords, c.tel));
    // fixed subspace: x with x (u - 1) inside the mod-2 row space of tel
    Gf2Mat tel2m = Gf2Mat::from_int(c.tel);
    Gf2Mat right = gf2_left_kernel(tel2m.transpose()).transpose();  // columns cut out rowspace
    Gf2Mat cond = Gf2Mat::from_int(c.au - id) * right;
    Gf2Mat fixed = gf2_left_kernel(cond);
    ModGroup fixed_group(1, nrank, stack_rows(fixed.to_int(), c.tel));
    detail::push_row(rep, "u_fixed_cosets_lift", image == fixed_group,
                     image.order().get_str(), fixed_group.order().get_str());
  }

  detail::push_row(rep, "b_u_order_formula", rep.b_u_order, pow2(n + d));

  // kernel of (t - 1) on L/2Tel is exactly Tel/2Tel
  {
    // w = (t - 1) * (tel^{-1}) stays integral; kernel mod 2 of w against Tel
    IntMat w = (c.at - id) * c.half_tel_coord;  // = 2 (t-1) tel^{-1}
    // entries of (t-1) tel^{-1} are w/2
    IntMat half(w.rows(), w.cols());
    for (std::size_t i = 0; i < w.rows(); ++i)
      for (std::size_t j = 0; j < w.cols(); ++j) {
        assert(w.at(i, j) % 2 == 0);
        half.at(i, j) = w.at(i, j) / 2;
      }
    Gf2Mat ker = gf2_left_kernel(Gf2Mat::from_int(half));
    ModGroup kernel_group(1, nrank, stack_rows(ker.to_int(), IntMat::identity(nrank) * Int(2)));
    ModGroup tel_group(1, nrank, c.tel);
    detail::push_row(rep, "t_commutator_kernel_is_tel", kernel_group == tel_group,
                     kernel_group.order().get_str(), tel_group.order().get_str());
  }

  detail::push_row(rep, "b_t_order_formula", rep.b_t_order, pow2(2 * d + e));
  {
    ModGroup meet = intersect(b_t, b_u);
    detail::push_row(rep, "b_sum_direct", meet.order(), Int(1));
  }
  detail::push_row(rep, "b_sum_order_formula", rep.b_sum_order, pow2(n + 3 * d + e));

  // commutator chain [L,D] = L(t-1) + L(u-1) >= L(f-1) >= 2L
  Lattice whole(a.lat.frame(), commutator_span(a.lat, dihedral_elements(a)));
  Lattice two_gen(a.lat.frame(),
                  sum_rows(commutator_rows(a.lat, a.t), commutator_rows(a.lat, a.u)));
  Lattice lf1 = twist(a.lat, a.f, 1);
  {
    bool ok = (whole == two_gen) && contains(whole, lf1) &&
              contains(lf1, scaled(a.lat, Dyadic(2)));
    detail::push_row(rep, "commutator_chain", ok, ok ? "chain holds" : "chain broken",
                     "[L,D] = L(t-1)+L(u-1), contains L(f-1), contains 2L");
  }

  rep.gap_index = index(lf1, whole);
  detail::push_row(rep, "gap_index_formula", rep.gap_index, pow2(d));
  {
    // same index computed in the half/double quotient
    Int lhs = b_sum.order();
    Int rhs = b_f.order();
    Int ratio = (rhs != 0 && lhs % rhs == 0) ? Int(lhs / rhs) : Int(-1);
    detail::push_row(rep, "gap_index_quotient_route", ratio, rep.gap_index);
  }

  // each twist step has constant index 2^n
  {
    Lattice l1 = lf1;
    Lattice l2 = twist(a.lat, a.f, 2);
    bool ok = index(l1, a.lat) == pow2(n) && index(l2, l1) == pow2(n) &&
              l2 == scaled(a.lat, Dyadic(2));
    Lattice telf = twist(telt, a.f, 1);
    ok = ok && index(telf, telt) == pow2(n) && index(scaled(telt, Dyadic(2)), telf) == pow2(n);
    detail::push_row(rep, "twist_step_index", ok, ok ? "all steps 2^n" : "step index off",
                     "2^n per step");
  }

  // the double quotient Tel/2Tel is a free F2<u>-module: u fixes exactly half
  {
    Gf2Mat mu2 = Gf2Mat::from_int(c.mu - id);
    std::size_t fixed_dim = gf2_left_kernel(mu2).rows();
    detail::push_row(rep, "tel_mod2_u_free", Int(fixed_dim), Int(n));
  }

  rep.density = is_commutator_dense(a);
  rep.gen24 = gen_two_of_four(a);
  rep.gen34 = gen_three_of_four(a);
  {
    bool want = (d == 0);
    bool ok = (rep.density == want) && (rep.gen24 == want) && (rep.gen34 == want);
    auto b2s = [](bool b) { return std::string(b ? "true" : "false"); };
    detail::push_row(rep, "generation_equivalence", ok,
                     "density=" + b2s(rep.density) + " gen24=" + b2s(rep.gen24) +
                         " gen34=" + b2s(rep.gen34),
                     "all " + b2s(want) + " (d=" + std::to_string(d) + ")");
  }

  // determinants of the two eigenlattices agree for both involutions
  {
    bool ok = true;
    std::string got;
    for (const FrameMap* s : {&a.t, &a.u}) {
      Dyadic dp = det_gram(eigenlattice(a.lat, *s, +1).inner);
      Dyadic dm = det_gram(eigenlattice(a.lat, *s, -1).inner);
      ok = ok && dp == dm;
      if (!got.empty()) got += " ";
      got += dp.str() + "/" + dm.str();
    }
    detail::push_row(rep, "eigen_det_balance", ok, got, "pairwise equal");
  }

  return rep;
}

}  // namespace bw
