#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "bw/barnes_wall.hpp"
#include "bw/uniqueness.hpp"
#include "helpers.hpp"

using namespace bw;

namespace {

GlueEnumeration rank8_enum(unsigned max_r = 8) {
  BWTower tw = construct_bw(3);
  FrameMap f1{tw.L1.inner.frame(), tw.sub_four.mat};
  FrameMap f2{tw.L2.inner.frame(), tw.sub_four.mat};
  return enumerate_glue(tw.L1, tw.L2, tw.t, f1, f2, max_r);
}

// bitmask of the subspace of F_2^4 spanned by the generator rows
unsigned span_mask(const Gf2Mat& gens) {
  std::vector<unsigned> vecs;
  for (std::size_t i = 0; i < gens.rows(); ++i) {
    unsigned v = 0;
    for (std::size_t j = 0; j < gens.cols(); ++j)
      if (gens.get(i, j)) v |= 1u << j;
    vecs.push_back(v);
  }
  unsigned mask = 1;  // contains zero
  for (unsigned combo = 0; combo < (1u << vecs.size()); ++combo) {
    unsigned v = 0;
    for (std::size_t i = 0; i < vecs.size(); ++i)
      if ((combo >> i) & 1) v ^= vecs[i];
    mask |= 1u << v;
  }
  return mask;
}

}  // namespace

TEST_CASE("every subspace of the glue quotient appears exactly once") {
  GlueEnumeration e = rank8_enum();
  REQUIRE(e.r == 4);
  REQUIRE(index(e.base, e.top) == 16);
  REQUIRE(e.candidates.size() == 67);

  // brute subgroup counter: subsets of F_2^4 containing 0 and closed under +
  std::set<unsigned> brute;
  for (unsigned long mask = 1; mask < (1ul << 16); mask += 2) {
    bool ok = true;
    for (int a = 0; a < 16 && ok; ++a) {
      if (!((mask >> a) & 1)) continue;
      for (int b = a; b < 16 && ok; ++b)
        if (((mask >> b) & 1) && !((mask >> (a ^ b)) & 1)) ok = false;
    }
    if (ok) brute.insert(static_cast<unsigned>(mask));
  }
  REQUIRE(brute.size() == 67);

  std::set<unsigned> got;
  for (const GlueCandidate& c : e.candidates) got.insert(span_mask(c.gens));
  REQUIRE(got == brute);
}

TEST_CASE("the ends of the enumeration lift to base and top") {
  GlueEnumeration e = rank8_enum();
  const GlueCandidate& trivial = e.candidates.front();
  REQUIRE(trivial.gens.rows() == 0);
  REQUIRE(trivial.lifted.has_value());
  REQUIRE(*trivial.lifted == e.base);
  REQUIRE(trivial.integral);
  REQUIRE(trivial.even_flag);
  REQUIRE(trivial.t_invariant);

  const GlueCandidate& full = e.candidates.back();
  REQUIRE(full.gens.rows() == 4);
  REQUIRE(*full.lifted == e.top);
  REQUIRE_FALSE(full.integral);  // the twisted closure has quarter-integral gram here
}

TEST_CASE("candidate flags agree with whole-lattice recomputation") {
  GlueEnumeration e = rank8_enum();
  for (const GlueCandidate& c : e.candidates) {
    const Lattice& m = *c.lifted;
    REQUIRE(c.integral == is_integral(m));
    REQUIRE(c.even_flag == is_even(m));
    REQUIRE(c.t_invariant == stabilizes(e.t, m));
  }
}

TEST_CASE("swap-fixed subgroup is the diagonal and rebuilds the next level") {
  GlueEnumeration e = rank8_enum();
  const GlueCandidate& fixed = e.candidates[e.swap_fixed_index];
  REQUIRE(fixed.swap_fixed);
  REQUIRE(fixed.gens.rows() == 2);
  REQUIRE(*fixed.lifted == construct_bw(3).L);
  std::size_t marked = 0;
  for (const GlueCandidate& c : e.candidates)
    if (c.swap_fixed) ++marked;
  REQUIRE(marked == 1);
}

TEST_CASE("the filter keeps exactly the diagonal glue at rank 8") {
  GlueEnumeration e = rank8_enum();
  std::vector<Lattice> survivors = filter_x(e);
  // the swap must act trivially on the glue group, which forces the diagonal;
  // it passes every clause and is the constructed level
  REQUIRE(survivors.size() == 1);
  REQUIRE(survivors[0] == construct_bw(3).L);
  Recognition rec = recognize(survivors[0]);
  REQUIRE(rec.label == "E8");
  REQUIRE(rec.cert == (Certificate{8, true, Rat(1), Int(2)}));
}

TEST_CASE("recognition table") {
  REQUIRE(recognize(construct_bw(2).L).label == "D4");
  REQUIRE(recognize(construct_bw(3).L).label == "E8");
  REQUIRE(recognize(construct_bw(4).L).label == "BW16");
  Recognition bw16 = recognize(construct_bw(4).L);
  REQUIRE(bw16.cert.det == 256);
  REQUIRE(bw16.cert.min == 4);

  Recognition z8 = recognize(Lattice::standard(scaled_cube_frame(8, 1)));
  REQUIRE(z8.label.empty());
  REQUIRE_FALSE(z8.cert.even);
  REQUIRE(z8.cert.min == 1);

  // same label from an entirely different coordinate presentation
  Lattice e8(scaled_cube_frame(8, 1), bwtest::e8_gens());
  REQUIRE(recognize(e8).label == "E8");
}

TEST_CASE("quotient size guard") {
  REQUIRE_THROWS_AS(rank8_enum(2), QuotientTooLarge);
  REQUIRE(rank8_enum(4).r == 4);
}

TEST_CASE("uniqueness also holds one level down") {
  BWTower tw = construct_bw(2);
  FrameMap f1{tw.L1.inner.frame(), tw.sub_four.mat};
  FrameMap f2{tw.L2.inner.frame(), tw.sub_four.mat};
  GlueEnumeration e = enumerate_glue(tw.L1, tw.L2, tw.t, f1, f2);
  REQUIRE(e.r == 2);
  REQUIRE(e.candidates.size() == 5);
  std::vector<Lattice> survivors = filter_x(e);
  REQUIRE(survivors.size() == 1);
  REQUIRE(survivors[0] == tw.L);
  REQUIRE(recognize(survivors[0]).label == "D4");
}

TEST_CASE("projection of the plain orthogonal sum is the half itself") {
  BWTower tw = construct_bw(3);
  Lattice halves = half_sum(tw);
  REQUIRE(project_to(tw.L1, halves) == tw.L1.inner);
  REQUIRE(project_to(tw.L2, halves) == tw.L2.inner);
}
