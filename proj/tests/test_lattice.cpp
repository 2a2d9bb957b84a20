#include <catch2/catch_amalgamated.hpp>

#include "bw/lattice.hpp"
#include "bw/rng.hpp"
#include "helpers.hpp"

using namespace bw;
using bwtest::mk;
using bwtest::random_mat;
using bwtest::random_unimodular;

namespace {

FramePtr cube(std::size_t n, long c = 1) { return scaled_cube_frame(n, Int(c)); }

Lattice d4() {
  return Lattice(cube(4), DyadicMat(bwtest::d4_rows(), 0));
}

Lattice e8() {
  return Lattice(cube(8), bwtest::e8_gens());
}

// lattice with det a power of two: unimodular * diag(2^{a_i}) / 2^k
Lattice random_pow2_lattice(Rng& rng, std::size_t n) {
  IntMat m = random_unimodular(rng, n);
  for (std::size_t i = 0; i < n; ++i) {
    Int sc = pow2(rng.below(3));
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) *= sc;
  }
  return Lattice(cube(n), DyadicMat(std::move(m), rng.below(3)));
}

}  // namespace

TEST_CASE("frame validation") {
  CHECK_THROWS_AS(make_frame(mk({{1, 2}, {3, 4}})), NotPositiveDefinite);
  CHECK_THROWS_AS(make_frame(mk({{0, 0}, {0, 1}})), NotPositiveDefinite);
  CHECK_THROWS_AS(make_frame(mk({{2, 3}, {3, 2}})), NotPositiveDefinite);
  CHECK_THROWS_AS(make_frame(mk({{1, 0}})), NotPositiveDefinite);
  CHECK_NOTHROW(make_frame(mk({{2, 1}, {1, 2}})));
}

TEST_CASE("lattice canonicalization") {
  FramePtr f = cube(2);
  Lattice a(f, DyadicMat(mk({{1, 0}, {0, 1}}), 0));
  Lattice b(f, DyadicMat(mk({{3, 1}, {2, 1}}), 0));  // unimodular, same group
  CHECK(a == b);
  CHECK(a == Lattice::standard(f));

  // redundant generators collapse
  Lattice c(f, DyadicMat(mk({{2, 0}, {0, 2}, {2, 2}}), 1));
  CHECK(c == a);

  CHECK_THROWS_AS(Lattice(f, DyadicMat(mk({{1, 1}}), 0)), RankDeficient);
  CHECK_THROWS_AS(Lattice(f, DyadicMat(mk({{1, 1}, {2, 2}}), 0)), RankDeficient);
}

TEST_CASE("gram, integrality, evenness") {
  Lattice l = d4();
  DyadicMat g = gram_of(l);
  CHECK(g.is_integer());
  CHECK(is_integral(l));
  CHECK(is_even(l));
  CHECK(det_gram(l) == Dyadic(4));

  Lattice star = dual(l);
  CHECK(!is_integral(star));
  CHECK(det_gram(star) == Dyadic(1, 2));  // 1/4

  Lattice z4 = Lattice::standard(cube(4));
  CHECK(is_integral(z4));
  CHECK(!is_even(z4));
}

TEST_CASE("rank-8 even unimodular fixture") {
  Lattice l = e8();
  CHECK(is_even(l));
  CHECK(det_gram(l) == Dyadic(1));
  CHECK(discriminant_group(l).empty());
  CHECK(dual(l) == l);
}

TEST_CASE("sum and intersection fixed examples") {
  FramePtr f = cube(2);
  Lattice two(f, DyadicMat(mk({{2, 0}, {0, 2}}), 0));
  Lattice three(f, DyadicMat(mk({{3, 0}, {0, 3}}), 0));
  CHECK(sum(two, three) == Lattice::standard(f));
  Lattice six(f, DyadicMat(mk({{6, 0}, {0, 6}}), 0));
  CHECK(intersect(two, three) == six);

  Lattice other(cube(3), DyadicMat::identity(3));
  (void)other;
  CHECK_THROWS_AS(sum(two, Lattice::standard(cube(2, 2))), FrameMismatch);
}

TEST_CASE("containment, membership, index") {
  Lattice l = d4();
  Lattice star = dual(l);
  CHECK(contains(star, l));
  CHECK(!contains(l, star));
  CHECK(index(l, star) == 4);
  CHECK_THROWS_AS(index(star, l), NotASublattice);
  CHECK(index(l, l) == 1);

  CHECK(member(l, DyadicMat(mk({{1, 1, 0, 0}}), 0)));
  CHECK(member(l, DyadicMat(mk({{2, 0, 0, 0}}), 0)));
  CHECK(!member(l, DyadicMat(mk({{1, 0, 0, 0}}), 0)));
  CHECK(member(star, DyadicMat(mk({{1, 1, 1, 1}}), 1)));
  CHECK(!member(l, DyadicMat(mk({{1, 1, 1, 1}}), 1)));
}

TEST_CASE("discriminant group fixed examples") {
  CHECK(discriminant_group(d4()) == std::vector<Int>{2, 2});
  CHECK(discriminant_group(Lattice::standard(cube(3))).empty());
  Lattice two(cube(2), DyadicMat(mk({{2, 0}, {0, 2}}), 0));
  CHECK(discriminant_group(two) == std::vector<Int>{4, 4});
  CHECK_THROWS_AS(discriminant_group(dual(d4())), NotIntegral);
}

TEST_CASE("scaling changes index predictably") {
  Lattice l = d4();
  Lattice half = scaled(l, Dyadic(1, 1));
  Lattice twice = scaled(l, Dyadic(2));
  CHECK(index(l, half) == 16);
  CHECK(index(twice, l) == 16);
  CHECK(scaled(half, Dyadic(2)) == l);
}

TEST_CASE("dual round trip and order reversal") {
  Rng rng(0xd0a1);
  for (int iter = 0; iter < 80; ++iter) {
    std::size_t n = 1 + rng.below(5);
    Lattice l = random_pow2_lattice(rng, n);
    Lattice d = dual(l);
    CHECK(dual(d) == l);
    // duality reverses inclusions: L' <= L  ==>  dual(L) <= dual(L')
    Lattice sub(l.frame(), DyadicMat(l.basis().num() * Int(2), l.basis().k()));
    CHECK(contains(l, sub));
    CHECK(contains(dual(sub), d));
    // det(dual) = 1/det
    Rat dd = det_gram(d).to_rat() * det_gram(l).to_rat();
    CHECK(dd == 1);
  }
}

TEST_CASE("dual swaps sums and intersections") {
  Rng rng(0xd0a2);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t n = 1 + rng.below(4);
    Lattice a = random_pow2_lattice(rng, n);
    Lattice b = random_pow2_lattice(rng, n);
    CHECK(dual(intersect(a, b)) == sum(dual(a), dual(b)));
    CHECK(dual(sum(a, b)) == intersect(dual(a), dual(b)));
  }
}

TEST_CASE("index is multiplicative along chains") {
  Rng rng(0x1d13);
  for (int iter = 0; iter < 80; ++iter) {
    std::size_t n = 1 + rng.below(4);
    Lattice l0 = random_pow2_lattice(rng, n);
    IntMat m1 = random_mat(rng, n, n, -3, 3);
    if (det(m1) == 0) continue;
    IntMat m2 = random_mat(rng, n, n, -3, 3);
    if (det(m2) == 0) continue;
    Lattice l1(l0.frame(), DyadicMat(m1 * l0.basis().num(), l0.basis().k()));
    Lattice l2(l0.frame(), DyadicMat(m2 * m1 * l0.basis().num(), l0.basis().k()));
    CHECK(index(l1, l0) == abs(det(m1)));
    CHECK(index(l2, l0) == index(l2, l1) * index(l1, l0));
  }
}

TEST_CASE("sum and intersect are lattice-theoretic join and meet") {
  Rng rng(0x3a3b);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t n = 1 + rng.below(4);
    Lattice a = random_pow2_lattice(rng, n);
    Lattice b = random_pow2_lattice(rng, n);
    Lattice s = sum(a, b);
    Lattice m = intersect(a, b);
    CHECK(contains(s, a));
    CHECK(contains(s, b));
    CHECK(contains(a, m));
    CHECK(contains(b, m));
    // |s:a| * |a:m| = |s:b| * |b:m| = |s:m|
    CHECK(index(a, s) * index(m, a) == index(m, s));
    CHECK(index(b, s) * index(m, b) == index(m, s));
  }
}

TEST_CASE("membership by coordinates") {
  Rng rng(0x77aa);
  for (int iter = 0; iter < 80; ++iter) {
    std::size_t n = 1 + rng.below(4);
    Lattice l = random_pow2_lattice(rng, n);
    IntMat c = random_mat(rng, 1, n, -5, 5);
    DyadicMat v = DyadicMat(c, 0) * l.basis();
    CHECK(member(l, v));
    // shifting by half a basis vector leaves the lattice
    IntMat c2 = c * Int(2);
    c2.at(0, rng.below(n)) += 1;
    DyadicMat w = DyadicMat(c2, 1) * l.basis();
    CHECK(!member(l, w));
  }
}

TEST_CASE("discriminant group order equals gram determinant") {
  Rng rng(0x9f9f);
  int done = 0;
  while (done < 60) {
    std::size_t n = 1 + rng.below(4);
    IntMat m = random_mat(rng, n, n, -3, 3);
    if (det(m) == 0) continue;
    Lattice l(cube(n), DyadicMat(m, 0));
    Int order = 1;
    for (const Int& x : discriminant_group(l)) order *= x;
    CHECK(order == abs(det_gram(l).num));
    ++done;
  }
}

TEST_CASE("embedded subobjects") {
  FramePtr f = cube(4);
  // span of two root vectors saturates to the a+b+c=0 plane in the first
  // three coordinates
  Embedded e = embed_rows(f, DyadicMat(mk({{1, -1, 0, 0}, {0, 1, -1, 0}}), 0));
  CHECK(e.inner.rank() == 2);
  CHECK(e.embed.rows() == 2);
  CHECK(det_gram(e.inner) == Dyadic(3));
  CHECK(is_even(e.inner));
  // the embedded rows regenerate the original module
  CHECK(rows_contain(e.rows_in_parent(), DyadicMat(mk({{1, -1, 0, 0}}), 0)));
  CHECK(rows_contain(e.rows_in_parent(), DyadicMat(mk({{1, 0, -1, 0}}), 0)));
  CHECK(!rows_contain(e.rows_in_parent(), DyadicMat(mk({{1, 1, 1, 0}}), 0)));

  // non-saturated input: the sub-frame is the saturation, the inner lattice
  // keeps its finite index inside it
  Embedded h = embed_rows(f, DyadicMat(mk({{2, 0, 0, 0}, {0, 2, 0, 0}}), 0));
  CHECK(h.embed == mk({{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK(det_gram(h.inner) == Dyadic(16));
  CHECK(index(h.inner, Lattice::standard(h.inner.frame())) == 4);

  Embedded zero = embed_rows(f, DyadicMat(IntMat(0, 4), 0));
  CHECK(zero.inner.rank() == 0);
}

TEST_CASE("embedded geometry matches parent geometry") {
  Rng rng(0xe3bd);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t n = 2 + rng.below(3), r = 1 + rng.below(n);
    IntMat raw = random_mat(rng, r, n, -4, 4);
    Embedded e = embed_rows(cube(n), DyadicMat(raw, rng.below(2)));
    REQUIRE(e.inner.rank() == static_cast<std::size_t>(rank(raw)));
    // inner gram via embedding equals direct gram of the parent rows
    DyadicMat rows = e.rows_in_parent();
    DyadicMat outer(rows.num() * rows.num().transpose(), 2 * rows.k());
    DyadicMat inner = gram_of(e.inner);
    CHECK(inner == outer);
  }
}
