#include <catch2/catch_amalgamated.hpp>

#include "bw/testkit.hpp"
#include "bw/two_four.hpp"
#include "helpers.hpp"

using namespace bw;

TEST_CASE("canonical rank-2 model is dense, rank-4 model is not") {
  DihedralAction m2 = canonical("M2");
  REQUIRE(m2.lat.rank() == 2);
  REQUIRE(m2.f.mat == DyadicMat(bwtest::mk({{0, -1}, {1, 0}}), 0));
  LemmaReport r2 = verify_lemma_suite(m2);
  REQUIRE(r2.all_pass());
  REQUIRE(r2.profile == (JordanProfile{1, 0, 1}));
  REQUIRE(r2.density);
  REQUIRE(r2.gen24);
  REQUIRE(r2.gen34);

  DihedralAction m4 = canonical("M4");
  REQUIRE(m4.lat.rank() == 4);
  LemmaReport r4 = verify_lemma_suite(m4);
  REQUIRE(r4.all_pass());
  REQUIRE(r4.profile == (JordanProfile{2, 1, 0}));
  REQUIRE_FALSE(r4.density);
  REQUIRE_FALSE(r4.gen24);
  REQUIRE_FALSE(r4.gen34);
}

TEST_CASE("canonical tower names agree with the constructor") {
  for (unsigned d = 2; d <= 4; ++d) {
    DihedralAction a = canonical("BW" + std::to_string(d));
    DihedralAction b = dihedral_of(construct_bw(d));
    REQUIRE(a.lat == b.lat);
    REQUIRE(map_eq(a.t, b.t));
    REQUIRE(map_eq(a.u, b.u));
  }
}

TEST_CASE("unknown names are rejected") {
  REQUIRE_THROWS_AS(canonical("M3"), UnknownName);
  REQUIRE_THROWS_AS(canonical("BW1"), UnknownName);
  REQUIRE_THROWS_AS(canonical("BW7"), UnknownName);
  REQUIRE_THROWS_AS(canonical(""), UnknownName);
}

TEST_CASE("random instances are deterministic in the seed") {
  DihedralAction a = random_instance(42, 3, 2);
  DihedralAction b = random_instance(42, 3, 2);
  REQUIRE(a.lat == b.lat);
  REQUIRE(map_eq(a.t, b.t));
  REQUIRE(map_eq(a.u, b.u));
}

TEST_CASE("random instances are valid isometric actions of the right size") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::size_t blocks = 1 + seed % 4;
    std::size_t depth = seed % 5;
    DihedralAction a = random_instance(seed, blocks, depth);
    REQUIRE(a.lat.rank() >= 2 * blocks);
    REQUIRE(a.lat.rank() <= 4 * blocks);
    // each refinement has index exactly 2
    REQUIRE(index(a.lat, Lattice::standard(a.lat.frame())) == pow2(depth));
    REQUIRE(verify_lemma_suite(a).all_pass());
  }
}
