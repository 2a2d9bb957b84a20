#include <catch2/catch_amalgamated.hpp>

#include "bw/serialize.hpp"
#include "bw/testkit.hpp"
#include "helpers.hpp"

using namespace bw;

namespace {

bool tower_eq(const BWTower& a, const BWTower& b) {
  bool ok = a.d == b.d && a.s_flag == b.s_flag && a.scale == b.scale &&
            frame_eq(a.frame, b.frame) && a.L == b.L && a.L1.inner == b.L1.inner &&
            a.L1.embed == b.L1.embed && a.L2.inner == b.L2.inner &&
            a.L2.embed == b.L2.embed && map_eq(a.t, b.t) && map_eq(a.f, b.f) &&
            map_eq(a.sub_four, b.sub_four);
  if (!ok) return false;
  if (!a.child != !b.child) return false;
  return !a.child || tower_eq(*a.child, *b.child);
}

}  // namespace

TEST_CASE("integer values parse from strings or plain numbers") {
  Int big("123456789012345678901234567890");
  REQUIRE(int_from_json(Json("123456789012345678901234567890")) == big);
  REQUIRE(int_from_json(Json("-7")) == -7);
  REQUIRE(int_from_json(Json(-42)) == -42);
  REQUIRE(int_from_json(Json(18446744073709551615ull)) == Int("18446744073709551615"));
  REQUIRE_THROWS_AS(int_from_json(Json("12x")), ParseError);
  REQUIRE_THROWS_AS(int_from_json(Json(1.5)), ParseError);
  REQUIRE_THROWS_AS(int_from_json(Json(nullptr)), ParseError);
}

TEST_CASE("matrices and lattices round trip") {
  IntMat m = bwtest::mk({{1, -2}, {300000000000, 4}});
  REQUIRE(int_mat_from_json(to_json(m)) == m);
  REQUIRE_THROWS_AS(int_mat_from_json(parse_json("[[\"1\"],[\"1\",\"2\"]]")), ParseError);

  Lattice l = construct_bw(3).L;
  REQUIRE(lattice_from_json(to_json(l)) == l);
  // through an actual byte stream
  REQUIRE(lattice_from_json(parse_json(to_json(l).dump())) == l);
}

TEST_CASE("actions round trip and are re-validated on input") {
  for (const char* name : {"M2", "M4", "BW3"}) {
    DihedralAction a = canonical(name);
    DihedralAction b = action_from_json(parse_json(to_json(a).dump()));
    REQUIRE(a.lat == b.lat);
    REQUIRE(map_eq(a.t, b.t));
    REQUIRE(map_eq(a.u, b.u));
    REQUIRE(map_eq(a.f, b.f));
  }
  // swapping in a non-involution must be caught at parse time
  Json bad = to_json(canonical("M2"));
  bad["t"] = to_json(DyadicMat(bwtest::mk({{1, 1}, {0, 1}}), 0));
  REQUIRE_THROWS_AS(action_from_json(bad), ParseError);
}

TEST_CASE("towers round trip through JSON") {
  for (unsigned d = 2; d <= 4; ++d) {
    BWTower tw = construct_bw(d);
    BWTower back = tower_from_json(parse_json(to_json(tw).dump()));
    REQUIRE(tower_eq(tw, back));
  }
}

TEST_CASE("report serializations carry the verdicts") {
  Json x = to_json(verify_condition_x(construct_bw(3)));
  REQUIRE(x["all_pass"] == true);
  REQUIRE(x["d"] == 3);
  REQUIRE(x["rows"].is_array());
  REQUIRE(!x["rows"].empty());
  for (const Json& row : x["rows"]) REQUIRE(row["status"] == "pass");
  REQUIRE(x["child"]["d"] == 2);
  REQUIRE(x["child"]["child"].is_null());

  Json lm = to_json(verify_lemma_suite(canonical("M4")));
  REQUIRE(lm["all_pass"] == true);
  REQUIRE(lm["density"] == false);
  REQUIRE(lm["profile"]["d"] == 1);

  Json rec = to_json(recognize(construct_bw(2).L));
  REQUIRE(rec["label"] == "D4");
  REQUIRE(rec["certificate"]["det"] == "4");
}

TEST_CASE("malformed documents raise parse errors") {
  REQUIRE_THROWS_AS(parse_json("{nope"), ParseError);
  REQUIRE_THROWS_AS(lattice_from_json(parse_json("{}")), ParseError);
  REQUIRE_THROWS_AS(frame_from_json(parse_json("{\"rank\":2,\"gram\":[[1,0],[0,-1]]}")),
                    ParseError);
  REQUIRE_THROWS_AS(frame_from_json(parse_json("{\"rank\":3,\"gram\":[[1,0],[0,1]]}")),
                    ParseError);
  Json l = to_json(construct_bw(2).L);
  l["basis"]["num"] = to_json(IntMat(2, 4));  // wrong shape and rank deficient
  REQUIRE_THROWS_AS(lattice_from_json(l), ParseError);
}

TEST_CASE("serialized output is deterministic") {
  REQUIRE(to_json(construct_bw(3)).dump() == to_json(construct_bw(3)).dump());
  REQUIRE(to_json(verify_lemma_suite(random_instance(7, 2, 1))).dump() ==
          to_json(verify_lemma_suite(random_instance(7, 2, 1))).dump());
}
