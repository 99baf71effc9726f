#include "forge/error.hpp"
#include "forge/experiments.hpp"
#include "forge/incidence.hpp"

#include <doctest.h>

using namespace forge;

TEST_CASE("threshold exponent identity") { CHECK(threshold_identity_holds()); }

TEST_CASE("subplane over F_9") {
  ScenarioConfig cfg;
  auto rep = theorem_audit(cfg);
  CHECK(rep.n == 9);
  // the 9 richest lines: 3 rows, 3 columns, 3 of the 6 diagonals
  CHECK(rep.I == 27);
  CHECK(rep.I3 == 243);
  CHECK(rep.lambda == Rational(5, 2));
  CHECK_FALSE(rep.antifield_ok);
  CHECK(rep.ratio_I_n32 == Rational(1));
}

TEST_CASE("subplane over F_25 yields a family") {
  ScenarioConfig cfg;
  cfg.p = 5;
  auto [P, L] = build_scenario(cfg);
  CHECK(P.size() == 25);
  auto g = reduce_to_grid(P, L, cfg.pipeline);
  auto fam = claim1_extract(g, Rational(3));
  CHECK(fam.members.size() >= 2);
  CHECK(fam.b1 != fam.b2);
  for (const auto& m : fam.members) {
    CHECK(m.b != fam.b1);
    CHECK(m.b != fam.b2);
  }
  auto rep = theorem_audit(cfg);
  CHECK(rep.stage_errors.empty());
  CHECK(rep.gamma.has_value());
  CHECK_FALSE(rep.rows.empty());
}

TEST_CASE("scenario validation") {
  ScenarioConfig r;
  r.scenario = "random";
  r.n = 20;
  CHECK_THROWS_AS(build_scenario(r), Error);  // seed required
  r.seed = 4;
  auto [P, L] = build_scenario(r);
  CHECK(P.size() == 20);
  CHECK(L.size() <= P.size());
  ScenarioConfig bad;
  bad.scenario = "nope";
  CHECK_THROWS_AS(build_scenario(bad), Error);
}

TEST_CASE("case split") {
  auto f5 = Field::make(5, 1);
  auto c = case_split_audit(ElemSet(*f5, {0, 1}), Rational(2));
  CHECK(c.holds);
  auto f9 = Field::make(3, 2);
  auto s = case_split_audit(ElemSet(*f9, {0, 1, 2}), Rational(2));
  CHECK(s.tag == "field");
}
