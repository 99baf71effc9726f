#include "forge/antifield.hpp"
#include "forge/error.hpp"
#include "forge/reference.hpp"
#include "forge/rng.hpp"

#include <doctest.h>

using namespace forge;

TEST_CASE("antifield over F_4") {
  auto f = Field::make(2, 2);
  ElemSet A(*f, {0, 1});
  auto v = check_antifield(A, Rational(1));
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness);
  CHECK(v.witness->degree == 1);
  CHECK(v.witness->count == 2);
  CHECK(witness_reverifies(A, Rational(1), *v.witness));
  CHECK(check_antifield(A, Rational(2)).ok);
  CHECK(check_antifield(ElemSet(*f), Rational(0)).ok);
  CHECK(check_antifield(ElemSet(*f, {3}), Rational(0)).ok);
}

TEST_CASE("exact bounds") {
  CHECK(within_antifield_bound(2, Rational(1), 4));
  CHECK_FALSE(within_antifield_bound(3, Rational(1), 4));
  CHECK(within_antifield_bound(3, Rational(3), 4));
  CHECK_FALSE(within_translate_bound(1, Rational(2), 4));
  CHECK(within_translate_bound(1, Rational(5, 2), 4));
  CHECK(antifield_cap(Rational(5, 2), 9) == 3);
}

TEST_CASE("strong antifield") {
  auto f9 = Field::make(3, 2);
  CHECK(check_strong_antifield(ElemSet(*f9), Rational(1)).ok);
  auto v = check_strong_antifield(ElemSet(*f9, {0, 1, 2}), Rational(1));
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness);
  CHECK_FALSE(v.witness->strong_part);
  CHECK(v.witness->count == 3);
}

TEST_CASE("checker agrees with the naive oracle") {
  Rng rng(5);
  for (auto [p, k] : {std::pair{2u, 4u}, {3u, 2u}, {5u, 2u}, {2u, 3u}}) {
    auto f = Field::make(p, k);
    for (int trial = 0; trial < 60; ++trial) {
      const auto sz = 1 + rng.below(std::min<std::uint64_t>(f->q(), 7));
      std::vector<std::uint32_t> v;
      for (auto x : rng.distinct(f->q(), sz)) v.push_back(static_cast<std::uint32_t>(x));
      ElemSet A(*f, v);
      for (Rational lam : {Rational(1), Rational(2), Rational(5, 2), Rational(4)}) {
        CHECK(check_antifield(A, lam).ok == reference::is_antifield_naive(A, lam));
        CHECK(check_strong_antifield(A, lam).ok == reference::is_strong_antifield_naive(A, lam));
      }
    }
  }
}

TEST_CASE("point antifield") {
  auto f9 = Field::make(3, 2);
  std::vector<Point> P;
  for (std::uint32_t x = 0; x < 3; ++x)
    for (std::uint32_t y = 0; y < 3; ++y) P.emplace_back(f9->element(x), f9->element(y));
  CHECK_FALSE(check_point_antifield(P, Rational(1), false).ok);
  std::vector<Point> one{Point(f9->one(), f9->one())};
  CHECK(check_point_antifield(one, Rational(1), false).ok);
  // one translate of F_3 already breaks 2t < max{1, 3^(1/2)}
  CHECK_FALSE(check_point_antifield(one, Rational(1), true).ok);
}

TEST_CASE("constructions") {
  std::vector<std::uint32_t> J{0, 1};
  std::vector<std::size_t> caps{2, 2};
  auto c = construct_p2(5, J, caps, 1);
  CHECK(c.A.size() <= 4);
  CHECK(c.P.size() == c.part_sizes[0] + c.part_sizes[1]);
  // two translates of F_5 need H > 4, and H = 5/2 here
  CHECK_FALSE(c.j_within);
  CHECK_FALSE(check_point_antifield(c.P, c.h, true).ok);
  std::vector<std::uint32_t> J1{0};
  std::vector<std::size_t> caps1{2};
  auto c1 = construct_p2(5, J1, caps1, 1);
  CHECK(c1.j_within);
  CHECK(c1.caps_within);
  CHECK(check_point_antifield(c1.P, c1.h, true).ok);

  auto e = construct_p2(5, std::span<const std::uint32_t>{}, std::span<const std::size_t>{}, 1);
  CHECK(e.P.empty());

  std::vector<std::uint32_t> J7{0, 1, 2};
  std::vector<std::size_t> caps7{3, 3, 3};
  CHECK(construct_p2(7, J7, caps7, 2).sqrt_branch_active);

  std::vector<std::uint32_t> J4{0, 1};
  std::vector<std::size_t> caps4{2, 2};
  auto c4 = construct_p4(2, J4, caps4, 3);
  CHECK(c4.A.field().q() == 16);
  CHECK(construct_p4(3, std::span<const std::uint32_t>{}, std::span<const std::size_t>{}, 1).P.empty());
}

TEST_CASE("threshold lambda") {
  // 1024^(2560/6419) = 2^3.988... ~ 15.87
  CHECK(threshold_lambda(1024) == Rational(31, 2));
  CHECK(threshold_lambda(0) == Rational(0));
  CHECK(threshold_lambda(9) < threshold_lambda(100));
}

TEST_CASE("trichotomy") {
  auto f9 = Field::make(3, 2);
  const std::uint32_t t = defining_element(*f9, 1).value();
  ElemSet A(*f9, {t, f9->add(t, 1), f9->add(t, 2)});
  auto r = trichotomy_audit(A, f9->subfield(1));
  CHECK(r.asserted);
  CHECK(r.holds);
  CHECK(r.branch == 2);
  CHECK(r.x == 1);
  CHECK(r.y == t);
  auto s = trichotomy_audit(ElemSet(*f9, {0, 1}), f9->subfield(1));
  CHECK(s.branch == 1);
}

TEST_CASE("key lemma on an affine image") {
  auto f9 = Field::make(3, 2);
  const std::uint32_t t = defining_element(*f9, 1).value();
  ElemSet A(*f9, {0, 1, t});
  const Rational lam = min_strong_lambda(A);
  // B = 2A + 1 mapped back to A
  std::vector<std::uint32_t> bvals, map;
  for (auto a : A) bvals.push_back(f9->add(f9->mul(2, a), 1));
  ElemSet B(*f9, bvals);
  for (auto b : B) map.push_back(f9->mul(f9->sub(b, 1), f9->inv(2)));
  auto k = key_lemma_audit(A, lam, B, map);
  CHECK(k.hypothesis);
  CHECK(k.holds);
  std::vector<std::uint32_t> bad{0, 0, 1};
  CHECK_THROWS_AS(key_lemma_audit(A, lam, B, bad), Error);
}
