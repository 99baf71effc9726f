#include "forge/error.hpp"
#include "forge/plane.hpp"

#include <doctest.h>

using namespace forge;

namespace {
Point pt(const Field& f, std::uint32_t x, std::uint32_t y) { return Point(f.element(x), f.element(y)); }
}  // namespace

TEST_CASE("incidence in F_7") {
  auto f = Field::make(7, 1);
  Line l = Line::make(f->element(1), f->element(6), f->zero());
  CHECK(incident(pt(*f, 0, 0), l));
  CHECK_FALSE(incident(pt(*f, 1, 2), l));
  CHECK(incident(pt(*f, 3, 3), l));
}

TEST_CASE("line_through canonical forms") {
  auto f = Field::make(7, 1);
  Line l = line_through(pt(*f, 0, 0), pt(*f, 1, 1));
  CHECK(to_string(l) == "[1:6:0]");
  CHECK(to_string(line_through(pt(*f, 0, 0), pt(*f, 0, 1))) == "[1:0:0]");
  CHECK(line_through(pt(*f, 0, 4), pt(*f, 1, 4)) == Line::make(f->zero(), f->one(), f->element(3)));
  CHECK_THROWS_AS(line_through(pt(*f, 2, 2), pt(*f, 2, 2)), Error);
}

TEST_CASE("cross ratio") {
  auto f = Field::make(7, 1);
  auto e = [&](std::uint32_t v) { return f->element(v); };
  CHECK(cross_ratio(e(0), e(1), e(2), e(3)) == e(2));
  CHECK(cross_ratio(e(4), e(4), e(2), e(3)).is_zero());
  CHECK(cross_ratio(e(2), e(3), e(4), e(5)) == cross_ratio(e(2).inv(), e(3).inv(), e(4).inv(), e(5).inv()));
  CHECK_THROWS_AS(cross_ratio(e(1), e(2), e(2), e(3)), Error);
}

TEST_CASE("cross ratio set") {
  auto f = Field::make(5, 1);
  CHECK(cross_ratio_set(ElemSet(*f, {3})).empty());
  // only admissible quadruples of {0,1}: X(0,1,0,1) = 1 and X(1,0,1,0) = 1,
  // plus a = b or c = d giving 0
  CHECK(cross_ratio_set(ElemSet(*f, {0, 1})) == ElemSet(*f, {0, 1}));
  auto f9 = Field::make(3, 2);
  auto X = cross_ratio_set(ElemSet(*f9, {0, 1, 2}));
  for (auto v : X) CHECK(f9->subfield(1).contains_value(v));
}

TEST_CASE("flip") {
  auto f = Field::make(7, 1);
  ProjMap tau = ProjMap::flip(*f);
  auto img = apply_proj(tau, ProjPoint::from_affine(pt(*f, 2, 3)));
  CHECK(img.affine() == pt(*f, 4, 5));
  for (std::uint32_t x = 1; x < 7; ++x)
    for (std::uint32_t y = 0; y < 7; ++y) {
      auto p = ProjPoint::from_affine(pt(*f, x, y));
      CHECK(tau.apply(tau.apply(p)) == p);
    }
  auto inf = tau.apply(ProjPoint::from_affine(pt(*f, 0, 5)));
  CHECK(inf.at_infinity());
  CHECK(inf == ProjPoint::make(f->one(), f->element(5), f->zero()));
}

TEST_CASE("maps send incident pairs to incident pairs") {
  auto f = Field::make(5, 1);
  ProjMap m = ProjMap::translation(f->element(2), f->element(3)).compose(ProjMap::flip(*f));
  for (std::uint32_t x = 0; x < 5; ++x)
    for (std::uint32_t y = 0; y < 5; ++y) {
      Line l = Line::graph(f->element(2), f->element(1));
      auto p = ProjPoint::from_affine(pt(*f, x, y));
      CHECK(incident(p, l) == incident(m.apply(p), m.apply(l)));
    }
  auto inv = m.inverse();
  auto p = ProjPoint::from_affine(pt(*f, 3, 1));
  CHECK(inv.apply(m.apply(p)) == p);
  ProjMap::Matrix zero;
  for (auto& row : zero)
    for (auto& e : row) e = f->zero();
  CHECK_THROWS_AS(ProjMap{zero}, Error);
}

TEST_CASE("lines determined") {
  auto f = Field::make(7, 1);
  std::vector<Point> col{pt(*f, 0, 0), pt(*f, 1, 1), pt(*f, 2, 2)};
  CHECK(lines_determined(col).size() == 1);
  std::vector<Point> tri{pt(*f, 0, 0), pt(*f, 1, 0), pt(*f, 0, 1)};
  CHECK(lines_determined(tri).size() == 3);
  CHECK_THROWS_AS(lines_determined(std::vector<Point>{pt(*f, 1, 1)}), Error);

  auto f9 = Field::make(3, 2);
  std::vector<Point> sub;
  for (std::uint32_t x = 0; x < 3; ++x)
    for (std::uint32_t y = 0; y < 3; ++y) sub.push_back(pt(*f9, x, y));
  CHECK(lines_determined(sub).size() == 12);
}
