#include "forge/error.hpp"
#include "forge/incidence.hpp"
#include "forge/reference.hpp"
#include "forge/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace forge;

namespace {

std::vector<Point> grid(const Field& f, std::uint32_t m) {
  std::vector<Point> P;
  for (std::uint32_t x = 0; x < m; ++x)
    for (std::uint32_t y = 0; y < m; ++y) P.emplace_back(f.element(x), f.element(y));
  return P;
}

// Direct oracle: test every (point, line) pair with the line equation.
std::uint64_t brute_incidences(const std::vector<Point>& P, const std::vector<Line>& L) {
  std::uint64_t n = 0;
  for (const auto& l : L)
    for (const auto& p : P) n += incident(p, l);
  return n;
}

}  // namespace

TEST_CASE("small grids") {
  auto f = Field::make(3, 1);
  auto P = grid(*f, 3);
  auto L = lines_determined(P);
  CHECK(L.size() == 12);
  CHECK(count_incidences(P, L) == 36);
  CHECK(count_k_tuples(P, L, 2) == 108);
  CHECK(count_k_tuples(P, L, 3) == 324);

  auto f9 = Field::make(3, 2);
  auto S = grid(*f9, 3);
  auto LS = lines_determined(S);
  CHECK(count_incidences(S, LS) == 36);
  CHECK(count_k_tuples(S, LS, 3) == 324);
}

TEST_CASE("3x3 grid in F_7") {
  auto f = Field::make(7, 1);
  auto P = grid(*f, 3);
  auto L = lines_determined(P);
  // 3 rows, 3 columns, 2 long diagonals, 12 two-point lines: 20 lines,
  // 8 * 3 + 12 * 2 = 48 incidences
  CHECK(L.size() == 20);
  CHECK(count_incidences(P, L) == 48);
  CHECK(count_incidences(P, L) == brute_incidences(P, L));
  CHECK(count_k_tuples(P, L, 3) == 8 * 27 + 12 * 8);
}

TEST_CASE("kernel agrees with direct count on random sets") {
  auto f = Field::make(13, 1);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> P;
    for (auto idx : rng.distinct(169, 5 + trial)) P.emplace_back(f->element(idx % 13), f->element(idx / 13));
    normalize(P);
    auto L = lines_determined(P);
    CHECK(count_incidences(P, L) == brute_incidences(P, L));
    CHECK(count_incidences(P, L) == reference::count_incidences_naive(*f, to_raw(P), to_raw(std::span<const Line>(L))));
  }
}

TEST_CASE("lines at infinity carry no incidences") {
  auto f = Field::make(5, 1);
  auto P = grid(*f, 2);
  std::vector<Line> L{Line::at_infinity(*f)};
  CHECK(count_incidences(P, L) == 0);
}

TEST_CASE("points and lines must share a field") {
  auto f = Field::make(5, 1);
  auto g = Field::make(7, 1);
  std::vector<Point> P{Point(f->one(), f->one())};
  std::vector<Line> L{Line::vertical(g->one())};
  CHECK_THROWS_AS(count_incidences(P, L), Error);
}

TEST_CASE("profile and richest lines") {
  auto f = Field::make(7, 1);
  auto P = grid(*f, 3);
  auto L = lines_determined(P);
  auto prof = incidence_profile(P, L);
  std::uint64_t sum = 0;
  for (auto c : prof.line_load) sum += c;
  CHECK(sum == 48);
  auto top = richest_lines(P, 8);
  CHECK(top.size() == 8);
  for (const auto& l : top) {
    std::size_t on = 0;
    for (const auto& p : P) on += incident(p, l);
    CHECK(on == 3);
  }
}

TEST_CASE("reduce_to_grid on the F_9 subplane") {
  auto f9 = Field::make(3, 2);
  auto P = grid(*f9, 3);
  auto L = lines_determined(P);
  auto g = reduce_to_grid(P, L);
  CHECK(g.report.n == 9);
  for (const auto& p : g.Pstar) {
    bool on = g.B.contains(p.y);
    for (auto a : g.A) on = on || p.y == f9->element(a) * p.x;
    CHECK(on);
  }
  CHECK_FALSE(g.B.contains(0u));
}

TEST_CASE("reduce_to_grid needs a bushy point") {
  auto f = Field::make(7, 1);
  std::vector<Point> P{Point(f->zero(), f->zero()), Point(f->one(), f->element(3))};
  auto L = lines_determined(P);
  CHECK_THROWS_AS(reduce_to_grid(P, L), Error);
}
