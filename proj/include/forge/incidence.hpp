#pragma once

#include "forge/elemset.hpp"
#include "forge/kernels.hpp"
#include "forge/plane.hpp"
#include "forge/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace forge {

RawPoints to_raw(std::span<const Point> P);
/// Lines at infinity are dropped (they carry no affine point).
std::vector<RawLine> to_raw(std::span<const Line> L);

/// |{(p, l) : p on l}|. P and L must be duplicate-free.
std::uint64_t count_incidences(std::span<const Point> P, std::span<const Line> L);

/// Sum over l of (points of P on l)^k.
BigInt count_k_tuples(std::span<const Point> P, std::span<const Line> L, unsigned k);

/// Per-line load and per-point degree, in input order.
IncidenceProfile incidence_profile(std::span<const Point> P, std::span<const Line> L);

/// The m lines of L(P) carrying most points of P; ties go to the smaller
/// canonical triple. Result is sorted by line order.
std::vector<Line> richest_lines(std::span<const Point> P, std::size_t m);

struct PipelineConfig {
  Rational epsilon{1, 4};
  Rational c_plus{4};
  Rational c_minus{1, 3};
  Rational c_rich{1, 20};
};

struct GridReport {
  std::size_t n = 0;
  std::size_t lines = 0;
  std::uint64_t incidences_in = 0;
  BigInt plus_threshold;   // ceil of c_plus n^(1/2+eps)
  BigInt minus_threshold;  // floor of c_minus n^(1/2-eps)
  BigInt rich_threshold;   // ceil of c_rich n^(1/2-eps)
  std::size_t dropped_plus = 0;
  std::size_t dropped_minus = 0;
  std::uint64_t incidences_dropped_plus = 0;
  std::uint64_t incidences_dropped_minus = 0;
  std::uint64_t incidences_kept = 0;
  Rational retention;  // incidences_kept / incidences_in
  std::size_t rich_lines = 0;
  std::size_t bushy_points = 0;
  Point p, q;
  std::size_t pivot_overlap = 0;  // |P_p cap P_q|
  std::size_t dropped_same_x = 0;
  std::size_t p_prime = 0;
  Point apex;  // s, after translating p to the origin and flipping
  std::size_t apex_lines = 0;
  std::size_t dropped_infinite_gradient = 0;
  std::size_t dropped_zero_intercept = 0;
  std::size_t size_a = 0, size_b = 0, size_pstar = 0;
  std::uint64_t incidences_star = 0;  // I(P*, L(P*))
  double ratio_to_target = 0.0;       // I(P*, L(P*)) / n^(3/2 - 5 eps)
};

/// Points on the lines y = a x (a in A) and y = b (b in B), 0 not in B.
struct GridInstance {
  ElemSet A;
  ElemSet B;
  std::vector<Point> Pstar;
  GridReport report;
};

/// Constructive reduction of (P, L) to the grid position above. Throws
/// "insufficient incidences" when no bushy point, no admissible pivot pair
/// or no apex exists. n is |P|.
GridInstance reduce_to_grid(std::span<const Point> P, std::span<const Line> L, const PipelineConfig& cfg = {});

}  // namespace forge
