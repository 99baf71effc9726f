#pragma once

// Raw-value incidence kernels. Points are parallel arrays of canonical
// values; lines are canonical triples. The OpenMP versions are the ones the
// library calls; the serial twins live in reference.hpp.

#include "forge/gf.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace forge {

struct RawLine {
  std::uint32_t a, b, c;
};

struct RawPoints {
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> y;
  std::size_t size() const { return x.size(); }
};

struct IncidenceProfile {
  std::vector<std::uint32_t> line_load;    // points on each line
  std::vector<std::uint32_t> point_degree; // lines through each point
  std::uint64_t total = 0;
};

namespace kernels {

/// Lines bucketed by direction (a, b); each point's a x + b y is probed
/// against the bucket's -c values. O(|P| * directions + |L|).
std::uint64_t count_incidences(const Field& f, const RawPoints& pts, std::span<const RawLine> lines);

/// Same traversal, also recording per-line and (optionally) per-point counts.
IncidenceProfile incidence_profile(const Field& f, const RawPoints& pts, std::span<const RawLine> lines,
                                   bool point_degrees);

/// Number of distinct directions among the affine lines.
std::size_t count_directions(std::span<const RawLine> lines);

}  // namespace kernels
}  // namespace forge

#include "forge/elemset.hpp"
#include "forge/rational.hpp"

#include <optional>

namespace forge::kernels {

struct CosetMeet {
  unsigned degree = 0;
  std::uint32_t rep = 0;    // i with a = g^i
  std::uint32_t a = 1;
  std::uint32_t key = 0;    // coset label of x / a
  std::uint32_t least = 0;  // least element of A in the coset
  std::size_t count = 0;
};

/// Scans the cosets aG + b of one subfield, a over g^0..g^(m-1), in
/// parallel over a. Returns the coset of largest meet with A; ties go to
/// the smallest a index, then the smallest least element.
CosetMeet max_coset_meet(const ElemSet& A, const Subfield& G);

/// First coset, in (degree, a index, least element) order, meeting A in
/// more than max{lambda, |G|^(1/2)} points.
std::optional<CosetMeet> first_antifield_violation(const ElemSet& A, const Rational& lambda);

}  // namespace forge::kernels
