#pragma once

#include "forge/elemset.hpp"
#include "forge/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace forge {

enum class SetOp { sum, difference, product, ratio };

/// A+B, A-B, A*B or A/B. Zero denominators are skipped; a ratio whose B
/// has no nonzero element throws "empty denominator set".
ElemSet setop(SetOp op, const ElemSet& A, const ElemSet& B);

/// x*A + y*B for scalars x, y.
ElemSet lin_comb(std::uint32_t x, const ElemSet& A, std::uint32_t y, const ElemSet& B);

/// (Z-Z)/((Z-Z)\{0}). Throws "degenerate" when |Z| < 2.
ElemSet ratio_quotient(const ElemSet& Z);

bool closed_under_mul(const ElemSet& S);
bool closed_under_add(const ElemSet& S);
/// Smallest subfield containing S, by degree; the field itself when no
/// proper one does.
unsigned smallest_subfield_containing(const ElemSet& S);
/// True when S is exactly one of the field's subfields.
bool is_subfield(const ElemSet& S);

struct Popularity {
  std::vector<std::size_t> selected;  // indices into f, ascending
  Rational threshold;                 // sum f / (2 |X|)
  Rational size_floor;                // sum f / (2 N)
};

/// Y = {x : f(x) >= sum f / (2|X|)}. Throws "empty domain" for empty f and
/// invalid argument when a value lies outside [1, N].
Popularity popularity_select(std::span<const std::uint64_t> f, std::uint64_t N);

struct RuzsaAudit {
  std::size_t sumset = 0;  // |B_1 + ... + B_k|
  Rational bound;          // prod |X + B_j| / |X|^(k-1)
  Rational ratio;          // sumset / bound
  bool violated = false;
};

RuzsaAudit ruzsa_audit(const ElemSet& X, std::span<const ElemSet> Bs);

struct CoverResult {
  std::vector<std::uint32_t> offsets;  // in selection order
  std::size_t covered = 0;
  std::size_t goal = 0;  // ceil((1 - eps) |B|)
  Rational reference;    // |B + C| / |C|
  Rational constant;     // offsets.size() / reference
};

/// Greedy translates C + x; each step takes the x covering most uncovered
/// elements of B (least x on ties) until (1 - eps)|B| are covered.
CoverResult greedy_cover(const ElemSet& B, const ElemSet& C, const Rational& eps);

struct BsgResult {
  ElemSet Xp, Yp;
  Rational alpha;          // |G| / (|X| |Y|)
  std::size_t sumset = 0;  // |X' + Y'|
  Rational partial_sumset_size;  // |X +_G Y|
  Rational audit;          // |X' + Y'| alpha^5 / n, n = max(|X|, |Y|)
  std::uint32_t anchor = 0;
  std::size_t min_paths = 0;  // least count of length-3 paths over X' x Y'
};

/// Constructive Balog-Szemeredi-Gowers refinement of the sum graph G on
/// X x Y. Edges are pairs of canonical values. Throws "empty graph".
BsgResult bsg_extract(const ElemSet& X, const ElemSet& Y,
                      std::span<const std::pair<std::uint32_t, std::uint32_t>> G);

struct BourgainResult {
  std::uint32_t x1 = 0, x2 = 0, x3 = 0;
  std::size_t K = 0;
  std::size_t size = 0;  // |(X - x1) cap (x2 - x3) Y|
  Rational bound;        // |X| |Y| / K
  Rational constant;     // bound / size
  BigInt energy;         // solutions of x1 + y x2 = x3 + y x4
};

BourgainResult bourgain_pivot(const ElemSet& X, const ElemSet& Y);

enum class PivotCase { mult_open, add_open, field };
std::string to_string(PivotCase c);

struct PivotConfig {
  std::size_t search_cap = 2'000'000;  // candidate tuples inspected
  std::size_t samples = 10;
  std::uint64_t seed = 1;
};

struct PivotWitness {
  PivotCase tag = PivotCase::field;
  std::vector<std::uint32_t> witness;  // x1,x2,z1..z4 | y1..y4 | z1..z4
  std::uint32_t xi = 0;                // the element outside R(Z) that certifies the case
  std::size_t lhs = 0;                 // |Z|^2
  std::size_t rhs = 0;                 // combined sumset size at Z' = Z
  bool found = false;
  bool verified = false;  // inequality at Z' = Z and every sampled Z'
  std::size_t samples_checked = 0;
  std::string note;
};

PivotWitness pivot_witness(const ElemSet& Z, const PivotConfig& cfg = {});

/// |a Z1 + b Z2 + c Z3| etc. for the pivot inequalities.
std::size_t case1_size(const ElemSet& Z, std::span<const std::uint32_t> w);
std::size_t case2_size(const ElemSet& Z, std::span<const std::uint32_t> w);

struct Envelope {
  unsigned degree = 0;  // G = F_{p^degree}
  std::uint32_t a = 0, b = 0;
};

/// When R(Z) lies in a subfield G (smallest such), Z is inside aG + b with
/// a = z1 - z0, b = z0 for the two least elements. nullopt otherwise.
std::optional<Envelope> coset_envelope(const ElemSet& Z);

struct ZxZAudit {
  bool x_in_ratio_set = false;
  std::size_t size = 0;     // |Z + xZ|
  std::size_t expected = 0; // |Z|^2
  bool asserted = false;
  bool holds = true;
};

ZxZAudit z_xz_audit(const ElemSet& Z, std::uint32_t x);

}  // namespace forge
