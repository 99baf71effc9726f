#pragma once

#include "forge/elemset.hpp"
#include "forge/plane.hpp"
#include "forge/rational.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace forge {

/// max{lambda, |G|^(1/2)} compared exactly: count <= lambda or count^2 <= |G|.
bool within_antifield_bound(std::size_t count, const Rational& lambda, std::uint64_t order);
/// 2t < max{lambda, |G|^(1/2)}: 2t < lambda or (2t)^2 < |G|.
bool within_translate_bound(std::size_t translates, const Rational& lambda, std::uint64_t order);
/// Largest count passing within_antifield_bound.
std::uint64_t antifield_cap(const Rational& lambda, std::uint64_t order);

struct AntifieldWitness {
  bool strong_part = false;  // false: coset intersection; true: translate count
  unsigned degree = 0;       // G = F_{p^degree}
  std::uint32_t a = 1, b = 0;
  std::size_t count = 0;     // |A cap (aG + b)| or number of translates
};

struct AntifieldVerdict {
  bool ok = true;
  std::optional<AntifieldWitness> witness;
};

AntifieldVerdict check_antifield(const ElemSet& A, const Rational& lambda);
AntifieldVerdict check_strong_antifield(const ElemSet& A, const Rational& lambda);
AntifieldVerdict check_point_antifield(std::span<const Point> P, const Rational& lambda, bool strong);

/// Re-derives a failed verdict's witness by direct intersection.
bool witness_reverifies(const ElemSet& A, const Rational& lambda, const AntifieldWitness& w);

/// Least lambda in (1/2) Z_{>=0} at which A is a strong antifield; both
/// conditions are monotone in lambda so this is a threshold.
Rational min_strong_lambda(const ElemSet& A);

/// Lambda policy for the constructions and scenarios: explicit, or
/// gamma * n^(2560/6419) stored as an integer-equivalent rational.
Rational threshold_lambda(std::size_t n, const Rational& gamma = Rational(1));

struct Construction {
  std::vector<Point> P;
  ElemSet A;
  std::uint32_t t = 0;  // defining element
  std::vector<std::uint32_t> J;
  std::vector<std::size_t> part_sizes;  // |A_j|
  // H = max{ base^(1/2), n^(2560/6419) }, base = p (corollary p^2) or p^2 (p^4)
  Rational h;  // integer-equivalent of H
  bool sqrt_branch_active = false;  // base^(1/2) >= n^(2560/6419)
  bool j_within = false;     // 2|J| < H  (strictly fewer than H/2 translates)
  bool caps_within = false;  // every |A_j| <= H
  std::vector<std::string> exemptions;  // subfields the hypothesis lets us ignore
  std::string report;
};

/// Corollary construction in F_{p^2}: A_j inside F_p + j t, j in J (values
/// of F_p), |A_j| = min(cap, p), y-coordinates drawn from the seed.
Construction construct_p2(std::uint32_t p, std::span<const std::uint32_t> J, std::span<const std::size_t> caps,
                          std::uint64_t seed);
/// Same one level up: F_{p^4} = F_{p^2} + t F_{p^2}, J indexing F_{p^2}
/// by position in its sorted value list, A_j inside F_p + j t.
Construction construct_p4(std::uint32_t p, std::span<const std::uint32_t> J, std::span<const std::size_t> caps,
                          std::uint64_t seed);

/// Largest J = {0, ..., m-1} with every cap = c (and n = m c) such that
/// 2m < H and c <= H for H = max{p^(1/2), n^(2560/6419)}.
Construction default_p2(std::uint32_t p, std::uint64_t seed);

struct TrichotomyFinding {
  bool asserted = false;  // X(A) inside G
  bool holds = true;
  int branch = 0;         // 1: all cosets meet A in <= 2; 2: A inside xG + y
  std::uint32_t x = 0, y = 0;
  std::size_t max_meet = 0;
};

TrichotomyFinding trichotomy_audit(const ElemSet& A, const Subfield& G);

struct KeyLemmaFinding {
  bool hypothesis = false;     // strong antifield and cross ratios preserved
  bool cross_ratio_ok = false;
  bool strong_ok = false;
  bool asserted = false;
  bool holds = true;           // B antifield when asserted
  std::string note;
};

/// map[i] is the image of B.value(i). Throws "not injective".
KeyLemmaFinding key_lemma_audit(const ElemSet& A, const Rational& lambda, const ElemSet& B,
                                std::span<const std::uint32_t> map);

}  // namespace forge
