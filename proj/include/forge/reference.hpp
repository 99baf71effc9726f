#pragma once

// Serial reference implementations. Kept deliberately plain: they are the
// oracles the tests compare the parallel kernels against.

#include "forge/antifield.hpp"
#include "forge/incidence.hpp"
#include "forge/kernels.hpp"

namespace forge::reference {

/// |P| x |L| double loop.
std::uint64_t count_incidences_naive(const Field& f, const RawPoints& pts, std::span<const RawLine> lines);

/// Direction-bucketed count without threads.
std::uint64_t count_incidences_serial(const Field& f, const RawPoints& pts, std::span<const RawLine> lines);

/// Coset condition by looping over every a != 0 and every b.
bool is_antifield_naive(const ElemSet& A, const Rational& lambda);
/// Adds the translate-count condition, also by direct enumeration.
bool is_strong_antifield_naive(const ElemSet& A, const Rational& lambda);

/// Structural check of a GridInstance, recomputed from A and B only.
bool grid_invariants_hold(const GridInstance& g);

}  // namespace forge::reference
