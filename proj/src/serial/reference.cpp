#include "forge/reference.hpp"

#include "../kernels/bucket.hpp"

namespace forge::reference {

std::uint64_t count_incidences_naive(const Field& f, const RawPoints& pts, std::span<const RawLine> lines) {
  std::uint64_t total = 0;
  for (const auto& l : lines) {
    if (l.a == 0 && l.b == 0) continue;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::uint32_t v = f.add(f.add(f.mul(l.a, pts.x[i]), f.mul(l.b, pts.y[i])), l.c);
      total += v == 0;
    }
  }
  return total;
}

std::uint64_t count_incidences_serial(const Field& f, const RawPoints& pts, std::span<const RawLine> lines) {
  const kernels::detail::LogPoints P = kernels::detail::log_points(f, pts);
  const kernels::detail::Buckets bk = kernels::detail::make_buckets(lines);
  const kernels::detail::Tables t(f);
  std::vector<std::int32_t> slot(f.q(), -1);
  std::uint64_t total = 0;
  for (const auto& b : bk.list)
    kernels::detail::probe_bucket(f, t, P, lines, bk, b, slot, [&](std::size_t, std::size_t) { ++total; });
  return total;
}

namespace {

std::size_t meet(const ElemSet& A, const Subfield& G, std::uint32_t a, std::uint32_t b) {
  const Field& f = A.field();
  std::size_t count = 0;
  const std::uint32_t ainv = f.inv(a);
  for (auto x : A) count += G.contains_value(f.mul(f.sub(x, b), ainv));
  return count;
}

}  // namespace

bool is_antifield_naive(const ElemSet& A, const Rational& lambda) {
  const Field& f = A.field();
  // c <= lambda for an integer c is c <= floor(lambda)
  const BigInt fl = floor(lambda);
  const std::int64_t cap = fl > BigInt(1 << 30) ? (1 << 30) : fl.convert_to<std::int64_t>();
  for (const auto& G : f.subfields()) {
    for (std::uint32_t a = 1; a < f.q(); ++a)
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        std::size_t c = meet(A, G, a, b);
        if (!(static_cast<std::int64_t>(c) <= cap || c * c <= G.order())) return false;
      }
  }
  return true;
}

bool is_strong_antifield_naive(const ElemSet& A, const Rational& lambda) {
  if (!is_antifield_naive(A, lambda)) return false;
  const Field& f = A.field();
  for (const auto& G : f.subfields()) {
    if (Rational(G.order()) < lambda) continue;
    // translates G + b meeting A, b over the whole field, deduplicated by
    // their least element
    std::vector<std::uint8_t> counted(f.q(), 0);
    std::size_t t = 0;
    for (std::uint32_t b = 0; b < f.q(); ++b) {
      std::uint32_t least = f.q();
      bool hits = false;
      for (auto g : G.values()) {
        std::uint32_t v = f.add(g, b);
        least = std::min(least, v);
        hits = hits || A.contains(v);
      }
      if (hits && !counted[least]) {
        counted[least] = 1;
        ++t;
      }
    }
    std::uint64_t two_t = 2 * t;
    if (!(Rational(two_t) < lambda || two_t * two_t < G.order())) return false;
  }
  return true;
}

bool grid_invariants_hold(const GridInstance& g) {
  if (!g.A.valid() || !g.B.valid()) return false;
  const Field& f = g.A.field();
  for (auto b : g.B)
    if (b == 0) return false;
  for (std::size_t i = 0; i < g.Pstar.size(); ++i) {
    const Point& p = g.Pstar[i];
    if (p.x.field_ptr() != &f) return false;
    if (i > 0 && !(g.Pstar[i - 1] < p)) return false;
    bool on_ray = false;
    for (auto a : g.A) on_ray = on_ray || f.mul(a, p.x.value()) == p.y.value();
    bool on_row = false;
    for (auto b : g.B) on_row = on_row || b == p.y.value();
    if (!on_ray || !on_row || p.x.is_zero()) return false;
  }
  return true;
}

}  // namespace forge::reference
