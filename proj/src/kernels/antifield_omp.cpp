#include "forge/antifield.hpp"
#include "forge/kernels.hpp"

#include <omp.h>

#include <limits>

namespace forge::kernels {

namespace {

// Largest meet for a = g^i, and the least element of A realising it.
CosetMeet scan_rep(const ElemSet& A, const Subfield& G, std::uint32_t i, std::vector<std::uint32_t>& hist) {
  const Field& f = G.field();
  CosetMeet m;
  m.degree = G.degree();
  m.rep = i;
  m.a = f.exp(i);
  const std::uint32_t ainv = f.inv(m.a);
  for (auto v : A) ++hist[G.coset_key(f.mul(v, ainv))];
  for (auto v : A) {  // ascending, so the first hit of a count is the least element
    std::uint32_t key = G.coset_key(f.mul(v, ainv));
    if (hist[key] > m.count) {
      m.count = hist[key];
      m.key = key;
      m.least = v;
    }
  }
  for (auto v : A) hist[G.coset_key(f.mul(v, ainv))] = 0;
  return m;
}

bool better(const CosetMeet& x, const CosetMeet& y) {
  if (x.count != y.count) return x.count > y.count;
  if (x.rep != y.rep) return x.rep < y.rep;
  return x.least < y.least;
}

}  // namespace

CosetMeet max_coset_meet(const ElemSet& A, const Subfield& G) {
  const Field& f = G.field();
  const auto m = static_cast<std::int64_t>(G.multiplicative_index());
  CosetMeet best;
  best.degree = G.degree();
  if (A.empty()) return best;
  bool have = false;
#pragma omp parallel
  {
    std::vector<std::uint32_t> hist(f.q(), 0);
    CosetMeet local;
    bool local_have = false;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) {
      CosetMeet c = scan_rep(A, G, static_cast<std::uint32_t>(i), hist);
      if (!local_have || better(c, local)) {
        local = c;
        local_have = true;
      }
    }
#pragma omp critical
    if (local_have && (!have || better(local, best))) {
      best = local;
      have = true;
    }
  }
  return best;
}

std::optional<CosetMeet> first_antifield_violation(const ElemSet& A, const Rational& lambda) {
  if (A.size() <= 1) return std::nullopt;
  const Field& f = A.field();
  for (const auto& G : f.subfields()) {
    // a coset can only fail with more than max{lambda, |G|^(1/2)} points
    const std::uint64_t cap = antifield_cap(lambda, G.order());
    if (A.size() <= cap) continue;
    const auto m = static_cast<std::int64_t>(G.multiplicative_index());
    std::int64_t first = std::numeric_limits<std::int64_t>::max();
    CosetMeet found;
#pragma omp parallel
    {
      std::vector<std::uint32_t> hist(f.q(), 0);
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < m; ++i) {
        std::int64_t seen;
#pragma omp atomic read
        seen = first;
        if (i > seen) continue;
        // first violating coset by least element for this a
        const std::uint32_t a = f.exp(static_cast<std::uint32_t>(i));
        const std::uint32_t ainv = f.inv(a);
        for (auto v : A) ++hist[G.coset_key(f.mul(v, ainv))];
        std::optional<CosetMeet> hit;
        for (auto v : A) {
          std::uint32_t key = G.coset_key(f.mul(v, ainv));
          if (hist[key] > cap) {
            hit = CosetMeet{G.degree(), static_cast<std::uint32_t>(i), a, key, v, hist[key]};
            break;
          }
        }
        for (auto v : A) hist[G.coset_key(f.mul(v, ainv))] = 0;
        if (hit) {
#pragma omp critical
          if (i < first) {
            first = i;
            found = *hit;
          }
        }
      }
    }
    if (first != std::numeric_limits<std::int64_t>::max()) return found;
  }
  return std::nullopt;
}

}  // namespace forge::kernels
