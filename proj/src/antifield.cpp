#include "forge/antifield.hpp"

#include "forge/error.hpp"
#include "forge/kernels.hpp"
#include "forge/rng.hpp"

#include <algorithm>
#include <cmath>

namespace forge {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

const Rational kLambdaExponent(2560, 6419);

}  // namespace

bool within_antifield_bound(std::size_t count, const Rational& lambda, std::uint64_t order) {
  return Rational(count) <= lambda || static_cast<std::uint64_t>(count) * count <= order;
}

bool within_translate_bound(std::size_t translates, const Rational& lambda, std::uint64_t order) {
  const std::uint64_t two_t = 2 * static_cast<std::uint64_t>(translates);
  return Rational(two_t) < lambda || two_t * two_t < order;
}

std::uint64_t antifield_cap(const Rational& lambda, std::uint64_t order) {
  BigInt fl = floor(lambda);
  std::uint64_t from_lambda = fl < 0 ? 0 : (fl > BigInt(UINT64_MAX / 4) ? UINT64_MAX / 4 : fl.convert_to<std::uint64_t>());
  return std::max(from_lambda, isqrt(order));
}

AntifieldVerdict check_antifield(const ElemSet& A, const Rational& lambda) {
  if (lambda < 0) throw Error(Errc::invalid_argument, "lambda must be nonnegative");
  AntifieldVerdict v;
  if (auto hit = kernels::first_antifield_violation(A, lambda)) {
    v.ok = false;
    v.witness = AntifieldWitness{false, hit->degree, hit->a, hit->least, hit->count};
  }
  return v;
}

AntifieldVerdict check_strong_antifield(const ElemSet& A, const Rational& lambda) {
  AntifieldVerdict v = check_antifield(A, lambda);
  if (!v.ok) return v;
  const Field& f = A.field();
  for (const auto& G : f.subfields()) {
    if (Rational(G.order()) < lambda) continue;
    std::vector<std::uint32_t> keys;
    keys.reserve(A.size());
    for (auto x : A) keys.push_back(G.coset_key(x));
    std::sort(keys.begin(), keys.end());
    std::size_t t = static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    if (!within_translate_bound(t, lambda, G.order())) {
      v.ok = false;
      v.witness = AntifieldWitness{true, G.degree(), 1, 0, t};
      return v;
    }
  }
  return v;
}

AntifieldVerdict check_point_antifield(std::span<const Point> P, const Rational& lambda, bool strong) {
  if (P.empty()) return {};
  ElemSet A = x_projection(P.front().x.field(), P);
  return strong ? check_strong_antifield(A, lambda) : check_antifield(A, lambda);
}

bool witness_reverifies(const ElemSet& A, const Rational& lambda, const AntifieldWitness& w) {
  const Field& f = A.field();
  const Subfield& G = f.subfield(w.degree);
  if (w.strong_part) {
    if (Rational(G.order()) < lambda) return false;
    // count translates G + b directly: b ranges over A, x ~ y iff x - y in G
    std::vector<std::uint32_t> reps;
    for (auto x : A) {
      bool seen = std::any_of(reps.begin(), reps.end(),
                              [&](std::uint32_t r) { return G.contains_value(f.sub(x, r)); });
      if (!seen) reps.push_back(x);
    }
    return reps.size() == w.count && !within_translate_bound(reps.size(), lambda, G.order());
  }
  if (w.a == 0) return false;
  std::size_t count = 0;
  for (auto g : G.values()) count += A.contains(f.add(f.mul(w.a, g), w.b));
  return count == w.count && !within_antifield_bound(count, lambda, G.order());
}

Rational min_strong_lambda(const ElemSet& A) {
  // passes at 2|A| + 1; search half-integers below it
  std::uint64_t lo = 0, hi = 2 * (2 * A.size() + 1);
  if (check_strong_antifield(A, Rational(0)).ok) return Rational(0);
  while (hi - lo > 1) {
    std::uint64_t mid = (lo + hi) / 2;
    if (check_strong_antifield(A, Rational(mid, 2)).ok) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return Rational(hi, 2);
}

Rational threshold_lambda(std::size_t n, const Rational& gamma) {
  if (gamma < 0) throw Error(Errc::invalid_argument, "gamma must be nonnegative");
  if (n == 0) return Rational(0);
  return RealPower{gamma, BigInt(n), kLambdaExponent}.integer_equivalent();
}

// ---------------------------------------------------------------------------

namespace {

struct Hypothesis {
  Rational h;
  bool sqrt_branch = false;
  RealPower winner;
};

// H = max{ base^(1/2), n^(2560/6419) }
Hypothesis hypothesis_bound(std::uint64_t base, std::size_t n) {
  RealPower root{Rational(1), BigInt(base), Rational(1, 2)};
  RealPower power{Rational(1), BigInt(n), kLambdaExponent};
  Hypothesis out;
  // base^(1/2) >= n^(2560/6419)  iff  base^6419 >= n^5120
  out.sqrt_branch = n == 0 || pow(BigInt(base), 6419) >= pow(BigInt(n), 5120);
  out.winner = out.sqrt_branch ? root : power;
  out.h = out.winner.integer_equivalent();
  return out;
}

Construction build(const Field& f, std::uint32_t t, const Subfield& index_field, std::uint32_t p,
                   std::span<const std::uint32_t> J, std::span<const std::size_t> caps, std::uint64_t seed,
                   std::uint64_t base) {
  if (!caps.empty() && caps.size() != 1 && caps.size() != J.size())
    throw Error(Errc::invalid_argument, "give one cap or one per index");
  Construction c;
  c.t = t;
  Rng rng(seed);
  std::vector<std::uint32_t> xs;
  std::vector<std::uint32_t> seen_j;
  for (std::size_t idx = 0; idx < J.size(); ++idx) {
    std::uint32_t j = J[idx];
    if (j >= index_field.order()) throw Error(Errc::invalid_argument, "index outside the index field");
    if (std::find(seen_j.begin(), seen_j.end(), j) != seen_j.end())
      throw Error(Errc::invalid_argument, "repeated index in J");
    seen_j.push_back(j);
    std::size_t cap = caps.empty() ? 0 : (caps.size() == 1 ? caps[0] : caps[idx]);
    if (cap > p) throw Error(Errc::cap_too_large);
    const std::uint32_t jv = index_field.values()[j];
    const std::uint32_t shift = f.mul(jv, t);
    for (auto u : rng.distinct(p, cap)) xs.push_back(f.add(static_cast<std::uint32_t>(u), shift));
    c.part_sizes.push_back(cap);
    c.J.push_back(j);
  }
  c.A = ElemSet(f, xs);
  for (auto x : c.A) c.P.emplace_back(f.element(x), f.element(static_cast<std::uint32_t>(rng.below(f.q()))));
  normalize(c.P);
  const std::size_t n = c.P.size();
  Hypothesis hyp = hypothesis_bound(base, n);
  c.h = hyp.h;
  c.sqrt_branch_active = hyp.sqrt_branch;
  c.j_within = hyp.winner.compare(BigInt(2 * c.J.size())) < 0;
  c.caps_within = std::all_of(c.part_sizes.begin(), c.part_sizes.end(),
                              [&](std::size_t s) { return hyp.winner.compare(BigInt(s)) <= 0; });
  return c;
}

std::string bool_word(bool b) { return b ? "yes" : "no"; }

}  // namespace

Construction construct_p2(std::uint32_t p, std::span<const std::uint32_t> J, std::span<const std::size_t> caps,
                          std::uint64_t seed) {
  auto field = Field::make(p, 2);
  const Field& f = *field;
  std::uint32_t t = defining_element(f, 1).value();
  Construction c = build(f, t, f.subfield(1), p, J, caps, seed, p);
  c.report = "n=" + std::to_string(c.P.size()) + " H=" + to_string(c.h) +
             " branch=" + (c.sqrt_branch_active ? "p^(1/2)" : "n^(2560/6419)") +
             " 2|J|<H:" + bool_word(c.j_within) + " caps<=H:" + bool_word(c.caps_within);
  return c;
}

Construction construct_p4(std::uint32_t p, std::span<const std::uint32_t> J, std::span<const std::size_t> caps,
                          std::uint64_t seed) {
  auto field = Field::make(p, 4);
  const Field& f = *field;
  std::uint32_t t = defining_element(f, 2).value();
  Construction c = build(f, t, f.subfield(2), p, J, caps, seed, static_cast<std::uint64_t>(p) * p);
  const std::size_t n = c.P.size();
  // F_p may be ignored once n >= p^(6419/2560), i.e. n^2560 >= p^6419
  bool exempt = n > 0 && pow(BigInt(n), 2560) >= pow(BigInt(p), 6419);
  c.exemptions.push_back("F_" + std::to_string(p) + " exempt only if n >= p^(6419/2560): n=" + std::to_string(n) +
                         " " + (exempt ? "exempt" : "not exempt"));
  c.report = "n=" + std::to_string(n) + " H=" + to_string(c.h) +
             " branch=" + (c.sqrt_branch_active ? "p" : "n^(2560/6419)") + " 2|J|<H:" + bool_word(c.j_within) +
             " caps<=H:" + bool_word(c.caps_within) + " " + c.exemptions.back();
  return c;
}

Construction default_p2(std::uint32_t p, std::uint64_t seed) {
  std::size_t best_m = 0, best_c = 0;
  for (std::size_t m = 1; m <= p; ++m)
    for (std::size_t cap = 1; cap <= p; ++cap) {
      Hypothesis hyp = hypothesis_bound(p, m * cap);
      if (hyp.winner.compare(BigInt(2 * m)) >= 0) continue;
      if (hyp.winner.compare(BigInt(cap)) > 0) continue;
      if (m * cap > best_m * best_c || (m * cap == best_m * best_c && m > best_m)) {
        best_m = m;
        best_c = cap;
      }
    }
  std::vector<std::uint32_t> J;
  for (std::size_t j = 0; j < best_m; ++j) J.push_back(static_cast<std::uint32_t>(j));
  std::vector<std::size_t> caps{best_c};
  if (best_m == 0) caps.clear();
  return construct_p2(p, J, caps, seed);
}

// ---------------------------------------------------------------------------

TrichotomyFinding trichotomy_audit(const ElemSet& A, const Subfield& G) {
  const Field& f = A.field();
  if (&G.field() != &f) throw Error(Errc::context_mismatch);
  TrichotomyFinding out;
  ElemSet X = cross_ratio_set(A);
  out.asserted = std::all_of(X.begin(), X.end(), [&](std::uint32_t v) { return G.contains_value(v); });
  kernels::CosetMeet m = kernels::max_coset_meet(A, G);
  out.max_meet = m.count;
  out.x = m.a;
  out.y = f.mul(m.a, m.key);
  if (m.count <= 2) {
    out.branch = 1;
  } else if (m.count == A.size()) {
    out.branch = 2;
  } else {
    out.branch = 0;
  }
  out.holds = !out.asserted || out.branch != 0;
  return out;
}

KeyLemmaFinding key_lemma_audit(const ElemSet& A, const Rational& lambda, const ElemSet& B,
                                std::span<const std::uint32_t> map) {
  const Field& f = shared_field(A, B);
  if (map.size() != B.size()) throw Error(Errc::invalid_argument, "map must give one image per element of B");
  {
    std::vector<std::uint32_t> img(map.begin(), map.end());
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end()) throw Error(Errc::not_injective);
  }
  KeyLemmaFinding out;
  bool into_a = std::all_of(map.begin(), map.end(), [&](std::uint32_t v) { return A.contains(v); });
  const std::size_t n = B.size();
  bool preserved = true;
  auto check = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    if (i == l || j == k) return true;
    return cross_ratio_raw(f, B.value(i), B.value(j), B.value(k), B.value(l)) ==
           cross_ratio_raw(f, map[i], map[j], map[k], map[l]);
  };
  if (n <= 12) {
    for (std::size_t i = 0; i < n && preserved; ++i)
      for (std::size_t j = 0; j < n && preserved; ++j)
        for (std::size_t k = 0; k < n && preserved; ++k)
          for (std::size_t l = 0; l < n && preserved; ++l) preserved = check(i, j, k, l);
  } else {
    Rng rng(0x6b65796c656d6d61ULL);
    for (int s = 0; s < 10000 && preserved; ++s)
      preserved = check(rng.below(n), rng.below(n), rng.below(n), rng.below(n));
  }
  out.cross_ratio_ok = preserved;
  out.strong_ok = check_strong_antifield(A, lambda).ok;
  out.hypothesis = into_a && preserved && out.strong_ok;
  if (!into_a) out.note = "map leaves A";
  else if (!preserved) out.note = "hypothesis failed";
  else if (!out.strong_ok) out.note = "A is not a strong antifield";
  if (out.hypothesis) {
    out.asserted = true;
    out.holds = check_antifield(B, lambda).ok;
  }
  return out;
}

}  // namespace forge
