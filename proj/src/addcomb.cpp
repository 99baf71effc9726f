#include "forge/addcomb.hpp"

#include "forge/error.hpp"
#include "forge/rng.hpp"

#include <algorithm>
#include <numeric>

namespace forge {

namespace {

ElemSet from_mask(const Field& f, const std::vector<std::uint8_t>& mark) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < mark.size(); ++v)
    if (mark[v]) out.push_back(v);
  return ElemSet(f, std::move(out));
}

std::size_t lin3_size(const Field& f, const ElemSet& Z, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  // |a Z + b Z + c Z|
  std::vector<std::uint8_t> two(f.q(), 0), three(f.q(), 0);
  for (auto u : Z)
    for (auto v : Z) two[f.add(f.mul(a, u), f.mul(b, v))] = 1;
  std::size_t count = 0;
  for (std::uint32_t s = 0; s < f.q(); ++s) {
    if (!two[s]) continue;
    for (auto w : Z) {
      auto t = f.add(s, f.mul(c, w));
      if (!three[t]) {
        three[t] = 1;
        ++count;
      }
    }
  }
  return count;
}

std::size_t lin2_size(const Field& f, const ElemSet& Z, std::uint32_t a, std::uint32_t b) {
  std::vector<std::uint8_t> mark(f.q(), 0);
  std::size_t count = 0;
  for (auto u : Z)
    for (auto v : Z) {
      auto t = f.add(f.mul(a, u), f.mul(b, v));
      if (!mark[t]) {
        mark[t] = 1;
        ++count;
      }
    }
  return count;
}

ElemSet random_half_subset(const ElemSet& Z, Rng& rng) {
  const std::size_t n = Z.size();
  const std::size_t lo = (n + 1) / 2;
  const std::size_t k = lo + rng.below(n - lo + 1);
  std::vector<std::uint32_t> vals;
  for (auto i : rng.distinct(n, k)) vals.push_back(Z.value(i));
  return ElemSet(Z.field(), std::move(vals));
}

}  // namespace

ElemSet setop(SetOp op, const ElemSet& A, const ElemSet& B) {
  const Field& f = shared_field(A, B);
  std::vector<std::uint8_t> mark(f.q(), 0);
  bool any_den = false;
  for (auto b : B) {
    if (op == SetOp::ratio && b == 0) continue;
    any_den = true;
    std::uint32_t binv = op == SetOp::ratio ? f.inv(b) : 0;
    for (auto a : A) {
      switch (op) {
        case SetOp::sum: mark[f.add(a, b)] = 1; break;
        case SetOp::difference: mark[f.sub(a, b)] = 1; break;
        case SetOp::product: mark[f.mul(a, b)] = 1; break;
        case SetOp::ratio: mark[f.mul(a, binv)] = 1; break;
      }
    }
  }
  if (op == SetOp::ratio && !any_den) throw Error(Errc::empty_denominator_set);
  return from_mask(f, mark);
}

ElemSet lin_comb(std::uint32_t x, const ElemSet& A, std::uint32_t y, const ElemSet& B) {
  const Field& f = shared_field(A, B);
  std::vector<std::uint8_t> mark(f.q(), 0);
  for (auto a : A)
    for (auto b : B) mark[f.add(f.mul(x, a), f.mul(y, b))] = 1;
  return from_mask(f, mark);
}

ElemSet ratio_quotient(const ElemSet& Z) {
  if (Z.size() < 2) throw Error(Errc::degenerate, "ratio set needs |Z| >= 2");
  ElemSet D = setop(SetOp::difference, Z, Z);
  return setop(SetOp::ratio, D, D);
}

bool closed_under_mul(const ElemSet& S) {
  const Field& f = S.field();
  std::vector<std::uint8_t> in(f.q(), 0);
  for (auto v : S) in[v] = 1;
  for (auto a : S)
    for (auto b : S)
      if (!in[f.mul(a, b)]) return false;
  return true;
}

bool closed_under_add(const ElemSet& S) {
  const Field& f = S.field();
  std::vector<std::uint8_t> in(f.q(), 0);
  for (auto v : S) in[v] = 1;
  for (auto a : S)
    for (auto b : S)
      if (!in[f.add(a, b)]) return false;
  return true;
}

unsigned smallest_subfield_containing(const ElemSet& S) {
  const Field& f = S.field();
  for (const auto& sub : f.subfields()) {
    bool all = std::all_of(S.begin(), S.end(), [&](std::uint32_t v) { return sub.contains_value(v); });
    if (all) return sub.degree();
  }
  return f.k();
}

bool is_subfield(const ElemSet& S) {
  for (const auto& sub : S.field().subfields()) {
    if (sub.order() == S.size() && std::equal(S.begin(), S.end(), sub.values().begin())) return true;
  }
  return false;
}

Popularity popularity_select(std::span<const std::uint64_t> f, std::uint64_t N) {
  if (f.empty()) throw Error(Errc::empty_domain);
  BigInt total = 0;
  for (auto v : f) {
    if (v < 1 || v > N) throw Error(Errc::invalid_argument, "popularity weight outside [1, N]");
    total += v;
  }
  Popularity out;
  out.threshold = Rational(total, BigInt(2 * f.size()));
  out.size_floor = Rational(total, BigInt(2) * N);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (Rational(f[i]) >= out.threshold) out.selected.push_back(i);
  return out;
}

RuzsaAudit ruzsa_audit(const ElemSet& X, std::span<const ElemSet> Bs) {
  if (X.empty()) throw Error(Errc::empty_domain, "X must be nonempty");
  if (Bs.empty()) throw Error(Errc::invalid_argument, "need at least one B");
  const Field& f = X.field();
  ElemSet total(f, {0});
  BigInt prod = 1;
  for (const auto& B : Bs) {
    total = setop(SetOp::sum, total, B);
    prod *= setop(SetOp::sum, X, B).size();
  }
  RuzsaAudit out;
  out.sumset = total.size();
  out.bound = Rational(prod, pow(BigInt(X.size()), Bs.size() - 1));
  out.ratio = out.bound == 0 ? Rational(0) : Rational(out.sumset) / out.bound;
  out.violated = Rational(out.sumset) > out.bound;
  return out;
}

CoverResult greedy_cover(const ElemSet& B, const ElemSet& C, const Rational& eps) {
  const Field& f = shared_field(B, C);
  if (C.empty()) throw Error(Errc::empty_domain, "C must be nonempty");
  if (eps <= 0 || eps > 1) throw Error(Errc::invalid_argument, "eps must lie in (0, 1]");
  CoverResult out;
  out.goal = static_cast<std::size_t>(ceil((1 - eps) * Rational(B.size())));
  out.reference = Rational(setop(SetOp::sum, B, C).size(), C.size());
  std::vector<std::uint8_t> uncovered(f.q(), 0);
  for (auto b : B) uncovered[b] = 1;
  ElemSet candidates = setop(SetOp::difference, B, C);
  while (out.covered < out.goal) {
    std::size_t best = 0;
    std::uint32_t best_x = 0;
    for (auto x : candidates) {
      std::size_t gain = 0;
      for (auto c : C) gain += uncovered[f.add(c, x)];
      if (gain > best) {
        best = gain;
        best_x = x;
      }
    }
    if (best == 0) break;
    for (auto c : C) uncovered[f.add(c, best_x)] = 0;
    out.covered += best;
    out.offsets.push_back(best_x);
  }
  out.constant = Rational(out.offsets.size()) / out.reference;
  return out;
}

// ---------------------------------------------------------------------------

BsgResult bsg_extract(const ElemSet& X, const ElemSet& Y,
                      std::span<const std::pair<std::uint32_t, std::uint32_t>> G) {
  const Field& f = shared_field(X, Y);
  if (G.empty()) throw Error(Errc::empty_graph);
  const std::size_t nx = X.size(), ny = Y.size();
  auto xi = [&](std::uint32_t v) {
    return static_cast<std::size_t>(std::lower_bound(X.begin(), X.end(), v) - X.begin());
  };
  auto yi = [&](std::uint32_t v) {
    return static_cast<std::size_t>(std::lower_bound(Y.begin(), Y.end(), v) - Y.begin());
  };
  std::vector<std::vector<std::uint8_t>> adj(nx, std::vector<std::uint8_t>(ny, 0));
  std::size_t edges = 0;
  std::vector<std::uint8_t> partial(f.q(), 0);
  std::size_t partial_size = 0;
  for (const auto& [x, y] : G) {
    if (!X.contains(x) || !Y.contains(y)) throw Error(Errc::invalid_argument, "edge endpoint outside X x Y");
    auto& cell = adj[xi(x)][yi(y)];
    if (!cell) {
      cell = 1;
      ++edges;
      auto s = f.add(x, y);
      if (!partial[s]) {
        partial[s] = 1;
        ++partial_size;
      }
    }
  }
  BsgResult out;
  out.alpha = Rational(edges, nx * ny);
  out.partial_sumset_size = partial_size;
  std::vector<std::size_t> degx(nx, 0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) degx[i] += adj[i][j];

  // popular left vertices
  std::vector<std::uint8_t> popular(nx, 0);
  for (std::size_t i = 0; i < nx; ++i) popular[i] = 2 * nx * degx[i] >= edges;

  // bad pair: codegree below eps alpha^2 |Y| / 2, eps = 1/16
  const Rational bad_cut = Rational(1, 32) * out.alpha * out.alpha * Rational(ny);
  std::vector<std::vector<std::uint8_t>> bad(nx, std::vector<std::uint8_t>(nx, 0));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t k = 0; k < nx; ++k) {
      std::size_t codeg = 0;
      for (std::size_t j = 0; j < ny; ++j) codeg += adj[i][j] & adj[k][j];
      bad[i][k] = Rational(codeg) < bad_cut;
    }

  // anchor b0 maximising |A1|^2 - 16 * (bad pairs inside A1)
  std::ptrdiff_t anchor = -1;
  BigInt best_score;
  std::vector<std::size_t> best_a1;
  for (std::size_t j = 0; j < ny; ++j) {
    std::vector<std::size_t> a1;
    for (std::size_t i = 0; i < nx; ++i)
      if (adj[i][j] && popular[i]) a1.push_back(i);
    if (a1.empty()) continue;
    std::size_t nbad = 0;
    for (auto u : a1)
      for (auto v : a1) nbad += bad[u][v];
    BigInt score = BigInt(a1.size()) * a1.size() - BigInt(16) * nbad;
    if (anchor < 0 || score > best_score) {
      anchor = static_cast<std::ptrdiff_t>(j);
      best_score = score;
      best_a1 = std::move(a1);
    }
  }
  if (anchor < 0) {
    // every edge leaves from an unpopular vertex; cannot happen for nonempty G
    throw Error(Errc::empty_graph, "no popular neighbourhood");
  }
  out.anchor = Y.value(static_cast<std::size_t>(anchor));

  // keep vertices with at most twice the average number of bad partners
  std::vector<std::size_t> badcount(best_a1.size(), 0);
  std::size_t total_bad = 0;
  for (std::size_t u = 0; u < best_a1.size(); ++u) {
    for (auto v : best_a1) badcount[u] += bad[best_a1[u]][v];
    total_bad += badcount[u];
  }
  std::vector<std::size_t> aprime;
  for (std::size_t u = 0; u < best_a1.size(); ++u)
    if (badcount[u] * best_a1.size() <= 2 * total_bad) aprime.push_back(best_a1[u]);

  std::vector<std::size_t> yprime;
  for (std::size_t j = 0; j < ny; ++j) {
    std::size_t d = 0;
    for (auto i : aprime) d += adj[i][j];
    if (Rational(d) * 4 >= out.alpha * Rational(aprime.size())) yprime.push_back(j);
  }

  std::vector<std::uint32_t> xv, yv;
  for (auto i : aprime) xv.push_back(X.value(i));
  for (auto j : yprime) yv.push_back(Y.value(j));
  out.Xp = ElemSet(f, std::move(xv));
  out.Yp = ElemSet(f, std::move(yv));
  out.sumset = setop(SetOp::sum, out.Xp, out.Yp).size();
  const std::size_t n = std::max(nx, ny);
  out.audit = Rational(out.sumset) * pow(out.alpha, 5) / Rational(n);

  // length-3 paths x - y1 - x1 - y between the outputs
  std::size_t min_paths = SIZE_MAX;
  for (auto i : aprime)
    for (auto j : yprime) {
      std::size_t paths = 0;
      for (std::size_t j1 = 0; j1 < ny; ++j1) {
        if (!adj[i][j1]) continue;
        for (std::size_t i1 = 0; i1 < nx; ++i1) paths += adj[i1][j1] & adj[i1][j];
      }
      min_paths = std::min(min_paths, paths);
    }
  out.min_paths = min_paths == SIZE_MAX ? 0 : min_paths;
  return out;
}

BourgainResult bourgain_pivot(const ElemSet& X, const ElemSet& Y) {
  const Field& f = shared_field(X, Y);
  if (X.empty() || Y.empty()) throw Error(Errc::empty_domain);
  BourgainResult out;
  for (auto y : Y) out.K = std::max(out.K, lin_comb(1, X, y, X).size());

  // energy and the most popular (z1, z2) in x1 + y z1 = z2 + y x2
  std::vector<std::uint32_t> rep(f.q(), 0);
  for (auto y : Y) {
    std::fill(rep.begin(), rep.end(), 0);
    for (auto a : X)
      for (auto b : X) ++rep[f.add(a, f.mul(y, b))];
    for (auto r : rep) out.energy += BigInt(r) * r;
  }
  std::size_t best = 0;
  std::uint32_t z1 = X.value(0), z2 = X.value(0);
  for (auto c1 : X)
    for (auto c2 : X) {
      std::size_t sols = 0;
      for (auto y : Y)
        for (auto x2 : X) {
          // x1 = z2 + y x2 - y z1
          auto x1 = f.add(c2, f.mul(y, f.sub(x2, c1)));
          sols += X.contains(x1);
        }
      if (sols > best) {
        best = sols;
        z1 = c1;
        z2 = c2;
      }
    }

  // x* maximising |(X - z2) cap (x* - z1) Y|, x* != z1 unless X is a point
  auto inter = [&](std::uint32_t u) {
    std::vector<std::uint8_t> in(f.q(), 0);
    for (auto x : X) in[f.sub(x, z2)] = 1;
    std::vector<std::uint8_t> seen(f.q(), 0);
    std::size_t c = 0;
    for (auto y : Y) {
      auto v = f.mul(u, y);
      if (in[v] && !seen[v]) {
        seen[v] = 1;
        ++c;
      }
    }
    return c;
  };
  std::ptrdiff_t star = -1;
  std::size_t star_size = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X.value(i) == z1 && X.size() > 1) continue;
    std::size_t s = inter(f.sub(X.value(i), z1));
    if (star < 0 || s > star_size) {
      star = static_cast<std::ptrdiff_t>(i);
      star_size = s;
    }
  }
  out.x1 = z2;
  out.x2 = X.value(static_cast<std::size_t>(star));
  out.x3 = z1;
  out.size = star_size;
  out.bound = Rational(X.size() * Y.size(), out.K);
  out.constant = out.size == 0 ? Rational(0) : out.bound / Rational(out.size);
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(PivotCase c) {
  switch (c) {
    case PivotCase::mult_open: return "mult-open";
    case PivotCase::add_open: return "add-open";
    case PivotCase::field: return "field";
  }
  return "?";
}

std::size_t case1_size(const ElemSet& Z, std::span<const std::uint32_t> w) {
  // |x1 (z1 - z2) Z - x2 (z1 - z2) Z + x1 (z3 - z4) Z|
  const Field& f = Z.field();
  auto d12 = f.sub(w[2], w[3]);
  auto d34 = f.sub(w[4], w[5]);
  return lin3_size(f, Z, f.mul(w[0], d12), f.neg(f.mul(w[1], d12)), f.mul(w[0], d34));
}

std::size_t case2_size(const ElemSet& Z, std::span<const std::uint32_t> w) {
  // |(y1 - y2) Z + (y3 - y4) Z + (y3 - y4) Z|
  const Field& f = Z.field();
  auto d12 = f.sub(w[0], w[1]);
  auto d34 = f.sub(w[2], w[3]);
  return lin3_size(f, Z, d12, d34, d34);
}

PivotWitness pivot_witness(const ElemSet& Z, const PivotConfig& cfg) {
  if (Z.size() < 2) throw Error(Errc::degenerate, "pivot search needs |Z| >= 2");
  const Field& f = Z.field();
  const ElemSet R = ratio_quotient(Z);
  std::vector<std::uint8_t> inR(f.q(), 0);
  for (auto v : R) inR[v] = 1;
  const auto vals = Z.values();
  const std::size_t n = vals.size();
  PivotWitness out;
  out.lhs = n * n;

  auto verify = [&](auto&& size_of) {
    out.rhs = size_of(Z);
    bool ok = out.lhs <= out.rhs;
    Rng rng(cfg.seed);
    for (std::size_t s = 0; s < cfg.samples && ok; ++s) {
      ElemSet sub = random_half_subset(Z, rng);
      ok = sub.size() * sub.size() <= size_of(sub);
      ++out.samples_checked;
    }
    out.verified = ok;
  };

  if (is_subfield(R)) {
    out.tag = PivotCase::field;
    // best-effort z-tuple for |(z1 - z2) Z + (z3 - z4) Z|
    std::size_t best = 0, inspected = 0;
    for (std::size_t a = 0; a < n && inspected < cfg.search_cap; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t d = 0; d < n; ++d) {
            if (c == d) continue;
            ++inspected;
            auto s = lin2_size(f, Z, f.sub(vals[a], vals[b]), f.sub(vals[c], vals[d]));
            if (s > best) {
              best = s;
              out.witness = {vals[a], vals[b], vals[c], vals[d]};
            }
          }
      }
    out.found = !out.witness.empty();
    if (out.found) {
      auto w = out.witness;
      verify([&](const ElemSet& S) { return lin2_size(f, S, f.sub(w[0], w[1]), f.sub(w[2], w[3])); });
    }
    out.note = "R(Z) is a subfield";
    return out;
  }

  std::size_t inspected = 0;
  if (!closed_under_mul(R)) {
    out.tag = PivotCase::mult_open;
    // xi = (x1 - x2)(z1 - z2) / (x1 (z3 - z4)) outside R(Z); then
    // x1 (z3 - z4)(Z' + xi Z') lies inside the case sumset.
    for (std::size_t i1 = 0; i1 < n && !out.found; ++i1) {
      if (vals[i1] == 0) continue;
      for (std::size_t i2 = 0; i2 < n && !out.found; ++i2)
        for (std::size_t a = 0; a < n && !out.found; ++a)
          for (std::size_t b = 0; b < n && !out.found; ++b) {
            if (a == b) continue;
            for (std::size_t c = 0; c < n && !out.found; ++c)
              for (std::size_t d = 0; d < n && !out.found; ++d) {
                if (c == d) continue;
                if (++inspected > cfg.search_cap) break;
                auto num = f.mul(f.sub(vals[i1], vals[i2]), f.sub(vals[a], vals[b]));
                auto den = f.mul(vals[i1], f.sub(vals[c], vals[d]));
                auto xi = f.mul(num, f.inv(den));
                if (!inR[xi]) {
                  out.found = true;
                  out.xi = xi;
                  out.witness = {vals[i1], vals[i2], vals[a], vals[b], vals[c], vals[d]};
                }
              }
          }
    }
    if (!out.found) {
      // direct search on the inequality itself
      inspected = 0;
      std::vector<std::uint32_t> w(6);
      std::vector<std::size_t> idx(6, 0);
      while (!out.found && inspected < cfg.search_cap) {
        for (int t = 0; t < 6; ++t) w[t] = vals[idx[t]];
        ++inspected;
        if (w[2] != w[3] && w[4] != w[5] && case1_size(Z, w) >= out.lhs) {
          out.found = true;
          out.witness = w;
          out.note = "found by direct search";
        }
        int t = 5;
        while (t >= 0 && ++idx[t] == n) idx[t--] = 0;
        if (t < 0) break;
      }
    }
    if (out.found) {
      auto w = out.witness;
      verify([&](const ElemSet& S) { return case1_size(S, w); });
    } else {
      out.note = "no witness found";
    }
    return out;
  }

  out.tag = PivotCase::add_open;
  // xi = (y1 - y2)/(y3 - y4) + 1 outside R(Z)
  for (std::size_t a = 0; a < n && !out.found; ++a)
    for (std::size_t b = 0; b < n && !out.found; ++b)
      for (std::size_t c = 0; c < n && !out.found; ++c)
        for (std::size_t d = 0; d < n && !out.found; ++d) {
          if (c == d) continue;
          if (++inspected > cfg.search_cap) break;
          auto xi = f.add(f.mul(f.sub(vals[a], vals[b]), f.inv(f.sub(vals[c], vals[d]))), 1);
          if (!inR[xi]) {
            out.found = true;
            out.xi = xi;
            out.witness = {vals[a], vals[b], vals[c], vals[d]};
          }
        }
  if (out.found) {
    auto w = out.witness;
    verify([&](const ElemSet& S) { return case2_size(S, w); });
  } else {
    out.note = "no witness found";
  }
  return out;
}

std::optional<Envelope> coset_envelope(const ElemSet& Z) {
  if (Z.size() < 2) throw Error(Errc::degenerate, "envelope needs |Z| >= 2");
  const Field& f = Z.field();
  const ElemSet R = ratio_quotient(Z);
  Envelope env;
  env.degree = smallest_subfield_containing(R);
  env.b = Z.value(0);
  env.a = f.sub(Z.value(1), Z.value(0));
  const Subfield& G = f.subfield(env.degree);
  auto ainv = f.inv(env.a);
  for (auto z : Z) {
    if (!G.contains_value(f.mul(f.sub(z, env.b), ainv))) return std::nullopt;
  }
  return env;
}

ZxZAudit z_xz_audit(const ElemSet& Z, std::uint32_t x) {
  if (Z.size() < 2) throw Error(Errc::degenerate, "Z + xZ audit needs |Z| >= 2");
  const ElemSet R = ratio_quotient(Z);
  ZxZAudit out;
  out.x_in_ratio_set = R.contains(x);
  out.size = lin_comb(1, Z, x, Z).size();
  out.expected = Z.size() * Z.size();
  out.asserted = !out.x_in_ratio_set;
  out.holds = !out.asserted || out.size == out.expected;
  return out;
}

}  // namespace forge
