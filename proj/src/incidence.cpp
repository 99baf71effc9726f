#include "forge/incidence.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace forge {

namespace {

const Field* common_field(std::span<const Point> P, std::span<const Line> L) {
  const Field* f = nullptr;
  auto take = [&](const Field* g) {
    if (g == nullptr) throw Error(Errc::context_mismatch);
    if (f == nullptr) f = g;
    if (f != g) throw Error(Errc::context_mismatch);
  };
  for (const auto& p : P) take(p.x.field_ptr());
  for (const auto& l : L) take(l.a().field_ptr());
  return f;
}

std::vector<Line> sorted_lines(std::span<const Line> L) {
  std::vector<Line> out(L.begin(), L.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

RawPoints to_raw(std::span<const Point> P) {
  RawPoints out;
  out.x.reserve(P.size());
  out.y.reserve(P.size());
  for (const auto& p : P) {
    out.x.push_back(p.x.value());
    out.y.push_back(p.y.value());
  }
  return out;
}

std::vector<RawLine> to_raw(std::span<const Line> L) {
  std::vector<RawLine> out;
  out.reserve(L.size());
  for (const auto& l : L) {
    if (l.is_infinite()) continue;
    out.push_back({l.a().value(), l.b().value(), l.c().value()});
  }
  return out;
}

std::uint64_t count_incidences(std::span<const Point> P, std::span<const Line> L) {
  const Field* f = common_field(P, L);
  if (f == nullptr || P.empty() || L.empty()) return 0;
  auto lines = to_raw(L);
  return kernels::count_incidences(*f, to_raw(P), lines);
}

IncidenceProfile incidence_profile(std::span<const Point> P, std::span<const Line> L) {
  const Field* f = common_field(P, L);
  IncidenceProfile out;
  out.line_load.assign(L.size(), 0);
  out.point_degree.assign(P.size(), 0);
  if (f == nullptr || P.empty() || L.empty()) return out;
  // keep input indexing even when lines at infinity are present
  std::vector<RawLine> lines;
  lines.reserve(L.size());
  for (const auto& l : L) lines.push_back({l.a().value(), l.b().value(), l.c().value()});
  return kernels::incidence_profile(*f, to_raw(P), lines, true);
}

BigInt count_k_tuples(std::span<const Point> P, std::span<const Line> L, unsigned k) {
  if (k == 0) throw Error(Errc::invalid_argument, "k must be positive");
  auto prof = incidence_profile(P, L);
  BigInt total = 0;
  for (auto load : prof.line_load) total += pow(BigInt(load), k);
  return total;
}

std::vector<Line> richest_lines(std::span<const Point> P, std::size_t m) {
  if (m == 0) throw Error(Errc::invalid_argument, "m must be positive");
  std::vector<Line> all = lines_determined(P);
  std::vector<Point> pts(P.begin(), P.end());
  normalize(pts);
  auto prof = incidence_profile(pts, all);
  std::vector<std::size_t> idx(all.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return prof.line_load[i] > prof.line_load[j]; });
  if (idx.size() > m) idx.resize(m);
  std::vector<Line> out;
  for (auto i : idx) out.push_back(all[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

GridInstance reduce_to_grid(std::span<const Point> P_in, std::span<const Line> L_in, const PipelineConfig& cfg) {
  if (cfg.epsilon < 0 || cfg.c_plus <= 0 || cfg.c_minus < 0 || cfg.c_rich < 0)
    throw Error(Errc::invalid_argument, "pipeline constants must be nonnegative (c_plus positive)");
  std::vector<Point> P(P_in.begin(), P_in.end());
  normalize(P);
  std::vector<Line> L = sorted_lines(L_in);
  if (P.size() < 2) throw Error(Errc::insufficient_points);
  const Field* fp = common_field(P, L);
  const Field& f = *fp;

  GridInstance g;
  GridReport& rep = g.report;
  const std::size_t n = P.size();
  rep.n = n;
  rep.lines = L.size();

  const Rational half(1, 2);
  RealPower plus{cfg.c_plus, BigInt(n), half + cfg.epsilon};
  RealPower minus{cfg.c_minus, BigInt(n), half - cfg.epsilon};
  RealPower rich{cfg.c_rich, BigInt(n), half - cfg.epsilon};
  rep.plus_threshold = plus.ceil();
  rep.minus_threshold = minus.floor();
  rep.rich_threshold = rich.ceil();

  // (1) prune by degree
  auto prof = incidence_profile(P, L);
  rep.incidences_in = prof.total;
  std::vector<Point> kept;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt d = prof.point_degree[i];
    if (d >= rep.plus_threshold) {
      ++rep.dropped_plus;
      rep.incidences_dropped_plus += prof.point_degree[i];
    } else if (d <= rep.minus_threshold) {
      ++rep.dropped_minus;
      rep.incidences_dropped_minus += prof.point_degree[i];
    } else {
      kept.push_back(P[i]);
    }
  }
  rep.incidences_kept = rep.incidences_in - rep.incidences_dropped_plus - rep.incidences_dropped_minus;
  rep.retention = rep.incidences_in == 0 ? Rational(0) : Rational(rep.incidences_kept, rep.incidences_in);
  if (kept.empty()) throw Error(Errc::insufficient_incidences, "every point was pruned");

  // (2) rich lines and bushy points
  auto prof2 = incidence_profile(kept, L);
  std::vector<Line> L1;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (!L[i].is_infinite() && BigInt(prof2.line_load[i]) >= rep.rich_threshold) L1.push_back(L[i]);
  }
  rep.rich_lines = L1.size();
  auto prof3 = incidence_profile(kept, L1);
  std::vector<std::size_t> bushy;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (BigInt(prof3.point_degree[i]) >= rep.rich_threshold) bushy.push_back(i);
  }
  rep.bushy_points = bushy.size();
  if (bushy.empty()) throw Error(Errc::insufficient_incidences, "no bushy point");

  // P_p: points of `kept` joined to p by a rich line (p itself excluded).
  // Built per rich line from its member list.
  std::vector<std::vector<std::size_t>> members(L1.size());
  for (std::size_t li = 0; li < L1.size(); ++li) {
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (incident(kept[i], L1[li])) members[li].push_back(i);
  }
  std::vector<std::vector<std::size_t>> lines_of(kept.size());
  for (std::size_t li = 0; li < L1.size(); ++li)
    for (auto i : members[li]) lines_of[i].push_back(li);
  auto joined = [&](std::size_t p) {
    std::vector<std::uint8_t> mark(kept.size(), 0);
    for (auto li : lines_of[p])
      for (auto i : members[li]) mark[i] = 1;
    mark[p] = 0;
    return mark;
  };
  std::vector<std::vector<std::uint8_t>> Pp;
  Pp.reserve(bushy.size());
  for (auto p : bushy) Pp.push_back(joined(p));

  // (3) pivot pair; bushy is in point order so the first maximum is lex-least
  std::size_t best = 0;
  std::ptrdiff_t bi = -1, bj = -1;
  for (std::size_t i = 0; i < bushy.size(); ++i) {
    for (std::size_t j = 0; j < bushy.size(); ++j) {
      if (i == j || kept[bushy[i]].x == kept[bushy[j]].x) continue;
      std::size_t overlap = 0;
      for (std::size_t t = 0; t < kept.size(); ++t) overlap += Pp[i][t] & Pp[j][t];
      if (bi < 0 || overlap > best) {
        best = overlap;
        bi = static_cast<std::ptrdiff_t>(i);
        bj = static_cast<std::ptrdiff_t>(j);
      }
    }
  }
  if (bi < 0) throw Error(Errc::insufficient_incidences, "no bushy pair with distinct x-coordinates");
  const Point p = kept[bushy[bi]];
  const Point q = kept[bushy[bj]];
  rep.p = p;
  rep.q = q;
  rep.pivot_overlap = best;

  // (4) P' = P_p cap P_q without the vertical through p
  std::vector<Point> Pprime;
  for (std::size_t t = 0; t < kept.size(); ++t) {
    if (!(Pp[bi][t] && Pp[bj][t])) continue;
    if (kept[t].x == p.x) {
      ++rep.dropped_same_x;
      continue;
    }
    Pprime.push_back(kept[t]);
  }
  rep.p_prime = Pprime.size();
  if (Pprime.empty()) throw Error(Errc::insufficient_incidences, "pivot pair shares no joined point");

  // (5) p to the origin, then the flip
  const ProjMap to_origin = ProjMap::translation(-p.x, -p.y);
  const ProjMap tau = ProjMap::flip(f);
  const ProjMap move = to_origin.compose(tau);
  std::vector<Point> flipped;
  flipped.reserve(Pprime.size());
  for (const auto& pt : Pprime) flipped.push_back(move.apply(ProjPoint::from_affine(pt)).affine());

  // apex: most popular intersection of the images of rich lines through q
  std::vector<Line> pencil;
  for (auto li : lines_of[bushy[bj]]) {
    Line image = move.apply(L1[li]);
    if (!image.is_infinite()) pencil.push_back(image);
  }
  std::sort(pencil.begin(), pencil.end());
  pencil.erase(std::unique(pencil.begin(), pencil.end()), pencil.end());
  rep.apex_lines = pencil.size();
  if (pencil.size() < 2) throw Error(Errc::insufficient_incidences, "fewer than two lines through q");
  std::map<Point, std::size_t> votes;
  for (std::size_t i = 0; i < pencil.size(); ++i) {
    for (std::size_t j = i + 1; j < pencil.size(); ++j) {
      const Line& l1 = pencil[i];
      const Line& l2 = pencil[j];
      // cross product of the coefficient vectors
      Element X = l1.b() * l2.c() - l1.c() * l2.b();
      Element Y = l1.c() * l2.a() - l1.a() * l2.c();
      Element Z = l1.a() * l2.b() - l1.b() * l2.a();
      if (Z.is_zero()) continue;  // parallel
      ++votes[ProjPoint::make(X, Y, Z).affine()];
    }
  }
  if (votes.empty()) throw Error(Errc::insufficient_incidences, "image pencil has no affine apex");
  Point s = votes.begin()->first;
  std::size_t top = 0;
  for (const auto& [pt, c] : votes) {
    if (c > top) {
      top = c;
      s = pt;
    }
  }
  rep.apex = s;

  // apex to the origin; read off gradients and intercepts
  std::vector<std::uint32_t> A, B;
  for (const auto& pt : flipped) {
    Element x = pt.x - s.x;
    Element y = pt.y - s.y;
    if (x.is_zero()) {
      ++rep.dropped_infinite_gradient;
      continue;
    }
    if (y.is_zero()) {
      ++rep.dropped_zero_intercept;
      continue;
    }
    g.Pstar.emplace_back(x, y);
    A.push_back((y / x).value());
    B.push_back(y.value());
  }
  normalize(g.Pstar);
  g.A = ElemSet(f, std::move(A));
  g.B = ElemSet(f, std::move(B));
  rep.size_a = g.A.size();
  rep.size_b = g.B.size();
  rep.size_pstar = g.Pstar.size();
  if (g.Pstar.size() >= 2) {
    auto LP = lines_determined(g.Pstar);
    rep.incidences_star = count_incidences(g.Pstar, LP);
  }
  const double target =
      std::pow(static_cast<double>(n), 1.5 - 5.0 * cfg.epsilon.convert_to<double>());
  rep.ratio_to_target = static_cast<double>(rep.incidences_star) / target;
  return g;
}

}  // namespace forge
