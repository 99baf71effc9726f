#include "forge/verify.hpp"

#include "forge/addcomb.hpp"
#include "forge/antifield.hpp"
#include "forge/error.hpp"
#include "forge/experiments.hpp"
#include "forge/incidence.hpp"
#include "forge/reference.hpp"
#include "forge/rng.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <sstream>

namespace forge::verify {

namespace {

struct FieldSpec {
  std::uint32_t p;
  unsigned k;
  std::uint32_t q;
};

std::uint32_t bound(const Config& cfg, std::uint32_t dflt) {
  return cfg.q_max ? std::min(dflt, *cfg.q_max) : dflt;
}

std::vector<FieldSpec> fields_upto(std::uint32_t qmax, unsigned kmin = 1) {
  std::vector<FieldSpec> out;
  for (std::uint32_t p = 2; p <= qmax; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t q = p;
    for (unsigned k = 1; q <= qmax; ++k, q *= p)
      if (k >= kmin) out.push_back({p, k, static_cast<std::uint32_t>(q)});
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.q < b.q; });
  return out;
}

std::vector<FieldSpec> only_fields(std::initializer_list<std::uint32_t> qs, std::uint32_t qmax) {
  std::vector<FieldSpec> out;
  for (auto f : fields_upto(qmax))
    if (std::find(qs.begin(), qs.end(), f.q) != qs.end()) out.push_back(f);
  return out;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

// All subsets of [0, q) of size in [lo, hi], lexicographic by index tuple.
template <class Fn>
void for_each_subset(std::uint32_t q, std::size_t lo, std::size_t hi, Fn&& fn) {
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t start) -> void {
    if (cur.size() >= lo) fn(cur);
    if (cur.size() == hi) return;
    for (std::uint32_t v = start; v < q; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

ElemSet random_set(const Field& f, Rng& rng, std::size_t lo, std::size_t hi) {
  const std::size_t k = lo + rng.below(hi - lo + 1);
  auto d = rng.distinct(f.q(), k);
  return ElemSet(f, std::vector<std::uint32_t>(d.begin(), d.end()));
}

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}
  template <class W>
  void check(bool ok, W&& witness) {
    ++r_.cases;
    if (ok) return;
    if (r_.violations++ == 0) r_.witness = witness();
  }

 private:
  SuiteResult& r_;
};

std::string set_str(const ElemSet& s) { return to_string(s); }

// -- oracles -----------------------------------------------------------------

// Schoolbook product of coefficient vectors, reduced by the monic modulus.
std::uint32_t poly_mul_oracle(const Field& f, std::uint32_t a, std::uint32_t b) {
  const auto p = f.p();
  const unsigned k = f.k();
  std::vector<std::uint64_t> ca(k), cb(k), prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i, a /= p, b /= p) {
    ca[i] = a % p;
    cb[i] = b % p;
  }
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
  const auto& m = f.modulus();
  for (unsigned d = 2 * k - 1; d >= k; --d) {
    const auto lead = prod[d];
    if (lead == 0) continue;
    for (unsigned i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - lead) * m[i]) % p;
  }
  std::uint32_t v = 0;
  for (unsigned i = k; i-- > 0;) v = v * p + static_cast<std::uint32_t>(prod[i]);
  return v;
}

std::uint32_t poly_add_oracle(const Field& f, std::uint32_t a, std::uint32_t b) {
  const auto p = f.p();
  std::uint32_t v = 0, scale = 1;
  for (unsigned i = 0; i < f.k(); ++i, a /= p, b /= p, scale *= p) v += ((a % p + b % p) % p) * scale;
  return v;
}

// -- suites --------------------------------------------------------------------

void field_axioms(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  for (auto fs : fields_upto(bound(cfg, 64))) {
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for (std::uint32_t a = 0; a < f.q(); ++a)
      for (std::uint32_t b = 0; b < f.q(); ++b) {
        rec.check(f.add(a, b) == poly_add_oracle(f, a, b) && f.mul(a, b) == poly_mul_oracle(f, a, b), [&] {
          return "F_" + std::to_string(f.q()) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
        });
      }
    for (std::uint32_t a = 1; a < f.q(); ++a)
      rec.check(f.mul(a, f.inv(a)) == 1 && f.pow(a, f.q() - 1) == 1,
                [&] { return "inverse in F_" + std::to_string(f.q()) + " a=" + std::to_string(a); });
    for (int s = 0; s < 500; ++s) {
      auto a = static_cast<std::uint32_t>(rng.below(f.q())), b = static_cast<std::uint32_t>(rng.below(f.q())),
           c = static_cast<std::uint32_t>(rng.below(f.q()));
      Element x = f.element(a), y = f.element(b), z = f.element(c);
      rec.check(x * (y + z) == x * y + x * z && (x * y) * z == x * (y * z) && (x + y) + z == x + (y + z), [&] {
        return "F_" + std::to_string(f.q()) + " triple " + std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(c);
      });
    }
  }
}

void frobenius(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  for (auto fs : fields_upto(bound(cfg, 256))) {
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for (const auto& G : f.subfields()) {
      std::uint64_t expect = 1;
      for (unsigned i = 0; i < G.degree(); ++i) expect *= f.p();
      rec.check(G.values().size() == expect,
                [&] { return "F_" + std::to_string(f.q()) + " subfield degree " + std::to_string(G.degree()); });
      for (std::uint32_t v = 0; v < f.q(); ++v) {
        rec.check(G.contains(f.element(v)) == G.contains_frobenius(f.element(v)), [&] {
          return "F_" + std::to_string(f.q()) + " degree " + std::to_string(G.degree()) + " v=" + std::to_string(v);
        });
      }
      // coset keys agree with membership of differences, on a stride
      const std::uint32_t step = std::max<std::uint32_t>(1, f.q() / 16);
      for (std::uint32_t a = 0; a < f.q(); a += step)
        for (std::uint32_t b = 0; b < f.q(); ++b)
          rec.check((G.coset_key(a) == G.coset_key(b)) == G.contains_value(f.sub(a, b)), [&] {
            return "coset key F_" + std::to_string(f.q()) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
          });
    }
  }
}

void defining_element_suite(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  for (auto fs : fields_upto(bound(cfg, 256), 2)) {
    if (fs.k % 2) continue;
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    const auto& G = f.subfield(fs.k / 2);
    Element t = defining_element(f, fs.k / 2);
    std::vector<std::uint8_t> hit(f.q(), 0);
    for (auto a : G.values())
      for (auto b : G.values()) hit[f.add(a, f.mul(t.value(), b))] = 1;
    const bool onto = std::all_of(hit.begin(), hit.end(), [](auto h) { return h != 0; });
    rec.check(!G.contains(t) && onto, [&] { return "F_" + std::to_string(f.q()) + " t=" + std::to_string(t.value()); });
  }
}

void canonical_lines(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  for (auto fs : fields_upto(bound(cfg, 49))) {
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for (int s = 0; s < 200; ++s) {
      Point p(f.element(rng.below(f.q())), f.element(rng.below(f.q())));
      Point q(f.element(rng.below(f.q())), f.element(rng.below(f.q())));
      if (p == q) continue;
      Line l = line_through(p, q);
      Element u = f.element(1 + rng.below(f.q() - 1));
      Line m = Line::make(u * l.a(), u * l.b(), u * l.c());
      rec.check(incident(p, l) && incident(q, l) && m == l,
                [&] { return "line through " + to_string(p) + " " + to_string(q) + " = " + to_string(l); });
    }
    if (f.q() <= 16) {
      std::vector<Point> all;
      for (std::uint32_t x = 0; x < f.q(); ++x)
        for (std::uint32_t y = 0; y < f.q(); ++y) all.emplace_back(f.element(x), f.element(y));
      auto L = lines_determined(all);
      rec.check(L.size() == std::size_t(f.q()) * f.q() + f.q(),
                [&] { return "F_" + std::to_string(f.q()) + " plane has " + std::to_string(L.size()) + " lines"; });
    }
  }
}

void cross_ratio_suite(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  for (auto fs : fields_upto(bound(cfg, 49))) {
    if (fs.q < 5) continue;
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for (int s = 0; s < 200; ++s) {
      Element al = f.element(rng.below(f.q())), be = f.element(rng.below(f.q()));
      Element ga = f.element(rng.below(f.q())), de = f.element(rng.below(f.q()));
      if ((al * de - be * ga).is_zero()) continue;
      auto mob = [&](Element x) { return (al * x + be) / (ga * x + de); };
      auto d4 = rng.distinct(f.q(), 4);
      std::array<Element, 4> v;
      bool pole = false;
      for (int i = 0; i < 4; ++i) {
        v[i] = f.element(static_cast<std::uint32_t>(d4[i]));
        pole = pole || (ga * v[i] + de).is_zero();
      }
      if (pole) continue;
      Element before = cross_ratio(v[0], v[1], v[2], v[3]);
      Element after = cross_ratio(mob(v[0]), mob(v[1]), mob(v[2]), mob(v[3]));
      rec.check(before == after, [&] {
        std::ostringstream o;
        o << "F_" << f.q() << " X(" << v[0].value() << "," << v[1].value() << "," << v[2].value() << ","
          << v[3].value() << ")=" << before.value() << " but image under (" << al.value() << "x+" << be.value()
          << ")/(" << ga.value() << "x+" << de.value() << ") gives " << after.value();
        return o.str();
      });
    }
  }
}

void proj_incidence(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  for (auto fs : fields_upto(bound(cfg, 49))) {
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for (int s = 0; s < 100; ++s) {
      ProjMap::Matrix m;
      for (auto& row : m)
        for (auto& e : row) e = f.element(rng.below(f.q()));
      std::optional<ProjMap> M;
      try {
        M.emplace(m);
      } catch (const Error&) {
        continue;
      }
      Point p(f.element(rng.below(f.q())), f.element(rng.below(f.q())));
      Point r(f.element(rng.below(f.q())), f.element(rng.below(f.q())));
      if (p == r) continue;
      Line l = rng.coin() ? line_through(p, r)
                          : Line::make(f.element(rng.below(f.q())), f.one(), f.element(rng.below(f.q())));
      auto P = ProjPoint::from_affine(p);
      rec.check(incident(P, l) == incident(M->apply(P), M->apply(l)),
                [&] { return "F_" + std::to_string(f.q()) + " " + to_string(p) + " on " + to_string(l); });
    }
  }
}

std::vector<Point> random_points(const Field& f, Rng& rng, std::size_t n) {
  const std::uint64_t q = f.q();
  auto d = rng.distinct(q * q, std::min<std::uint64_t>(n, q * q));
  std::vector<Point> P;
  for (auto v : d) P.emplace_back(f.element(static_cast<std::uint32_t>(v / q)), f.element(static_cast<std::uint32_t>(v % q)));
  normalize(P);
  return P;
}

std::vector<Line> random_lines(const Field& f, Rng& rng, std::span<const Point> P, std::size_t m) {
  std::vector<Line> L;
  for (std::size_t i = 0; i < m; ++i) {
    if (P.size() >= 2 && rng.coin()) {
      const auto& a = P[rng.below(P.size())];
      const auto& b = P[rng.below(P.size())];
      if (!(a == b)) {
        L.push_back(line_through(a, b));
        continue;
      }
    }
    if (rng.below(8) == 0)
      L.push_back(Line::vertical(f.element(rng.below(f.q()))));
    else
      L.push_back(Line::graph(f.element(rng.below(f.q())), f.element(rng.below(f.q()))));
  }
  std::sort(L.begin(), L.end());
  L.erase(std::unique(L.begin(), L.end()), L.end());
  return L;
}

std::pair<const Field*, std::shared_ptr<const Field>> pick_field(Rng& rng, const std::vector<FieldSpec>& fs) {
  auto s = fs[rng.below(fs.size())];
  auto fp = Field::make(s.p, s.k);
  return {fp.get(), fp};
}

void incidence_oracle(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  auto fs = fields_upto(bound(cfg, 49));
  for (std::size_t i = 0; i < cfg.random_instances / 2; ++i) {
    auto [f, keep] = pick_field(rng, fs);
    auto P = random_points(*f, rng, 1 + rng.below(3 * f->q()));
    auto L = random_lines(*f, rng, P, 1 + rng.below(3 * f->q()));
    auto rp = to_raw(P);
    auto rl = to_raw(L);
    auto fast = count_incidences(P, L);
    auto naive = reference::count_incidences_naive(*f, rp, rl);
    auto serial = reference::count_incidences_serial(*f, rp, rl);
    auto prof = incidence_profile(P, L);
    rec.check(fast == naive && serial == naive && prof.total == naive, [&] {
      return "F_" + std::to_string(f->q()) + " |P|=" + std::to_string(P.size()) + " |L|=" + std::to_string(L.size()) +
             " fast=" + std::to_string(fast) + " naive=" + std::to_string(naive);
    });
  }
}

void holder(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  auto fs = fields_upto(bound(cfg, 49));
  for (std::size_t i = 0; i < cfg.random_instances; ++i) {
    auto [f, keep] = pick_field(rng, fs);
    auto P = random_points(*f, rng, 2 + rng.below(2 * f->q()));
    std::vector<Line> L = rng.coin() ? richest_lines(P, 1 + rng.below(P.size()))
                                     : random_lines(*f, rng, P, 1 + rng.below(2 * f->q()));
    const BigInt I = count_incidences(P, L);
    for (unsigned k : {2u, 3u}) {
      BigInt Ik = count_k_tuples(P, L, k);
      BigInt lhs = Ik * pow(BigInt(L.size()), k - 1);
      BigInt rhs = pow(I, k);
      rec.check(lhs >= rhs, [&] {
        return "F_" + std::to_string(f->q()) + " k=" + std::to_string(k) + " I=" + I.str() + " I_k=" + Ik.str() +
               " |L|=" + std::to_string(L.size());
      });
    }
  }
  if (bound(cfg, 49) >= 9) {
    auto fp = Field::make(3, 2);
    std::vector<Point> P;
    for (auto x : fp->subfield(1).values())
      for (auto y : fp->subfield(1).values()) P.emplace_back(fp->element(x), fp->element(y));
    auto L = lines_determined(P);
    const auto I = count_incidences(P, L);
    const auto I3 = count_k_tuples(P, L, 3);
    rec.check(L.size() == 12 && I == 36 && I3 == 324 && I3 * L.size() * L.size() == pow(BigInt(I), 3), [&] {
      return "subplane of F_9: |L|=" + std::to_string(L.size()) + " I=" + std::to_string(I) + " I3=" + I3.str();
    });
  }
}

void setops(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  auto fs = fields_upto(bound(cfg, 49));
  for (std::size_t i = 0; i < cfg.random_instances / 2; ++i) {
    auto [f, keep] = pick_field(rng, fs);
    auto A = random_set(*f, rng, 1, std::min<std::size_t>(8, f->q()));
    auto B = random_set(*f, rng, 1, std::min<std::size_t>(8, f->q()));
    std::vector<std::uint32_t> s, d, p, r;
    for (auto a : A.elements())
      for (auto b : B.elements()) {
        s.push_back((a + b).value());
        d.push_back((a - b).value());
        p.push_back((a * b).value());
        if (!b.is_zero()) r.push_back((a / b).value());
      }
    bool ok = setop(SetOp::sum, A, B) == ElemSet(*f, s) && setop(SetOp::difference, A, B) == ElemSet(*f, d) &&
              setop(SetOp::product, A, B) == ElemSet(*f, p);
    if (!r.empty()) ok = ok && setop(SetOp::ratio, A, B) == ElemSet(*f, r);
    const auto x = static_cast<std::uint32_t>(rng.below(f->q())), y = static_cast<std::uint32_t>(rng.below(f->q()));
    std::vector<std::uint32_t> lc;
    for (auto a : A) for (auto b : B) lc.push_back(f->add(f->mul(x, a), f->mul(y, b)));
    ok = ok && lin_comb(x, A, y, B) == ElemSet(*f, lc);
    rec.check(ok, [&] { return "A=" + set_str(A) + " B=" + set_str(B) + " in F_" + std::to_string(f->q()); });
  }
}

void popularity(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.random_instances; ++i) {
    const std::uint64_t N = 1 + rng.below(50);
    std::vector<std::uint64_t> f(1 + rng.below(30));
    for (auto& v : f) v = 1 + rng.below(N);
    auto pop = popularity_select(f, N);
    std::uint64_t total = 0, kept = 0;
    for (auto v : f) total += v;
    bool ok = true;
    std::size_t j = 0;
    for (std::size_t x = 0; x < f.size(); ++x) {
      const bool in = Rational(f[x]) >= Rational(total, 2 * f.size());
      const bool listed = j < pop.selected.size() && pop.selected[j] == x;
      if (listed) {
        ++j;
        kept += f[x];
      }
      ok = ok && in == listed;
    }
    ok = ok && Rational(pop.selected.size()) >= Rational(total, 2 * N) && 2 * kept >= total;
    rec.check(ok, [&] { return "popularity instance " + std::to_string(i); });
  }
}

// Subsets of F_p as bitmasks; x + S is a rotation.
std::uint32_t rot(std::uint32_t mask, std::uint32_t s, std::uint32_t p) {
  const std::uint32_t full = (1u << p) - 1;
  s %= p;
  if (s == 0) return mask;
  return ((mask << s) | (mask >> (p - s))) & full;
}

std::uint32_t sum_mask(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t out = 0;
  for (std::uint32_t s = 0; s < p; ++s)
    if (a >> s & 1) out |= rot(b, s, p);
  return out;
}

void ruzsa(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  // worst lhs/rhs, kept as a fraction to avoid rationals in the hot loop
  std::uint64_t worst_n = 0, worst_d = 1;
  auto note = [&](std::uint64_t n, std::uint64_t d) {
    if (n * worst_d > worst_n * d) {
      worst_n = n;
      worst_d = d;
    }
  };
  for (auto p : primes_upto(bound(cfg, 11))) {
    // Every set up to translation: masks containing 0 with at most 4 bits.
    std::vector<std::uint32_t> sets;
    for (std::uint32_t m = 1; m < (1u << p); ++m)
      if ((m & 1) && std::popcount(m) <= 4) sets.push_back(m);
    const std::size_t ns = sets.size();
    auto check = [&](std::uint32_t X, std::span<const std::uint32_t> Bs, std::size_t sum_size) {
      BigInt num = 1;
      for (auto B : Bs) num *= std::popcount(sum_mask(X, B, p));
      const BigInt den = pow(BigInt(std::popcount(X)), Bs.size() - 1);
      note(static_cast<std::uint64_t>(BigInt(sum_size) * den), static_cast<std::uint64_t>(num));
      rec.check(BigInt(sum_size) * den <= num, [&] {
        std::ostringstream o;
        o << "F_" << p << " X=" << X;
        for (auto B : Bs) o << " B=" << B;
        return o.str();
      });
    };
    for (std::size_t xi = 0; xi < ns; ++xi) {
      const auto X = sets[xi];
      for (std::size_t i = 0; i < ns; ++i) {
        std::uint32_t b1[] = {sets[i]};
        check(X, b1, std::popcount(sets[i]));
        for (std::size_t j = i; j < ns; ++j) {
          const auto s2 = sum_mask(sets[i], sets[j], p);
          std::uint32_t b2[] = {sets[i], sets[j]};
          check(X, b2, std::popcount(s2));
        }
      }
    }
    // k = 3: sumset sizes first, then every X against every triple.
    std::vector<std::array<std::uint32_t, 3>> triples;
    std::vector<std::uint8_t> tsize;
    for (std::size_t i = 0; i < ns; ++i)
      for (std::size_t j = i; j < ns; ++j) {
        const auto s2 = sum_mask(sets[i], sets[j], p);
        for (std::size_t l = j; l < ns; ++l) {
          triples.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(l)});
          tsize.push_back(static_cast<std::uint8_t>(std::popcount(sum_mask(s2, sets[l], p))));
        }
      }
    std::vector<std::uint32_t> xs(ns);
    for (std::size_t xi = 0; xi < ns; ++xi) {
      const auto X = sets[xi];
      const std::uint64_t x2 = static_cast<std::uint64_t>(std::popcount(X)) * std::popcount(X);
      for (std::size_t i = 0; i < ns; ++i) xs[i] = std::popcount(sum_mask(X, sets[i], p));
      for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto& tr = triples[t];
        const std::uint64_t num = static_cast<std::uint64_t>(xs[tr[0]]) * xs[tr[1]] * xs[tr[2]];
        ++res.cases;
        if (tsize[t] * x2 > num) {
          if (res.violations++ == 0) {
            std::ostringstream o;
            o << "F_" << p << " X=" << X << " B=" << sets[tr[0]] << "," << sets[tr[1]] << "," << sets[tr[2]];
            res.witness = o.str();
          }
        }
        note(tsize[t] * x2, num);
      }
    }
    // The library audit agrees with the bitmask computation on a sample.
    auto fp = Field::make(p, 1);
    auto to_set = [&](std::uint32_t m) {
      std::vector<std::uint32_t> v;
      for (std::uint32_t s = 0; s < p; ++s)
        if (m >> s & 1) v.push_back(s);
      return ElemSet(*fp, v);
    };
    for (int s = 0; s < 2000; ++s) {
      const auto X = sets[rng.below(ns)];
      const std::size_t k = 1 + rng.below(3);
      std::vector<std::uint32_t> bm;
      std::vector<ElemSet> Bs;
      std::uint32_t acc = 1;
      for (std::size_t j = 0; j < k; ++j) {
        auto b = rot(sets[rng.below(ns)], static_cast<std::uint32_t>(rng.below(p)), p);
        bm.push_back(b);
        Bs.push_back(to_set(b));
        acc = sum_mask(acc, b, p);
      }
      auto audit = ruzsa_audit(to_set(X), Bs);
      rec.check(audit.sumset == static_cast<std::size_t>(std::popcount(acc)) && !audit.violated,
                [&] { return "ruzsa_audit disagrees with the bitmask oracle in F_" + std::to_string(p); });
    }
  }
  res.measured = Rational(worst_n, worst_d);
  res.findings.push_back("worst sumset/bound " + to_string(res.measured));
}

void covering(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rational worst(0);
  for (auto p : primes_upto(bound(cfg, 11))) {
    auto fp = Field::make(p, 1);
    std::vector<ElemSet> sets;
    for_each_subset(p, 1, 6, [&](const std::vector<std::uint32_t>& v) { sets.emplace_back(*fp, v); });
    for (const auto& B : sets)
      for (const auto& C : sets) {
        auto cov = greedy_cover(B, C, Rational(1, 2));
        const std::size_t bc = setop(SetOp::sum, B, C).size();
        const std::size_t limit = 2 * ((bc + C.size() - 1) / C.size());
        if (cov.constant > worst) worst = cov.constant;
        rec.check(2 * cov.covered >= B.size() && cov.offsets.size() <= limit, [&] {
          return "F_" + std::to_string(p) + " B=" + set_str(B) + " C=" + set_str(C) + " used " +
                 std::to_string(cov.offsets.size()) + " translates";
        });
      }
  }
  res.measured = worst;
  res.findings.push_back("worst constant " + to_string(worst));
}

void zxz(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  for (auto p : primes_upto(bound(cfg, 13))) {
    auto fp = Field::make(p, 1);
    for_each_subset(p, 2, 4, [&](const std::vector<std::uint32_t>& v) {
      ElemSet Z(*fp, v);
      auto R = ratio_quotient(Z);
      for (std::uint32_t x = 0; x < p; ++x) {
        if (R.contains(x)) continue;
        auto a = z_xz_audit(Z, x);
        rec.check(a.holds && a.size == Z.size() * Z.size(), [&] {
          return "F_" + std::to_string(p) + " Z=" + set_str(Z) + " x=" + std::to_string(x) + " |Z+xZ|=" +
                 std::to_string(a.size);
        });
      }
    });
  }
}

void pivot(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  PivotConfig pc;
  pc.seed = cfg.seed;
  for (auto fs : fields_upto(bound(cfg, 9))) {
    if (fs.q < 3) continue;
    auto fp = Field::make(fs.p, fs.k);
    const std::size_t hi = fs.q <= 5 ? 4 : 3;
    for_each_subset(fs.q, 2, hi, [&](const std::vector<std::uint32_t>& v) {
      ElemSet Z(*fp, v);
      auto w = pivot_witness(Z, pc);
      if (w.tag == PivotCase::field) {
        auto env = coset_envelope(Z);
        rec.check(env.has_value(), [&] { return "no envelope for Z=" + set_str(Z); });
        return;
      }
      rec.check(w.found && w.verified, [&] {
        return "F_" + std::to_string(fs.q) + " Z=" + set_str(Z) + " " + to_string(w.tag) + ": " + w.note;
      });
    });
  }
}

void bourgain(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  Rng rng(cfg.seed);
  auto fs = fields_upto(bound(cfg, 49));
  Rational worst(0);
  std::size_t empty = 0;
  for (std::size_t i = 0; i < cfg.random_instances / 4; ++i) {
    auto [f, keep] = pick_field(rng, fs);
    auto X = random_set(*f, rng, 1, std::min<std::size_t>(6, f->q()));
    auto Y = random_set(*f, rng, 1, std::min<std::size_t>(6, f->q()));
    auto r = bourgain_pivot(X, Y);
    std::size_t size = 0;
    for (std::uint32_t v = 0; v < f->q(); ++v) {
      bool inx = X.contains(f->add(v, r.x1));
      bool iny = false;
      for (auto y : Y) iny = iny || f->mul(f->sub(r.x2, r.x3), y) == v;
      size += inx && iny;
    }
    BigInt E = 0;
    for (auto y : Y)
      for (auto a : X)
        for (auto b : X)
          for (auto c : X)
            for (auto d : X) E += f->add(a, f->mul(y, b)) == f->add(c, f->mul(y, d));
    const bool in_x = X.contains(r.x1) && X.contains(r.x2) && X.contains(r.x3);
    if (r.constant > worst) worst = r.constant;
    // E >= |X|^4 |Y| / K is the averaging step of the argument.
    empty += r.size == 0;
    rec.check(in_x && size == r.size && E == r.energy && E * r.K >= pow(BigInt(X.size()), 4) * Y.size(),
              [&] { return "X=" + set_str(X) + " Y=" + set_str(Y) + " in F_" + std::to_string(f->q()); });
  }
  res.measured = worst;
  res.findings.push_back("worst bound/size " + to_string(worst) + ", empty intersections " + std::to_string(empty));
}

void trichotomy(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  for (auto fs : only_fields({4, 9, 16}, bound(cfg, 16))) {
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for_each_subset(f.q(), 1, 4, [&](const std::vector<std::uint32_t>& v) {
      ElemSet A(f, v);
      ElemSet X = cross_ratio_set(A);
      for (const auto& G : f.subfields()) {
        if (G.degree() == f.k()) continue;
        if (!std::all_of(X.begin(), X.end(), [&](auto x) { return G.contains_value(x); })) continue;
        auto t = trichotomy_audit(A, G);
        rec.check(t.asserted && t.holds, [&] {
          return "F_" + std::to_string(f.q()) + " A=" + set_str(A) + " G=F_" + std::to_string(G.order()) +
                 " max meet " + std::to_string(t.max_meet);
        });
      }
    });
  }
}

void corollary9(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  std::uint64_t strict_failures = 0;
  for (auto fs : only_fields({4, 9, 16}, bound(cfg, 16))) {
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for_each_subset(f.q(), 1, 6, [&](const std::vector<std::uint32_t>& v) {
      ElemSet A(f, v);
      for (int twice = 1; twice <= 12; ++twice) {
        const Rational lambda(twice, 2);
        if (!check_strong_antifield(A, lambda).ok) continue;
        const std::size_t n = A.size();
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
          std::vector<std::uint32_t> sub;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.push_back(A.value(i));
          ElemSet Ap(f, sub);
          const std::size_t m = Ap.size();
          ElemSet X = cross_ratio_set(Ap);
          for (const auto& G : f.subfields()) {
            if (G.degree() == f.k()) continue;
            const bool at_least = Rational(m) >= lambda && m * m >= G.order();
            if (!at_least) continue;
            const bool inside = std::all_of(X.begin(), X.end(), [&](auto x) { return G.contains_value(x); });
            const bool above = Rational(m) > lambda && m * m > G.order();
            if (inside && above) ++strict_failures;
            rec.check(!inside, [&] {
              return "F_" + std::to_string(f.q()) + " lambda=" + to_string(lambda) + " A=" + set_str(A) +
                     " A'=" + set_str(Ap) + " X(A') inside F_" + std::to_string(G.order());
            });
          }
        }
      }
    });
  }
  res.findings.push_back("counterexamples with |A'| strictly above the bound: " + std::to_string(strict_failures));
}

void antifield_naive(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  const Rational lambdas[] = {Rational(1), Rational(2), Rational(5, 2), Rational(3)};
  auto compare = [&](const ElemSet& A, const Rational& lambda) {
    auto v = check_antifield(A, lambda);
    auto s = check_strong_antifield(A, lambda);
    const bool naive = reference::is_antifield_naive(A, lambda);
    const bool naive_strong = reference::is_strong_antifield_naive(A, lambda);
    bool ok = v.ok == naive && s.ok == naive_strong && (!s.ok || v.ok);
    if (!v.ok) ok = ok && v.witness && witness_reverifies(A, lambda, *v.witness);
    if (!s.ok && s.witness) ok = ok && witness_reverifies(A, lambda, *s.witness);
    rec.check(ok, [&] {
      return "F_" + std::to_string(A.field().q()) + " lambda=" + to_string(lambda) + " A=" + set_str(A) +
             " fast=" + std::to_string(v.ok) + "/" + std::to_string(s.ok) + " naive=" + std::to_string(naive) + "/" +
             std::to_string(naive_strong);
    });
  };
  for (auto fs : fields_upto(bound(cfg, 16))) {
    auto fp = Field::make(fs.p, fs.k);
    for (std::uint32_t mask = 1; mask < (1u << fs.q); ++mask) {
      std::vector<std::uint32_t> v;
      for (std::uint32_t i = 0; i < fs.q; ++i)
        if (mask >> i & 1) v.push_back(i);
      ElemSet A(*fp, v);
      for (const auto& l : lambdas) compare(A, l);
    }
  }
  Rng rng(cfg.seed);
  auto fs = fields_upto(bound(cfg, 256));
  for (std::size_t i = 0; i < cfg.random_instances; ++i) {
    auto [f, keep] = pick_field(rng, fs);
    auto A = random_set(*f, rng, 1, std::min<std::size_t>(24, f->q()));
    compare(A, Rational(1 + rng.below(16), 2));
  }
}

void key_lemma(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  std::uint64_t hypotheses = 0;
  for (auto fs : only_fields({9, 16}, bound(cfg, 16))) {
    auto fp = Field::make(fs.p, fs.k);
    const Field& f = *fp;
    for_each_subset(f.q(), 1, 5, [&](const std::vector<std::uint32_t>& v) {
      ElemSet A(f, v);
      const Rational lambda = min_strong_lambda(A);
      auto run = [&](const ElemSet& B, const std::vector<std::uint32_t>& map, const char* what) {
        auto k = key_lemma_audit(A, lambda, B, map);
        hypotheses += k.hypothesis;
        rec.check(!k.asserted || k.holds, [&] {
          return std::string(what) + " F_" + std::to_string(f.q()) + " lambda=" + to_string(lambda) + " A=" +
                 set_str(A) + " B=" + set_str(B);
        });
      };
      if (!A.contains(0u)) {
        std::vector<std::uint32_t> bv;
        for (auto a : A) bv.push_back(f.inv(a));
        ElemSet B(f, bv);
        std::vector<std::uint32_t> map;
        for (auto b : B) map.push_back(f.inv(b));
        run(B, map, "inversion");
      }
      for (std::uint32_t u = 1; u < f.q(); ++u)
        for (std::uint32_t w = 0; w < f.q(); ++w) {
          // B = (A - w) / u, mapped back by b -> u b + w
          std::vector<std::uint32_t> bv;
          const auto ui = f.inv(u);
          for (auto a : A) bv.push_back(f.mul(f.sub(a, w), ui));
          ElemSet B(f, bv);
          std::vector<std::uint32_t> map;
          for (auto b : B) map.push_back(f.add(f.mul(u, b), w));
          run(B, map, "affine");
        }
    });
  }
  res.findings.push_back("instances meeting the hypothesis: " + std::to_string(hypotheses));
}

void pipeline(const Config& cfg, SuiteResult& res) {
  Recorder rec(res);
  std::vector<FieldSpec> fs;
  for (auto s : fields_upto(bound(cfg, 169)))
    if (s.q >= 9) fs.push_back(s);
  if (fs.empty()) return;
  std::uint64_t grids = 0, insufficient = 0, families = 0, degenerate = 0, proj_ok = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    Rng rng(cfg.seed * 1000003ULL + i);
    auto [f, keep] = pick_field(rng, fs);
    const std::uint32_t q = f->q();
    std::vector<Point> P;
    const auto& subs = f->subfields();
    const std::size_t mode = subs.size() > 1 ? i % 3 : i % 2;
    switch (mode) {
      case 0:
        P = random_points(*f, rng, q + rng.below(2 * q));
        break;
      case 1: {
        auto X = random_set(*f, rng, 2, std::min<std::size_t>(q, 12));
        auto Y = random_set(*f, rng, 2, std::min<std::size_t>(q, 12));
        for (auto x : X)
          for (auto y : Y) P.emplace_back(f->element(x), f->element(y));
        break;
      }
      default: {
        const auto& G = subs[subs.size() - 2];  // largest proper subfield
        for (auto x : G.values())
          for (auto y : G.values()) P.emplace_back(f->element(x), f->element(y));
        auto extra = random_points(*f, rng, 1 + rng.below(q));
        P.insert(P.end(), extra.begin(), extra.end());
        break;
      }
    }
    normalize(P);
    if (P.size() < 2) continue;
    auto L = richest_lines(P, P.size());
    const Rational lambda = min_strong_lambda(x_projection(*f, P));
    GridInstance g;
    try {
      g = reduce_to_grid(P, L);
      } catch (const Error& e) {
      const bool expected = e.code() == Errc::insufficient_incidences;
      insufficient += expected;
      rec.check(expected, [&] { return std::string("instance ") + std::to_string(i) + ": " + e.what(); });
      continue;
    }
    ++grids;
    rec.check(reference::grid_invariants_hold(g),
              [&] { return "instance " + std::to_string(i) + ": grid invariants fail"; });
    proj_ok += check_point_antifield(g.Pstar, lambda, false).ok;
    BsgFamily fam;
    try {
      fam = claim1_extract(g, lambda);
    } catch (const Error& e) {
      degenerate += e.code() == Errc::degenerate_instance;
      rec.check(e.code() == Errc::degenerate_instance,
                [&] { return std::string("instance ") + std::to_string(i) + ": " + e.what(); });
      continue;
    }
    ++families;
    bool ok = fam.antifield_ok && !fam.members.empty() && fam.C.contains(fam.c_star);
    for (const auto& m : fam.members)
      ok = ok && check_antifield(m.A1, lambda).ok && check_antifield(m.A2, lambda).ok &&
           is_subset(m.A1, fam.X1) && is_subset(m.A2, fam.X2);
    rec.check(ok, [&] {
      return "instance " + std::to_string(i) + ": family fails the antifield check at lambda=" + to_string(lambda);
    });
  }
  res.findings.push_back("grids " + std::to_string(grids) + ", insufficient incidences " +
                         std::to_string(insufficient) + ", families " + std::to_string(families) +
                         ", degenerate " + std::to_string(degenerate) + ", P* antifield " + std::to_string(proj_ok));
}

using SuiteFn = void (*)(const Config&, SuiteResult&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"field-axioms", field_axioms},
      {"frobenius", frobenius},
      {"defining-element", defining_element_suite},
      {"canonical-lines", canonical_lines},
      {"cross-ratio", cross_ratio_suite},
      {"proj-incidence", proj_incidence},
      {"incidence-oracle", incidence_oracle},
      {"holder", holder},
      {"setops", setops},
      {"popularity", popularity},
      {"ruzsa", ruzsa},
      {"covering", covering},
      {"zxz", zxz},
      {"pivot", pivot},
      {"bourgain", bourgain},
      {"trichotomy", trichotomy},
      {"corollary9", corollary9},
      {"antifield-naive", antifield_naive},
      {"key-lemma", key_lemma},
      {"pipeline", pipeline},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, fn] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const Config& cfg) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteResult res;
    res.name = n;
    const bool prev = testing::cross_ratio_mutant();
    testing::set_cross_ratio_mutant(cfg.inject_cross_ratio_mutant);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(cfg, res);
    } catch (...) {
      testing::set_cross_ratio_mutant(prev);
      throw;
    }
    testing::set_cross_ratio_mutant(prev);
    res.millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }
  throw Error(Errc::invalid_argument, "unknown suite " + name);
}

std::vector<SuiteResult> run_all(const Config& cfg, const std::function<void(const SuiteResult&)>& progress) {
  for (const auto& n : cfg.only)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw Error(Errc::invalid_argument, "unknown suite " + n);
  std::vector<SuiteResult> out;
  for (const auto& n : suite_names()) {
    if (!cfg.only.empty() && std::find(cfg.only.begin(), cfg.only.end(), n) == cfg.only.end()) continue;
    out.push_back(run_suite(n, cfg));
    if (progress) progress(out.back());
  }
  return out;
}

}  // namespace forge::verify
