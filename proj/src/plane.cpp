#include "forge/plane.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <atomic>

namespace forge {

namespace {

std::atomic<bool> g_cross_ratio_mutant{false};

const Field& same_field(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid() || a.field_ptr() != b.field_ptr()) throw Error(Errc::context_mismatch);
  return a.field();
}

std::array<Element, 3> scaled(std::array<Element, 3> c) {
  for (const auto& e : c) {
    if (!e.is_zero()) {
      Element s = e.inv();
      for (auto& x : c) x = x * s;
      return c;
    }
  }
  return c;
}

}  // namespace

Point::Point(Element x_, Element y_) : x(x_), y(y_) { same_field(x, y); }

void normalize(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

ProjPoint ProjPoint::make(Element X, Element Y, Element Z) {
  same_field(X, Y);
  same_field(Y, Z);
  if (X.is_zero() && Y.is_zero() && Z.is_zero())
    throw Error(Errc::invalid_argument, "projective point cannot be [0:0:0]");
  ProjPoint p;
  p.c_ = scaled({X, Y, Z});
  return p;
}

ProjPoint ProjPoint::from_affine(const Point& p) { return make(p.x, p.y, p.x.field().one()); }

Point ProjPoint::affine() const {
  if (at_infinity()) throw Error(Errc::invalid_argument, "point at infinity has no affine form");
  Element s = c_[2].inv();
  return Point(c_[0] * s, c_[1] * s);
}

Line Line::make(Element a, Element b, Element c) {
  same_field(a, b);
  same_field(b, c);
  if (a.is_zero() && b.is_zero() && c.is_zero()) throw Error(Errc::invalid_argument, "line cannot be [0:0:0]");
  Line l;
  l.c_ = scaled({a, b, c});
  return l;
}

Line Line::at_infinity(const Field& f) { return make(f.zero(), f.zero(), f.one()); }

Line Line::graph(Element m, Element k) {
  // m x - y + k = 0
  return make(m, -m.field().one(), k);
}

Line Line::vertical(Element x0) { return make(x0.field().one(), x0.field().zero(), -x0); }

std::string to_string(const Point& p) {
  return "(" + std::to_string(p.x.value()) + "," + std::to_string(p.y.value()) + ")";
}

std::string to_string(const Line& l) {
  return "[" + std::to_string(l.a().value()) + ":" + std::to_string(l.b().value()) + ":" +
         std::to_string(l.c().value()) + "]";
}

bool incident(const Point& p, const Line& l) {
  same_field(p.x, l.a());
  if (l.is_infinite()) return false;
  return (l.a() * p.x + l.b() * p.y + l.c()).is_zero();
}

bool incident(const ProjPoint& p, const Line& l) {
  same_field(p.X(), l.a());
  return (l.a() * p.X() + l.b() * p.Y() + l.c() * p.Z()).is_zero();
}

Line line_through(const Point& p, const Point& q) {
  same_field(p.x, q.x);
  if (p == q) throw Error(Errc::degenerate_pair);
  Element a = q.y - p.y;
  Element b = p.x - q.x;
  Element c = -(a * p.x + b * p.y);
  return Line::make(a, b, c);
}

Element cross_ratio(Element a, Element b, Element c, Element d) {
  same_field(a, b);
  same_field(c, d);
  same_field(a, c);
  if (a == d || b == c) throw Error(Errc::degenerate_cross_ratio);
  return a.field().element(cross_ratio_raw(a.field(), a.value(), b.value(), c.value(), d.value()));
}

std::uint32_t cross_ratio_raw(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                              std::uint32_t d) {
  std::uint32_t ab = g_cross_ratio_mutant.load(std::memory_order_relaxed) ? f.add(a, b) : f.sub(a, b);
  std::uint32_t num = f.mul(ab, f.sub(c, d));
  std::uint32_t den = f.mul(f.sub(a, d), f.sub(c, b));
  return f.mul(num, f.inv(den));
}

ElemSet cross_ratio_set(const ElemSet& A) {
  if (A.size() < 2) return A.valid() ? ElemSet(A.field()) : ElemSet();
  const Field& f = A.field();
  std::vector<std::uint8_t> seen(f.q(), 0);
  auto vals = A.values();
  for (auto a : vals)
    for (auto b : vals)
      for (auto c : vals) {
        if (b == c) continue;
        for (auto d : vals) {
          if (a == d) continue;
          seen[cross_ratio_raw(f, a, b, c, d)] = 1;
        }
      }
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < f.q(); ++v)
    if (seen[v]) out.push_back(v);
  return ElemSet(f, std::move(out));
}

// ---------------------------------------------------------------------------

ProjMap::ProjMap(const Matrix& m) : m_(m) {
  for (const auto& row : m_)
    for (const auto& e : row) same_field(e, m_[0][0]);
  if (det().is_zero()) throw Error(Errc::singular_map);
}

ProjMap ProjMap::flip(const Field& f) {
  Element o = f.zero(), i = f.one();
  return ProjMap(Matrix{{{o, o, i}, {o, i, o}, {i, o, o}}});
}

ProjMap ProjMap::translation(Element dx, Element dy) {
  const Field& f = same_field(dx, dy);
  Element o = f.zero(), i = f.one();
  return ProjMap(Matrix{{{i, o, dx}, {o, i, dy}, {o, o, i}}});
}

ProjMap ProjMap::identity(const Field& f) {
  Element o = f.zero(), i = f.one();
  return ProjMap(Matrix{{{i, o, o}, {o, i, o}, {o, o, i}}});
}

Element ProjMap::det() const {
  const auto& m = m_;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

ProjMap ProjMap::inverse() const {
  const auto& m = m_;
  Element s = det().inv();
  Matrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // cofactor of m[j][i]
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      r[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * s;
    }
  return ProjMap(r);
}

ProjMap ProjMap::compose(const ProjMap& after) const {
  Matrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Element acc = m_[0][0].field().zero();
      for (int t = 0; t < 3; ++t) acc += after.m_[i][t] * m_[t][j];
      r[i][j] = acc;
    }
  return ProjMap(r);
}

ProjPoint ProjMap::apply(const ProjPoint& p) const {
  same_field(p.X(), m_[0][0]);
  std::array<Element, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = m_[i][0] * p.X() + m_[i][1] * p.Y() + m_[i][2] * p.Z();
  return ProjPoint::make(v[0], v[1], v[2]);
}

Line ProjMap::apply(const Line& l) const {
  same_field(l.a(), m_[0][0]);
  ProjMap inv = inverse();
  const auto& n = inv.matrix();
  std::array<Element, 3> v;
  // row vector l times inverse
  for (int j = 0; j < 3; ++j) v[j] = l.a() * n[0][j] + l.b() * n[1][j] + l.c() * n[2][j];
  return Line::make(v[0], v[1], v[2]);
}

ProjPoint apply_proj(const ProjMap& m, const ProjPoint& p) { return m.apply(p); }

std::vector<Line> lines_determined(std::span<const Point> P) {
  std::vector<Point> pts(P.begin(), P.end());
  normalize(pts);
  if (pts.size() < 2) throw Error(Errc::insufficient_points);
  std::vector<Line> out;
  out.reserve(pts.size() * (pts.size() - 1) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) out.push_back(line_through(pts[i], pts[j]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElemSet x_projection(const Field& f, std::span<const Point> P) {
  std::vector<std::uint32_t> xs;
  xs.reserve(P.size());
  for (const auto& p : P) {
    if (p.x.field_ptr() != &f) throw Error(Errc::context_mismatch);
    xs.push_back(p.x.value());
  }
  return ElemSet(f, std::move(xs));
}

namespace testing {
void set_cross_ratio_mutant(bool on) { g_cross_ratio_mutant.store(on); }
bool cross_ratio_mutant() { return g_cross_ratio_mutant.load(); }
}  // namespace testing

}  // namespace forge
