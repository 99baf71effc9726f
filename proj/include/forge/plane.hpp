#pragma once

#include "forge/elemset.hpp"
#include "forge/gf.hpp"

#include <array>
#include <compare>
#include <span>
#include <string>
#include <vector>

namespace forge {

/// Affine point of F x F. Ordered by (x, y) canonical values.
struct Point {
  Element x;
  Element y;

  Point() = default;
  Point(Element x_, Element y_);

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Sorts and removes duplicates in place.
void normalize(std::vector<Point>& pts);

/// [X : Y : Z], scaled so the first nonzero coordinate is 1. Z = 0 is the
/// line at infinity.
class ProjPoint {
 public:
  static ProjPoint make(Element X, Element Y, Element Z);
  static ProjPoint from_affine(const Point& p);

  const Element& X() const { return c_[0]; }
  const Element& Y() const { return c_[1]; }
  const Element& Z() const { return c_[2]; }
  const std::array<Element, 3>& coords() const { return c_; }
  bool at_infinity() const { return c_[2].is_zero(); }
  /// Requires !at_infinity().
  Point affine() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;

 private:
  std::array<Element, 3> c_;
};

/// The line a x + b y + c = 0 as [a : b : c], first nonzero entry 1.
/// [0 : 0 : 1] is the line at infinity; affine operations never place a
/// point on it. Ordered lexicographically by canonical triple.
class Line {
 public:
  static Line make(Element a, Element b, Element c);
  static Line at_infinity(const Field& f);
  /// y = m x + k.
  static Line graph(Element m, Element k);
  static Line vertical(Element x0);

  const Element& a() const { return c_[0]; }
  const Element& b() const { return c_[1]; }
  const Element& c() const { return c_[2]; }
  const std::array<Element, 3>& coeffs() const { return c_; }
  bool is_infinite() const { return c_[0].is_zero() && c_[1].is_zero(); }
  bool is_vertical() const { return c_[1].is_zero() && !c_[0].is_zero(); }
  const Field& field() const { return c_[0].field(); }

  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line&, const Line&) = default;

 private:
  std::array<Element, 3> c_;
};

std::string to_string(const Point& p);
std::string to_string(const Line& l);

bool incident(const Point& p, const Line& l);
bool incident(const ProjPoint& p, const Line& l);

/// Throws "degenerate pair" when p == q.
Line line_through(const Point& p, const Point& q);

/// (a-b)(c-d) / ((a-d)(c-b)); throws "degenerate cross ratio" unless a != d
/// and b != c.
Element cross_ratio(Element a, Element b, Element c, Element d);
/// Same on raw values of one field; caller guarantees a != d, b != c.
std::uint32_t cross_ratio_raw(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                              std::uint32_t d);

/// All X(a,b,c,d) over ordered quadruples of A with a != d and b != c.
ElemSet cross_ratio_set(const ElemSet& A);

/// Invertible 3x3 matrix acting on column vectors [X Y Z]^T.
class ProjMap {
 public:
  using Matrix = std::array<std::array<Element, 3>, 3>;

  /// Throws "singular map" when det == 0.
  explicit ProjMap(const Matrix& m);

  /// The flip [[0,0,1],[0,1,0],[1,0,0]]: (x, y) -> (1/x, y/x).
  static ProjMap flip(const Field& f);
  /// (x, y) -> (x + dx, y + dy).
  static ProjMap translation(Element dx, Element dy);
  static ProjMap identity(const Field& f);

  const Matrix& matrix() const { return m_; }
  Element det() const;
  ProjMap inverse() const;
  ProjMap compose(const ProjMap& after) const;  // after * this

  ProjPoint apply(const ProjPoint& p) const;
  /// Image of a line: coefficients transform by the inverse transpose.
  Line apply(const Line& l) const;

 private:
  Matrix m_;
};

ProjPoint apply_proj(const ProjMap& m, const ProjPoint& p);

/// Distinct lines through pairs of distinct points; sorted. Throws
/// "insufficient points" for fewer than two distinct points.
std::vector<Line> lines_determined(std::span<const Point> P);

/// Projection to x-coordinates.
ElemSet x_projection(const Field& f, std::span<const Point> P);

namespace testing {
/// Swaps (a - b) for (a + b) in cross_ratio. Used by the mutation smoke
/// test of `verify`; never enable elsewhere.
void set_cross_ratio_mutant(bool on);
bool cross_ratio_mutant();
}  // namespace testing

}  // namespace forge
