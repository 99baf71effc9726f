#include "forge/error.hpp"
#include "forge/gf.hpp"

#include <doctest.h>

#include <cstdlib>
#include <set>

using namespace forge;

namespace {

// Brute-force irreducibility: no monic factor of degree <= k/2 divides f.
bool has_root_or_factor(const Poly& f, std::uint32_t p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t v = c;
      for (unsigned i = 0; i < d; ++i, v /= p) g[i] = static_cast<std::uint32_t>(v % p);
      Poly r(f.begin(), f.end());
      for (int i = static_cast<int>(k); i >= static_cast<int>(d); --i) {
        const std::uint32_t lead = r[i] % p;
        if (!lead) continue;
        for (unsigned j = 0; j <= d; ++j) r[i - d + j] = (r[i - d + j] + (p - lead) * g[j]) % p;
      }
      bool zero = true;
      for (unsigned i = 0; i < d; ++i) zero = zero && r[i] % p == 0;
      if (zero) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  auto f = Field::make(7, 1);
  CHECK(f->element(3).inv() == f->element(5));
  for (std::uint32_t x = 0; x < 7; ++x) CHECK(arith(ArithOp::add, f->zero(), f->element(x)) == f->element(x));
  CHECK(arith(ArithOp::div, f->element(1), f->element(4)) == f->element(2));
  CHECK_THROWS_AS(f->zero().inv(), Error);
}

TEST_CASE("F_4 multiplication reduces by t^2 + t + 1") {
  auto f = Field::make(2, 2);
  CHECK(f->modulus() == Poly{1, 1, 1});
  const Element t = f->element(2);
  CHECK(t * t == f->element(3));  // t + 1
}

TEST_CASE("find_irreducible") {
  CHECK(find_irreducible(2, 2) == Poly{1, 1, 1});
  CHECK(find_irreducible(5, 2) == Poly{2, 0, 1});
  CHECK(find_irreducible(7, 1) == Poly{0, 1});
  for (auto [p, k] : {std::pair{2u, 3u}, {2u, 4u}, {3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}, {2u, 6u}, {13u, 2u}}) {
    auto f = find_irreducible(p, k);
    CHECK(f.size() == k + 1);
    CHECK_FALSE(has_root_or_factor(f, p));
    CHECK(is_irreducible(f, p));
  }
  CHECK_FALSE(is_irreducible(Poly{1, 0, 1}, 2));  // (x+1)^2
}

TEST_CASE("elements from different fields do not mix") {
  auto a = Field::make(3, 1);
  auto b = Field::make(5, 1);
  CHECK_THROWS_AS(a->one() + b->one(), Error);
  CHECK(Field::make(3, 1).get() == a.get());
}

TEST_CASE("q cap") {
  CHECK_THROWS_AS(Field::make(2, 17), Error);
  CHECK_THROWS_AS(Field::make(4, 1), Error);
}

TEST_CASE("subfield lattice") {
  auto f16 = Field::make(2, 4);
  std::vector<unsigned> d;
  for (auto* s : subfield_lattice(*f16)) d.push_back(s->degree());
  CHECK(d == std::vector<unsigned>{1, 2, 4});
  CHECK(subfield_lattice(*Field::make(11, 1)).size() == 1);

  auto f9 = Field::make(3, 2);
  const auto& F3 = f9->subfield(1);
  std::vector<std::uint32_t> vals(F3.values().begin(), F3.values().end());
  CHECK(vals == std::vector<std::uint32_t>{0, 1, 2});
  // oracle: x^3 == x
  std::set<std::uint32_t> roots;
  for (auto x : f9->elements())
    if (x.pow(3) == x) roots.insert(x.value());
  CHECK(roots == std::set<std::uint32_t>{0, 1, 2});
}

TEST_CASE("defining element") {
  auto f4 = Field::make(2, 2);
  CHECK(defining_element(*f4, 1).value() == 2);
  auto f9 = Field::make(3, 2);
  Element t = defining_element(*f9, 1);
  std::uint32_t least = 0;
  for (auto x : f9->elements())
    if (x.pow(3) != x) {
      least = x.value();
      break;
    }
  CHECK(t.value() == least);
  auto f25 = Field::make(5, 2);
  Element s = defining_element(*f25, 1);
  std::set<std::uint32_t> span;
  for (std::uint32_t a = 0; a < 5; ++a)
    for (std::uint32_t b = 0; b < 5; ++b) span.insert((f25->element(a) + s * f25->element(b)).value());
  CHECK(span.size() == 25);
}

TEST_CASE("log tables agree with repeated multiplication") {
  auto f = Field::make(3, 3);
  Element g = f->primitive();
  Element acc = f->one();
  std::set<std::uint32_t> seen;
  for (std::uint32_t i = 0; i < f->group_order(); ++i) {
    CHECK(f->exp(i) == acc.value());
    seen.insert(acc.value());
    acc *= g;
  }
  CHECK(seen.size() == 26);
  CHECK(acc.is_one());
}
