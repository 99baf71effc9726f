#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace forge {

class Field;

/// Coefficient list over F_p, constant term first.
using Poly = std::vector<std::uint32_t>;

/// Upper bound on q accepted by Field::make. Defaults to 2^16; the
/// INCIDENCE_FORGE_QMAX environment variable overrides it.
std::uint64_t q_cap();

bool is_prime(std::uint64_t n);

bool is_irreducible(const Poly& f, std::uint32_t p);

/// Least monic irreducible polynomial of degree k over F_p. Candidates are
/// ordered by the integer sum c_i p^i of their lower coefficients, so the
/// x^(k-1) coefficient is compared first; this is the same order used for
/// field elements.
Poly find_irreducible(std::uint32_t p, unsigned k);

/// An element of F_{p^k}. The canonical value is the integer sum c_i p^i of
/// the reduced coefficient vector, so equality and ordering are O(1).
/// The owning Field must outlive the element.
class Element {
 public:
  Element() = default;
  Element(const Field& field, std::uint32_t value);

  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  std::uint32_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  bool valid() const { return field_ != nullptr; }

  /// Length-k vector of residues mod p, constant term first.
  std::vector<std::uint32_t> coeffs() const;

  Element inv() const;
  Element pow(std::uint64_t e) const;

  friend Element operator+(Element x, Element y);
  friend Element operator-(Element x, Element y);
  friend Element operator*(Element x, Element y);
  friend Element operator/(Element x, Element y);
  friend Element operator-(Element x);
  Element& operator+=(Element y) { return *this = *this + y; }
  Element& operator-=(Element y) { return *this = *this - y; }
  Element& operator*=(Element y) { return *this = *this * y; }

  friend bool operator==(const Element& x, const Element& y) {
    return x.value_ == y.value_ && x.field_ == y.field_;
  }
  friend std::strong_ordering operator<=>(const Element& x, const Element& y) {
    if (auto c = x.field_ <=> y.field_; c != 0) return c;
    return x.value_ <=> y.value_;
  }

 private:
  const Field* field_ = nullptr;
  std::uint32_t value_ = 0;
};

enum class ArithOp { add, sub, mul, div, inv };

/// Single entry point for the five field operations; `inv` ignores y.
Element arith(ArithOp op, Element x, Element y = {});

/// The subfield F_{p^d} of F_{p^k}, d | k, with its element list and the
/// additive quotient F / G precomputed.
class Subfield {
 public:
  unsigned degree() const { return degree_; }
  std::uint32_t order() const { return order_; }
  const Field& field() const { return *field_; }

  /// Sorted canonical values of the p^d members.
  std::span<const std::uint32_t> values() const { return values_; }
  std::vector<Element> elements() const;

  /// Lookup in the cached enumeration.
  bool contains(Element x) const;
  bool contains_value(std::uint32_t v) const { return member_[v] != 0; }
  /// Independent route: x^(p^d) == x.
  bool contains_frobenius(Element x) const;

  /// Label of the additive coset x + G. Two values share a label iff their
  /// difference lies in G.
  std::uint32_t coset_key(std::uint32_t v) const { return coset_key_[v]; }
  /// Number of multiplicative cosets of G* in F*: (q-1)/(|G|-1). The
  /// representatives are g^0, ..., g^(m-1) for the field's primitive g.
  std::uint32_t multiplicative_index() const { return mult_index_; }

 private:
  friend class Field;
  const Field* field_ = nullptr;
  unsigned degree_ = 0;
  std::uint32_t order_ = 0;
  std::uint32_t mult_index_ = 0;
  std::vector<std::uint32_t> values_;
  std::vector<std::uint8_t> member_;
  std::vector<std::uint32_t> coset_key_;
};

/// F_{p^k} realised as F_p[x]/(modulus). Arithmetic goes through discrete
/// log / Zech log tables built once at construction. Instances are
/// immutable and shared; Field::make memoises by (p, modulus), so equal
/// parameters yield the same object.
class Field {
 public:
  static std::shared_ptr<const Field> make(std::uint32_t p, unsigned k);
  static std::shared_ptr<const Field> make(std::uint32_t p, const Poly& modulus);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const Poly& modulus() const { return modulus_; }

  Element element(std::uint32_t value) const;
  Element from_coeffs(std::span<const std::uint32_t> coeffs) const;
  Element zero() const { return Element(*this, 0); }
  Element one() const { return Element(*this, 1); }
  /// The least primitive element (generator of F*).
  Element primitive() const { return Element(*this, exp_[q_ > 2 ? 1 : 0]); }
  std::vector<Element> elements() const;

  /// One entry per divisor of k, ascending; the last is the field itself.
  const std::vector<Subfield>& subfields() const { return subfields_; }
  const Subfield& subfield(unsigned d) const;

  bool same_as(const Field& other) const { return this == &other; }

  // Raw-value arithmetic for kernels. Values must be < q.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;  // a != 0
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// Size of F* (q - 1).
  std::uint32_t group_order() const { return q_ - 1; }
  /// g^i for i in [0, q-1).
  std::uint32_t exp(std::uint32_t i) const { return exp_[i]; }
  /// Discrete log of a nonzero value.
  std::uint32_t log(std::uint32_t v) const { return log_[v]; }
  /// zech(n) = log(1 + g^n), or kZechZero when 1 + g^n = 0.
  std::uint32_t zech(std::uint32_t n) const { return zech_[n]; }
  std::span<const std::uint32_t> zech_table() const { return zech_; }
  std::span<const std::uint32_t> log_table() const { return log_; }
  std::span<const std::uint32_t> exp_table() const { return exp_; }
  /// log(-1): (q-1)/2 in odd characteristic, 0 in characteristic 2.
  std::uint32_t log_minus_one() const { return log_minus_one_; }

  static constexpr std::uint32_t kZechZero = 0xffffffffU;

  Field(std::uint32_t p, Poly modulus);

 private:
  void build_tables();
  void build_subfields();

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  Poly modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::uint32_t log_minus_one_ = 0;
  std::vector<Subfield> subfields_;
};

/// All subfields, ascending by degree.
std::vector<const Subfield*> subfield_lattice(const Field& field);

/// For k = 2d, the least element (by canonical value) outside F_{p^d}; then
/// F_{p^k} = F_{p^d} + t F_{p^d}.
Element defining_element(const Field& field, unsigned d);

}  // namespace forge
