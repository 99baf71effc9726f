#include "forge/gf.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

namespace forge {

namespace {

constexpr std::uint64_t kDefaultQCap = 1ULL << 16;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p prime, a != 0 mod p
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic of degree >= 1.
Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    std::uint64_t lead = a.back();
    std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      std::uint64_t sub = lead * f[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// General remainder for gcd: divisor need not be monic.
Poly poly_rem(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  std::uint32_t lead_inv = inv_mod(b.back(), p);
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
  }
  Poly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i]);
  return poly_mod(std::move(out), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1U) result = poly_mulmod(result, base, f, p);
    e >>= 1U;
    if (e > 0) base = poly_mulmod(base, base, f, p);
  }
  return result;
}

Poly sub_x(Poly a, std::uint32_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

Poly digits_of(std::uint32_t v, std::uint32_t p, unsigned k) {
  Poly out(k);
  for (unsigned i = 0; i < k; ++i) {
    out[i] = v % p;
    v /= p;
  }
  return out;
}

std::uint32_t value_of(const Poly& digits, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
  return static_cast<std::uint32_t>(v);
}

std::uint32_t checked_power(std::uint32_t p, unsigned k) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > q_cap()) {
      throw Error(Errc::field_too_large,
                  "p^k exceeds the configured cap " + std::to_string(q_cap()) + " (INCIDENCE_FORGE_QMAX)");
    }
  }
  return static_cast<std::uint32_t>(q);
}

}  // namespace

std::uint64_t q_cap() {
  if (const char* env = std::getenv("INCIDENCE_FORGE_QMAX"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 2) return v;
  }
  return kDefaultQCap;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (f.back() != 1) {
    std::uint32_t li = inv_mod(f.back(), p);
    for (auto& c : f) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * li % p);
  }
  if (k == 1) return true;
  // Rabin: x^(p^k) = x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for primes r | k.
  std::vector<Poly> frob(k + 1);
  frob[0] = poly_mod(Poly{0, 1}, f, p);
  for (unsigned i = 1; i <= k; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  Poly x = poly_mod(Poly{0, 1}, f, p);
  if (frob[k] != x) return false;
  for (std::uint64_t r : prime_factors(k)) {
    Poly g = poly_gcd(f, sub_x(frob[k / r], p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly find_irreducible(std::uint32_t p, unsigned k) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, "p must be prime");
  if (k == 0) throw Error(Errc::invalid_argument, "degree must be at least 1");
  std::uint32_t count = checked_power(p, k);
  for (std::uint32_t n = 0; n < count; ++n) {
    Poly f = digits_of(n, p, k);
    if (k > 1 && f[0] == 0) continue;
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw Error(Errc::invalid_argument, "no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

Element::Element(const Field& field, std::uint32_t value) : field_(&field), value_(value) {
  if (value >= field.q()) throw Error(Errc::invalid_argument, "element value out of range");
}

std::vector<std::uint32_t> Element::coeffs() const { return digits_of(value_, field_->p(), field_->k()); }

namespace {

const Field& common(const Element& x, const Element& y) {
  if (!x.valid() || !y.valid() || !x.field().same_as(y.field())) throw Error(Errc::context_mismatch);
  return x.field();
}

}  // namespace

Element operator+(Element x, Element y) {
  const Field& f = common(x, y);
  return Element(f, f.add(x.value(), y.value()));
}

Element operator-(Element x, Element y) {
  const Field& f = common(x, y);
  return Element(f, f.sub(x.value(), y.value()));
}

Element operator*(Element x, Element y) {
  const Field& f = common(x, y);
  return Element(f, f.mul(x.value(), y.value()));
}

Element operator/(Element x, Element y) {
  const Field& f = common(x, y);
  if (y.is_zero()) throw Error(Errc::zero_divisor);
  return Element(f, f.mul(x.value(), f.inv(y.value())));
}

Element operator-(Element x) { return Element(x.field(), x.field().neg(x.value())); }

Element Element::inv() const {
  if (is_zero()) throw Error(Errc::zero_divisor);
  return Element(*field_, field_->inv(value_));
}

Element Element::pow(std::uint64_t e) const { return Element(*field_, field_->pow(value_, e)); }

Element arith(ArithOp op, Element x, Element y) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::div: return x / y;
    case ArithOp::inv: return x.inv();
  }
  throw Error(Errc::invalid_argument, "unknown op");
}

// ---------------------------------------------------------------------------

std::vector<Element> Subfield::elements() const {
  std::vector<Element> out;
  out.reserve(values_.size());
  for (auto v : values_) out.emplace_back(*field_, v);
  return out;
}

bool Subfield::contains(Element x) const {
  if (!x.valid() || !x.field().same_as(*field_)) throw Error(Errc::context_mismatch);
  return member_[x.value()] != 0;
}

bool Subfield::contains_frobenius(Element x) const {
  if (!x.valid() || !x.field().same_as(*field_)) throw Error(Errc::context_mismatch);
  std::uint64_t pd = 1;
  for (unsigned i = 0; i < degree_; ++i) pd *= field_->p();
  return x.pow(pd) == x;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Field> Field::make(std::uint32_t p, unsigned k) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, "p must be prime");
  if (k == 0) throw Error(Errc::invalid_argument, "degree must be at least 1");
  checked_power(p, k);
  return make(p, find_irreducible(p, k));
}

std::shared_ptr<const Field> Field::make(std::uint32_t p, const Poly& modulus) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, Poly>, std::shared_ptr<const Field>> registry;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(p, modulus);
  if (auto it = registry.find(key); it != registry.end()) return it->second;
  auto field = std::make_shared<const Field>(p, modulus);
  registry.emplace(std::move(key), field);
  return field;
}

Field::Field(std::uint32_t p, Poly modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, "p must be prime");
  trim(modulus_);
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw Error(Errc::invalid_argument, "modulus must be monic of degree >= 1");
  for (auto c : modulus_) {
    if (c >= p) throw Error(Errc::invalid_argument, "modulus coefficient out of range");
  }
  k_ = static_cast<unsigned>(modulus_.size() - 1);
  q_ = checked_power(p, k_);
  if (!is_irreducible(modulus_, p)) throw Error(Errc::invalid_argument, "modulus is reducible");
  build_tables();
  build_subfields();
}

void Field::build_tables() {
  const std::uint32_t n = q_ - 1;
  exp_.assign(n, 0);
  log_.assign(q_, 0);
  zech_.assign(n, kZechZero);

  // least primitive element
  Poly generator;
  auto factors = prime_factors(n);
  for (std::uint32_t v = 1; v < q_; ++v) {
    Poly g = digits_of(v, p_, k_);
    bool primitive = true;
    for (auto r : factors) {
      Poly t = poly_powmod(g, n / r, modulus_, p_);
      if (t == Poly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = g;
      break;
    }
  }
  if (generator.empty()) throw Error(Errc::invalid_argument, "no primitive element");

  Poly cur{1};
  for (std::uint32_t i = 0; i < n; ++i) {
    Poly padded = cur;
    padded.resize(k_, 0);
    exp_[i] = value_of(padded, p_);
    log_[exp_[i]] = i;
    cur = poly_mulmod(cur, generator, modulus_, p_);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t v = exp_[i];
    std::uint32_t c0 = v % p_;
    std::uint32_t w = v - c0 + (c0 + 1) % p_;
    zech_[i] = w == 0 ? kZechZero : log_[w];
  }
  log_minus_one_ = p_ == 2 ? 0 : n / 2;
}

void Field::build_subfields() {
  for (unsigned d = 1; d <= k_; ++d) {
    if (k_ % d != 0) continue;
    Subfield sub;
    sub.field_ = this;
    sub.degree_ = d;
    sub.order_ = checked_power(p_, d);
    sub.mult_index_ = (q_ - 1) / (sub.order_ - 1);
    sub.values_.push_back(0);
    for (std::uint32_t j = 0; j + 1 < sub.order_; ++j) sub.values_.push_back(exp_[j * sub.mult_index_]);
    std::sort(sub.values_.begin(), sub.values_.end());
    sub.member_.assign(q_, 0);
    for (auto v : sub.values_) sub.member_[v] = 1;

    // Basis 1, gamma, ..., gamma^(d-1) of G over F_p, reduced to echelon form.
    std::vector<Poly> rows;
    std::vector<unsigned> pivots;
    std::uint32_t gamma = exp_[sub.mult_index_ % (q_ - 1)];
    std::uint32_t power = 1;
    for (unsigned i = 0; i < d; ++i) {
      Poly row = digits_of(power, p_, k_);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::uint64_t c = row[pivots[r]];
        if (c == 0) continue;
        for (unsigned j = 0; j < k_; ++j)
          row[j] = static_cast<std::uint32_t>((row[j] + p_ - c * rows[r][j] % p_) % p_);
      }
      unsigned piv = 0;
      while (piv < k_ && row[piv] == 0) ++piv;
      if (piv == k_) throw Error(Errc::invalid_argument, "subfield basis is dependent");
      std::uint64_t li = inv_mod(row[piv], p_);
      for (auto& c : row) c = static_cast<std::uint32_t>(c * li % p_);
      // back-substitute into earlier rows to keep the form reduced
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::uint64_t c = rows[r][piv];
        if (c == 0) continue;
        for (unsigned j = 0; j < k_; ++j)
          rows[r][j] = static_cast<std::uint32_t>((rows[r][j] + p_ - c * row[j] % p_) % p_);
      }
      rows.push_back(std::move(row));
      pivots.push_back(piv);
      power = mul(power, gamma);
    }
    sub.coset_key_.assign(q_, 0);
    for (std::uint32_t v = 0; v < q_; ++v) {
      Poly x = digits_of(v, p_, k_);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::uint64_t c = x[pivots[r]];
        if (c == 0) continue;
        for (unsigned j = 0; j < k_; ++j)
          x[j] = static_cast<std::uint32_t>((x[j] + p_ - c * rows[r][j] % p_) % p_);
      }
      sub.coset_key_[v] = value_of(x, p_);
    }
    subfields_.push_back(std::move(sub));
  }
}

Element Field::element(std::uint32_t value) const { return Element(*this, value); }

Element Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != k_) throw Error(Errc::invalid_argument, "coefficient vector must have length k");
  Poly d(coeffs.begin(), coeffs.end());
  for (auto c : d) {
    if (c >= p_) throw Error(Errc::invalid_argument, "coefficient out of range");
  }
  return Element(*this, value_of(d, p_));
}

std::vector<Element> Field::elements() const {
  std::vector<Element> out;
  out.reserve(q_);
  for (std::uint32_t v = 0; v < q_; ++v) out.emplace_back(*this, v);
  return out;
}

const Subfield& Field::subfield(unsigned d) const {
  for (const auto& s : subfields_) {
    if (s.degree() == d) return s;
  }
  throw Error(Errc::invalid_argument, "no subfield of degree " + std::to_string(d));
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t n = q_ - 1;
  std::uint32_t la = log_[a];
  std::uint32_t lb = log_[b];
  std::uint32_t d = lb >= la ? lb - la : lb + n - la;
  std::uint32_t z = zech_[d];
  if (z == kZechZero) return 0;
  std::uint32_t s = la + z;
  if (s >= n) s -= n;
  return exp_[s];
}

std::uint32_t Field::neg(std::uint32_t a) const {
  if (a == 0 || p_ == 2) return a;
  std::uint32_t s = log_[a] + log_minus_one_;
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw Error(Errc::zero_divisor);
  std::uint32_t la = log_[a];
  return exp_[la == 0 ? 0 : q_ - 1 - la];
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t n = q_ - 1;
  return exp_[static_cast<std::uint32_t>(static_cast<std::uint64_t>(log_[a]) * (e % n) % n)];
}

std::vector<const Subfield*> subfield_lattice(const Field& field) {
  std::vector<const Subfield*> out;
  for (const auto& s : field.subfields()) out.push_back(&s);
  return out;
}

Element defining_element(const Field& field, unsigned d) {
  if (d == 0 || field.k() != 2 * d) throw Error(Errc::not_quadratic_tower);
  const Subfield& sub = field.subfield(d);
  for (std::uint32_t v = 0; v < field.q(); ++v) {
    if (!sub.contains_value(v)) return field.element(v);
  }
  throw Error(Errc::not_quadratic_tower);
}

}  // namespace forge
