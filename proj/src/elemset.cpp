#include "forge/elemset.hpp"

#include "forge/error.hpp"

#include <algorithm>
#include <iterator>

namespace forge {

ElemSet::ElemSet(const Field& field, std::vector<std::uint32_t> values)
    : field_(&field), values_(std::move(values)) {
  for (auto v : values_) {
    if (v >= field.q()) throw Error(Errc::invalid_argument, "set value out of range");
  }
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

ElemSet ElemSet::of(const Field& field, std::span<const Element> elems) {
  std::vector<std::uint32_t> vals;
  vals.reserve(elems.size());
  for (const auto& e : elems) {
    if (!e.valid() || !e.field().same_as(field)) throw Error(Errc::context_mismatch);
    vals.push_back(e.value());
  }
  return ElemSet(field, std::move(vals));
}

std::vector<Element> ElemSet::elements() const {
  std::vector<Element> out;
  out.reserve(values_.size());
  for (auto v : values_) out.emplace_back(*field_, v);
  return out;
}

bool ElemSet::contains(std::uint32_t v) const { return std::binary_search(values_.begin(), values_.end(), v); }

bool ElemSet::contains(Element x) const {
  if (!x.valid() || x.field_ptr() != field_) throw Error(Errc::context_mismatch);
  return contains(x.value());
}

const Field& shared_field(const ElemSet& a, const ElemSet& b) {
  if (!a.valid() || !b.valid() || a.field_ptr() != b.field_ptr()) throw Error(Errc::context_mismatch);
  return a.field();
}

ElemSet translate(const ElemSet& a, std::uint32_t b) {
  const Field& f = a.field();
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  for (auto v : a) out.push_back(f.add(v, b));
  return ElemSet(f, std::move(out));
}

ElemSet dilate(const ElemSet& a, std::uint32_t c) {
  const Field& f = a.field();
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  for (auto v : a) out.push_back(f.mul(v, c));
  return ElemSet(f, std::move(out));
}

ElemSet set_union(const ElemSet& a, const ElemSet& b) {
  const Field& f = shared_field(a, b);
  std::vector<std::uint32_t> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ElemSet(f, std::move(out));
}

ElemSet set_intersection(const ElemSet& a, const ElemSet& b) {
  const Field& f = shared_field(a, b);
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return ElemSet(f, std::move(out));
}

bool is_subset(const ElemSet& a, const ElemSet& b) {
  shared_field(a, b);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string to_string(const ElemSet& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a.value(i));
  }
  return s + "}";
}

}  // namespace forge
