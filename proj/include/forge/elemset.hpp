#pragma once

#include "forge/gf.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace forge {

/// Finite subset of one field, held as sorted distinct canonical values.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(const Field& field) : field_(&field) {}
  ElemSet(const Field& field, std::vector<std::uint32_t> values);
  ElemSet(const Field& field, std::initializer_list<std::uint32_t> values)
      : ElemSet(field, std::vector<std::uint32_t>(values)) {}
  /// Elements must share a field; an empty span needs the explicit field.
  static ElemSet of(const Field& field, std::span<const Element> elems);

  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  bool valid() const { return field_ != nullptr; }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  std::span<const std::uint32_t> values() const { return values_; }
  std::uint32_t value(std::size_t i) const { return values_[i]; }
  Element operator[](std::size_t i) const { return Element(*field_, values_[i]); }
  std::vector<Element> elements() const;

  bool contains(std::uint32_t v) const;
  bool contains(Element x) const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const ElemSet& a, const ElemSet& b) {
    return a.field_ == b.field_ && a.values_ == b.values_;
  }

 private:
  const Field* field_ = nullptr;
  std::vector<std::uint32_t> values_;
};

/// Throws context mismatch unless both sets live in the same field.
const Field& shared_field(const ElemSet& a, const ElemSet& b);

ElemSet translate(const ElemSet& a, std::uint32_t b);
ElemSet dilate(const ElemSet& a, std::uint32_t c);
ElemSet set_union(const ElemSet& a, const ElemSet& b);
ElemSet set_intersection(const ElemSet& a, const ElemSet& b);
bool is_subset(const ElemSet& a, const ElemSet& b);

/// "{v1,v2,...}" using canonical values.
std::string to_string(const ElemSet& a);

}  // namespace forge
