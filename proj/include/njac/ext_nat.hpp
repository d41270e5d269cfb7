#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace njac {

/// A nonnegative integer or infinity. Intersection multiplicities, Milnor
/// numbers and vanishing orders take values here.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::int64_t v) : value_(v) {  // NOLINT(implicit)
    if (v < 0) throw std::invalid_argument("ExtNat must be nonnegative");
  }

  static constexpr ExtNat infinity() {
    ExtNat e;
    e.inf_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }

  std::int64_t value() const {
    if (inf_) throw std::logic_error("ExtNat::value() on infinity");
    return value_;
  }

  friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }

  friend constexpr ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtNat(a.value_ + b.value_);
  }
  ExtNat& operator+=(const ExtNat& o) { return *this = *this + o; }

  /// Scaling by a positive count; 0 * inf is taken to be 0.
  friend ExtNat operator*(std::int64_t k, const ExtNat& a) {
    if (k < 0) throw std::invalid_argument("ExtNat scaling by a negative number");
    if (k == 0) return ExtNat(0);
    if (a.inf_) return infinity();
    return ExtNat(k * a.value_);
  }

  std::string to_string() const { return inf_ ? "inf" : std::to_string(value_); }

  friend std::ostream& operator<<(std::ostream& os, const ExtNat& e) { return os << e.to_string(); }

 private:
  std::int64_t value_ = 0;
  bool inf_ = false;
};

}  // namespace njac
