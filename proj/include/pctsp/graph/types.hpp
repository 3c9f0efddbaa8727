#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pctsp/graph/error.hpp"

namespace pctsp {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using Cost = std::int64_t;
using Prize = std::int64_t;

/// Exact rational used for ratios (unitary loss, surplus, prize ratios).
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline Cost checked_add(Cost a, Cost b) {
  Cost out{};
  if (__builtin_add_overflow(a, b, &out)) fail(Errc::Overflow, "cost addition overflows 64 bits");
  return out;
}

inline Cost checked_mul(Cost a, Cost b) {
  Cost out{};
  if (__builtin_mul_overflow(a, b, &out)) fail(Errc::Overflow, "cost multiplication overflows 64 bits");
  return out;
}

/// A non-negative cost or +infinity. Infinity is a distinct state, never a large number.
class Distance {
 public:
  constexpr Distance() = default;
  constexpr explicit Distance(Cost value) : value_(value), finite_(true) {}

  static constexpr Distance infinity() { return Distance{}; }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }

  Cost value() const {
    if (!finite_) fail(Errc::Precondition, "value() on infinite distance");
    return value_;
  }

  friend Distance operator+(Distance a, Cost b) {
    if (!a.finite_) return a;
    return Distance{checked_add(a.value_, b)};
  }
  friend Distance operator+(Distance a, Distance b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Distance{checked_add(a.value_, b.value_)};
  }

  friend constexpr bool operator==(const Distance& a, const Distance& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
    if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
    if (!a.finite_) return std::strong_ordering::greater;
    if (!b.finite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Distance& d) {
    if (d.finite_) return os << d.value_;
    return os << "inf";
  }

 private:
  Cost value_ = 0;
  bool finite_ = false;
};

}  // namespace pctsp
