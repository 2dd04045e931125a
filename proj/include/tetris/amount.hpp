#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace tetris {

/// Exact money quantity in minor currency units (cents). Obligations and
/// capacities are non-negative; net positions and external flows may be
/// signed. Every arithmetic operation is checked for 64-bit overflow.
class Amount {
 public:
  constexpr Amount() = default;
  constexpr explicit Amount(std::int64_t minor_units) : value_(minor_units) {}

  [[nodiscard]] constexpr std::int64_t minor_units() const { return value_; }
  [[nodiscard]] constexpr bool is_zero() const { return value_ == 0; }
  [[nodiscard]] constexpr bool is_positive() const { return value_ > 0; }
  [[nodiscard]] constexpr bool is_negative() const { return value_ < 0; }

  Amount& operator+=(Amount rhs) {
    if (__builtin_add_overflow(value_, rhs.value_, &value_)) {
      throw std::overflow_error("amount addition overflows 64-bit minor units");
    }
    return *this;
  }
  Amount& operator-=(Amount rhs) {
    if (__builtin_sub_overflow(value_, rhs.value_, &value_)) {
      throw std::overflow_error("amount subtraction overflows 64-bit minor units");
    }
    return *this;
  }
  Amount& operator*=(std::int64_t k) {
    if (__builtin_mul_overflow(value_, k, &value_)) {
      throw std::overflow_error("amount scaling overflows 64-bit minor units");
    }
    return *this;
  }

  friend Amount operator+(Amount a, Amount b) { return a += b; }
  friend Amount operator-(Amount a, Amount b) { return a -= b; }
  friend Amount operator*(Amount a, std::int64_t k) { return a *= k; }
  friend Amount operator*(std::int64_t k, Amount a) { return a *= k; }
  friend Amount operator-(Amount a) { return Amount{} - a; }

  friend constexpr auto operator<=>(Amount, Amount) = default;

 private:
  std::int64_t value_ = 0;
};

[[nodiscard]] inline Amount min(Amount a, Amount b) { return b < a ? b : a; }
[[nodiscard]] inline Amount max(Amount a, Amount b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, Amount amount);

/// Sum of components (exact).
[[nodiscard]] Amount sum(std::span<const Amount> values);
/// l1-norm: sum of absolute values.
[[nodiscard]] Amount l1_norm(std::span<const Amount> values);

/// Convenience for literals in tests and fixtures.
[[nodiscard]] std::vector<Amount> amounts(std::initializer_list<std::int64_t> values);

}  // namespace tetris
