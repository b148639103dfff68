#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace wracah {

// Exact half-integer quantum label (j, m, k, q, ...). Stored as twice the
// value so that 3/2 and -1/2 are represented without rounding.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : twice_(2 * whole) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool same_parity(HalfInt other) const {
    return ((twice_ ^ other.twice_) & 1) == 0;
  }

  // "0", "2", "-3", "1/2", "-5/2"
  std::string str() const;
  // Accepts the same forms str() produces; throws Error(invalid_label) otherwise.
  static HalfInt parse(const std::string& text);

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ - b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

 private:
  int twice_ = 0;
};

// HalfInt must hold an integer value; returns it. Throws Error(invalid_label).
int as_int(HalfInt h);

// (-1)^e for integer-valued e; throws Error(invalid_label) if e is half-odd.
int parity(HalfInt e);

constexpr HalfInt abs(HalfInt h) {
  return h.twice() < 0 ? -h : h;
}

// Triangle rule |a-b| <= c <= a+b together with a+b+c integral.
bool triangle(HalfInt a, HalfInt b, HalfInt c);

std::ostream& operator<<(std::ostream& os, HalfInt h);

}  // namespace wracah

template <>
struct std::hash<wracah::HalfInt> {
  std::size_t operator()(wracah::HalfInt h) const noexcept {
    return std::hash<int>{}(h.twice());
  }
};
