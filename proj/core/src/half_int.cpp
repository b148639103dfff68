#include "wracah/half_int.hpp"

#include <charconv>
#include <ostream>

#include "wracah/error.hpp"

namespace wracah {

std::string HalfInt::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

HalfInt HalfInt::parse(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string::npos)
    fail(Errc::invalid_label, "empty half-integer literal");
  std::string_view body(text.data() + begin, end - begin + 1);

  int numerator = 0;
  auto slash = body.find('/');
  std::string_view head = body.substr(0, slash);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), numerator);
  if (ec != std::errc() || ptr != head.data() + head.size())
    fail(Errc::invalid_label, "cannot parse half-integer '" + text + "'");
  if (slash == std::string_view::npos) return HalfInt(numerator);

  std::string_view tail = body.substr(slash + 1);
  if (tail != "2")
    fail(Errc::invalid_label,
         "half-integer denominator must be 2 in '" + text + "'");
  if (numerator % 2 == 0)
    fail(Errc::invalid_label,
         "half-odd numerator expected in '" + text + "' (write " +
             std::to_string(numerator / 2) + " instead)");
  return HalfInt::from_twice(numerator);
}

int as_int(HalfInt h) {
  if (!h.is_integer())
    fail(Errc::invalid_label, "expected an integer label, got " + h.str());
  return h.twice() / 2;
}

int parity(HalfInt e) {
  return as_int(e) % 2 == 0 ? 1 : -1;
}

bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  if (!(a + b + c).is_integer()) return false;
  return abs(a - b) <= c && c <= a + b;
}

std::ostream& operator<<(std::ostream& os, HalfInt h) {
  return os << h.str();
}

}  // namespace wracah
