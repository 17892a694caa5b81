#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace inertia {

// Exact rational arithmetic for time instants and durations. Values are kept
// reduced with a positive denominator, so equality is plain field comparison.
// Arithmetic goes through 128-bit intermediates and throws std::overflow_error
// if a reduced result no longer fits in 64 bits.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  // "p" when integral, "p/q" otherwise.
  std::string str() const;

  // Accepts "p", "p/q" and decimal "a.b" forms, with optional sign.
  static std::optional<Rational> parse(std::string_view text);

  friend Rational operator-(const Rational& a);
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational reduced(__int128 num, __int128 den);

  std::int64_t num_;
  std::int64_t den_;
};

Rational abs(const Rational& a);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// Midpoint, used by feasibility searches to probe open intervals.
Rational midpoint(const Rational& a, const Rational& b);

}  // namespace inertia
