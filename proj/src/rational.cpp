#include "inertia/rational.hpp"

#include <cctype>
#include <limits>

namespace inertia {

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kInt64Min = std::numeric_limits<std::int64_t>::min();

}  // namespace

Rational Rational::reduced(__int128 num, __int128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) den = 1;
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kInt64Max || num < kInt64Min || den > kInt64Max)
    throw std::overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = reduced(num, den);
}

Rational operator-(const Rational& a) {
  return Rational::reduced(-static_cast<__int128>(a.num_), a.den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.den_ +
                 static_cast<__int128>(b.num_) * a.den_;
  return Rational::reduced(num, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  __int128 num = static_cast<__int128>(a.num_) * b.den_ -
                 static_cast<__int128>(b.num_) * a.den_;
  return Rational::reduced(num, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::reduced(static_cast<__int128>(a.num_) * b.num_,
                           static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::invalid_argument("rational division by zero");
  return Rational::reduced(static_cast<__int128>(a.num_) * b.den_,
                           static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  std::string s = std::to_string(num_);
  if (den_ != 1) {
    s += '/';
    s += std::to_string(den_);
  }
  return s;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  auto read_digits = [&](std::int64_t& out) -> bool {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      return false;
    __int128 v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > kInt64Max) return false;
      ++i;
    }
    out = static_cast<std::int64_t>(v);
    return true;
  };

  std::int64_t whole = 0;
  if (!read_digits(whole)) return std::nullopt;

  try {
    if (i < text.size() && text[i] == '/') {
      ++i;
      std::int64_t den = 0;
      if (!read_digits(den) || i != text.size() || den == 0) return std::nullopt;
      Rational r(whole, den);
      return negative ? -r : r;
    }
    if (i < text.size() && text[i] == '.') {
      ++i;
      std::size_t frac_begin = i;
      std::int64_t frac = 0;
      if (!read_digits(frac) || i != text.size()) return std::nullopt;
      std::size_t digits = i - frac_begin;
      if (digits > 18) return std::nullopt;
      std::int64_t pow10 = 1;
      for (std::size_t k = 0; k < digits; ++k) pow10 *= 10;
      Rational r = Rational(whole) + Rational(frac, pow10);
      return negative ? -r : r;
    }
    if (i != text.size()) return std::nullopt;
    Rational r(whole);
    return negative ? -r : r;
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational midpoint(const Rational& a, const Rational& b) {
  return (a + b) / Rational(2);
}

}  // namespace inertia
