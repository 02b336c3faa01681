#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace centroidcut {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every arithmetic result is
/// canonical, so equality is structural and hashing/printing is stable.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  /// Accepts "p", "p/q" and finite decimal literals such as "-0.125".
  /// Throws ParseError on anything else or a zero denominator.
  static Rational parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string str() const;
  /// Correctly rounded decimal with `digits` fractional digits.
  [[nodiscard]] std::string to_decimal(int digits) const;
  [[nodiscard]] double to_double() const { return value_.get_d(); }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] std::string numerator_str() const { return value_.get_num().get_str(); }
  [[nodiscard]] std::string denominator_str() const { return value_.get_den().get_str(); }
  [[nodiscard]] const mpz_class& numerator() const { return value_.get_num(); }
  [[nodiscard]] const mpz_class& denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
  Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
  Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& x);
Rational pow(const Rational& base, unsigned exponent);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

using Point = std::vector<Rational>;
using Vector = std::vector<Rational>;

Rational dot(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector scaled(const Vector& v, const Rational& factor);
std::vector<double> to_doubles(const Vector& v);
Vector from_doubles(const std::vector<double>& v);

/// Scales v to the primitive integer vector with the same direction.
Vector primitive(const Vector& v);

std::string to_string(const Vector& v);

}  // namespace centroidcut
