#include "centroidcut/rational.hpp"

#include <cmath>
#include <numeric>

#include "centroidcut/error.hpp"

namespace centroidcut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRefNotInterior: return "RefNotInterior";
    case ErrorCode::kBadDelta: return "BadDelta";
    case ErrorCode::kBadSpec: return "BadSpec";
    case ErrorCode::kInfeasible: return "Infeasible";
  }
  return "Error";
}

Rational::Rational(long long value) {
  value_ = mpq_class(mpz_class(std::to_string(value)));
}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorCode::kParse, "zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::kParse, "non-finite double");
  return Rational(mpq_class(value));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw Error(ErrorCode::kParse, "not an integer: '" + std::string(s) + "'");
  std::string text(s);
  if (text.front() == '+') text.erase(0, 1);
  return mpz_class(text, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::kParse, "empty rational");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  if (const auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot_pos);
    std::string_view frac_part = text.substr(dot_pos + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw Error(ErrorCode::kParse, "bad decimal '" + std::string(text) + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    if (digits.empty()) digits = "0";
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    mpq_class q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return Rational(q);
  }

  return Rational(mpq_class(parse_integer(text)));
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpz_class num = abs(value_.get_num()) * scale;
  const mpz_class& den = value_.get_den();
  // Round half away from zero.
  mpz_class q = (2 * num + den) / (2 * den);
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (sign() < 0 && q != 0) s.insert(0, "-");
  return s;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

namespace {

// Continued-fraction search for the simplest rational in [lo, hi] with 0 <= lo.
mpq_class simplest_nonnegative(const mpq_class& lo, const mpq_class& hi) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (mpq_class(fl) == lo) return mpq_class(fl);
  // ceil(lo) <= hi means an integer fits.
  if (mpq_class(fl + 1) <= hi) return mpq_class(fl + 1);
  // Both in (fl, fl+1): recurse on reciprocals of the fractional parts.
  const mpq_class lo_frac = lo - fl;
  const mpq_class hi_frac = hi - fl;
  const mpq_class inner = simplest_nonnegative(1 / hi_frac, 1 / lo_frac);
  return fl + 1 / inner;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) return simplest_between(hi, lo);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_between(-hi, -lo);
  return Rational(simplest_nonnegative(lo.raw(), hi.raw()));
}

Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "dot of unequal lengths");
  mpq_class acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].raw() * b[i].raw();
  return Rational(acc);
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "difference of unequal lengths");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "sum of unequal lengths");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector scaled(const Vector& v, const Rational& factor) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

std::vector<double> to_doubles(const Vector& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
  return out;
}

Vector from_doubles(const std::vector<double>& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational::from_double(v[i]);
  return out;
}

Vector primitive(const Vector& v) {
  mpz_class lcm_den = 1;
  for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.denominator().get_mpz_t());
  std::vector<mpz_class> ints(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].numerator() * (lcm_den / v[i].denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  Vector out(v.size());
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(mpq_class(ints[i] / g));
  return out;
}

std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace centroidcut
