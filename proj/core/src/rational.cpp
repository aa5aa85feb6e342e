#include "qplane/rational.hpp"

#include <cctype>

#include "qplane/errors.hpp"

namespace qplane {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ModelError("malformed rational '" + std::string(whole) + "'");
  const BigInt v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ModelError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)), s);
    BigInt den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw ModelError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+'))
      int_part.remove_prefix(1);
    if ((!int_part.empty() && !all_digits(int_part)) || !all_digits(frac_part))
      throw ModelError("malformed rational '" + std::string(s) + "'");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    const BigInt whole = int_part.empty() ? BigInt(0) : BigInt{std::string(int_part)};
    const BigInt frac{std::string(frac_part)};
    Rational r(BigInt(whole * scale + frac), scale);
    return negative ? Rational(-r) : r;
  }

  return Rational(parse_integer(s, s));
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational pow(const Rational& base, int exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (base == 0) throw ModelError("negative power of zero");
    return pow(Rational(1) / base, -exponent);
  }
  const auto e = static_cast<unsigned>(exponent);
  return Rational(boost::multiprecision::pow(numerator(base), e),
                  boost::multiprecision::pow(denominator(base), e));
}

bool exact_sqrt(const Rational& r, Rational& root) {
  if (r < 0) return false;
  const BigInt n = numerator(r);
  const BigInt d = denominator(r);
  const BigInt sn = boost::multiprecision::sqrt(n);
  const BigInt sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  root = Rational(sn, sd);
  return true;
}

}  // namespace qplane
