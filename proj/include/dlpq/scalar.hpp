#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <system_error>

#include "dlpq/errors.hpp"

namespace dlpq {

// Backend hooks for a coefficient field. Specialised for double and for
// GMP rationals; anything else has to provide the same static members.
template <typename S> struct ScalarTraits;

template <> struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char *name = "float64";

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double to_double(double v) { return v; }
  static double magnitude(double v) { return std::fabs(v); }
  static bool is_zero(double v) { return v == 0.0; }

  // Shortest round-trip decimal, never in exponent form so the output stays
  // inside the element-literal grammar.
  static std::string to_string(double v) {
    if (v == 0.0)
      return "0";
    char buf[512];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
    if (res.ec != std::errc{})
      return std::to_string(v);
    return std::string(buf, res.ptr);
  }

  // Accepts [sign] digits [. digits] [/ digits].
  static double parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos)
      return parse(text.substr(0, slash)) / parse_plain(text.substr(slash + 1));
    return parse_plain(text);
  }

private:
  static double parse_plain(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '+')
      body.remove_prefix(1);
    for (char c : body)
      if (c == 'e' || c == 'E' || c == 'x' || c == 'X' || c == 'n' || c == 'N' ||
          c == 'i' || c == 'I')
        throw Error(ErrorCode::InvalidScalar, "bad scalar '" + std::string(text) + "'");
    double v = 0.0;
    auto res = std::from_chars(body.data(), body.data() + body.size(), v);
    if (res.ec != std::errc{} || res.ptr != body.data() + body.size() || body.empty())
      throw Error(ErrorCode::InvalidScalar, "bad scalar '" + std::string(text) + "'");
    return v;
  }
};

using Rational = mpq_class;

template <> struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char *name = "rational";

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static double to_double(const Rational &v) { return v.get_d(); }
  static double magnitude(const Rational &v) { return std::fabs(v.get_d()); }
  static bool is_zero(const Rational &v) { return sgn(v) == 0; }

  // Lowest terms, "a" or "a/b".
  static std::string to_string(const Rational &v) { return v.get_str(); }

  // Accepts [sign] digits [. digits] [/ digits]; decimals are read exactly.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      Rational den = parse_decimal(text.substr(slash + 1), false);
      if (sgn(den) == 0)
        throw Error(ErrorCode::InvalidScalar, "zero denominator in '" + std::string(text) + "'");
      return Rational(parse_decimal(text.substr(0, slash), true) / den);
    }
    return parse_decimal(text, true);
  }

private:
  static Rational parse_decimal(std::string_view text, bool allow_sign) {
    auto bad = [&] {
      return Error(ErrorCode::InvalidScalar, "bad scalar '" + std::string(text) + "'");
    };
    bool negative = false;
    std::string_view body = text;
    if (allow_sign && !body.empty() && (body.front() == '-' || body.front() == '+')) {
      negative = body.front() == '-';
      body.remove_prefix(1);
    }
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_point = false;
    for (char c : body) {
      if (c == '.' && !seen_point) {
        seen_point = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_point)
          ++frac_digits;
      } else {
        throw bad();
      }
    }
    if (digits.empty())
      throw bad();
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    Rational r(num, den);
    r.canonicalize();
    if (negative)
      r = -r;
    return r;
  }
};

template <typename S>
concept Scalar = std::copyable<S> && requires(const S &a, const S &b) {
  { ScalarTraits<S>::exact } -> std::convertible_to<bool>;
  { ScalarTraits<S>::zero() } -> std::convertible_to<S>;
  { ScalarTraits<S>::one() } -> std::convertible_to<S>;
  { ScalarTraits<S>::magnitude(a) } -> std::convertible_to<double>;
  { ScalarTraits<S>::to_string(a) } -> std::convertible_to<std::string>;
  S(a + b);
  S(a - b);
  S(a * b);
  S(a / b);
  S(-a);
  { a == b } -> std::convertible_to<bool>;
};

// Relative closeness used by float comparisons; exact backends compare equal.
template <Scalar S> bool scalar_close(const S &a, const S &b, double rel_tol) {
  if constexpr (ScalarTraits<S>::exact) {
    return a == b;
  } else {
    const double da = ScalarTraits<S>::to_double(a);
    const double db = ScalarTraits<S>::to_double(b);
    const double scale = std::max(std::fabs(da), std::fabs(db));
    return std::fabs(da - db) <= rel_tol * scale;
  }
}

} // namespace dlpq
