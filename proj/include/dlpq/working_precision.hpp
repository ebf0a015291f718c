#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "dlpq/algebra.hpp"
#include "dlpq/scalar.hpp"

namespace dlpq {

// Extended-precision binary float used as the working type behind the
// float64 backend's conjugate-product algorithms. Long conjugate products and
// the Faddeev-LeVerrier recursion amplify rounding error far past what
// binary64 can absorb, so they run here and round once at the end.
template <unsigned Digits>
using ExtFloat =
    boost::multiprecision::number<boost::multiprecision::gmp_float<Digits>,
                                  boost::multiprecision::et_off>;

template <unsigned Digits> struct ScalarTraits<ExtFloat<Digits>> {
  using type = ExtFloat<Digits>;
  static constexpr bool exact = false;
  static constexpr const char *name = "extended";

  static type zero() { return type(0); }
  static type one() { return type(1); }
  static type from_int(long v) { return type(v); }
  static double to_double(const type &v) { return v.template convert_to<double>(); }
  static double magnitude(const type &v) { return std::fabs(to_double(v)); }
  static bool is_zero(const type &v) { return v.is_zero(); }
  static std::string to_string(const type &v) { return v.str(); }
  static type parse(std::string_view text) { return type(std::string(text)); }
};

// Decimal digits kept by the working type for a computation that needs at
// least `digits`.
template <typename F> decltype(auto) with_working_float(unsigned digits, F &&fn) {
  if (digits <= 34)
    return fn.template operator()<ExtFloat<34>>();
  if (digits <= 60)
    return fn.template operator()<ExtFloat<60>>();
  if (digits <= 100)
    return fn.template operator()<ExtFloat<100>>();
  if (digits <= 260)
    return fn.template operator()<ExtFloat<260>>();
  if (digits <= 960)
    return fn.template operator()<ExtFloat<960>>();
  return fn.template operator()<ExtFloat<3000>>();
}

template <Scalar To, Scalar From> Element<To> convert_element(const Element<From> &u) {
  std::vector<To> coeffs;
  coeffs.reserve(u.size());
  for (const auto &c : u.coeffs()) {
    if constexpr (std::is_same_v<To, double>)
      coeffs.push_back(ScalarTraits<From>::to_double(c));
    else
      coeffs.push_back(To(c));
  }
  return Element<To>(u.signature(), std::move(coeffs));
}

} // namespace dlpq
