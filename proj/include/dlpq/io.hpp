#pragma once

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dlpq/algebra.hpp"
#include "dlpq/charpoly.hpp"
#include "dlpq/errors.hpp"
#include "dlpq/matrix_rep.hpp"
#include "dlpq/zero_divisor.hpp"

namespace dlpq {

using json = nlohmann::json;

// Rationals serialise as "a/b" strings, floats as JSON numbers.
template <Scalar S> json scalar_to_json(const S &s) {
  if constexpr (ScalarTraits<S>::exact)
    return ScalarTraits<S>::to_string(s);
  else
    return ScalarTraits<S>::to_double(s);
}

template <Scalar S> S scalar_from_json(const json &j) {
  if (j.is_string())
    return ScalarTraits<S>::parse(j.get<std::string>());
  if (j.is_number_integer())
    return ScalarTraits<S>::from_int(j.get<long>());
  if (j.is_number_float()) {
    if constexpr (ScalarTraits<S>::exact) {
      const double d = j.get<double>();
      if (!std::isfinite(d))
        throw Error(ErrorCode::InvalidScalar, "non-finite coefficient");
      return S(d);
    } else {
      return j.get<double>();
    }
  }
  throw Error(ErrorCode::InvalidScalar, "coefficient must be a number or string, got " + j.dump());
}

template <Scalar S> json element_to_json(const Element<S> &u) {
  json arr = json::array();
  for (const auto &c : u.coeffs())
    arr.push_back(scalar_to_json(c));
  return arr;
}

// Coefficient array ordered by blade mask 0..2^n-1.
template <Scalar S> Element<S> element_from_json(const json &j, Signature sig) {
  if (!j.is_array())
    throw Error(ErrorCode::SyntaxError, "coefficient input must be a JSON array");
  std::vector<S> coeffs;
  coeffs.reserve(j.size());
  for (const auto &entry : j)
    coeffs.push_back(scalar_from_json<S>(entry));
  return Element<S>(sig, std::move(coeffs));
}

template <Scalar S> json charpoly_to_json(const CharPoly<S> &p) {
  json arr = json::array();
  for (const auto &c : p.coeffs())
    arr.push_back(scalar_to_json(c));
  return arr;
}

template <Scalar S> json matrix_to_json(const RepMatrix<S> &m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c)
      row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar S> std::string matrix_to_csv(const RepMatrix<S> &m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if (c)
        out << ',';
      out << ScalarTraits<S>::to_string(m(r, c));
    }
    out << '\n';
  }
  return out.str();
}

template <Scalar S> json witness_report_to_json(const WitnessReport<S> &r) {
  json path = json::array();
  for (auto mask : r.witness_path)
    path.push_back(mask.bits);
  return json{{"is_unit", r.is_unit},
              {"det", scalar_to_json(r.det)},
              {"witness", r.witness ? element_to_json(*r.witness) : json(nullptr)},
              {"witness_path", std::move(path)},
              {"method", witness_method_name(r.method)}};
}

} // namespace dlpq
