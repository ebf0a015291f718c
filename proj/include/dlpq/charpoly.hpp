#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dlpq/algebra.hpp"

namespace dlpq {

// psi_U(lambda) = sum_k c_k lambda^k, coefficients stored c_0..c_N.
template <Scalar S> class CharPoly {
public:
  CharPoly() = default;
  explicit CharPoly(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<S> &coeffs() const noexcept { return coeffs_; }
  const S &operator[](std::size_t k) const { return coeffs_.at(k); }

  // Horner evaluation with the argument living in the algebra; constants
  // are read as multiples of 1.
  Element<S> evaluate(const Element<S> &x) const {
    auto acc = Element<S>::zero(x.signature());
    for (std::size_t k = coeffs_.size(); k-- > 0;)
      acc = acc * x + Element<S>::scalar(x.signature(), coeffs_[k]);
    return acc;
  }

  S evaluate(const S &x) const {
    S acc = ScalarTraits<S>::zero();
    for (std::size_t k = coeffs_.size(); k-- > 0;)
      acc = acc * x + coeffs_[k];
    return acc;
  }

  // Descending powers, e.g. "λ^2 - 2*λ + 5".
  std::string to_string(const std::string &var = "λ") const {
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const S &c = coeffs_[k];
      if (ScalarTraits<S>::is_zero(c))
        continue;
      std::string text = ScalarTraits<S>::to_string(c);
      bool negative = !text.empty() && text.front() == '-';
      if (negative)
        text.erase(0, 1);
      if (out.empty())
        out = negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      std::string power = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (k == 0)
        out += text;
      else if (text == "1")
        out += power;
      else
        out += text + "*" + power;
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const CharPoly &, const CharPoly &) = default;

private:
  std::vector<S> coeffs_;
};

template <Scalar S>
bool approx_equal(const CharPoly<S> &a, const CharPoly<S> &b, double rel_tol = 1e-9) {
  if (a.coeffs().size() != b.coeffs().size())
    return false;
  if constexpr (ScalarTraits<S>::exact) {
    return a == b;
  } else {
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
      scale = std::max({scale, std::fabs(a[k]), std::fabs(b[k])});
      diff = std::max(diff, std::fabs(a[k] - b[k]));
    }
    return diff <= rel_tol * scale;
  }
}

} // namespace dlpq
