#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlpq/errors.hpp"
#include "dlpq/scalar.hpp"

namespace dlpq {

// Hard cap on the number of generators (65536 coefficients).
inline constexpr int kMaxGenerators = 16;

using BladeMask = std::uint32_t;

// (p, q): generators e_1..e_p square to +1, e_{p+1}..e_n square to -1.
class Signature {
public:
  Signature(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0 || p + q < 1 || p + q > kMaxGenerators)
      throw Error(ErrorCode::InvalidSignature,
                  "signature (" + std::to_string(p) + "," + std::to_string(q) +
                      ") needs p,q >= 0 and 1 <= p+q <= " + std::to_string(kMaxGenerators));
  }

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int n() const noexcept { return p_ + q_; }
  // N = 2^n, the algebra dimension.
  std::size_t dim() const noexcept { return std::size_t{1} << n(); }

  // Bits p..n-1: generators squaring to -1.
  BladeMask negative_mask() const noexcept {
    return ((BladeMask{1} << n()) - 1) & ~((BladeMask{1} << p_) - 1);
  }

  // Square of generator e_i, i in 1..n.
  int square(int i) const {
    if (i < 1 || i > n())
      throw Error(ErrorCode::GeneratorOutOfRange,
                  "generator e" + std::to_string(i) + " outside 1.." + std::to_string(n()));
    return i <= p_ ? 1 : -1;
  }

  std::string to_string() const {
    return "(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
  }

  friend bool operator==(const Signature &, const Signature &) = default;

private:
  int p_;
  int q_;
};

// Subset of generators to negate; bit (i-1) set means e_i -> -e_i.
// Composition of conjugations is XOR of masks.
struct ConjMask {
  BladeMask bits = 0;

  constexpr ConjMask() = default;
  constexpr explicit ConjMask(BladeMask b) : bits(b) {}

  static ConjMask of(std::initializer_list<int> generators) {
    BladeMask b = 0;
    for (int g : generators)
      b |= BladeMask{1} << (g - 1);
    return ConjMask(b);
  }

  constexpr bool contains(int generator) const noexcept {
    return (bits >> (generator - 1)) & 1U;
  }

  friend constexpr ConjMask operator^(ConjMask a, ConjMask b) noexcept {
    return ConjMask(a.bits ^ b.bits);
  }
  friend constexpr bool operator==(ConjMask, ConjMask) = default;
};

namespace detail {

inline bool product_sign_negative(BladeMask a, BladeMask b, BladeMask negative) noexcept {
  return std::popcount(a & b & negative) & 1;
}

// out += a * b over the commutative algebra with `negative` generator mask.
// All three spans have the same power-of-two length; out must not alias.
template <Scalar S>
void multiply_accumulate(std::span<const S> a, std::span<const S> b, std::span<S> out,
                         BladeMask negative) {
  const std::size_t size = a.size();
  S term = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < size; ++i) {
    if (ScalarTraits<S>::is_zero(a[i]))
      continue;
    const S &ai = a[i];
    for (std::size_t j = 0; j < size; ++j) {
      if (ScalarTraits<S>::is_zero(b[j]))
        continue;
      term = ai * b[j];
      if (product_sign_negative(static_cast<BladeMask>(i), static_cast<BladeMask>(j), negative))
        out[i ^ j] -= term;
      else
        out[i ^ j] += term;
    }
  }
}

template <Scalar S>
std::vector<S> multiply(std::span<const S> a, std::span<const S> b, BladeMask negative) {
  std::vector<S> out(a.size(), ScalarTraits<S>::zero());
  multiply_accumulate<S>(a, b, out, negative);
  return out;
}

template <Scalar S> void conjugate_in_place(std::span<S> coeffs, BladeMask mask) {
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    if (std::popcount(static_cast<BladeMask>(m) & mask) & 1)
      coeffs[m] = -coeffs[m];
}

template <Scalar S> double max_norm(std::span<const S> coeffs) {
  double m = 0.0;
  for (const auto &c : coeffs)
    m = std::max(m, ScalarTraits<S>::magnitude(c));
  return m;
}

template <Scalar S> bool all_zero(std::span<const S> coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const S &c) { return ScalarTraits<S>::is_zero(c); });
}

} // namespace detail

// An element of DL(p,q): 2^n coefficients indexed by blade mask.
template <Scalar S> class Element {
public:
  using scalar_type = S;

  Element(Signature sig, std::vector<S> coeffs) : sig_(sig), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != sig_.dim())
      throw Error(ErrorCode::InvalidSignature,
                  "element of " + sig_.to_string() + " needs " + std::to_string(sig_.dim()) +
                      " coefficients, got " + std::to_string(coeffs_.size()));
  }

  static Element zero(Signature sig) {
    return Element(sig, std::vector<S>(sig.dim(), ScalarTraits<S>::zero()));
  }

  static Element one(Signature sig) { return blade(sig, 0); }

  static Element blade(Signature sig, BladeMask mask) {
    if (mask >= sig.dim())
      throw Error(ErrorCode::MaskOutOfRange, "blade mask " + std::to_string(mask) +
                                                 " out of range for " + sig.to_string());
    auto e = zero(sig);
    e.coeffs_[mask] = ScalarTraits<S>::one();
    return e;
  }

  static Element scalar(Signature sig, const S &value) {
    auto e = zero(sig);
    e.coeffs_[0] = value;
    return e;
  }

  const Signature &signature() const noexcept { return sig_; }
  std::span<const S> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const S &operator[](BladeMask mask) const { return coeffs_.at(mask); }

  bool is_zero() const { return detail::all_zero<S>(coeffs_); }
  double max_norm() const { return detail::max_norm<S>(coeffs_); }

  Element operator-() const {
    auto out = *this;
    for (auto &c : out.coeffs_)
      c = -c;
    return out;
  }

  friend Element operator+(const Element &a, const Element &b) {
    require_same(a, b);
    auto out = a;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
      out.coeffs_[i] += b.coeffs_[i];
    return out;
  }

  friend Element operator-(const Element &a, const Element &b) {
    require_same(a, b);
    auto out = a;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
      out.coeffs_[i] -= b.coeffs_[i];
    return out;
  }

  friend Element operator*(const Element &a, const Element &b) {
    require_same(a, b);
    return Element(a.sig_, detail::multiply<S>(a.coeffs_, b.coeffs_, a.sig_.negative_mask()));
  }

  friend Element operator*(const Element &a, const S &s) {
    auto out = a;
    for (auto &c : out.coeffs_)
      c *= s;
    return out;
  }
  friend Element operator*(const S &s, const Element &a) { return a * s; }

  friend bool operator==(const Element &a, const Element &b) {
    return a.sig_ == b.sig_ && a.coeffs_ == b.coeffs_;
  }

private:
  static void require_same(const Element &a, const Element &b) {
    if (!(a.sig_ == b.sig_))
      throw Error(ErrorCode::SignatureMismatch,
                  "signatures " + a.sig_.to_string() + " and " + b.sig_.to_string() + " differ");
  }

  Signature sig_;
  std::vector<S> coeffs_;
};

template <Scalar S> Element<S> zero(Signature sig) { return Element<S>::zero(sig); }
template <Scalar S> Element<S> one(Signature sig) { return Element<S>::one(sig); }
template <Scalar S> Element<S> basis_blade(Signature sig, BladeMask mask) {
  return Element<S>::blade(sig, mask);
}

template <Scalar S> Element<S> add(const Element<S> &a, const Element<S> &b) { return a + b; }
template <Scalar S> Element<S> sub(const Element<S> &a, const Element<S> &b) { return a - b; }
template <Scalar S> Element<S> neg(const Element<S> &a) { return -a; }
template <Scalar S> Element<S> mul(const Element<S> &a, const Element<S> &b) { return a * b; }
template <Scalar S> Element<S> scale(const Element<S> &a, const S &s) { return a * s; }

template <Scalar S> const S &scalar_part(const Element<S> &u) { return u[0]; }

// Keeps the grade-k part <U>_k.
template <Scalar S> Element<S> grade_project(const Element<S> &u, int k) {
  const int n = u.signature().n();
  if (k < 0 || k > n)
    throw Error(ErrorCode::GradeOutOfRange,
                "grade " + std::to_string(k) + " outside 0.." + std::to_string(n));
  std::vector<S> out(u.size(), ScalarTraits<S>::zero());
  for (std::size_t m = 0; m < u.size(); ++m)
    if (std::popcount(static_cast<BladeMask>(m)) == k)
      out[m] = u.coeffs()[m];
  return Element<S>(u.signature(), std::move(out));
}

// U^(A): negates every generator in the mask.
template <Scalar S> Element<S> conjugate(const Element<S> &u, ConjMask c) {
  if (c.bits >= u.size())
    throw Error(ErrorCode::MaskOutOfRange, "conjugation mask " + std::to_string(c.bits) +
                                               " out of range for " +
                                               u.signature().to_string());
  std::vector<S> out(u.coeffs().begin(), u.coeffs().end());
  detail::conjugate_in_place<S>(out, c.bits);
  return Element<S>(u.signature(), std::move(out));
}

// U * U^(k); the result has no blade containing e_k.
template <Scalar S> Element<S> eliminate_generator(const Element<S> &u, int k) {
  u.signature().square(k); // range check
  return u * conjugate(u, ConjMask(BladeMask{1} << (k - 1)));
}

// Max-norm comparison: ||a - b|| <= rel_tol * max(||a||, ||b||); exact for
// rational backends.
template <Scalar S>
bool approx_equal(const Element<S> &a, const Element<S> &b, double rel_tol = 1e-9) {
  if (!(a.signature() == b.signature()))
    return false;
  if constexpr (ScalarTraits<S>::exact) {
    return a == b;
  } else {
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      diff = std::max(diff, std::fabs(a.coeffs()[i] - b.coeffs()[i]));
    return diff <= rel_tol * std::max(a.max_norm(), b.max_norm());
  }
}

} // namespace dlpq
