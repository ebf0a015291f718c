#pragma once

// With the float64 backend the conjugate-product algorithms below run in an
// extended working precision (see working_precision.hpp) and round once on
// the way out. Exact backends run directly.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dlpq/algebra.hpp"
#include "dlpq/charpoly.hpp"
#include "dlpq/errors.hpp"
#include "dlpq/matrix_rep.hpp"
#include "dlpq/tolerance.hpp"
#include "dlpq/working_precision.hpp"

namespace dlpq {

// Output of the in-algebra Faddeev-LeVerrier recursion
//   U_(1) = U, c_k = (N/k) <U_(k)>_0, U_(k+1) = U (U_(k) - c_k).
// `recursion_coeffs[k-1]` holds c_k as the recursion defines it; these are
// the coefficients of det(lambda - U) = lambda^N - sum_k c_k lambda^(N-k),
// so `charpoly` (psi_U, N even) has psi_{N-k} = -c_k.
template <Scalar S> struct FaddeevLeVerrier {
  CharPoly<S> charpoly;
  std::vector<S> recursion_coeffs;
  Element<S> adjoint;
  S det;
};

namespace detail {

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -745.0; }

// Conjugate products lose a few digits per generator; Faddeev-LeVerrier
// loses about one per power of U.
inline unsigned product_digits(int n) { return 34 + 3 * static_cast<unsigned>(n); }
inline unsigned fl_digits(std::size_t big_n) { return 30 + static_cast<unsigned>(big_n); }

template <Scalar S, typename F>
decltype(auto) run_working(const Element<S> &u, unsigned digits, F &&fn) {
  if constexpr (ScalarTraits<S>::exact)
    return fn(u);
  else
    return with_working_float(digits, [&]<typename W>() { return fn(convert_element<W>(u)); });
}

template <Scalar S, typename W> S round_scalar(const W &w) {
  if constexpr (std::is_same_v<S, W>)
    return w;
  else
    return S(ScalarTraits<W>::to_double(w));
}

template <Scalar S, typename W> CharPoly<S> round_charpoly(const CharPoly<W> &p) {
  std::vector<S> out;
  out.reserve(p.coeffs().size());
  for (const auto &c : p.coeffs())
    out.push_back(round_scalar<S>(c));
  return CharPoly<S>(std::move(out));
}

// Non-scalar residue check for a product that must be grade 0. `log_scale`
// is the float reference magnitude; the residue is also allowed relative to
// the product's own size.
template <Scalar S>
void require_scalar(std::span<const S> coeffs, double log_scale, double rel_tol,
                    const char *what) {
  if constexpr (ScalarTraits<S>::exact) {
    for (std::size_t m = 1; m < coeffs.size(); ++m)
      if (!ScalarTraits<S>::is_zero(coeffs[m]))
        throw Error(ErrorCode::GradeLeak,
                    std::string(what) + " has non-scalar coefficient at blade " +
                        std::to_string(m));
  } else {
    double residue = 0.0;
    for (std::size_t m = 1; m < coeffs.size(); ++m)
      residue = std::max(residue, ScalarTraits<S>::magnitude(coeffs[m]));
    if (residue == 0.0)
      return;
    const double own = detail::max_norm<S>(coeffs);
    const double allowed_log = std::log(rel_tol) + std::max(log_scale, std::log(own));
    if (std::log(residue) > allowed_log)
      throw Error(ErrorCode::GradeLeak, std::string(what) + " has non-scalar residue " +
                                            std::to_string(residue));
  }
}

// U U^(k) for U = x + y e_k on the subalgebra over e_1..e_k, returned in the
// subalgebra over e_1..e_(k-1). Evaluated as (x + y)(x - y) when e_k^2 = +1
// and x^2 + y^2 when e_k^2 = -1: the same element as the direct product at a
// quarter (resp. half) of the cost, without the cancellation the direct
// product suffers near split-signature zero divisors.
template <Scalar S>
std::vector<S> eliminate_top(std::span<const S> coeffs, int k, BladeMask negative) {
  const std::size_t half = std::size_t{1} << (k - 1);
  const BladeMask sub_negative = negative & static_cast<BladeMask>(half - 1);
  const auto x = coeffs.first(half);
  const auto y = coeffs.subspan(half, half);
  if ((negative >> (k - 1)) & 1U) {
    std::vector<S> out(half, ScalarTraits<S>::zero());
    multiply_accumulate<S>(x, x, out, sub_negative);
    multiply_accumulate<S>(y, y, out, sub_negative);
    return out;
  }
  std::vector<S> sum(half), diff(half);
  for (std::size_t i = 0; i < half; ++i) {
    sum[i] = x[i] + y[i];
    diff[i] = x[i] - y[i];
  }
  return multiply<S>(sum, diff, sub_negative);
}

template <Scalar S> S det_full_product_impl(const Element<S> &u, double rel_tol) {
  // Float reference magnitude: the product of factor norms, raised to any
  // intermediate partial product that outgrew it.
  const double log_factor = safe_log(u.max_norm());
  double log_scale = log_factor;
  auto acc = u;
  for (BladeMask mask = 1; mask < u.size(); ++mask) {
    acc = acc * conjugate(u, ConjMask(mask));
    if constexpr (!ScalarTraits<S>::exact)
      log_scale = std::max(log_scale + log_factor, safe_log(acc.max_norm()));
  }
  require_scalar<S>(acc.coeffs(), log_scale, rel_tol, "conjugate product");
  return acc[0];
}

template <Scalar S> S det_recursive_impl(const Element<S> &u) {
  std::vector<S> current(u.coeffs().begin(), u.coeffs().end());
  const BladeMask negative = u.signature().negative_mask();
  for (int k = u.signature().n(); k >= 1; --k)
    current = eliminate_top<S>(current, k, negative);
  return current[0];
}

template <Scalar S> Element<S> adjoint_impl(const Element<S> &u) {
  auto acc = Element<S>::one(u.signature());
  for (BladeMask mask = 1; mask < u.size(); ++mask)
    acc = acc * conjugate(u, ConjMask(mask));
  return acc;
}

// Adj and Det from one elimination pass, Adj_n(U) = U^(n) Adj_{n-1}(U U^(n)).
template <Scalar S> std::pair<Element<S>, S> adjoint_det_by_elimination(const Element<S> &u) {
  const int n = u.signature().n();
  const BladeMask negative = u.signature().negative_mask();
  // levels[k] lives in the subalgebra on e_1..e_k.
  std::vector<std::vector<S>> levels(n + 1);
  levels[n].assign(u.coeffs().begin(), u.coeffs().end());
  for (int k = n; k >= 1; --k)
    levels[k - 1] = eliminate_top<S>(levels[k], k, negative);
  std::vector<S> adj{ScalarTraits<S>::one()};
  for (int k = 1; k <= n; ++k) {
    const BladeMask top = BladeMask{1} << (k - 1);
    std::vector<S> conj = levels[k];
    conjugate_in_place<S>(conj, top);
    adj.resize(std::size_t{top} << 1, ScalarTraits<S>::zero());
    adj = multiply<S>(conj, adj, negative & ((top << 1) - 1));
  }
  return {Element<S>(u.signature(), std::move(adj)), levels[0][0]};
}

template <Scalar S> CharPoly<S> charpoly_symmetric_impl(const Element<S> &u, double rel_tol) {
  const Signature sig = u.signature();
  const std::size_t big_n = u.size();
  std::vector<Element<S>> poly{Element<S>::one(sig)};
  for (BladeMask mask = 0; mask < big_n; ++mask) {
    const auto factor = conjugate(u, ConjMask(mask));
    std::vector<Element<S>> next;
    next.reserve(poly.size() + 1);
    for (std::size_t k = 0; k <= poly.size(); ++k) {
      auto term = k < poly.size() ? poly[k] * factor : Element<S>::zero(sig);
      if (k > 0)
        term = term - poly[k - 1];
      next.push_back(std::move(term));
    }
    poly = std::move(next);
  }

  // Reference magnitude for coefficient k: C(N,k) * ||U||^(N-k).
  const double log_norm = safe_log(u.max_norm());
  std::vector<S> coeffs;
  coeffs.reserve(big_n + 1);
  for (std::size_t k = 0; k <= big_n; ++k) {
    const double log_binom = std::lgamma(double(big_n) + 1) - std::lgamma(double(k) + 1) -
                             std::lgamma(double(big_n - k) + 1);
    require_scalar<S>(poly[k].coeffs(), log_binom + double(big_n - k) * log_norm, rel_tol,
                      "characteristic polynomial coefficient");
    coeffs.push_back(poly[k][0]);
  }
  return CharPoly<S>(std::move(coeffs));
}

template <Scalar S> FaddeevLeVerrier<S> charpoly_fl_impl(const Element<S> &u) {
  const Signature sig = u.signature();
  const std::size_t big_n = u.size();
  const S big_n_s = ScalarTraits<S>::from_int(static_cast<long>(big_n));

  std::vector<S> cs;
  cs.reserve(big_n);
  auto uk = u;
  auto previous = u; // U_(N-1) once the loop ends
  for (std::size_t k = 1; k <= big_n; ++k) {
    const S ck = S(big_n_s * scalar_part(uk) / ScalarTraits<S>::from_int(static_cast<long>(k)));
    cs.push_back(ck);
    if (k == big_n)
      break;
    previous = uk;
    uk = u * (uk - Element<S>::scalar(sig, ck));
  }

  std::vector<S> psi(big_n + 1, ScalarTraits<S>::zero());
  psi[big_n] = ScalarTraits<S>::one();
  for (std::size_t k = 1; k <= big_n; ++k)
    psi[big_n - k] = S(-cs[k - 1]);

  // N >= 2 here, so U_(N-1) was recorded.
  auto adj = Element<S>::scalar(sig, cs[big_n - 2]) - previous;
  S det = S(-cs[big_n - 1]);
  return FaddeevLeVerrier<S>{CharPoly<S>(std::move(psi)), std::move(cs), std::move(adj),
                             std::move(det)};
}

} // namespace detail

// Tr(U) = N <U>_0.
template <Scalar S> S trace(const Element<S> &u) {
  return S(ScalarTraits<S>::from_int(static_cast<long>(u.size())) * scalar_part(u));
}

// Sum of all 2^n conjugates; grade 0 and equal to Tr(U) * 1.
template <Scalar S> Element<S> trace_by_conjugates(const Element<S> &u) {
  auto acc = Element<S>::zero(u.signature());
  for (BladeMask mask = 0; mask < u.size(); ++mask)
    acc = acc + conjugate(u, ConjMask(mask));
  return acc;
}

// Det(U) as the product of all conjugates U^(A), masks in increasing order.
template <Scalar S> S det_full_product(const Element<S> &u, const Tolerance &tol = {}) {
  return detail::run_working(u, detail::product_digits(u.signature().n()), [&](const auto &w) {
    return detail::round_scalar<S>(detail::det_full_product_impl(w, tol.grade_leak));
  });
}

// Det_n(U) = Det_{n-1}(U U^(n)): eliminate e_n, e_{n-1}, ..., e_1 in turn,
// shrinking to the subalgebra without the eliminated generator each time.
template <Scalar S> S det_recursive(const Element<S> &u) {
  return detail::run_working(u, detail::product_digits(u.signature().n()), [&](const auto &w) {
    return detail::round_scalar<S>(detail::det_recursive_impl(w));
  });
}

template <Scalar S> S determinant(const Element<S> &u) { return det_recursive(u); }

// Adj(U): product of the 2^n - 1 conjugates with non-empty mask.
template <Scalar S> Element<S> adjoint(const Element<S> &u) {
  return detail::run_working(u, detail::product_digits(u.signature().n()), [&](const auto &w) {
    return convert_element<S>(detail::adjoint_impl(w));
  });
}

// Same polynomial as adjoint(), via Adj_n(U) = U^(n) Adj_{n-1}(U U^(n)).
// Costs O(4^n) instead of O(8^n).
template <Scalar S> Element<S> adjoint_by_elimination(const Element<S> &u) {
  return detail::run_working(u, detail::product_digits(u.signature().n()), [&](const auto &w) {
    return convert_element<S>(detail::adjoint_det_by_elimination(w).first);
  });
}

// psi_U(lambda) = prod_A (U^(A) - lambda), expanded one factor at a time as
// a polynomial with Element coefficients; every coefficient must end up in
// grade 0.
template <Scalar S>
CharPoly<S> charpoly_symmetric(const Element<S> &u, const Tolerance &tol = {}) {
  return detail::run_working(u, detail::product_digits(u.signature().n()), [&](const auto &w) {
    return detail::round_charpoly<S>(detail::charpoly_symmetric_impl(w, tol.grade_leak));
  });
}

template <Scalar S> FaddeevLeVerrier<S> charpoly_fl(const Element<S> &u) {
  return detail::run_working(u, detail::fl_digits(u.size()), [&](const auto &w) {
    auto fl = detail::charpoly_fl_impl(w);
    std::vector<S> cs;
    cs.reserve(fl.recursion_coeffs.size());
    for (const auto &c : fl.recursion_coeffs)
      cs.push_back(detail::round_scalar<S>(c));
    return FaddeevLeVerrier<S>{detail::round_charpoly<S>(fl.charpoly), std::move(cs),
                               convert_element<S>(fl.adjoint), detail::round_scalar<S>(fl.det)};
  });
}

// U^{-1} = Adj(U) / Det(U).
template <Scalar S> Element<S> inverse(const Element<S> &u, const Tolerance &tol = {}) {
  auto [adj, det] =
      detail::run_working(u, detail::product_digits(u.signature().n()), [&](const auto &w) {
        using W = typename std::decay_t<decltype(w)>::scalar_type;
        auto [adj_w, det_w] = detail::adjoint_det_by_elimination(w);
        const S det_s = detail::round_scalar<S>(det_w);
        if (ScalarTraits<W>::is_zero(det_w))
          return std::pair{Element<S>::zero(u.signature()), det_s};
        return std::pair{convert_element<S>(adj_w * W(ScalarTraits<W>::one() / det_w)), det_s};
      });
  if (u.is_zero() || det_is_singular(det, u, tol))
    throw NotInvertibleError(ScalarTraits<S>::to_string(det));
  return adj;
}

// (U^(A))^{-1} == (U^{-1})^(A).
template <Scalar S>
bool inverse_of_conjugate_check(const Element<S> &u, ConjMask c, const Tolerance &tol = {},
                                double rel_tol = 1e-9) {
  const auto lhs = inverse(conjugate(u, c), tol);
  const auto rhs = conjugate(inverse(u, tol), c);
  return approx_equal(lhs, rhs, rel_tol);
}

} // namespace dlpq
