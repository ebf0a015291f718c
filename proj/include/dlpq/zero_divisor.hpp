#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlpq/algebra.hpp"
#include "dlpq/char_ops.hpp"
#include "dlpq/errors.hpp"
#include "dlpq/matrix_rep.hpp"
#include "dlpq/tolerance.hpp"

namespace dlpq {

enum class WitnessMethod { None, ConjugateElimination, MatrixKernel };

inline const char *witness_method_name(WitnessMethod m) {
  switch (m) {
  case WitnessMethod::None: return "none";
  case WitnessMethod::ConjugateElimination: return "conjugate_elimination";
  case WitnessMethod::MatrixKernel: return "matrix_kernel";
  }
  return "none";
}

template <Scalar S> struct WitnessReport {
  bool is_unit = false;
  S det{};
  std::optional<Element<S>> witness;
  // Conjugates multiplied together to form the witness; empty for units and
  // for kernel fallbacks.
  std::vector<ConjMask> witness_path;
  WitnessMethod method = WitnessMethod::None;
};

// U V == 0 up to the float residual tolerance, V != 0.
template <Scalar S>
bool is_verified_witness(const Element<S> &u, const Element<S> &v, const Tolerance &tol = {}) {
  if (v.is_zero())
    return false;
  const auto product = u * v;
  if constexpr (ScalarTraits<S>::exact) {
    return product.is_zero();
  } else {
    return product.max_norm() <= tol.witness_residual * u.max_norm() * v.max_norm();
  }
}

template <Scalar S>
bool is_zero_divisor(const Element<S> &u, const Tolerance &tol = {}) {
  return det_is_singular(det_recursive(u), u, tol);
}

namespace detail {

// Conjugates multiplied into C_k * W_k^(j) once generators 1..k are
// eliminated: every non-empty subset of {1..k}, then every subset of {1..k}
// with j added.
inline std::vector<ConjMask> elimination_path(int k, int j) {
  std::vector<ConjMask> path;
  const BladeMask low = (BladeMask{1} << k) - 1;
  const BladeMask jbit = BladeMask{1} << (j - 1);
  for (BladeMask a = 1; a <= low; ++a)
    path.emplace_back(a);
  for (BladeMask a = 0; a <= low; ++a)
    path.emplace_back(a | jbit);
  return path;
}

} // namespace detail

// Unit or zero divisor; for zero divisors, an explicit V != 0 with U V = 0.
//
// Greedy elimination: with W_0 = U and C_0 = 1, at level k scan j > k for
// W_k W_k^(j) == 0 and propose V = C_k W_k^(j). Otherwise advance with
// W_{k+1} = W_k W_k^(k+1), C_{k+1} = C_k W_k^(k+1) (so W_k = U C_k always).
// Each candidate is verified; a zero candidate falls through to the matrix
// kernel.
template <Scalar S>
WitnessReport<S> classify(const Element<S> &u, const Tolerance &tol = {}) {
  if (u.is_zero())
    throw Error(ErrorCode::ZeroInput,
                "zero element is trivially a zero divisor (conventional witness: 1)");

  WitnessReport<S> report;
  report.det = det_recursive(u);
  if (!det_is_singular(report.det, u, tol)) {
    report.is_unit = true;
    return report;
  }

  const int n = u.signature().n();
  auto w = u;
  auto cofactor = Element<S>::one(u.signature());
  for (int k = 0; k < n; ++k) {
    for (int j = k + 1; j <= n; ++j) {
      const auto wj = conjugate(w, ConjMask(BladeMask{1} << (j - 1)));
      const auto eliminated = w * wj;
      const bool vanished = ScalarTraits<S>::exact
                                ? eliminated.is_zero()
                                : eliminated.max_norm() <=
                                      tol.witness_residual * w.max_norm() * wj.max_norm();
      if (!vanished)
        continue;
      auto candidate = cofactor * wj;
      if (is_verified_witness(u, candidate, tol)) {
        report.witness = std::move(candidate);
        report.witness_path = detail::elimination_path(k, j);
        report.method = WitnessMethod::ConjugateElimination;
        return report;
      }
    }
    const auto wk = conjugate(w, ConjMask(BladeMask{1} << k));
    cofactor = cofactor * wk;
    w = w * wk;
  }

  if (auto v = kernel_witness(u, tol); v && is_verified_witness(u, *v, tol)) {
    report.witness = std::move(v);
    report.method = WitnessMethod::MatrixKernel;
  }
  return report;
}

} // namespace dlpq
