#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dlpq/algebra.hpp"
#include "dlpq/charpoly.hpp"
#include "dlpq/tolerance.hpp"
#include "dlpq/working_precision.hpp"

namespace dlpq {

// Dense square matrix, row-major.
template <typename T> class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t dim, const T &fill) : dim_(dim), entries_(dim * dim, fill) {}

  static DenseMatrix identity(std::size_t dim, const T &zero, const T &one) {
    DenseMatrix m(dim, zero);
    for (std::size_t i = 0; i < dim; ++i)
      m(i, i) = one;
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  T &operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  const std::vector<T> &entries() const noexcept { return entries_; }

  friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

private:
  std::size_t dim_ = 0;
  std::vector<T> entries_;
};

// Kronecker product laid out as blocks b_ij * A (the second factor selects
// the block, the first factor fills it).
template <typename T>
DenseMatrix<T> kronecker(const DenseMatrix<T> &a, const DenseMatrix<T> &b) {
  const std::size_t da = a.dim(), db = b.dim();
  DenseMatrix<T> out(da * db, T{});
  for (std::size_t bi = 0; bi < db; ++bi)
    for (std::size_t bj = 0; bj < db; ++bj)
      for (std::size_t ai = 0; ai < da; ++ai)
        for (std::size_t aj = 0; aj < da; ++aj)
          out(bi * da + ai, bj * da + aj) = b(bi, bj) * a(ai, aj);
  return out;
}

// Zero-skipping product; the representation matrices of blades are signed
// permutations so this stays O(dim^2) for them.
template <typename T>
DenseMatrix<T> matmul(const DenseMatrix<T> &a, const DenseMatrix<T> &b, const T &zero) {
  const std::size_t d = a.dim();
  DenseMatrix<T> out(d, zero);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a(i, k) == zero)
        continue;
      for (std::size_t j = 0; j < d; ++j)
        out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <Scalar S> using RepMatrix = DenseMatrix<S>;

using SignMatrix = DenseMatrix<int>;

// beta_n(e_j): I x ... x J_(+/-) x ... x I with J at Kronecker slot j (slot
// 1 leftmost). J_+ = [[0,1],[1,0]], J_- = [[0,-1],[1,0]].
inline SignMatrix generator_image(const Signature &sig, int j) {
  const int square = sig.square(j);
  SignMatrix ident = SignMatrix::identity(2, 0, 1);
  SignMatrix gen(2, 0);
  gen(0, 1) = square > 0 ? 1 : -1;
  gen(1, 0) = 1;
  SignMatrix acc = j == 1 ? gen : ident;
  for (int slot = 2; slot <= sig.n(); ++slot)
    acc = kronecker(acc, slot == j ? gen : ident);
  return acc;
}

// beta_n(e_A) for every blade mask, built as products of generator images.
inline std::vector<SignMatrix> blade_images(const Signature &sig) {
  const std::size_t dim = sig.dim();
  std::vector<SignMatrix> gens;
  for (int j = 1; j <= sig.n(); ++j)
    gens.push_back(generator_image(sig, j));
  std::vector<SignMatrix> images(dim);
  images[0] = SignMatrix::identity(dim, 0, 1);
  for (std::size_t m = 1; m < dim; ++m) {
    const int top = std::bit_width(static_cast<BladeMask>(m)) - 1;
    images[m] = matmul(images[m & ~(std::size_t{1} << top)], gens[top], 0);
  }
  return images;
}

template <Scalar S> RepMatrix<S> represent(const Element<S> &u) {
  const auto images = blade_images(u.signature());
  const std::size_t dim = u.size();
  RepMatrix<S> out(dim, ScalarTraits<S>::zero());
  for (std::size_t m = 0; m < dim; ++m) {
    const S &coeff = u.coeffs()[m];
    if (ScalarTraits<S>::is_zero(coeff))
      continue;
    const auto &img = images[m];
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        if (img(r, c) == 1)
          out(r, c) += coeff;
        else if (img(r, c) == -1)
          out(r, c) -= coeff;
      }
  }
  return out;
}

template <Scalar S> RepMatrix<S> matmul(const RepMatrix<S> &a, const RepMatrix<S> &b) {
  const std::size_t d = a.dim();
  RepMatrix<S> out(d, ScalarTraits<S>::zero());
  S term = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (ScalarTraits<S>::is_zero(a(i, k)))
        continue;
      for (std::size_t j = 0; j < d; ++j) {
        term = a(i, k) * b(k, j);
        out(i, j) += term;
      }
    }
  return out;
}

// Determinant of a dense matrix: Bareiss fraction-free elimination for exact
// scalars, partial-pivot LU otherwise.
template <Scalar S> S matrix_determinant(RepMatrix<S> m) {
  const std::size_t d = m.dim();
  if constexpr (ScalarTraits<S>::exact) {
    S prev = ScalarTraits<S>::one();
    bool negate = false;
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t pivot = k;
      while (pivot < d && ScalarTraits<S>::is_zero(m(pivot, k)))
        ++pivot;
      if (pivot == d)
        return ScalarTraits<S>::zero();
      if (pivot != k) {
        for (std::size_t c = 0; c < d; ++c)
          std::swap(m(k, c), m(pivot, c));
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < d; ++i) {
        for (std::size_t j = k + 1; j < d; ++j)
          m(i, j) = S((m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev);
        m(i, k) = ScalarTraits<S>::zero();
      }
      prev = m(k, k);
    }
    S det = m(d - 1, d - 1);
    return negate ? S(-det) : det;
  } else {
    S det = ScalarTraits<S>::one();
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t pivot = k;
      for (std::size_t i = k + 1; i < d; ++i)
        if (std::fabs(m(i, k)) > std::fabs(m(pivot, k)))
          pivot = i;
      if (m(pivot, k) == 0.0)
        return 0.0;
      if (pivot != k) {
        for (std::size_t c = 0; c < d; ++c)
          std::swap(m(k, c), m(pivot, c));
        det = -det;
      }
      det *= m(k, k);
      for (std::size_t i = k + 1; i < d; ++i) {
        const S factor = m(i, k) / m(k, k);
        for (std::size_t j = k + 1; j < d; ++j)
          m(i, j) -= factor * m(k, j);
      }
    }
    return det;
  }
}

// Det(U) := det(beta(U)).
template <Scalar S> S oracle_det(const Element<S> &u) { return matrix_determinant(represent(u)); }

template <Scalar S> S oracle_trace(const Element<S> &u) {
  const auto m = represent(u);
  S tr = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < m.dim(); ++i)
    tr += m(i, i);
  return tr;
}

// det(A - lambda I) by the matrix Faddeev-LeVerrier recursion:
//   M_1 = A, a_k = tr(M_k)/k, M_{k+1} = A (M_k - a_k I),
// which gives det(lambda I - A) = lambda^N - sum_k a_k lambda^(N-k).
template <Scalar S> CharPoly<S> matrix_charpoly(const RepMatrix<S> &a) {
  const std::size_t d = a.dim();
  std::vector<S> monic(d + 1, ScalarTraits<S>::zero()); // det(lambda I - A)
  monic[d] = ScalarTraits<S>::one();
  RepMatrix<S> m = a;
  for (std::size_t k = 1; k <= d; ++k) {
    S tr = ScalarTraits<S>::zero();
    for (std::size_t i = 0; i < d; ++i)
      tr += m(i, i);
    const S ak = S(tr / ScalarTraits<S>::from_int(static_cast<long>(k)));
    monic[d - k] = S(-ak);
    if (k == d)
      break;
    for (std::size_t i = 0; i < d; ++i)
      m(i, i) -= ak;
    m = matmul(a, m);
  }
  if (d % 2 == 1)
    for (auto &c : monic)
      c = S(-c);
  return CharPoly<S>(std::move(monic));
}

// The float backend runs the recursion in a wider working type: the matrix
// powers lose roughly one digit per step.
template <Scalar S> CharPoly<S> oracle_charpoly(const Element<S> &u) {
  if constexpr (ScalarTraits<S>::exact) {
    return matrix_charpoly(represent(u));
  } else {
    return with_working_float(30 + static_cast<unsigned>(u.size()), [&]<typename W>() {
      const auto wide = matrix_charpoly(represent(convert_element<W>(u)));
      std::vector<S> out;
      for (const auto &c : wide.coeffs())
        out.push_back(S(ScalarTraits<W>::to_double(c)));
      return CharPoly<S>(std::move(out));
    });
  }
}

// |det| <= rel * (max-norm U)^N, compared in log space; exact backends test
// for zero.
template <Scalar S>
bool det_is_singular(const S &det, const Element<S> &u, const Tolerance &tol = {}) {
  if constexpr (ScalarTraits<S>::exact) {
    return ScalarTraits<S>::is_zero(det);
  } else {
    const double mag = std::fabs(ScalarTraits<S>::to_double(det));
    if (mag == 0.0)
      return true;
    const double norm = u.max_norm();
    if (norm == 0.0)
      return true;
    return std::log(mag) <= std::log(tol.singular) + static_cast<double>(u.size()) * std::log(norm);
  }
}

// Non-trivial kernel vector of beta(U), read back as an Element V with
// U V = 0. Column m of beta(U) holds U e_m, so beta(U) x = 0 iff U (sum x_m e_m) = 0.
template <Scalar S>
std::optional<Element<S>> kernel_witness(const Element<S> &u, const Tolerance &tol = {}) {
  auto m = represent(u);
  if (!det_is_singular(matrix_determinant(m), u, tol))
    return std::nullopt;

  const std::size_t d = m.dim();
  const double pivot_floor = ScalarTraits<S>::exact ? 0.0 : tol.singular * u.max_norm();
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(d, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < d && row < d; ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < d; ++i)
      if (ScalarTraits<S>::magnitude(m(i, col)) > ScalarTraits<S>::magnitude(m(best, col)))
        best = i;
    const double mag = ScalarTraits<S>::magnitude(m(best, col));
    if (ScalarTraits<S>::is_zero(m(best, col)) || mag <= pivot_floor)
      continue;
    if (best != row)
      for (std::size_t c = 0; c < d; ++c)
        std::swap(m(row, c), m(best, c));
    const S inv = S(ScalarTraits<S>::one() / m(row, col));
    for (std::size_t c = 0; c < d; ++c)
      m(row, c) *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == row || ScalarTraits<S>::is_zero(m(i, col)))
        continue;
      const S factor = m(i, col);
      for (std::size_t c = 0; c < d; ++c)
        m(i, c) -= factor * m(row, c);
    }
    pivot_cols.push_back(col);
    is_pivot[col] = true;
    ++row;
  }

  std::size_t free_col = d;
  for (std::size_t c = 0; c < d; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  if (free_col == d)
    return std::nullopt; // numerically full rank despite a tiny determinant

  std::vector<S> x(d, ScalarTraits<S>::zero());
  x[free_col] = ScalarTraits<S>::one();
  for (std::size_t r = 0; r < pivot_cols.size(); ++r)
    x[pivot_cols[r]] = S(-m(r, free_col));
  return Element<S>(u.signature(), std::move(x));
}

} // namespace dlpq
