#pragma once

// Random generators and independent reference computations shared by the
// test binaries. Nothing here calls the library's own multiplication or
// matrix code.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "dlpq/dlpq.hpp"

namespace support {

using dlpq::Element;
using dlpq::Rational;
using dlpq::Signature;

class Gen {
public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double real(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  bool coin() { return integer(0, 1) == 1; }

  // Small-height rational, zero about one time in eight.
  Rational rational(int height = 9, int max_den = 6) {
    if (integer(0, 7) == 0)
      return Rational(0);
    Rational r(integer(-height, height), integer(1, max_den));
    r.canonicalize();
    return r;
  }

  template <typename S> S scalar() {
    if constexpr (std::is_same_v<S, Rational>)
      return rational();
    else
      return real();
  }

  template <typename S> Element<S> element(const Signature &sig) {
    std::vector<S> c(sig.dim());
    for (auto &x : c)
      x = scalar<S>();
    return Element<S>(sig, std::move(c));
  }

  // Dense rational element, no zero coefficients.
  Element<Rational> dense_rational(const Signature &sig, int height = 9) {
    std::vector<Rational> c(sig.dim());
    for (auto &x : c) {
      int num = 0;
      while (num == 0)
        num = integer(-height, height);
      x = Rational(num, integer(1, 5));
      x.canonicalize();
    }
    return Element<Rational>(sig, std::move(c));
  }

  dlpq::ConjMask mask(const Signature &sig) {
    return dlpq::ConjMask(static_cast<dlpq::BladeMask>(integer(0, int(sig.dim()) - 1)));
  }

  std::mt19937_64 &engine() { return eng_; }

private:
  std::mt19937_64 eng_;
};

inline std::vector<Signature> signatures(int min_n, int max_n) {
  std::vector<Signature> out;
  for (int n = min_n; n <= max_n; ++n)
    for (int p = 0; p <= n; ++p)
      out.emplace_back(p, n - p);
  return out;
}

// Product of blades by set manipulation: e_A e_B = (prod_{i in A and B} e_i^2) e_{A xor B}.
inline std::pair<int, unsigned> blade_product(unsigned a, unsigned b, int p, int n) {
  std::set<int> left, right;
  for (int i = 1; i <= n; ++i) {
    if (a & (1U << (i - 1)))
      left.insert(i);
    if (b & (1U << (i - 1)))
      right.insert(i);
  }
  int sign = 1;
  unsigned result = 0;
  for (int i = 1; i <= n; ++i) {
    const bool l = left.count(i) > 0, r = right.count(i) > 0;
    if (l && r)
      sign *= i <= p ? 1 : -1;
    else if (l || r)
      result |= 1U << (i - 1);
  }
  return {sign, result};
}

inline std::vector<Rational> ref_mul(const std::vector<Rational> &a, const std::vector<Rational> &b,
                                     int p, int q) {
  const int n = p + q;
  std::vector<Rational> out(a.size(), Rational(0));
  for (unsigned i = 0; i < a.size(); ++i)
    for (unsigned j = 0; j < b.size(); ++j) {
      if (a[i] == 0 || b[j] == 0)
        continue;
      const auto [sign, m] = blade_product(i, j, p, n);
      out[m] += sign * a[i] * b[j];
    }
  return out;
}

inline std::vector<Rational> to_exact(const std::vector<double> &v) {
  return std::vector<Rational>(v.begin(), v.end());
}

template <typename S> std::vector<Rational> exact_coeffs(const Element<S> &u) {
  return std::vector<Rational>(u.coeffs().begin(), u.coeffs().end());
}

using Matrix = std::vector<std::vector<Rational>>;

// Regular representation: column m holds the coefficients of U e_m.
inline Matrix ref_regular_matrix(const std::vector<Rational> &u, int p, int q) {
  const std::size_t dim = u.size();
  Matrix m(dim, std::vector<Rational>(dim, Rational(0)));
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Rational> blade(dim, Rational(0));
    blade[c] = 1;
    const auto col = ref_mul(u, blade, p, q);
    for (std::size_t r = 0; r < dim; ++r)
      m[r][c] = col[r];
  }
  return m;
}

// Plain Gaussian elimination over Q.
inline Rational ref_det(Matrix m) {
  const std::size_t d = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    while (piv < d && m[piv][k] == 0)
      ++piv;
    if (piv == d)
      return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < d; ++i) {
      if (m[i][k] == 0)
        continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < d; ++j)
        m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

inline Rational ref_det(const std::vector<Rational> &u, int p, int q) {
  return ref_det(ref_regular_matrix(u, p, q));
}

// det(M - lambda I) coefficients c_0..c_d, by sampling at lambda = 0..d and
// solving the Vandermonde system.
inline std::vector<Rational> ref_charpoly(const Matrix &m) {
  const std::size_t d = m.size();
  Matrix system(d + 1, std::vector<Rational>(d + 2, Rational(0)));
  for (std::size_t s = 0; s <= d; ++s) {
    Matrix shifted = m;
    for (std::size_t i = 0; i < d; ++i)
      shifted[i][i] -= Rational(long(s));
    Rational power = 1;
    for (std::size_t k = 0; k <= d; ++k) {
      system[s][k] = power;
      power *= long(s);
    }
    system[s][d + 1] = ref_det(shifted);
  }
  for (std::size_t k = 0; k <= d; ++k) {
    std::size_t piv = k;
    while (system[piv][k] == 0)
      ++piv;
    std::swap(system[piv], system[k]);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == k || system[i][k] == 0)
        continue;
      const Rational f = system[i][k] / system[k][k];
      for (std::size_t j = k; j <= d + 1; ++j)
        system[i][j] -= f * system[k][j];
    }
  }
  std::vector<Rational> out(d + 1);
  for (std::size_t k = 0; k <= d; ++k)
    out[k] = system[k][d + 1] / system[k][k];
  return out;
}

// Basis of {x : M x = 0} over Q, by reduced row echelon form.
inline std::vector<std::vector<Rational>> ref_nullspace(Matrix m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0)
      ++piv;
    if (piv == rows)
      continue;
    std::swap(m[piv], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto &x : m[r])
      x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
      continue;
    std::vector<Rational> x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      x[pivots[i]] = -m[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

} // namespace support
