#include <gtest/gtest.h>

#include "support.hpp"

using namespace dlpq;
using support::Gen;

namespace {

using Q = Rational;

// Random case: signature with n <= max_n, two elements, two masks, two scalars.
template <typename S> struct Case {
  Signature sig{1, 0};
  Element<S> u = Element<S>::zero(sig), v = Element<S>::zero(sig);
  ConjMask a, b;
  S s{}, t{};
};

Q pow_q(Q base, std::size_t e) {
  Q out = 1;
  for (; e > 0; --e)
    out *= base;
  return out;
}

template <typename S> Case<S> draw(Gen &g, int max_n) {
  const int n = g.integer(1, max_n);
  const int p = g.integer(0, n);
  Case<S> c;
  c.sig = Signature(p, n - p);
  c.u = g.element<S>(c.sig);
  c.v = g.element<S>(c.sig);
  c.a = g.mask(c.sig);
  c.b = g.mask(c.sig);
  c.s = g.scalar<S>();
  c.t = g.scalar<S>();
  return c;
}

} // namespace

TEST(ConjugationLaws, ExactRandomCases) {
  Gen g(70);
  for (int i = 0; i < 2000; ++i) {
    const auto c = draw<Q>(g, 5);
    ASSERT_EQ(conjugate(conjugate(c.u, c.a), c.a), c.u);
    ASSERT_EQ(conjugate(c.u * c.s + c.v * c.t, c.a),
              conjugate(c.u, c.a) * c.s + conjugate(c.v, c.a) * c.t);
    ASSERT_EQ(conjugate(conjugate(c.u, c.a), c.b), conjugate(conjugate(c.u, c.b), c.a));
    ASSERT_EQ(conjugate(conjugate(c.u, c.a), c.b), conjugate(c.u, c.a ^ c.b));
    ASSERT_EQ(conjugate(c.u * c.v, c.a), conjugate(c.u, c.a) * conjugate(c.v, c.a));
  }
}

TEST(ConjugationLaws, FloatRandomCases) {
  Gen g(71);
  for (int i = 0; i < 500; ++i) {
    const auto c = draw<double>(g, 6);
    ASSERT_EQ(conjugate(conjugate(c.u, c.a), c.a), c.u);
    ASSERT_TRUE(approx_equal(conjugate(c.u * c.v, c.a), conjugate(c.u, c.a) * conjugate(c.v, c.a)));
  }
}

TEST(ConjugationLaws, SignRuleMatchesSubsetParity) {
  Gen g(72);
  for (int i = 0; i < 200; ++i) {
    const auto c = draw<Q>(g, 6);
    const auto w = conjugate(c.u, c.a);
    for (BladeMask m = 0; m < w.size(); ++m) {
      int shared = 0;
      for (int k = 0; k < c.sig.n(); ++k)
        shared += (m >> k & 1U) && (c.a.bits >> k & 1U);
      ASSERT_EQ(w[m], shared % 2 ? Q(-c.u[m]) : c.u[m]);
    }
  }
}

TEST(DetProperties, MultiplicativeAndConjugateInvariant) {
  Gen g(73);
  for (int i = 0; i < 200; ++i) {
    const auto c = draw<Q>(g, 4);
    const Q du = det_recursive(c.u);
    ASSERT_EQ(det_recursive(c.u * c.v), du * det_recursive(c.v));
    ASSERT_EQ(det_recursive(conjugate(c.u, c.a)), du);
    ASSERT_EQ(det_recursive(c.u * c.s), du * pow_q(c.s, c.sig.dim()));
  }
}

TEST(AdjointProperties, Equivariance) {
  Gen g(74);
  for (int i = 0; i < 100; ++i) {
    const auto c = draw<Q>(g, 4);
    ASSERT_EQ(adjoint_by_elimination(conjugate(c.u, c.a)), conjugate(adjoint_by_elimination(c.u), c.a));
    ASSERT_EQ(c.u * adjoint_by_elimination(c.u), Element<Q>::scalar(c.sig, det_recursive(c.u)));
  }
}

TEST(CharpolyProperties, CayleyHamiltonOnConjugates) {
  Gen g(75);
  for (const auto &sig : support::signatures(1, 4)) {
    const auto u = g.element<Q>(sig);
    const auto psi = charpoly_symmetric(u);
    for (BladeMask m = 0; m < sig.dim(); ++m)
      ASSERT_TRUE(psi.evaluate(conjugate(u, ConjMask(m))).is_zero()) << sig.to_string();
  }
}
