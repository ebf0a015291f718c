#include <gtest/gtest.h>

#include "support.hpp"

using namespace dlpq;
using support::Gen;

namespace {

using Q = Rational;

std::vector<BladeMask> bits(const std::vector<ConjMask> &path) {
  std::vector<BladeMask> out;
  for (auto m : path)
    out.push_back(m.bits);
  return out;
}

} // namespace

TEST(Classify, SplitComplex) {
  const auto u = parse_element<Q>("1 + e1", Signature(1, 0));
  const auto r = classify(u);
  EXPECT_FALSE(r.is_unit);
  EXPECT_EQ(r.det, 0);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, parse_element<Q>("1 - e1", Signature(1, 0)));
  EXPECT_EQ(bits(r.witness_path), (std::vector<BladeMask>{1}));
  EXPECT_EQ(r.method, WitnessMethod::ConjugateElimination);
}

TEST(Classify, ProductOfIdempotentFactors) {
  const Signature sig(2, 0);
  const auto u = parse_element<Q>("1 + e1 + e2 + e12", sig);
  EXPECT_TRUE(adjoint(u).is_zero());
  const auto r = classify(u);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, parse_element<Q>("1 - e1 + e2 - e12", sig));
  EXPECT_EQ(bits(r.witness_path), (std::vector<BladeMask>{1}));
  EXPECT_TRUE((u * *r.witness).is_zero());
}

TEST(Classify, Unit) {
  const auto u = parse_element<Q>("2 + e2", Signature(1, 1));
  const auto r = classify(u);
  EXPECT_TRUE(r.is_unit);
  EXPECT_EQ(r.det, 25);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_TRUE(r.witness_path.empty());
  EXPECT_EQ(r.method, WitnessMethod::None);
}

TEST(Classify, ZeroInputRejected) {
  try {
    classify(zero<Q>(Signature(1, 1)));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroInput);
  }
}

TEST(Classify, CompositeSplitBlade) {
  // e12 squares to +1 in the bicomplex numbers.
  const Signature sig(0, 2);
  const auto u = parse_element<Q>("(1 + e12)*(3 + e1)", sig);
  const auto r = classify(u);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(is_verified_witness(u, *r.witness));
  EXPECT_FALSE(r.witness_path.empty());
}

TEST(Classify, EliminationPathShape) {
  EXPECT_EQ(bits(detail::elimination_path(0, 1)), (std::vector<BladeMask>{1}));
  EXPECT_EQ(bits(detail::elimination_path(1, 3)), (std::vector<BladeMask>{1, 4, 5}));
  EXPECT_EQ(bits(detail::elimination_path(2, 3)), (std::vector<BladeMask>{1, 2, 3, 4, 5, 6, 7}));
}

TEST(Classify, PathProductReproducesWitness) {
  Gen g(40);
  for (const auto &sig : support::signatures(2, 4))
    for (int i = 0; i < 10; ++i) {
      if (sig.p() == 0 && sig.n() == 1)
        continue;
      const int j = g.integer(1, sig.p() > 0 ? sig.p() : 1);
      BladeMask blade = BladeMask{1} << (j - 1);
      if (sig.p() == 0)
        blade = 0b11; // e12^2 = +1 in DL(0,n)
      auto factor = one<Q>(sig) + basis_blade<Q>(sig, blade);
      const auto u = factor * g.element<Q>(sig);
      if (u.is_zero())
        continue;
      const auto r = classify(u);
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_TRUE(is_verified_witness(u, *r.witness));
      if (r.method == WitnessMethod::ConjugateElimination) {
        auto product = one<Q>(sig);
        for (auto m : r.witness_path)
          product = product * conjugate(u, m);
        EXPECT_EQ(product, *r.witness);
      }
    }
}

TEST(IsZeroDivisor, Examples) {
  EXPECT_TRUE(is_zero_divisor(parse_element<Q>("1 + e1", Signature(1, 0))));
  EXPECT_FALSE(is_zero_divisor(parse_element<Q>("1 + e1", Signature(0, 1))));
  EXPECT_TRUE(is_zero_divisor(parse_element<double>("1 + e1", Signature(1, 0))));
  Gen g(41);
  for (const auto &sig : support::signatures(1, 4))
    for (int i = 0; i < 5; ++i) {
      const auto u = g.element<Q>(sig);
      if (u.is_zero())
        continue;
      EXPECT_EQ(is_zero_divisor(u), oracle_det(u) == 0);
      EXPECT_EQ(is_zero_divisor(u), kernel_witness(u).has_value());
    }
}

TEST(IsVerifiedWitness, RejectsBadCandidates) {
  const Signature sig(1, 0);
  const auto u = parse_element<Q>("1 + e1", sig);
  EXPECT_FALSE(is_verified_witness(u, zero<Q>(sig)));
  EXPECT_FALSE(is_verified_witness(u, one<Q>(sig)));
  EXPECT_TRUE(is_verified_witness(u, parse_element<Q>("2 - 2*e1", sig)));
}

TEST(Classify, FloatBackend) {
  const auto u = parse_element<double>("(1 - e2)*(0.5 + e1 + 0.25*e12)", Signature(2, 1));
  const auto r = classify(u);
  EXPECT_FALSE(r.is_unit);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(is_verified_witness(u, *r.witness));
  EXPECT_TRUE(classify(parse_element<double>("3 + e1", Signature(2, 1))).is_unit);
}

TEST(WitnessReport, Json) {
  const auto r = classify(parse_element<Q>("1 + e1", Signature(1, 0)));
  EXPECT_EQ(witness_report_to_json(r).dump(),
            R"({"det":"0","is_unit":false,"method":"conjugate_elimination","witness":["1","-1"],"witness_path":[1]})");
  const auto unit = classify(parse_element<Q>("2 + e1", Signature(1, 0)));
  EXPECT_EQ(witness_report_to_json(unit).dump(),
            R"({"det":"3","is_unit":true,"method":"none","witness":null,"witness_path":[]})");
}
