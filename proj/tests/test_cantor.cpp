#include <gtest/gtest.h>

#include <algorithm>

#include "hnup/cantor.hpp"

using namespace hnup;

namespace {

Rational q(long p, long d) {
  Rational out(p, d);
  out.canonicalize();
  return out;
}

std::vector<Rational> rationals(std::initializer_list<Rational> list) { return list; }

}  // namespace

TEST(RatioSpec, SparsePowerRule) {
  const auto s = RatioSpec::sparse_power(2, q(1, 3));
  EXPECT_EQ(s.ratio_at(4), q(1, 9));
  EXPECT_EQ(s.ratio_at(5), q(1, 3));
  EXPECT_EQ(s.ratio_at(8), q(1, 27));
  EXPECT_EQ(s.ratio_at(2), q(1, 3));
  EXPECT_EQ(s.ratio_at(1), q(1, 3));
}

TEST(RatioSpec, GeometricPowerRule) {
  EXPECT_EQ(RatioSpec::geometric_power(2, q(1, 4)).ratio_at(3), q(1, 64));
}

TEST(RatioSpec, ExplicitListRepeatsPeriodically) {
  const auto s = RatioSpec::explicit_list(2, {q(1, 3), q(1, 5)});
  EXPECT_EQ(s.ratio_at(1), q(1, 3));
  EXPECT_EQ(s.ratio_at(2), q(1, 5));
  EXPECT_EQ(s.ratio_at(3), q(1, 3));
}

TEST(RatioSpec, RejectsInadmissibleRatios) {
  EXPECT_THROW(RatioSpec::constant(1, q(1, 3)), PreconditionError);
  EXPECT_THROW(RatioSpec::constant(2, q(1, 2)), PreconditionError);
  EXPECT_THROW(RatioSpec::constant(2, q(0, 1)), PreconditionError);
  EXPECT_THROW(RatioSpec::constant(2, q(2, 5)), PreconditionError);
  EXPECT_NO_THROW(RatioSpec(2, Constant{q(2, 5)}, Admissibility::relaxed));
  EXPECT_THROW(RatioSpec(2, Constant{q(1, 2)}, Admissibility::relaxed), PreconditionError);
}

TEST(RatioSpec, RandomDrawsAreDyadicAndReplayable) {
  const auto s = RatioSpec::random(2, 17, 64);
  const auto t = RatioSpec::random(2, 17, 64);
  for (long k = 1; k <= 200; ++k) {
    const Rational a = s.ratio_at(k);
    EXPECT_EQ(a, t.ratio_at(k));
    EXPECT_GT(a, 0);
    EXPECT_LE(a * 3, 1);
    const Integer den = a.get_den();
    EXPECT_EQ(mpz_popcount(den.get_mpz_t()), 1u) << to_string(a);
    EXPECT_LE(mpz_sizeinbase(den.get_mpz_t(), 2), 65u);
  }
  EXPECT_NE(RatioSpec::random(2, 18).ratio_at(1), s.ratio_at(1));
}

TEST(Refine, FirstStepExamples) {
  DepthState root;
  root.length = Rational(1);
  const DepthState a = refine(root, q(1, 3), 2);
  EXPECT_EQ(*a.length, q(1, 3));
  EXPECT_EQ(*a.gap, q(1, 3));
  const DepthState b = refine(root, q(1, 4), 3);
  EXPECT_EQ(*b.length, q(1, 4));
  EXPECT_EQ(*b.gap, q(1, 8));
  const DepthState c = refine(refine(root, q(1, 4), 2), q(1, 16), 2);
  EXPECT_EQ(*c.length, q(1, 64));
  EXPECT_EQ(*c.gap, q(7, 32));
}

TEST(Refine, DropsExactValuesBeyondBudget) {
  const CantorApprox approx(RatioSpec::geometric_power(2, q(1, 4)), 40, {200, true});
  EXPECT_LT(approx.exact_depth(), 40);
  EXPECT_GE(approx.exact_depth(), 5);
  EXPECT_THROW(approx.length(40), ExactBudgetExceeded);
  // log A_k = (k^2 + k)/2 log a survives
  EXPECT_NEAR(static_cast<double>(approx.state(40).log_length), -820.0 * std::log(4.0), 1e-9);
}

TEST(CantorApprox, IntervalOfExamples) {
  const CantorApprox m3(RatioSpec::constant(3, q(1, 4)), 2);
  const auto j = m3.interval_of(Address::parse("1", 3));
  EXPECT_EQ(j.left, q(3, 8));
  EXPECT_EQ(j.length, q(1, 4));
  const CantorApprox thirds(RatioSpec::constant(2, q(1, 3)), 3);
  const auto k = thirds.interval_of(Address::parse("11", 2));
  EXPECT_EQ(k.left, q(8, 9));
  EXPECT_EQ(k.length, q(1, 9));
  const CantorApprox geo(RatioSpec::geometric_power(2, q(1, 4)), 3);
  const auto z = geo.interval_of(Address::parse("000", 2));
  EXPECT_EQ(z.left, 0);
  EXPECT_EQ(z.length, q(1, 4096));
}

TEST(CantorApprox, EndpointExamples) {
  const CantorApprox geo(RatioSpec::geometric_power(2, q(1, 4)), 2);
  EXPECT_EQ(geo.endpoints(1).points, rationals({q(0, 1), q(1, 4), q(3, 4), q(1, 1)}));
  EXPECT_EQ(geo.endpoints(0).points, rationals({q(0, 1), q(1, 1)}));
  const CantorApprox thirds(RatioSpec::constant(2, q(1, 3)), 2);
  EXPECT_EQ(thirds.endpoints(1).points, rationals({q(0, 1), q(1, 3), q(2, 3), q(1, 1)}));
  EXPECT_EQ(thirds.endpoints(2).points,
            rationals({q(0, 1), q(1, 9), q(2, 9), q(1, 3), q(2, 3), q(7, 9), q(8, 9), q(1, 1)}));
}

TEST(CantorApprox, LocateExamples) {
  const CantorApprox thirds(RatioSpec::constant(2, q(1, 3)), 3);
  EXPECT_EQ(std::get<Outside>(thirds.locate(q(1, 2), 1)).depth, 1);
  EXPECT_EQ(std::get<Address>(thirds.locate(q(1, 1), 3)).to_string(2), "111");
  EXPECT_EQ(std::get<Address>(thirds.locate(q(0, 1), 3)).to_string(2), "000");
  EXPECT_EQ(std::get<Address>(thirds.locate(q(2, 9), 2)).to_string(2), "01");
  const CantorApprox geo(RatioSpec::geometric_power(2, q(1, 4)), 2);
  // 7/16 sits in the middle gap (1/4, 3/4), opened at depth 1.
  EXPECT_EQ(std::get<Outside>(geo.locate(q(7, 16), 2)).depth, 1);
  EXPECT_EQ(std::get<Outside>(geo.locate(q(1, 8), 2)).depth, 2);
  EXPECT_THROW(geo.locate(q(3, 2), 2), PreconditionError);
}

TEST(CantorApprox, ChildFormulaAndRightEndpoint) {
  const CantorApprox approx(RatioSpec::constant(3, q(1, 5)), 4);
  for (const auto& parent : approx.intervals(3)) {
    for (int i = 0; i < 3; ++i) {
      Address a = parent.address;
      a.digits.push_back(i);
      const auto c = approx.interval_of(a);
      EXPECT_EQ(c.left, parent.left + i * approx.child_step(4));
      if (i == 2) EXPECT_EQ(c.right(), parent.right());
    }
  }
}

TEST(CantorApprox, RefusesHugeEnumeration) {
  const CantorApprox approx(RatioSpec::constant(2, q(1, 3)), 21);
  EXPECT_THROW(approx.intervals(21), EnumerationBudget);
  EXPECT_NO_THROW(approx.length(21));
}

TEST(CantorApprox, GapMonotonicityViolationIsWarningWhenRelaxed) {
  const RatioSpec spec(2, Explicit{{q(2, 5), q(1, 100), q(2, 5)}}, Admissibility::relaxed);
  const CantorApprox approx(spec, 3);
  EXPECT_FALSE(approx.warnings().empty());
}

TEST(Address, ParseAndIndexRoundTrip) {
  for (std::uint64_t i = 0; i < 81; ++i) {
    const Address a = Address::from_index(i, 3, 4);
    EXPECT_EQ(a.index(3), i);
    EXPECT_EQ(Address::parse(a.to_string(3), 3).digits, a.digits);
  }
  const Address big = Address::parse("11.0.3", 12);
  EXPECT_EQ(big.to_string(12), "11.0.3");
  EXPECT_THROW(Address::parse("012", 2), PreconditionError);
}
