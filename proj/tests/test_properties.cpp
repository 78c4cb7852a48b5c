// Randomized invariant checks. Inputs come from a fixed-seed counter stream so
// every failure is reproducible from the printed case index.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hnup/assembly.hpp"
#include "hnup/capacity.hpp"
#include "hnup/dimension.hpp"
#include "hnup/perfectness.hpp"

using namespace hnup;

namespace {

constexpr int kCases = 40;

/// Admissible spec of a randomly chosen variant with m in 2..4.
RatioSpec random_spec(std::uint64_t i) {
  const CounterStream s(2024);
  const int m = 2 + static_cast<int>(s.at(i, 0) % 3);
  const long extra = static_cast<long>(s.at(i, 1) % 6);
  const Rational a(1, m + 1 + extra);
  switch (s.at(i, 2) % 5) {
    case 0: return RatioSpec::constant(m, a);
    case 1: return RatioSpec::sparse_power(m, a);
    case 2: return RatioSpec::geometric_power(m, a);
    case 3: return RatioSpec::explicit_list(m, {a, Rational(1, m + 2 + extra), Rational(1, 2 * m + 3)});
    default: return RatioSpec::random(m, s.at(i, 3), 32);
  }
}

int enumerable_depth(int m, std::uint64_t limit) {
  int k = 0;
  std::uint64_t n = 1;
  while (n * static_cast<std::uint64_t>(m) <= limit) {
    n *= static_cast<std::uint64_t>(m);
    ++k;
  }
  return k;
}

}  // namespace

TEST(Property, GapEquationAndLowerBound) {
  for (std::uint64_t i = 0; i < kCases; ++i) {
    const RatioSpec spec = random_spec(i);
    const CantorApprox approx(spec, 12);
    const int m = spec.m();
    const Rational B = 1 - m * spec.bound();
    for (int k = 1; k <= 12; ++k) {
      EXPECT_EQ((m - 1) * approx.gap(k), approx.length(k - 1) - m * approx.length(k)) << i;
      EXPECT_GE(approx.gap(k), B * approx.length(k - 1) / (m - 1)) << i;
      if (k >= 2) EXPECT_LT(approx.gap(k), approx.gap(k - 1)) << i;
      const double rel = std::fabs(static_cast<double>(approx.state(k).log_length / log_of(approx.length(k)) - 1.0L));
      EXPECT_LE(rel, 1e-12) << i;
    }
  }
}

TEST(Property, IntervalsSeparatedByGap) {
  for (std::uint64_t i = 0; i < kCases; ++i) {
    const RatioSpec spec = random_spec(i);
    const int K = enumerable_depth(spec.m(), 4096);
    const CantorApprox approx(spec, K);
    for (int k = 1; k <= K; ++k) {
      const auto ivs = approx.intervals(k);
      for (std::size_t j = 1; j < ivs.size(); ++j) EXPECT_GE(ivs[j].left - ivs[j - 1].right(), approx.gap(k)) << i;
    }
  }
}

TEST(Property, EndpointsNestAndCount) {
  for (std::uint64_t i = 0; i < kCases; ++i) {
    const RatioSpec spec = random_spec(i);
    const int K = enumerable_depth(spec.m(), 1024);
    const CantorApprox approx(spec, K);
    for (int k = 0; k < K; ++k) {
      const auto a = approx.endpoints(k).points, b = approx.endpoints(k + 1).points;
      EXPECT_EQ(a.size(), 2 * approx.count(k));
      EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
      EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end())) << i;
      for (const auto& z : a) EXPECT_TRUE(std::holds_alternative<Address>(approx.locate(z, K)));
    }
  }
}

TEST(Property, CanonicalAnnuliSeparate) {
  for (std::uint64_t i = 0; i < kCases; ++i) {
    const RatioSpec spec = random_spec(i);
    const int K = std::min(6, enumerable_depth(spec.m(), 1024));
    const CantorApprox approx(spec, K);
    for (int k = 1; k <= K; ++k) {
      for (const auto& iv : approx.intervals(k)) {
        const Annulus a = canonical_annulus(approx, iv.address);
        const SeparationVerdict v = is_separating(a, approx, K);
        EXPECT_TRUE(v.separates && v.sound) << i << " " << iv.address.to_string(spec.m());
        Rational expected = 1 + Rational(2, spec.m() - 1) * (1 / spec.ratio_at(k) - spec.m());
        expected.canonicalize();
        EXPECT_EQ(a.exact_ratio(), expected);
      }
    }
  }
}

namespace {

/// Largest R/r over gaps of the distance image of I_k seen from `center`,
/// computed directly from interval endpoints with rationals.
std::optional<Rational> naive_best_ratio(const std::vector<BasicInterval>& ivs, const Rational& center) {
  std::vector<std::pair<Rational, Rational>> image;
  for (const auto& iv : ivs) {
    const Rational a = abs(iv.left - center), b = abs(iv.right() - center);
    Rational lo = std::min(a, b), hi = std::max(a, b);
    if (iv.left <= center && center <= iv.right()) lo = 0;
    image.emplace_back(lo, hi);
  }
  std::sort(image.begin(), image.end());
  std::optional<Rational> best;
  Rational reach = image.front().second;
  for (std::size_t j = 1; j < image.size(); ++j) {
    if (image[j].first > reach && sgn(reach) > 0) {
      const Rational ratio = image[j].first / reach;
      if (!best || ratio > *best) best = ratio;
    }
    reach = std::max(reach, image[j].second);
  }
  return best;
}

}  // namespace

TEST(Property, BruteForceMatchesNaiveOracle) {
  for (std::uint64_t i = 0; i < 16; ++i) {
    const RatioSpec spec = random_spec(i);
    const int K = std::min(5, enumerable_depth(spec.m(), 256));
    const CantorApprox approx(spec, K);
    for (int k = 1; k <= K; ++k) {
      const auto ivs = approx.intervals(k);
      std::optional<Rational> naive;
      for (std::size_t j = 0; j < ivs.size(); ++j) {
        std::vector<Rational> centers = {ivs[j].midpoint()};
        if (j + 1 < ivs.size()) centers.push_back((ivs[j].right() + ivs[j + 1].left) / 2);
        for (const auto& c : centers) {
          const auto r = naive_best_ratio(ivs, c);
          if (r && (!naive || *r > *naive)) naive = r;
        }
      }
      const BruteForceResult b = max_separating_ratio_bruteforce(approx, k);
      ASSERT_EQ(naive.has_value(), b.max_ratio.has_value()) << i;
      if (naive) EXPECT_EQ(*naive, *b.max_ratio) << i << " k=" << k;
    }
  }
}

TEST(Property, ConstantSpecsNeverExceedBound) {
  for (int m = 2; m <= 4; ++m) {
    for (int extra = 0; extra <= 3; ++extra) {
      const Rational a(1, m + 1 + extra);
      const int K = std::min(10, enumerable_depth(m, std::uint64_t{1} << 10));
      const CantorApprox approx(RatioSpec::constant(m, a), K);
      const Rational bound = up_modulus_bound(m, a).ratio;
      for (int k = 1; k <= K; ++k) EXPECT_LE(*max_separating_ratio_bruteforce(approx, k).max_ratio, bound);
    }
  }
}

TEST(Property, SparseWitnessRatiosIncrease) {
  const RatioSpec spec = RatioSpec::sparse_power(2, Rational(1, 3));
  Rational previous(0);
  for (int n = 1; n <= 12; ++n) {
    const Rational r = canonical_ratio(spec, 1L << n);
    EXPECT_GT(r, previous);
    previous = r;
  }
}

TEST(Property, TransfiniteDiameterMonotone) {
  const CounterStream s(77);
  for (std::uint64_t i = 0; i < 12; ++i) {
    std::vector<Rational> cand;
    const std::size_t size = 8 + s.at(i, 0) % 5;
    for (std::size_t j = 0; j < size; ++j) {
      cand.push_back(Rational(static_cast<long>(s.at(i, j + 1) % 1000), 999));
      cand.back().canonicalize();
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    long double previous = std::numeric_limits<long double>::infinity();
    for (int n = 2; n <= 6; ++n) {
      const auto exact = exact_small_transfinite(cand, n);
      EXPECT_LE(exact.log_d, previous + 1e-15L) << i;
      EXPECT_LE(greedy_fekete(cand, n).log_d, exact.log_d + 1e-15L) << i;
      previous = exact.log_d;
    }
  }
}

TEST(Property, BoxCountsMonotoneOnNestedGrids) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const RatioSpec spec = random_spec(i);
    const int K = std::min(8, enumerable_depth(spec.m(), 4096));
    const CantorApprox approx(spec, K);
    std::uint64_t previous = 0;
    for (int j = 1; j <= 16; ++j) {
      const auto c = box_count(approx, K, pow2(-j));
      EXPECT_GE(c.count, previous);
      previous = c.count;
    }
  }
}

TEST(Property, RandomMeanLogRatio) {
  // 20 seeds is enough for a 4-sigma check on the mean of log a_j.
  const double expected = -(std::log(3.0) + 1.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto logs = log_lengths(RatioSpec::random(2, seed), 2000);
    const double mean = static_cast<double>(logs.back()) / 2000.0;
    EXPECT_NEAR(mean, expected, 4.0 / std::sqrt(2000.0)) << seed;  // log a_j has unit variance
  }
}

TEST(Property, ProductWitnessSimilarityInvariant) {
  const CantorApprox approx(RatioSpec::sparse_power(2, Rational(1, 3)), 8);
  const auto w = product_hnup_witness(approx, Address::parse("10", 2), Address::parse("0", 2), Rational(10), 8);
  ASSERT_TRUE(w.witness);
  const CounterStream s(5);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const SimilarityMap f{Rational{1 + static_cast<long>(s.at(i, 0) % 97), 1 + static_cast<long>(s.at(i, 1) % 1013)},
                          Point2{Rational{static_cast<long>(s.at(i, 2) % 50), 7}, Rational{-static_cast<long>(s.at(i, 3) % 50), 11}}};
    const Annulus img = f.apply(w.witness->annulus);
    EXPECT_EQ(img.ratio_sq(), w.witness->annulus.ratio_sq());
    EXPECT_TRUE(img.in_bounded_component(f.apply(w.witness->point)));
  }
}
