#pragma once

// Transfinite-diameter statistics: pair products of point configurations,
// endpoint configurations of I_k against the level-by-level lower bound, the
// certified capacity series for the geometric-power rule, and small-n Fekete
// searches.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "hnup/cantor.hpp"
#include "hnup/errors.hpp"
#include "hnup/rational.hpp"

namespace hnup {

/// Deepest level whose basic interval contains both endpoints z, z' of E_k.
inline int mu(const CantorApprox& approx, int k, const Rational& z, const Rational& z2) {
  if (z == z2) throw PreconditionError("mu needs distinct points");
  const Location a = approx.locate(z, k);
  const Location b = approx.locate(z2, k);
  const auto* pa = std::get_if<Address>(&a);
  const auto* pb = std::get_if<Address>(&b);
  if (!pa || !pb) throw PreconditionError("mu: point outside I_k");
  return static_cast<int>(common_prefix(*pa, *pb));
}

struct ConfigProduct {
  std::size_t n = 0;
  long double log_p = 0.0L;  // sum_{i<j} log |z_i - z_j|
  long double log_d = 0.0L;  // 2 log_p / (n (n - 1))
  std::optional<Rational> exact_product;  // kept for n <= 64
};

inline constexpr std::size_t kExactProductLimit = 64;

namespace detail {

/// Row sums are independent, so any thread count yields identical bits once
/// they are reduced in row order.
template <class RowSum>
long double ordered_row_reduction(std::size_t rows, RowSum row_sum) {
  std::vector<long double> sums(rows, 0.0L);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = rows >= 1024 ? std::min<unsigned>(hw, 8) : 1;
  if (workers == 1) {
    for (std::size_t i = 0; i < rows; ++i) sums[i] = row_sum(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < rows; i += workers) sums[i] = row_sum(i);
      });
    for (auto& t : pool) t.join();
  }
  NeumaierSum total;
  for (long double s : sums) total.add(s);
  return total.value();
}

}  // namespace detail

inline ConfigProduct log_pair_product(std::span<const Rational> points) {
  const std::size_t n = points.size();
  if (n < 2) throw PreconditionError("pair product needs at least two points");
  {
    std::vector<Rational> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DuplicatePoints("pair product over repeated points");
  }
  Integer den(1);
  for (const auto& p : points) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.get_den_mpz_t());
  std::vector<Integer> nums;
  nums.reserve(n);
  bool fits = true;
  for (const auto& p : points) {
    nums.push_back(p.get_num() * (den / p.get_den()));
    if (mpz_sizeinbase(nums.back().get_mpz_t(), 2) > 122) fits = false;
  }
  long double raw = 0.0L;
  if (fits) {
    std::vector<__int128> fixed;
    fixed.reserve(n);
    for (const auto& z : nums) {
      const Integer mag = z < 0 ? Integer(-z) : z;
      const __int128 v = *to_int128(mag, 122);
      fixed.push_back(z < 0 ? -v : v);
    }
    raw = detail::ordered_row_reduction(n, [&](std::size_t i) {
      NeumaierSum row;
      for (std::size_t j = i + 1; j < n; ++j) {
        const __int128 d = fixed[i] > fixed[j] ? fixed[i] - fixed[j] : fixed[j] - fixed[i];
        row.add(std::log(static_cast<long double>(d)));
      }
      return row.value();
    });
  } else {
    raw = detail::ordered_row_reduction(n, [&](std::size_t i) {
      NeumaierSum row;
      for (std::size_t j = i + 1; j < n; ++j) {
        Integer d = nums[i] - nums[j];
        if (d < 0) d = -d;
        row.add(log_of(d));
      }
      return row.value();
    });
  }
  ConfigProduct out;
  out.n = n;
  const long double pairs = static_cast<long double>(n) * static_cast<long double>(n - 1) / 2.0L;
  out.log_p = raw - pairs * log_of(den);
  out.log_d = out.log_p / pairs;
  if (n <= kExactProductLimit) {
    Rational product(1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) product *= abs(Rational(points[i] - points[j]));
    out.exact_product = product;
  }
  return out;
}

struct DepthProduct {
  int k = 0;
  ConfigProduct product;
  /// 2^{k+1} sum_{l=0}^{k} 2^{k-l} log e_{l+1}; present for m = 2.
  std::optional<long double> level_bound;
  bool bound_holds = true;
};

/// Pair products of E_k for k = 0..K, each compared (m = 2) with the
/// level-by-level lower bound on log P^2. Needs the approximation built to K+1.
inline std::vector<DepthProduct> endpoint_diameter_seq(const CantorApprox& approx, int K,
                                                       std::uint64_t point_limit = std::uint64_t{1} << 13) {
  if (K < 0) throw PreconditionError("K must be >= 0");
  std::vector<DepthProduct> out;
  for (int k = 0; k <= K; ++k) {
    if (2 * approx.count(k) > point_limit)
      throw EnumerationBudget("endpoint configuration at depth " + std::to_string(k) + " exceeds point limit");
    const EndpointSet E = approx.endpoints(k);
    DepthProduct row;
    row.k = k;
    row.product = log_pair_product(E.points);
    if (approx.m() == 2 && k + 1 <= approx.depth()) {
      NeumaierSum sum;
      for (int l = 0; l <= k; ++l) sum.add(std::ldexp(approx.state(l + 1).log_gap, k - l));
      row.level_bound = std::ldexp(sum.value(), k + 1);
      row.bound_holds = 2.0L * row.product.log_p >= *row.level_bound;
    }
    out.push_back(std::move(row));
  }
  return out;
}

struct SeriesBound {
  std::vector<long double> partial_sums;  // S_L = sum_{l<=L} 2^{-l-1} log(B A_l)
  long double limit_estimate = 0.0L;
  long double closed_form_limit = 0.0L;   // log B + 2 log a
  Rational certified_cap_lower;           // B a^2
  long double cap_lower = 0.0L;
  long terms = 0;
};

/// Capacity lower bound for the geometric-power rule with m = 2:
///   log Cap >= sum_l 2^{-l-1} log(B A_l),  A_l = a^{(l^2+l)/2},  B = 1 - 2a.
/// The weights sum_l 2^{-l-1} (l^2+l)/2 total exactly 2, so the limit is
/// log B + 2 log a and Cap >= B a^2.
inline SeriesBound series_capacity_bound(const RatioSpec& spec, long double tolerance = 1e-12L,
                                         long max_terms = 4096) {
  const auto* g = std::get_if<GeometricPower>(&spec.rule());
  if (spec.m() != 2 || !g) throw Unsupported("capacity series needs m = 2 with the geometric-power rule");
  if (!(tolerance > 0)) throw PreconditionError("tolerance must be positive");
  const Rational B = spec.gap_floor();
  const long double log_B = log_of(B);
  const long double log_a = log_of(g->a);
  SeriesBound out;
  NeumaierSum sum;
  for (long l = 0; l < max_terms; ++l) {
    const long double exponent = 0.5L * static_cast<long double>(l) * static_cast<long double>(l + 1);
    const long double term = std::ldexp(log_B + exponent * log_a, static_cast<int>(-l - 1));
    sum.add(term);
    out.partial_sums.push_back(sum.value());
    out.terms = l + 1;
    if (l >= 1 && std::fabs(term) < tolerance) break;
  }
  out.limit_estimate = out.partial_sums.back();
  out.closed_form_limit = log_B + 2.0L * log_a;
  out.certified_cap_lower = B * g->a * g->a;
  out.cap_lower = std::exp(out.closed_form_limit);
  return out;
}

struct Configuration {
  std::vector<Rational> points;
  long double log_p = 0.0L;
  long double log_d = 0.0L;
};

namespace detail {

inline std::vector<std::vector<long double>> log_distance_matrix(std::span<const Rational> c) {
  std::vector<std::vector<long double>> out(c.size(), std::vector<long double>(c.size(), 0.0L));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const Rational d = abs(Rational(c[i] - c[j]));
      if (sgn(d) == 0) throw DuplicatePoints("candidate set has repeated points");
      out[i][j] = out[j][i] = log_of(d);
    }
  return out;
}

inline Configuration finish_configuration(std::span<const Rational> c, std::vector<std::size_t> chosen) {
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) { return c[a] < c[b]; });
  Configuration out;
  for (auto i : chosen) out.points.push_back(c[i]);
  const ConfigProduct p = log_pair_product(out.points);
  out.log_p = p.log_p;
  out.log_d = p.log_d;
  return out;
}

}  // namespace detail

/// Exhaustive maximum of the pair product over n-subsets of the candidates.
inline Configuration exact_small_transfinite(std::span<const Rational> candidates, int n) {
  if (candidates.size() > 24 || n > 8) throw BudgetError("exhaustive search limited to 24 candidates and n <= 8");
  if (n < 2 || static_cast<std::size_t>(n) > candidates.size())
    throw PreconditionError("need 2 <= n <= number of candidates");
  const auto logs = detail::log_distance_matrix(candidates);
  const std::size_t N = candidates.size();
  std::vector<std::size_t> current, best;
  long double best_value = -INFINITY;
  auto search = [&](auto&& self, std::size_t start, long double value) -> void {
    if (current.size() == static_cast<std::size_t>(n)) {
      if (value > best_value) {
        best_value = value;
        best = current;
      }
      return;
    }
    for (std::size_t i = start; i + (static_cast<std::size_t>(n) - current.size()) <= N; ++i) {
      long double add = 0.0L;
      for (auto j : current) add += logs[i][j];
      current.push_back(i);
      self(self, i + 1, value + add);
      current.pop_back();
    }
  };
  search(search, 0, 0.0L);
  return detail::finish_configuration(candidates, best);
}

/// Greedy configuration: the diameter pair, then repeatedly the candidate with
/// the largest added log product (ties to the smallest coordinate).
inline Configuration greedy_fekete(std::span<const Rational> candidates, int n) {
  const std::size_t N = candidates.size();
  if (N > (std::size_t{1} << 16)) throw BudgetError("greedy search limited to 65536 candidates");
  if (n < 2 || static_cast<std::size_t>(n) > N) throw PreconditionError("need 2 <= n <= number of candidates");
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < N; ++i) {
    if (candidates[i] < candidates[lo]) lo = i;
    if (candidates[i] > candidates[hi]) hi = i;
  }
  std::vector<std::size_t> chosen{lo, hi};
  std::vector<bool> used(N, false);
  used[lo] = used[hi] = true;
  std::vector<long double> score(N, 0.0L);
  auto absorb = [&](std::size_t c) {
    for (std::size_t i = 0; i < N; ++i) {
      if (used[i]) continue;
      const Rational d = abs(Rational(candidates[i] - candidates[c]));
      if (sgn(d) == 0) throw DuplicatePoints("candidate set has repeated points");
      score[i] += log_of(d);
    }
  };
  absorb(lo);
  absorb(hi);
  while (chosen.size() < static_cast<std::size_t>(n)) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < N; ++i) {
      if (used[i]) continue;
      if (!pick || score[i] > score[*pick] || (score[i] == score[*pick] && candidates[i] < candidates[*pick]))
        pick = i;
    }
    used[*pick] = true;
    chosen.push_back(*pick);
    absorb(*pick);
  }
  return detail::finish_configuration(candidates, chosen);
}

}  // namespace hnup

namespace hnup {

struct MuCensus {
  int k = 0;
  /// partners[l] = #{z' : mu(z, z') = l}, identical for every z when counts_uniform.
  std::vector<std::uint64_t> partners;
  bool counts_uniform = true;
  bool counts_match = true;    // partners[l] == 2^{k-l} (m = 2)
  bool bracket_holds = true;   // e_{l+1} <= |z - z'| <= A_l for every pair
  std::uint64_t pairs = 0;
};

/// Exhaustive census of mu over ordered pairs of E_k, with the distance
/// bracket checked exactly. Needs the approximation built to depth k + 1.
inline MuCensus mu_census(const CantorApprox& approx, int k) {
  if (k < 0 || k + 1 > approx.depth()) throw PreconditionError("census needs depth k + 1 built");
  const EndpointSet E = approx.endpoints(k);
  const std::size_t n = E.points.size();
  if (n > (std::size_t{1} << 12)) throw EnumerationBudget("census limited to 4096 endpoints");
  std::vector<Address> addr;
  addr.reserve(n);
  for (const auto& z : E.points) addr.push_back(std::get<Address>(approx.locate(z, k)));
  MuCensus out;
  out.k = k;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int l = static_cast<int>(common_prefix(addr[i], addr[j]));
      ++row[static_cast<std::size_t>(l)];
      ++out.pairs;
      const Rational d = abs(E.points[i] - E.points[j]);
      if (d < approx.gap(l + 1) || d > approx.length(l)) out.bracket_holds = false;
    }
    if (i == 0) out.partners = row;
    else if (row != out.partners) out.counts_uniform = false;
  }
  for (int l = 0; l <= k; ++l)
    if (out.partners[static_cast<std::size_t>(l)] != (std::uint64_t{1} << (k - l))) out.counts_match = false;
  if (approx.m() != 2) out.counts_match = false;
  return out;
}

}  // namespace hnup
