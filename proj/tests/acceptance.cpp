// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hnup/hnup.hpp"
#include "oracle_values.hpp"

using namespace hnup;

namespace {

// Pinned tolerances.
constexpr double kDimRelTol = 0.02;
constexpr double kConstantRelTol = 1e-12;
constexpr double kSeriesTol = 1e-9;
constexpr double kOracleTol = 1e-12;
constexpr double kRandomSigmas = 3.0;
constexpr double kRandomDimRelTol = 0.05;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Gate {
 public:
  void run(int id, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = seconds < budget_seconds;
    const bool pass = o.pass && in_time;
    failures_ += pass ? 0 : 1;
    fmt::print("{} [{}] {}: {} | runtime {:.3f}s (limit {}s)\n", pass ? "PASS" : "FAIL", id, title, o.detail, seconds,
               budget_seconds);
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

Outcome dimension_closed_forms() {
  const DimEstimate sparse = dim_estimate_seq(RatioSpec::sparse_power(2, Rational(1, 3)), 4096);
  const double target = static_cast<double>(sparse.closed_form->value);
  const double rel = std::fabs(static_cast<double>(sparse.liminf_estimate) / target - 1.0);
  const DimEstimate thirds = dim_estimate_seq(RatioSpec::constant(2, Rational(1, 3)), 4096);
  double spread = 0.0;
  for (const auto& s : thirds.samples)
    spread = std::max(spread, std::fabs(static_cast<double>(s.s / thirds.closed_form->value) - 1.0));
  const bool pass = rel <= kDimRelTol && std::fabs(target - oracle::kLog2OverLog3) < kOracleTol &&
                    spread <= kConstantRelTol;
  return {pass, fmt::format("sparse liminf {:.6f} vs {:.6f} (rel err {:.4f} <= {}); constant spread {:.2e} <= {:.0e}",
                            static_cast<double>(sparse.liminf_estimate), target, rel, kDimRelTol, spread,
                            kConstantRelTol)};
}

Outcome dimension_zero() {
  const DimEstimate est = dim_estimate_seq(RatioSpec::geometric_power(2, Rational(1, 4)), 400);
  const double s200 = static_cast<double>(est.samples[199].s), s400 = static_cast<double>(est.samples[399].s);
  return {s200 <= 0.01 && s400 <= 0.005,
          fmt::format("s_200 = {:.6f} <= 0.01, s_400 = {:.6f} <= 0.005", s200, s400)};
}

Outcome capacity_series() {
  const SeriesBound s = series_capacity_bound(RatioSpec::geometric_power(2, Rational(1, 4)), 1e-30L);
  if (s.partial_sums.size() <= 60) return {false, "series stopped before l = 60"};
  const double at60 = static_cast<double>(s.partial_sums[60]);
  const double err = std::fabs(at60 - oracle::kSeriesLimit);
  const bool pass = err <= kSeriesTol && s.certified_cap_lower == Rational(1, 32);
  return {pass, fmt::format("S_60 = {:.12f}, |S_60 + 5 log 2| = {:.1e} <= {:.0e}; certified Cap >= {}", at60, err,
                            kSeriesTol, to_string(s.certified_cap_lower))};
}

Outcome level_bound_inequality() {
  const CantorApprox approx(RatioSpec::geometric_power(2, Rational(1, 4)), 9);
  const auto rows = endpoint_diameter_seq(approx, 8);
  bool all = true;
  for (const auto& r : rows) all = all && r.bound_holds;
  const double lhs = static_cast<double>(2 * rows[1].product.log_p), rhs = static_cast<double>(*rows[1].level_bound);
  const bool oracle_ok = std::fabs(lhs - oracle::kGeomE1LogPSquared) < kOracleTol &&
                         std::fabs(rhs - oracle::kGeomE1LevelBound) < kOracleTol;
  return {all && oracle_ok && lhs >= rhs,
          fmt::format("holds at k = 0..8 ({} endpoints at k = 8); k = 1: log P^2 = {:.6f} >= {:.6f}",
                      rows[8].product.n, lhs, rhs)};
}

Outcome up_bound_attainment() {
  const CantorApprox approx(RatioSpec::constant(2, Rational(1, 3)), 10);
  const Rational bound = up_modulus_bound(2, Rational(1, 3)).ratio;
  std::string seen;
  bool pass = bound == 3;
  for (int k = 3; k <= 10; ++k) {
    const BruteForceResult b = max_separating_ratio_bruteforce(approx, k);
    pass = pass && b.max_ratio && *b.max_ratio == bound;
    seen += (seen.empty() ? "" : ",") + (b.max_ratio ? to_string(*b.max_ratio) : std::string("none"));
  }
  return {pass, fmt::format("max ratios k=3..10: {} ; bound M = {}", seen, to_string(bound))};
}

Outcome hnup_witnesses() {
  const CantorApprox approx(RatioSpec::sparse_power(2, Rational(1, 3)), 8);
  const auto xs = sample_addresses(11, 10, 2, 8), ys = sample_addresses(12, 10, 2, 8);
  int line = 0, product = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const WitnessSearch w15 = hnup_witness(approx, xs[i], Rational(15), 8);
    const WitnessSearch w51 = hnup_witness(approx, xs[i], Rational(51), 8);
    if (w15.witness && w15.witness->depth == 4 && w15.witness->achieved_ratio == 15 && w51.witness &&
        w51.witness->depth == 8 && w51.witness->achieved_ratio == 51)
      ++line;
    const auto p = product_hnup_witness(approx, xs[i], ys[i], Rational(36), 8);
    if (p.witness && 2 * p.witness->annulus.ratio_sq() >= 51 * 51) ++product;
  }
  return {line == 10 && product == 10,
          fmt::format("{}/10 points with ratio 15 at k=4 and 51 at k=8; {}/10 product witnesses with R/r >= 51/sqrt(2)",
                      line, product)};
}

Outcome random_theorem() {
  const double expected = -(std::log(3.0) + 1.0);
  const int seeds = 100;
  const long k = 5000;
  std::vector<double> means;
  double worst_dim = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto logs = log_lengths(RatioSpec::random(2, static_cast<std::uint64_t>(seed)), k);
    const double mean = static_cast<double>(logs.back()) / static_cast<double>(k);
    means.push_back(mean);
    const double s = static_cast<double>(k) * std::log(2.0) / -static_cast<double>(logs.back());
    worst_dim = std::max(worst_dim, std::fabs(s / oracle::kRandomDim - 1.0));
  }
  double avg = 0.0;
  for (double m : means) avg += m;
  avg /= seeds;
  double var = 0.0;
  for (double m : means) var += (m - avg) * (m - avg);
  const double se = std::sqrt(var / (seeds - 1)) / std::sqrt(static_cast<double>(seeds));
  const double sigmas = std::fabs(avg - expected) / se;
  return {sigmas <= kRandomSigmas && worst_dim <= kRandomDimRelTol,
          fmt::format("mean (1/k) sum log a_j = {:.5f} vs {:.5f} ({:.2f} SE <= {}); dim estimates within {:.2f}% of {:.4f}",
                      avg, expected, sigmas, kRandomSigmas, 100 * worst_dim, oracle::kRandomDim)};
}

Outcome mu_census_bracket() {
  bool pass = true;
  std::uint64_t pairs = 0;
  for (const auto& spec : {RatioSpec::geometric_power(2, Rational(1, 4)), RatioSpec::constant(2, Rational(1, 3))}) {
    const CantorApprox approx(spec, 9);
    for (int k = 0; k <= 8; ++k) {
      const MuCensus c = mu_census(approx, k);
      pass = pass && c.counts_uniform && c.counts_match && c.bracket_holds;
      pairs += c.pairs;
    }
  }
  return {pass, fmt::format("counts 2^(k-l) and e_(l+1) <= |z-z'| <= A_l over {} ordered pairs, k <= 8", pairs)};
}

Outcome assembly() {
  AssemblyOptions options;
  options.M_max = 5;
  const PlanarSet E = build_E(options);
  bool packing = true;
  for (const auto& r : verify_packing(E)) packing = packing && r.empty;
  const Rational M(100);
  int found = additional_property_witness(E, Origin{}, M) ? 1 : 0;
  const CounterStream stream(31);
  for (int i = 0; i < 10; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i) % E.components.size();
    const int m = E.components[idx].m;
    const auto xs = sample_addresses(stream.at(static_cast<std::uint64_t>(i), 0), 1, m, 8);
    const auto ys = sample_addresses(stream.at(static_cast<std::uint64_t>(i), 1), 1, m, 8);
    const auto w = additional_property_witness(E, ComponentPoint{idx, xs[0], ys[0]}, M);
    if (w && w->annulus.ratio_sq() >= M * M) ++found;
  }
  long double sup = 0.0L;
  for (const auto& d : component_dimensions(E)) sup = std::max(sup, d.lower);
  const bool sup_ok = std::fabs(static_cast<double>(sup) - oracle::kSupLowerM5) < kOracleTol;
  return {packing && found == 11 && sup_ok,
          fmt::format("containment exact, odd rings empty: {}; witnesses at M=100: {}/11; sup lower dim = {:.6f}",
                      packing ? "yes" : "no", found, static_cast<double>(sup))};
}

Outcome table1() {
  const auto cells = table1_suite();
  int verified = 0, cited = 0, scope = 0, trivial = 0, failed = 0;
  for (const auto& c : cells) {
    verified += c.status == "verified-at-depth";
    cited += c.status == "cited-not-computed";
    scope += c.status == "out-of-scope";
    trivial += c.status == "trivial";
    failed += c.pass() ? 0 : 1;
  }
  const auto dir = std::filesystem::temp_directory_path() / "hnup_acceptance_table1";
  std::filesystem::create_directories(dir);
  const std::string cmd = std::string(HNUP_CLI_PATH) + " table1 --out " + dir.string() + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {verified == 13 && cited == 6 && scope == 1 && trivial == 5 && failed == 0 && code == 0,
          fmt::format("{} verified-at-depth, {} cited, {} out-of-scope, {} trivial, {} failed checks; CLI exit {}",
                      verified, cited, scope, trivial, failed, code)};
}

}  // namespace

int main() {
  Gate gate;
  gate.run(1, "dimension closed forms", 1.0, dimension_closed_forms);
  gate.run(2, "dimension-zero example", 1.0, dimension_zero);
  gate.run(3, "capacity series", 0.1, capacity_series);
  gate.run(4, "level-bound inequality on endpoint products", 5.0, level_bound_inequality);
  gate.run(5, "uniform-perfectness bound attained", 10.0, up_bound_attainment);
  gate.run(6, "HNUP witnesses", 5.0, hnup_witnesses);
  gate.run(7, "random-sequence theorem", 10.0, random_theorem);
  gate.run(8, "mu census and distance bracket", 60.0, mu_census_bracket);
  gate.run(9, "planar assembly", 30.0, assembly);
  gate.run(10, "table1 suite", 120.0, table1);
  fmt::print("{} of 10 criteria passed\n", 10 - gate.failures());
  return gate.failures() == 0 ? 0 : 1;
}
