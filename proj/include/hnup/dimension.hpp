#pragma once

// Hausdorff-dimension estimates for equally spaced Cantor-like sets,
//
//   dim_H I = liminf_k  k log m / (-log A_k),
//
// closed forms for the named ratio rules, and a box-counting estimator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hnup/cantor.hpp"
#include "hnup/errors.hpp"
#include "hnup/ratio_spec.hpp"
#include "hnup/rational.hpp"
#include "hnup/shapes.hpp"

namespace hnup {

struct DimSample {
  long k = 0;
  long double s = 0.0L;
};

struct ClosedForm {
  std::string expression;
  long double value = 0.0L;
  std::string provenance;
};

struct DimEstimate {
  std::vector<DimSample> samples;
  long window_start = 1;
  long double liminf_estimate = 0.0L;
  std::optional<ClosedForm> closed_form;
};

struct DimOptions {
  /// Fraction of the samples, counted from the end, searched for the tail minimum.
  double window_fraction = 0.25;
};

/// log A_0 .. log A_K by compensated summation of log a_j.
inline std::vector<long double> log_lengths(const RatioSpec& spec, long K) {
  if (K < 0) throw PreconditionError("K must be >= 0");
  std::vector<long double> out(static_cast<std::size_t>(K) + 1, 0.0L);
  NeumaierSum sum;
  for (long k = 1; k <= K; ++k) {
    sum.add(spec.log_ratio_at(k));
    out[static_cast<std::size_t>(k)] = sum.value();
  }
  return out;
}

inline ClosedForm closed_form_dim(const RatioSpec& spec) {
  const long double log_m = std::log(static_cast<long double>(spec.m()));
  return std::visit(
      [&](const auto& r) -> ClosedForm {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Constant> || std::is_same_v<T, SparsePower>) {
          return {"log(m)/(-log(a))", log_m / -log_of(r.a),
                  std::is_same_v<T, Constant> ? "constant ratio" : "sparse-power ratio (dips at k = 2^n vanish)"};
        } else if constexpr (std::is_same_v<T, GeometricPower>) {
          return {"0", 0.0L, "geometric-power ratio: -log A_k grows quadratically"};
        } else if constexpr (std::is_same_v<T, RandomUniform>) {
          return {"log(m)/(log(m+1)+1)", log_m / (std::log(static_cast<long double>(spec.m() + 1)) + 1.0L),
                  "almost-sure limit, E[log a] = -(log(m+1)+1)"};
        } else {
          throw Unsupported("no closed-form dimension for explicit ratio lists");
          return {};
        }
      },
      spec.rule());
}

inline DimEstimate dim_estimate_seq(const RatioSpec& spec, long K, DimOptions options = {}) {
  if (K < 1) throw PreconditionError("K must be >= 1");
  if (!(options.window_fraction > 0.0 && options.window_fraction <= 1.0))
    throw PreconditionError("window fraction must be in (0, 1]");
  const auto logs = log_lengths(spec, K);
  const long double log_m = std::log(static_cast<long double>(spec.m()));
  DimEstimate out;
  out.samples.reserve(static_cast<std::size_t>(K));
  for (long k = 1; k <= K; ++k)
    out.samples.push_back({k, static_cast<long double>(k) * log_m / -logs[static_cast<std::size_t>(k)]});
  const long width = std::max(1L, static_cast<long>(std::floor(static_cast<double>(K) * options.window_fraction)));
  out.window_start = std::max(1L, K - width + 1);
  out.liminf_estimate = out.samples.back().s;
  for (long k = out.window_start; k <= K; ++k)
    out.liminf_estimate = std::min(out.liminf_estimate, out.samples[static_cast<std::size_t>(k - 1)].s);
  try {
    out.closed_form = closed_form_dim(spec);
  } catch (const Unsupported&) {
  }
  return out;
}

struct LogBounds {
  long double lower = 0.0L;
  long double upper = 0.0L;
};

/// Brackets log A_k for the sparse-power rule using n_0 ~ log2 k:
///   (k - L + 1 + L(L+1)/2) log a  <  log A_k  <  (k - L + (L-1)L/2) log a,  L = log2 k.
inline LogBounds sparse_power_logA_bounds(const Rational& a, int m, long k) {
  if (k < 2) throw PreconditionError("bounds need k >= 2");
  if (m < 2) throw PreconditionError("m must be >= 2");
  const long double log_a = log_of(a);
  const long double L = std::log2(static_cast<long double>(k));
  const long double kk = static_cast<long double>(k);
  return {(kk - L + 1.0L + 0.5L * L * (L + 1.0L)) * log_a, (kk - L + 0.5L * (L - 1.0L) * L) * log_a};
}

struct BoxCount {
  Rational delta;
  std::uint64_t count = 0;
};

struct BoxSeries {
  std::vector<BoxCount> counts;
  long double slope = 0.0L;  // least-squares slope of log N against -log delta
};

namespace detail {

inline Integer floor_div(const Integer& n, const Integer& d) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}
inline Integer ceil_div(const Integer& n, const Integer& d) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

/// Grid cells [j d, (j+1) d) meeting the closed range [lo, hi]; a non-degenerate
/// range counts the cells meeting its interior, a point counts its own cell.
inline std::pair<Integer, Integer> cell_range(const Rational& lo, const Rational& hi, const Rational& delta) {
  const Rational a = lo / delta, b = hi / delta;
  const Integer first = floor_div(a.get_num(), a.get_den());
  if (lo == hi) return {first, first};
  return {first, ceil_div(b.get_num(), b.get_den()) - 1};
}

}  // namespace detail

/// Grid boxes of side delta meeting the depth-k approximation on the line.
inline BoxCount box_count(const CantorApprox& approx, int k, const Rational& delta) {
  if (sgn(delta) <= 0) throw PreconditionError("box side must be positive");
  const IntervalGrid g = approx.grid(k);
  // Cell j meets [l, l + L]/D iff floor(l q/(D p)) <= j <= ceil((l + L) q/(D p)) - 1.
  const Integer scale = g.denominator * delta.get_num();
  const Integer q = delta.get_den();
  std::uint64_t count = 0;
  std::optional<Integer> last;
  for (const auto& left : g.lefts) {
    Integer first = detail::floor_div(left * q, scale);
    const Integer end = detail::ceil_div((left + g.length) * q, scale) - 1;
    if (last && first <= *last) first = *last + 1;
    if (first <= end) {
      count += Integer(end - first + 1).get_ui();
      last = end;
    }
  }
  return {delta, count};
}

/// Grid boxes of side delta meeting a region made of boxes and dots.
inline BoxCount box_count(const Region& region, const Rational& delta, std::uint64_t limit = kEnumerationLimit * 4) {
  if (sgn(delta) <= 0) throw PreconditionError("box side must be positive");
  std::vector<std::pair<Integer, Integer>> cells;
  auto add_range = [&](const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
    const auto [i0, i1] = detail::cell_range(x0, x1, delta);
    const auto [j0, j1] = detail::cell_range(y0, y1, delta);
    const Integer area = (i1 - i0 + 1) * (j1 - j0 + 1);
    if (area > static_cast<unsigned long>(limit) || cells.size() + area.get_ui() > limit)
      throw EnumerationBudget("box count exceeds enumeration limit");
    for (Integer i = i0; i <= i1; ++i)
      for (Integer j = j0; j <= j1; ++j) cells.emplace_back(i, j);
  };
  for (const auto& piece : region.pieces()) {
    if (const auto* b = std::get_if<Box>(&piece)) {
      add_range(b->x0, b->x1, b->y0, b->y1);
    } else if (const auto* d = std::get_if<Dot>(&piece)) {
      add_range(d->at.x, d->at.x, d->at.y, d->at.y);
    } else {
      throw Unsupported("box counting supports boxes and dots only");
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return {delta, static_cast<std::uint64_t>(cells.size())};
}

inline long double fit_slope(const std::vector<BoxCount>& counts) {
  if (counts.size() < 2) throw PreconditionError("slope fit needs at least two scales");
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long double n = static_cast<long double>(counts.size());
  for (const auto& c : counts) {
    const long double x = -log_of(c.delta);
    const long double y = std::log(static_cast<long double>(c.count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Box counts of I_k at the natural scales delta = A_1, ..., A_k.
inline BoxSeries box_series(const CantorApprox& approx, int k) {
  BoxSeries out;
  for (int j = 1; j <= k; ++j) out.counts.push_back(box_count(approx, k, approx.length(j)));
  out.slope = fit_slope(out.counts);
  return out;
}

}  // namespace hnup
