#pragma once

// Porosity witnesses: the largest empty ball B(b, c r) inside B(a, r).

#include <cmath>
#include <optional>
#include <utility>

#include "hnup/errors.hpp"
#include "hnup/rational.hpp"
#include "hnup/shapes.hpp"

namespace hnup {

struct PorosityProbe {
  Point2 center;        // a
  Rational radius;      // r
  Point2 ball_center;   // b
  Rational ball_radius; // c r, verified exactly
  Rational ratio;       // c
  double slack = 0.0;   // grid resolution limit on c
};

/// Ratio of radii of the largest empty ball in B(0, 1/n) for the circle family: 1/(2(n+1)).
inline Rational circle_family_ratio(int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  return Rational(1, 2 * (n + 1));
}

/// The ball B((n + 1/2)/(n(n+1)), 1/(2n(n+1))) between the circles of radii 1/(n+1) and 1/n.
inline std::pair<Point2, Rational> circle_family_witness(int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const Rational denom(n * (n + 1));
  return {{(Rational(n) + Rational(1, 2)) / denom, Rational(0)}, Rational(1) / (2 * denom)};
}

/// Porosity constant certified for every compact subset of the real line.
inline Rational line_porosity_constant() { return Rational(1, 2); }

struct EmptyBallOptions {
  int grid = 17;    // points per axis at each level
  int levels = 4;   // refinement passes around the incumbent
};

/// Grid search for the largest ball B(b, rho) inside B(a, r) missing the region.
/// The returned ball is verified with exact arithmetic; the search itself is a
/// lower bound on the porosity ratio at (a, r).
inline PorosityProbe empty_ball_search(const Region& region, const Point2& a, const Rational& r,
                                       EmptyBallOptions options = {}) {
  if (options.grid < 8) throw PreconditionError("grid resolution must be >= 8");
  if (options.levels < 1) throw PreconditionError("need at least one search level");
  if (sgn(r) <= 0) throw PreconditionError("probe radius must be positive");
  if (static_cast<double>(options.grid) * options.grid * options.levels * static_cast<double>(region.pieces().size()) >
      4e9)
    throw BudgetError("empty ball search too large");
  const double ax = a.x.get_d(), ay = a.y.get_d(), rd = r.get_d();
  auto reach = [&](double x, double y) {
    const double inside = rd - std::hypot(x - ax, y - ay);
    return inside <= 0.0 ? 0.0 : std::min(inside, region.distance(x, y));
  };
  Point2 best = a;
  double best_rho = reach(ax, ay);
  Rational half = r;
  Rational spacing = r;
  const int steps = options.grid - 1;
  for (int level = 0; level < options.levels; ++level) {
    spacing = 2 * half / steps;
    const Point2 origin = best;
    for (int i = 0; i <= steps; ++i) {
      const Rational bx = origin.x - half + i * spacing;
      for (int j = 0; j <= steps; ++j) {
        const Rational by = origin.y - half + j * spacing;
        const double rho = reach(bx.get_d(), by.get_d());
        if (rho > best_rho) {
          best_rho = rho;
          best = {bx, by};
        }
      }
    }
    half = spacing;
  }
  PorosityProbe out{a, r, best, Rational(0), Rational(0), std::sqrt(2.0) * spacing.get_d() / rd + 1e-9};
  if (best_rho <= 0.0) return out;
  Rational rho(best_rho * (1.0 - 1e-9));
  for (int attempt = 0; attempt < 64; ++attempt) {
    const bool inside = rho <= r && dist_sq(best, a) <= (r - rho) * (r - rho);
    if (inside && region.misses_open_ball(best, rho)) {
      out.ball_radius = rho;
      out.ratio = rho / r;
      return out;
    }
    rho *= Rational(15, 16);
  }
  return out;
}

}  // namespace hnup
