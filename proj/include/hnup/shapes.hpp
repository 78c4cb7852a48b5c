#pragma once

// Planar regions built from closed pieces with exact rational geometry.
// Searches run in double; every accepted answer is re-checked exactly.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hnup/cantor.hpp"
#include "hnup/rational.hpp"

namespace hnup {

/// Closed axis-parallel box [x0, x1] x [y0, y1]; degenerate sides allowed.
struct Box {
  Rational x0, x1, y0, y1;
};
/// Circle |z - center| = radius.
struct Circle {
  Point2 center;
  Rational radius;
};
/// Closed disk |z - center| <= radius.
struct Disk {
  Point2 center;
  Rational radius;
};
struct Dot {
  Point2 at;
};

using Piece = std::variant<Box, Circle, Disk, Dot>;

namespace detail {

inline Rational clamp_gap(const Rational& lo, const Rational& hi, const Rational& v) {
  if (v < lo) return lo - v;
  if (v > hi) return v - hi;
  return Rational(0);
}

inline double clamp_gap(double lo, double hi, double v) { return v < lo ? lo - v : (v > hi ? v - hi : 0.0); }

}  // namespace detail

/// Squared distance from p to the nearest and farthest points of a box.
inline std::pair<Rational, Rational> box_distance_sq(const Box& b, const Point2& p) {
  const Rational dx = detail::clamp_gap(b.x0, b.x1, p.x);
  const Rational dy = detail::clamp_gap(b.y0, b.y1, p.y);
  const Rational fx = std::max(abs(b.x0 - p.x), abs(b.x1 - p.x));
  const Rational fy = std::max(abs(b.y0 - p.y), abs(b.y1 - p.y));
  return {dx * dx + dy * dy, fx * fx + fy * fy};
}

class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}

  void add(Piece piece) { pieces_.push_back(std::move(piece)); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  /// Approximate Euclidean distance from (x, y) to the region.
  double distance(double x, double y) const {
    double best = INFINITY;
    for (const auto& piece : pieces_) best = std::min(best, piece_distance(piece, x, y));
    return best;
  }

  /// Exact test: the open ball B(center, radius) contains no point of the region.
  bool misses_open_ball(const Point2& center, const Rational& radius) const {
    const Rational r2 = radius * radius;
    for (const auto& piece : pieces_) {
      const bool clear = std::visit(
          [&](const auto& p) -> bool {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Box>) {
              return box_distance_sq(p, center).first >= r2;
            } else if constexpr (std::is_same_v<T, Dot>) {
              return dist_sq(p.at, center) >= r2;
            } else if constexpr (std::is_same_v<T, Disk>) {
              const Rational reach = p.radius + radius;
              return dist_sq(p.center, center) >= reach * reach;
            } else {
              const Rational d2 = dist_sq(p.center, center);
              const Rational outer = p.radius + radius;
              if (d2 >= outer * outer) return true;
              const Rational inner = p.radius - radius;
              return sgn(inner) >= 0 && d2 <= inner * inner;
            }
          },
          piece);
      if (!clear) return false;
    }
    return true;
  }

 private:
  static double piece_distance(const Piece& piece, double x, double y) {
    return std::visit(
        [&](const auto& p) -> double {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Box>) {
            const double dx = detail::clamp_gap(p.x0.get_d(), p.x1.get_d(), x);
            const double dy = detail::clamp_gap(p.y0.get_d(), p.y1.get_d(), y);
            return std::hypot(dx, dy);
          } else if constexpr (std::is_same_v<T, Dot>) {
            return std::hypot(p.at.x.get_d() - x, p.at.y.get_d() - y);
          } else if constexpr (std::is_same_v<T, Disk>) {
            return std::max(0.0, std::hypot(p.center.x.get_d() - x, p.center.y.get_d() - y) - p.radius.get_d());
          } else {
            return std::fabs(std::hypot(p.center.x.get_d() - x, p.center.y.get_d() - y) - p.radius.get_d());
          }
        },
        piece);
  }

  std::vector<Piece> pieces_;
};

inline Box segment(const Rational& x0, const Rational& x1) { return Box{x0, x1, Rational(0), Rational(0)}; }

inline Region unit_segment() { return Region({segment(Rational(0), Rational(1))}); }

/// Depth-k approximation I_k placed on the real axis.
inline Region cantor_on_line(const CantorApprox& approx, int k) {
  Region out;
  for (const auto& iv : approx.intervals(k)) out.add(segment(iv.left, iv.right()));
  return out;
}

/// Depth-k approximation I_k x I_k as a union of squares.
inline Region cantor_product(const CantorApprox& approx, int k) {
  const auto ivs = approx.intervals(k);
  Region out;
  for (const auto& x : ivs)
    for (const auto& y : ivs) out.add(Box{x.left, x.right(), y.left, y.right()});
  return out;
}

/// Circles C(0, 1/n), n = 1..n_max, plus their limit point 0.
inline Region circle_family(int n_max) {
  Region out;
  for (int n = 1; n <= n_max; ++n) out.add(Circle{{Rational(0), Rational(0)}, Rational(1, n)});
  out.add(Dot{{Rational(0), Rational(0)}});
  return out;
}

/// Each circle of circle_family replaced by `points` equally spaced points,
/// coordinates rounded to multiples of 2^-40 so the point set is exact.
inline Region discrete_circle_family(int n_max, int points) {
  Region out;
  auto snap = [](double v) { return Rational(std::ldexp(std::nearbyint(std::ldexp(v, 40)), -40)); };
  for (int n = 1; n <= n_max; ++n) {
    for (int j = 0; j < points; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / points;
      out.add(Dot{{snap(std::cos(theta) / n), snap(std::sin(theta) / n)}});
    }
  }
  out.add(Dot{{Rational(0), Rational(0)}});
  return out;
}

inline Region full_disk(Point2 center, Rational radius) { return Region({Disk{std::move(center), std::move(radius)}}); }

}  // namespace hnup
