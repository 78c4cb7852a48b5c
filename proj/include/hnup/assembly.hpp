#pragma once

// Planar and linear assemblies: products I x I with their HNUP witnesses,
// similarity images, and packings of scaled sparse-power components into the
// rings B_n = Ann(0; rho_{n+1}, rho_n).

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hnup/cantor.hpp"
#include "hnup/errors.hpp"
#include "hnup/perfectness.hpp"
#include "hnup/rational.hpp"
#include "hnup/shapes.hpp"

namespace hnup {

/// z -> scale * z + translation.
struct SimilarityMap {
  Rational scale{1};
  Point2 translation{Rational(0), Rational(0)};

  Point2 apply(const Point2& p) const { return {scale * p.x + translation.x, scale * p.y + translation.y}; }
  Box apply(const Box& b) const {
    return {scale * b.x0 + translation.x, scale * b.x1 + translation.x, scale * b.y0 + translation.y,
            scale * b.y1 + translation.y};
  }
  Annulus apply(const Annulus& a) const {
    const Rational s2 = scale * scale;
    return {apply(a.center), a.inner_sq * s2, a.outer_sq * s2};
  }
};

/// Strictly decreasing radii rho_n in (0, 1); default rho_n = 2^{-n^2}, so
/// rho_n / rho_{n+1} = 2^{2n+1} grows without bound.
class RhoSequence {
 public:
  RhoSequence() : rule_([](int n) { return pow2(-static_cast<long>(n) * n); }) {}
  explicit RhoSequence(std::function<Rational(int)> rule) : rule_(std::move(rule)) {}

  Rational rho(int n) const {
    if (n < 1) throw PreconditionError("rho index must be >= 1");
    return rule_(n);
  }
  Rational ratio(int n) const { return rho(n) / rho(n + 1); }
  /// B_n = Ann(0; rho_{n+1}, rho_n).
  Annulus ring(int n) const { return Annulus::from_radii({Rational(0), Rational(0)}, rho(n + 1), rho(n)); }

  /// Checks 0 < rho_{n+1} < rho_n < 1 and increasing ratios for n <= n_max.
  void validate(int n_max) const {
    for (int n = 1; n <= n_max; ++n) {
      const Rational a = rho(n), b = rho(n + 1);
      if (!(sgn(b) > 0 && b < a && a < 1)) throw PreconditionError("rho must decrease strictly inside (0, 1)");
      if (n >= 2 && !(ratio(n) > ratio(n - 1))) throw PreconditionError("rho_n/rho_{n+1} must increase");
    }
  }

 private:
  std::function<Rational(int)> rule_;
};

struct Component {
  int m = 2;
  int dims = 2;
  int depth = 8;  // rendering / analysis depth
  std::shared_ptr<const CantorApprox> approx;
  SimilarityMap map;
  Box bounds;  // image of the unit square (or unit segment)
};

struct PlanarSet {
  int dims = 2;
  std::vector<Component> components;
  bool include_origin = true;
  RhoSequence rho;
};

struct AssemblyOptions {
  int M_max = 5;
  std::function<int(int)> depth_rule = [](int) { return 8; };
  /// Depth available to local witness refinement inside each component.
  int witness_depth = 32;
  RhoSequence rho;
};

/// Squared distances from the origin to the nearest and farthest points of a box.
inline std::pair<Rational, Rational> origin_distance_sq(const Box& b) {
  return box_distance_sq(b, {Rational(0), Rational(0)});
}

namespace detail {

inline PlanarSet build_assembly(const AssemblyOptions& options, int dims) {
  if (options.M_max < 2) throw PreconditionError("M_max must be >= 2");
  options.rho.validate(2 * options.M_max + 2);
  PlanarSet set;
  set.dims = dims;
  set.rho = options.rho;
  for (int m = 2; m <= options.M_max; ++m) {
    Component c;
    c.m = m;
    c.dims = dims;
    c.depth = options.depth_rule(m);
    if (c.depth < 1) throw PreconditionError("depth rule must give depths >= 1");
    c.approx = std::make_shared<const CantorApprox>(RatioSpec::sparse_power(m, Rational(1, m + 1)),
                                                    std::max(c.depth, options.witness_depth));
    const Rational outer = options.rho.rho(2 * m), inner = options.rho.rho(2 * m + 1);
    const Rational side = (outer - inner) / 2;
    const Rational mid = (outer + inner) / 2;
    c.map = SimilarityMap{side, {mid - side / 2, dims == 2 ? Rational(-side / 2) : Rational(0)}};
    c.bounds = c.map.apply(Box{Rational(0), Rational(1), Rational(0), dims == 2 ? Rational(1) : Rational(0)});
    const auto [near, far] = origin_distance_sq(c.bounds);
    if (!(near > inner * inner && far < outer * outer))
      throw ContainmentFailure("component m=" + std::to_string(m) + " leaves ring B_" + std::to_string(2 * m));
    if (dims == 1 && !(c.bounds.x0 >= 0 && c.bounds.x1 <= 1))
      throw ContainmentFailure("component m=" + std::to_string(m) + " leaves [0, 1]");
    set.components.push_back(std::move(c));
  }
  return set;
}

}  // namespace detail

/// {0} together with scaled copies of W_m x W_m placed in the rings B_{2m}.
inline PlanarSet build_E(const AssemblyOptions& options = {}) { return detail::build_assembly(options, 2); }

/// {0} together with scaled copies of W_m placed in B_{2m} on [0, 1].
inline PlanarSet build_W(const AssemblyOptions& options = {}) { return detail::build_assembly(options, 1); }

struct RingCheck {
  int ring = 0;  // index n of B_n
  bool empty = false;
};

/// For each component m, the odd ring B_{2m+1} must miss every component and the origin.
inline std::vector<RingCheck> verify_packing(const PlanarSet& set) {
  std::vector<RingCheck> out;
  for (const auto& c : set.components) {
    const int n = 2 * c.m + 1;
    const Rational outer = set.rho.rho(n), inner = set.rho.rho(n + 1);
    bool empty = true;
    for (const auto& other : set.components) {
      const auto [near, far] = origin_distance_sq(other.bounds);
      if (!(near >= outer * outer || far <= inner * inner)) empty = false;
    }
    out.push_back({n, empty});
  }
  return out;
}

struct ComponentDim {
  int m = 2;
  long double lower = 0.0L;
  long double upper = 0.0L;
};

/// Product-formula bounds for each component: for G_m = W_m x W_m,
/// 2 log m/log(m+1) <= dim <= log m/log(m+1) + 1; for W_m both equal log m/log(m+1).
inline std::vector<ComponentDim> component_dimensions(const PlanarSet& set) {
  std::vector<ComponentDim> out;
  for (const auto& c : set.components) {
    const long double d = std::log(static_cast<long double>(c.m)) / std::log(static_cast<long double>(c.m + 1));
    out.push_back(set.dims == 2 ? ComponentDim{c.m, 2.0L * d, d + 1.0L} : ComponentDim{c.m, d, d});
  }
  return out;
}

/// Ann((x_J, y_J); sqrt(2) r_k, R_k) around the product of two depth-k intervals.
inline Annulus product_annulus(const CantorApprox& approx, const Address& x, const Address& y) {
  const int k = static_cast<int>(x.size());
  if (k < 1 || y.size() != x.size()) throw PreconditionError("product annulus needs equal depths >= 1");
  const BasicInterval jx = approx.interval_of(x), jy = approx.interval_of(y);
  const Rational r = jx.length / 2;
  const Rational R = r + approx.gap(k);
  const Rational inner_sq = 2 * r * r, outer_sq = R * R;
  if (outer_sq <= inner_sq)
    throw DegenerateAnnulus("product annulus at depth " + std::to_string(k) + " has R <= sqrt(2) r");
  return {{jx.midpoint(), jy.midpoint()}, inner_sq, outer_sq};
}

struct ProductWitness {
  Address x, y;
  Point2 point;
  int depth = 0;
  Annulus annulus;
};

struct ProductWitnessSearch {
  std::optional<ProductWitness> witness;
  int depth_budget = 0;
  std::string explanation;
};

/// First depth k <= K whose canonical ratio reaches sqrt(2) M, with the product
/// annulus verified against I_k x I_k. The probed point is the lower-left
/// corner of the addressed square.
inline ProductWitnessSearch product_hnup_witness(const CantorApprox& approx, const Address& x, const Address& y,
                                                 const Rational& M, int K) {
  if (!(M > 1)) throw PreconditionError("target ratio M must exceed 1");
  if (K < 1 || K > approx.depth()) throw PreconditionError("depth budget outside the built approximation");
  const Address fx = x.extended(static_cast<std::size_t>(K)), fy = y.extended(static_cast<std::size_t>(K));
  const Point2 point{approx.interval_of(fx).left, approx.interval_of(fy).left};
  ProductWitnessSearch out;
  out.depth_budget = K;
  const Rational needed = 2 * M * M;
  for (int k = 1; k <= K; ++k) {
    const Rational c = canonical_ratio(approx.spec(), k);
    if (c * c < needed) continue;
    const auto px = fx.prefix(static_cast<std::size_t>(k)), py = fy.prefix(static_cast<std::size_t>(k));
    const Annulus annulus = product_annulus(approx, px, py);
    const SeparationVerdict verdict = separation_descent(approx, k, annulus, 2);
    if (verdict.separates && verdict.sound && annulus.in_bounded_component(point)) {
      out.witness = ProductWitness{px, py, point, k, annulus};
      out.explanation = "product annulus at depth " + std::to_string(k) + " with R/r = " + to_string(c) + "/sqrt(2)";
      return out;
    }
  }
  out.explanation = "no product annulus with R/r >= " + to_string(M) + " up to depth " + std::to_string(K);
  return out;
}

struct Origin {};
struct ComponentPoint {
  std::size_t component = 0;
  Address x;
  Address y;  // ignored for linear assemblies
};
using SetPoint = std::variant<Origin, ComponentPoint>;

struct AdditionalWitness {
  Annulus annulus;      // global coordinates; disjoint from the set
  Point2 point;         // the probed set point, in the bounded component
  Point2 outer_point;   // a set point with |y - x| >= R
  std::string route;
};

/// r, R with R/r >= M such that Ann(x; r, R) misses the set and some set point
/// lies at distance >= R. nullopt when the depth budget is exhausted.
inline std::optional<AdditionalWitness> additional_property_witness(const PlanarSet& set, const SetPoint& x,
                                                                    const Rational& M) {
  if (!(M > 1)) throw PreconditionError("target ratio M must exceed 1");
  auto clear_of = [&](const Annulus& a, std::size_t skip) {
    for (std::size_t i = 0; i < set.components.size(); ++i) {
      if (i == skip) continue;
      const auto [near, far] = box_distance_sq(set.components[i].bounds, a.center);
      if (!(near >= a.outer_sq || far <= a.inner_sq)) return false;
    }
    if (set.include_origin && a.in_open_annulus({Rational(0), Rational(0)})) return false;
    return true;
  };
  if (std::holds_alternative<Origin>(x)) {
    if (!set.include_origin) throw PreconditionError("origin is not part of this set");
    for (std::size_t i = 0; i < set.components.size(); ++i) {
      const Component& c = set.components[i];
      const int n = 2 * c.m + 1;
      if (set.rho.ratio(n) < M) continue;
      const Annulus ring = set.rho.ring(n);
      if (!clear_of(ring, set.components.size())) continue;
      const Point2 outer = c.map.apply(Point2{Rational(0), Rational(0)});
      if (norm_sq(outer) < ring.outer_sq) continue;
      return AdditionalWitness{ring, {Rational(0), Rational(0)}, outer, "empty ring B_" + std::to_string(n)};
    }
    return std::nullopt;
  }
  const auto& cp = std::get<ComponentPoint>(x);
  if (cp.component >= set.components.size()) throw PreconditionError("component index out of range");
  const Component& c = set.components[cp.component];
  const int K = c.approx->depth();
  Annulus local;
  Point2 local_point;
  int depth = 0;
  if (set.dims == 2) {
    const auto search = product_hnup_witness(*c.approx, cp.x, cp.y, M, K);
    if (!search.witness) return std::nullopt;
    local = search.witness->annulus;
    local_point = search.witness->point;
    depth = search.witness->depth;
  } else {
    const auto search = hnup_witness(*c.approx, cp.x, M, K);
    if (!search.witness) return std::nullopt;
    local = search.witness->annulus;
    local_point = search.witness->point;
    depth = search.witness->depth;
  }
  const SeparationVerdict verdict = separation_descent(*c.approx, depth, local, set.dims);
  const Annulus global = c.map.apply(local);
  if (!verdict.separates || !clear_of(global, cp.component)) return std::nullopt;
  return AdditionalWitness{global, c.map.apply(local_point), c.map.apply(*verdict.outer_witness),
                           "component m=" + std::to_string(c.m) + " witness at depth " + std::to_string(depth)};
}

/// Render-depth geometry of every component (global coordinates) plus the origin.
inline Region to_region(const PlanarSet& set, std::uint64_t box_limit = kEnumerationLimit) {
  Region out;
  std::uint64_t total = 0;
  for (const auto& c : set.components) {
    const auto ivs = c.approx->intervals(c.depth);
    total += set.dims == 2 ? ivs.size() * ivs.size() : ivs.size();
    if (total > box_limit) throw EnumerationBudget("assembly region exceeds box limit");
    for (const auto& ix : ivs) {
      if (set.dims == 1) {
        out.add(c.map.apply(segment(ix.left, ix.right())));
        continue;
      }
      for (const auto& iy : ivs) out.add(c.map.apply(Box{ix.left, ix.right(), iy.left, iy.right()}));
    }
  }
  if (set.include_origin) out.add(Dot{{Rational(0), Rational(0)}});
  return out;
}

}  // namespace hnup
