#pragma once

// Separating annuli for Cantor-like sets: canonical annuli around basic
// intervals, exact finite-depth separation checks, HNUP witnesses and the
// uniform-perfectness modulus bound.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hnup/cantor.hpp"
#include "hnup/errors.hpp"
#include "hnup/rational.hpp"
#include "hnup/shapes.hpp"

namespace hnup {

/// Open annulus r < |z - center| < R. Radii are stored squared so that
/// irrational radii such as sqrt(2) r stay exact.
struct Annulus {
  Point2 center;
  Rational inner_sq;
  Rational outer_sq;

  static Annulus from_radii(Point2 center, const Rational& inner, const Rational& outer) {
    if (sgn(inner) <= 0 || !(inner < outer)) throw PreconditionError("annulus needs 0 < r < R");
    return {std::move(center), inner * inner, outer * outer};
  }

  static Annulus from_squares(Point2 center, Rational inner_sq, Rational outer_sq) {
    if (sgn(inner_sq) <= 0 || !(inner_sq < outer_sq)) throw PreconditionError("annulus needs 0 < r < R");
    return {std::move(center), std::move(inner_sq), std::move(outer_sq)};
  }

  Rational ratio_sq() const { return outer_sq / inner_sq; }
  long double ratio() const { return std::sqrt(to_long_double(ratio_sq())); }
  long double modulus() const { return 0.5L * log_of(ratio_sq()); }
  long double inner() const { return std::sqrt(to_long_double(inner_sq)); }
  long double outer() const { return std::sqrt(to_long_double(outer_sq)); }

  /// R/r when it is rational.
  std::optional<Rational> exact_ratio() const {
    const Rational q = ratio_sq();
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    Integer num, den;
    mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
    return Rational(num, den);
  }

  bool in_bounded_component(const Point2& p) const { return dist_sq(p, center) <= inner_sq; }
  bool in_open_annulus(const Point2& p) const {
    const Rational d = dist_sq(p, center);
    return inner_sq < d && d < outer_sq;
  }
};

struct SeparationVerdict {
  bool separates = false;
  std::optional<Point2> inner_witness;
  std::optional<Point2> outer_witness;
  int depth_used = 0;
  /// The verdict provably holds for the limit set, not just for I_k.
  bool sound = false;
  std::size_t nodes_visited = 0;
};

inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 20;

/// Decides whether `annulus` separates the depth-k approximation (dims = 1:
/// I_k on the real axis; dims = 2: I_k x I_k). Subtrees lying wholly outside
/// the outer circle or inside the inner closed disk are pruned, so only nodes
/// straddling a boundary circle are refined.
inline SeparationVerdict separation_descent(const CantorApprox& approx, int k, const Annulus& annulus, int dims,
                                            std::size_t node_budget = kDefaultNodeBudget) {
  if (dims != 1 && dims != 2) throw PreconditionError("dims must be 1 or 2");
  approx.length(k);  // throws when depth k is unbuilt or inexact
  struct Node {
    int depth;
    Rational x0, y0;
  };
  SeparationVerdict out;
  out.depth_used = k;
  std::vector<Node> stack{{0, Rational(0), Rational(0)}};
  const int m = approx.m();
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (++out.nodes_visited > node_budget)
      throw EnumerationBudget("separation check exceeded node budget " + std::to_string(node_budget));
    const Rational& len = approx.length(node.depth);
    const Box box{node.x0, node.x0 + len, node.y0, dims == 2 ? Rational(node.y0 + len) : node.y0};
    const auto [dmin, dmax] = box_distance_sq(box, annulus.center);
    if (dmin >= annulus.outer_sq) {
      if (!out.outer_witness) out.outer_witness = Point2{box.x0, box.y0};
      continue;
    }
    if (dmax <= annulus.inner_sq) {
      if (!out.inner_witness) out.inner_witness = Point2{box.x0, box.y0};
      continue;
    }
    if (node.depth == k) {
      // A depth-k box meets the open annulus. If one of its corners (a point
      // of the limit set) lies inside, no deeper approximation can separate.
      const Point2 corners[4] = {{box.x0, box.y0}, {box.x1, box.y0}, {box.x0, box.y1}, {box.x1, box.y1}};
      out.separates = false;
      out.sound = false;
      for (const auto& c : corners)
        if (annulus.in_open_annulus(c)) out.sound = true;
      return out;
    }
    const Rational& step = approx.child_step(node.depth + 1);
    for (int i = m - 1; i >= 0; --i) {
      const Rational x = node.x0 + i * step;
      if (dims == 1) {
        stack.push_back({node.depth + 1, x, node.y0});
      } else {
        for (int j = m - 1; j >= 0; --j) stack.push_back({node.depth + 1, x, node.y0 + j * step});
      }
    }
  }
  out.separates = out.inner_witness.has_value() && out.outer_witness.has_value();
  // Every point of I lies in I_k, so a missing component is missing for I too.
  out.sound = true;
  return out;
}

inline SeparationVerdict is_separating(const Annulus& annulus, const CantorApprox& approx, int k,
                                       std::size_t node_budget = kDefaultNodeBudget) {
  return separation_descent(approx, k, annulus, 1, node_budget);
}

/// R/r of the canonical depth-k annulus: 1 + 2 (1/a_k - m)/(m - 1).
inline Rational canonical_ratio(const RatioSpec& spec, long k) {
  const int m = spec.m();
  Rational out = Rational(1) + Rational(2, m - 1) * (Rational(1) / spec.ratio_at(k) - m);
  out.canonicalize();
  return out;
}

/// Ann(midpoint of J; A_k/2, A_k/2 + e_k) around the addressed depth-k interval J.
inline Annulus canonical_annulus(const CantorApprox& approx, const Address& address) {
  const int k = static_cast<int>(address.size());
  if (k < 1) throw PreconditionError("canonical annulus needs depth >= 1");
  const BasicInterval J = approx.interval_of(address);
  const Rational r = J.length / 2;
  return Annulus::from_radii({J.midpoint(), Rational(0)}, r, r + approx.gap(k));
}

struct ModulusBound {
  Rational ratio;  // M
  long double log_ratio = 0.0L;
};

/// No annulus separating I has R/r above M = 1 + 2 (1/delta - m)/(m - 1), delta = inf a_k.
inline ModulusBound up_modulus_bound(int m, const Rational& delta) {
  if (m < 2) throw PreconditionError("m must be >= 2");
  if (sgn(delta) <= 0 || delta * (m + 1) > 1) throw PreconditionError("delta must lie in (0, 1/(m+1)]");
  Rational M = Rational(1) + Rational(2, m - 1) * (Rational(1) / delta - m);
  M.canonicalize();
  return {M, log_of(M)};
}

struct HnupWitness {
  Address address;  // depth-k prefix of the probed point
  Point2 point;
  int depth = 0;
  Annulus annulus;
  Rational achieved_ratio;
};

struct WitnessSearch {
  std::optional<HnupWitness> witness;
  int depth_budget = 0;
  /// True only when the ratio bound proves no separating annulus reaches M.
  bool conclusive_negative = false;
  std::string explanation;
};

/// Scans canonical annuli along the point's address for depths 1..K.
/// The point is the left endpoint of the addressed interval (a point of I).
inline WitnessSearch hnup_witness(const CantorApprox& approx, const Address& point_address, const Rational& M, int K) {
  if (!(M > 1)) throw PreconditionError("target ratio M must exceed 1");
  if (K < 1 || K > approx.depth()) throw PreconditionError("depth budget outside the built approximation");
  const Address full = point_address.extended(static_cast<std::size_t>(K));
  const Point2 point{approx.interval_of(full).left, Rational(0)};
  WitnessSearch out;
  out.depth_budget = K;
  for (int k = 1; k <= K; ++k) {
    const Rational ratio = canonical_ratio(approx.spec(), k);
    if (ratio < M) continue;
    const Address prefix = full.prefix(static_cast<std::size_t>(k));
    const Annulus annulus = canonical_annulus(approx, prefix);
    const SeparationVerdict verdict = is_separating(annulus, approx, k);
    if (verdict.separates && verdict.sound && annulus.in_bounded_component(point)) {
      out.witness = HnupWitness{prefix, point, k, annulus, ratio};
      out.explanation = "canonical annulus at depth " + std::to_string(k) + " separates with ratio " + to_string(ratio);
      return out;
    }
  }
  if (const auto* c = std::get_if<Constant>(&approx.spec().rule())) {
    const ModulusBound bound = up_modulus_bound(approx.m(), c->a);
    if (M > bound.ratio) {
      out.conclusive_negative = true;
      out.explanation = "uniformly perfect: every separating annulus has R/r <= " + to_string(bound.ratio);
      return out;
    }
  }
  out.explanation = "no canonical annulus with R/r >= " + to_string(M) + " up to depth " + std::to_string(K) +
                    " (inconclusive: budget exhausted)";
  return out;
}

struct BruteForceResult {
  std::optional<Rational> max_ratio;
  Rational center;
  Rational inner;
  Rational outer;
  std::size_t centers = 0;
  std::size_t separators = 0;
};

namespace detail {

/// Scan over centers at interval and gap midpoints (doubled coordinates).
template <class Int>
void scan_separators(const std::vector<Int>& lefts, const Int& length, BruteForceResult& out, Int& best_R,
                     Int& best_r, Int& best_c) {
  const std::size_t n = lefts.size();
  std::vector<Int> centers;
  centers.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    centers.push_back(2 * lefts[i] + length);
    if (i + 1 < n) centers.push_back(lefts[i] + length + lefts[i + 1]);
  }
  const Int len2 = 2 * length;
  bool have = false;
  std::vector<std::pair<Int, Int>> left_side, right_side;
  left_side.reserve(n);
  right_side.reserve(n);
  for (const Int& C : centers) {
    ++out.centers;
    left_side.clear();
    right_side.clear();
    std::optional<std::pair<Int, Int>> containing;
    for (std::size_t i = 0; i < n; ++i) {
      const Int lo = 2 * lefts[i], hi = lo + len2;
      if (hi < C) {
        left_side.emplace_back(C - hi, C - lo);
      } else if (lo > C) {
        right_side.emplace_back(lo - C, hi - C);
      } else {
        const Int a = C - lo, b = hi - C;
        containing = std::make_pair(Int(0), a > b ? a : b);
      }
    }
    // Left-side images increase in lo as the index decreases.
    std::size_t li = left_side.size(), ri = 0;
    bool started = false;
    Int cur_hi = 0;
    auto visit = [&](const Int& lo, const Int& hi) {
      if (started && lo > cur_hi && cur_hi > 0) {
        ++out.separators;
        if (!have || lo * best_r > best_R * cur_hi) {
          have = true;
          best_R = lo;
          best_r = cur_hi;
          best_c = C;
        }
      }
      if (!started || hi > cur_hi) cur_hi = hi;
      started = true;
    };
    if (containing) visit(containing->first, containing->second);
    while (li > 0 || ri < right_side.size()) {
      if (ri == right_side.size() || (li > 0 && left_side[li - 1].first <= right_side[ri].first)) {
        visit(left_side[li - 1].first, left_side[li - 1].second);
        --li;
      } else {
        visit(right_side[ri].first, right_side[ri].second);
        ++ri;
      }
    }
  }
  if (!have) best_R = 0;
}

}  // namespace detail

/// Largest R/r among separating annuli centered at interval or gap midpoints of
/// I_k with radii at consecutive distinct endpoint distances. Ties keep the
/// smallest center, then the smallest r.
inline BruteForceResult max_separating_ratio_bruteforce(const CantorApprox& approx, int k) {
  approx.require_enumerable(k, std::uint64_t{1} << 14);
  const IntervalGrid g = approx.grid(k);
  BruteForceResult out;
  const Integer den2 = 2 * g.denominator;
  auto finish = [&](const Integer& R, const Integer& r, const Integer& c) {
    if (sgn(R) == 0) return;
    out.max_ratio = Rational(R, r);
    out.max_ratio->canonicalize();
    out.center = Rational(c, den2);
    out.inner = Rational(r, den2);
    out.outer = Rational(R, den2);
    out.center.canonicalize();
    out.inner.canonicalize();
    out.outer.canonicalize();
  };
  if (to_int128(g.denominator, 60)) {
    std::vector<__int128> lefts;
    lefts.reserve(g.lefts.size());
    for (const auto& l : g.lefts) lefts.push_back(*to_int128(l));
    __int128 R = 0, r = 0, c = 0;
    detail::scan_separators<__int128>(lefts, *to_int128(g.length), out, R, r, c);
    auto big = [](__int128 v) {
      Integer z;
      const auto u = static_cast<unsigned __int128>(v);
      const std::uint64_t words[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
      mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
      return z;
    };
    finish(big(R), big(r), big(c));
  } else {
    Integer R, r, c;
    detail::scan_separators<Integer>(g.lefts, g.length, out, R, r, c);
    finish(R, r, c);
  }
  return out;
}

}  // namespace hnup
