// Walks through the sparse-power set with a = 1/3: its dimension, the
// growing canonical annuli at k = 2^n, and one verified witness.

#include <fmt/format.h>

#include "hnup/hnup.hpp"

int main() {
  using namespace hnup;
  const RatioSpec spec = RatioSpec::sparse_power(2, Rational(1, 3));

  const DimEstimate dim = dim_estimate_seq(spec, 4096);
  fmt::print("dimension estimate at K=4096: {:.6f} (closed form {:.6f})\n", static_cast<double>(dim.liminf_estimate),
             static_cast<double>(dim.closed_form->value));

  for (int k = 1; k <= 16; k *= 2)
    fmt::print("k={:>2}  a_k={:<8} canonical R/r={}\n", k, to_string(spec.ratio_at(k)),
               to_string(canonical_ratio(spec, k)));

  const CantorApprox approx(spec, 8);
  const Address point = Address::parse("01101001", 2);
  const WitnessSearch w = hnup_witness(approx, point, Rational(50), 8);
  if (!w.witness) {
    fmt::print("no witness: {}\n", w.explanation);
    return 1;
  }
  fmt::print("point {} ; {}\n", to_string(w.witness->point.x), w.explanation);
  fmt::print("annulus center {} radii^2 ({}, {})\n", to_string(w.witness->annulus.center.x),
             to_string(w.witness->annulus.inner_sq), to_string(w.witness->annulus.outer_sq));
  return 0;
}
