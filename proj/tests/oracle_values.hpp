#pragma once

// Reference values computed independently (tests/oracles/freeze_values.py,
// Python Fractions + mpmath) and frozen here.

namespace oracle {

// Endpoints {0, 1/4, 3/4, 1} of the geometric-power (a = 1/4) set at depth 1.
inline constexpr double kGeomE1LogPSquared = -8.082200095406577;
inline constexpr double kGeomE1LogD = -0.6735166746172148;
inline constexpr double kGeomE1D = 0.5099122256638764;
inline constexpr double kGeomE1LevelBound = -11.624480459457216;

// Middle-thirds endpoints at depth 2.
inline constexpr double kThirdsE2LogP = -28.4920841328539;
inline constexpr double kThirdsE2LogD = -1.0175744333162107;

inline constexpr double kThirdsTripleD3 = 0.6057068642773799;   // (2/9)^(1/3)
inline constexpr double kThreePointD = 0.6299605249474366;      // (1/4)^(1/3)

inline constexpr double kLog2OverLog3 = 0.6309297535714574;
inline constexpr double kSparseS4096 = 0.6209246205258744;
inline constexpr double kSparseS2048 = 0.6144289754228933;
inline constexpr double kSparseS3072 = 0.6198324921559056;
inline constexpr double kRandomDim = 0.3302883454474828;        // log 2 / (log 3 + 1)

inline constexpr double kSupLowerM5 = 1.7964888034078543;       // 2 log 5 / log 6
inline constexpr double kLog9OverLog10 = 0.9542425094393249;

inline constexpr double kSeriesPartialL1 = -0.8664339756999315;
inline constexpr double kSeriesLimit = -3.4657359027997265;     // -5 log 2
inline constexpr double kProductModulusThirds = 0.752038698388137;  // log(3 / sqrt 2)

}  // namespace oracle
