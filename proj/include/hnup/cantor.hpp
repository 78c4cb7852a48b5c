#pragma once

// Finite-depth approximations I_k of a Cantor-like set in [0, 1].
//
// Each basic interval of I_{k-1} (length A_{k-1}) holds m equally spaced
// children of length A_k = a_k A_{k-1}, separated by gaps e_k with
//
//   (m - 1) e_k = A_{k-1} - m A_k,
//
// and the outermost children share the parent's endpoints. Lengths and gaps
// are kept both as exact rationals (while they fit the bit budget) and as
// compensated long-double logs.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hnup/errors.hpp"
#include "hnup/random_stream.hpp"
#include "hnup/ratio_spec.hpp"
#include "hnup/rational.hpp"

namespace hnup {

inline constexpr std::size_t kDefaultExactBudgetBits = 1'000'000;
/// Largest m^k that any operation will enumerate.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

struct DepthState {
  int depth = 0;
  NeumaierSum log_length_sum;  // running sum of log a_j
  long double log_length = 0.0L;
  long double log_gap = std::numeric_limits<long double>::quiet_NaN();
  std::optional<Rational> ratio;   // a_k, absent at depth 0
  std::optional<Rational> length;  // A_k
  std::optional<Rational> gap;     // e_k, absent at depth 0

  bool exact() const { return length.has_value(); }
};

/// One refinement step. Exact values are dropped once either A_{k+1} or
/// e_{k+1} exceeds `budget_bits`; the log representation always continues.
inline DepthState refine(const DepthState& state, const Rational& a_next, int m,
                         std::size_t budget_bits = kDefaultExactBudgetBits,
                         std::optional<long double> log_a_next = std::nullopt) {
  if (sgn(a_next) <= 0 || a_next * m >= 1) throw PreconditionError("refine: ratio outside (0, 1/m)");
  DepthState next;
  next.depth = state.depth + 1;
  next.ratio = a_next;
  next.log_length_sum = state.log_length_sum;
  next.log_length_sum.add(log_a_next ? *log_a_next : log_of(a_next));
  next.log_length = next.log_length_sum.value();
  next.log_gap = state.log_length + log_of(Rational(1) - m * a_next) - std::log(static_cast<long double>(m - 1));
  if (state.exact()) {
    Rational length = a_next * *state.length;
    Rational gap = (*state.length - m * length) / (m - 1);
    if (bit_size(length) <= budget_bits && bit_size(gap) <= budget_bits) {
      next.length = std::move(length);
      next.gap = std::move(gap);
    }
  }
  return next;
}

/// Word over {0, ..., m-1}; digit i picks the i-th child from the left.
struct Address {
  std::vector<int> digits;

  std::size_t size() const { return digits.size(); }
  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;

  Address prefix(std::size_t length) const {
    return Address{{digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(length)}};
  }

  /// Pads with zeros (the leftmost descendant) up to `length`.
  Address extended(std::size_t length) const {
    Address out = *this;
    if (out.digits.size() < length) out.digits.resize(length, 0);
    return out;
  }

  /// Plain digit string for m <= 10, dot-separated otherwise. Depth 0 is "".
  std::string to_string(int m) const {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (m > 10 && i > 0) out += '.';
      out += m > 10 ? std::to_string(digits[i]) : std::string(1, static_cast<char>('0' + digits[i]));
    }
    return out;
  }

  static Address parse(std::string_view text, int m) {
    Address out;
    if (text.empty()) return out;
    auto push = [&](int d) {
      if (d < 0 || d >= m) throw PreconditionError("address digit out of range");
      out.digits.push_back(d);
    };
    if (m > 10) {
      std::size_t start = 0;
      while (start <= text.size()) {
        const auto dot = text.find('.', start);
        const auto piece = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (piece.empty()) throw PreconditionError("malformed address");
        push(std::stoi(std::string(piece)));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
      }
    } else {
      for (char c : text) {
        if (c < '0' || c > '9') throw PreconditionError("malformed address");
        push(c - '0');
      }
    }
    return out;
  }

  /// Address of the interval with left-to-right index `index` at depth k.
  static Address from_index(std::uint64_t index, int m, int k) {
    Address out;
    out.digits.assign(static_cast<std::size_t>(k), 0);
    for (int i = k - 1; i >= 0; --i) {
      out.digits[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(m));
      index /= static_cast<std::uint64_t>(m);
    }
    return out;
  }

  std::uint64_t index(int m) const {
    std::uint64_t out = 0;
    for (int d : digits) out = out * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(d);
    return out;
  }
};

inline std::size_t common_prefix(const Address& a, const Address& b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a.digits[n] == b.digits[n]) ++n;
  return n;
}

struct BasicInterval {
  Address address;
  Rational left;
  Rational length;

  Rational right() const { return left + length; }
  Rational midpoint() const { return left + length / 2; }
};

/// Sorted endpoints of all depth-k basic intervals; 2 m^k points.
struct EndpointSet {
  int depth = 0;
  std::vector<Rational> points;
};

/// Point fell strictly inside a gap first opened at `depth`.
struct Outside {
  int depth = 0;
  friend bool operator==(const Outside&, const Outside&) = default;
};

using Location = std::variant<Address, Outside>;

/// All depth-k intervals as integers over one common denominator.
/// Interval i is [lefts[i], lefts[i] + length] / denominator, sorted left to right.
struct IntervalGrid {
  int depth = 0;
  Integer denominator;
  Integer length;
  std::vector<Integer> lefts;
};

class CantorApprox {
 public:
  struct Options {
    std::size_t budget_bits = kDefaultExactBudgetBits;
    bool exact = true;
  };

  CantorApprox(RatioSpec spec, int depth) : CantorApprox(std::move(spec), depth, Options{}) {}

  CantorApprox(RatioSpec spec, int depth, Options options) : spec_(std::move(spec)), options_(options) {
    if (depth < 0) throw PreconditionError("depth must be >= 0");
    DepthState root;
    root.log_length = 0.0L;
    if (options_.exact) root.length = Rational(1);
    states_.reserve(static_cast<std::size_t>(depth) + 1);
    states_.push_back(std::move(root));
    steps_.emplace_back(0);
    for (int k = 1; k <= depth; ++k) {
      const DepthState& prev = states_.back();
      DepthState next = refine(prev, spec_.ratio_at(k), spec_.m(), options_.budget_bits, spec_.log_ratio_at(k));
      if (k >= 2 && !spec_.relaxed() && next.exact() && states_.back().exact() && !(*next.gap < *prev.gap))
        throw InvariantViolation("gap sequence not strictly decreasing at depth " + std::to_string(k));
      if (k >= 2 && spec_.relaxed() && next.log_gap >= prev.log_gap)
        warnings_.push_back("gap e_" + std::to_string(k) + " does not decrease (relaxed ratio)");
      steps_.push_back(next.exact() ? Rational(*next.length + *next.gap) : Rational(0));
      states_.push_back(std::move(next));
    }
  }

  const RatioSpec& spec() const { return spec_; }
  int m() const { return spec_.m(); }
  int depth() const { return static_cast<int>(states_.size()) - 1; }
  const Options& options() const { return options_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const DepthState& state(int k) const {
    check_depth(k);
    return states_[static_cast<std::size_t>(k)];
  }

  /// Exact A_k; throws ExactBudgetExceeded when it was dropped.
  const Rational& length(int k) const { return *require_exact(k).length; }
  /// Exact e_k, k >= 1.
  const Rational& gap(int k) const {
    if (k < 1) throw PreconditionError("gap index must be >= 1");
    return *require_exact(k).gap;
  }
  /// Offset between consecutive children at depth k: A_k + e_k.
  const Rational& child_step(int k) const {
    require_exact(k);
    return steps_[static_cast<std::size_t>(k)];
  }

  /// Deepest depth with exact values.
  int exact_depth() const {
    int k = 0;
    while (k < depth() && states_[static_cast<std::size_t>(k) + 1].exact()) ++k;
    return states_[0].exact() ? k : -1;
  }

  Rational gap_floor() const { return spec_.gap_floor(); }

  BasicInterval interval_of(const Address& address) const {
    const int k = static_cast<int>(address.size());
    require_exact(k);
    Rational left(0);
    for (int j = 1; j <= k; ++j) {
      const int digit = address.digits[static_cast<std::size_t>(j - 1)];
      if (digit < 0 || digit >= m()) throw PreconditionError("address digit out of range");
      left += digit * steps_[static_cast<std::size_t>(j)];
    }
    return {address, left, *states_[static_cast<std::size_t>(k)].length};
  }

  /// Left endpoint of child `digit` of an interval at depth k-1 whose left end is `parent_left`.
  Rational child_left(const Rational& parent_left, int k, int digit) const {
    return parent_left + digit * child_step(k);
  }

  std::uint64_t count(int k) const {
    std::uint64_t n = 1;
    for (int j = 0; j < k; ++j) {
      n *= static_cast<std::uint64_t>(m());
      if (n > kEnumerationLimit) return kEnumerationLimit + 1;
    }
    return n;
  }

  void require_enumerable(int k, std::uint64_t limit = kEnumerationLimit) const {
    if (count(k) > limit)
      throw EnumerationBudget("refusing to enumerate m^k = " + std::to_string(m()) + "^" + std::to_string(k) +
                              " intervals (limit " + std::to_string(limit) + ")");
  }

  IntervalGrid grid(int k) const {
    require_exact(k);
    require_enumerable(k);
    IntervalGrid g;
    g.depth = k;
    g.denominator = states_[static_cast<std::size_t>(k)].length->get_den();
    for (int j = 1; j <= k; ++j) mpz_lcm(g.denominator.get_mpz_t(), g.denominator.get_mpz_t(),
                                         steps_[static_cast<std::size_t>(j)].get_den_mpz_t());
    auto scaled = [&](const Rational& q) {
      Integer out = q.get_num() * (g.denominator / q.get_den());
      return out;
    };
    g.length = scaled(*states_[static_cast<std::size_t>(k)].length);
    g.lefts.assign(1, Integer(0));
    for (int j = 1; j <= k; ++j) {
      const Integer step = scaled(steps_[static_cast<std::size_t>(j)]);
      std::vector<Integer> next;
      next.reserve(g.lefts.size() * static_cast<std::size_t>(m()));
      for (const auto& left : g.lefts)
        for (int i = 0; i < m(); ++i) next.push_back(left + i * step);
      g.lefts = std::move(next);
    }
    return g;
  }

  std::vector<BasicInterval> intervals(int k) const {
    const IntervalGrid g = grid(k);
    std::vector<BasicInterval> out;
    out.reserve(g.lefts.size());
    const Rational length(g.length, g.denominator);
    for (std::size_t i = 0; i < g.lefts.size(); ++i) {
      Rational left(g.lefts[i], g.denominator);
      left.canonicalize();
      Rational len = length;
      len.canonicalize();
      out.push_back({Address::from_index(i, m(), k), std::move(left), std::move(len)});
    }
    return out;
  }

  EndpointSet endpoints(int k) const {
    const IntervalGrid g = grid(k);
    EndpointSet out{k, {}};
    out.points.reserve(2 * g.lefts.size());
    for (const auto& left : g.lefts) {
      Rational lo(left, g.denominator), hi(left + g.length, g.denominator);
      lo.canonicalize();
      hi.canonicalize();
      out.points.push_back(std::move(lo));
      out.points.push_back(std::move(hi));
    }
    return out;
  }

  /// Address of the depth-k interval containing x, or the depth of the first gap holding x.
  Location locate(const Rational& x, int k) const {
    if (x < 0 || x > 1) throw PreconditionError("locate: x must lie in [0, 1]");
    require_exact(k);
    Address address;
    Rational left(0);
    for (int j = 1; j <= k; ++j) {
      const Rational& step = steps_[static_cast<std::size_t>(j)];
      const Rational& len = *states_[static_cast<std::size_t>(j)].length;
      Rational offset = (x - left) / step;
      Integer idx = offset.get_num() / offset.get_den();  // floor for non-negative values
      int digit = idx >= m() ? m() - 1 : static_cast<int>(idx.get_si());
      Rational child = left + digit * step;
      if (x > child + len) return Outside{j};
      address.digits.push_back(digit);
      left = std::move(child);
    }
    return address;
  }

 private:
  void check_depth(int k) const {
    if (k < 0 || k > depth())
      throw PreconditionError("depth " + std::to_string(k) + " outside built range 0.." + std::to_string(depth()));
  }

  const DepthState& require_exact(int k) const {
    check_depth(k);
    const DepthState& s = states_[static_cast<std::size_t>(k)];
    if (!s.exact()) throw ExactBudgetExceeded(k, options_.budget_bits);
    return s;
  }

  RatioSpec spec_;
  Options options_;
  std::vector<DepthState> states_;
  std::vector<Rational> steps_;
  std::vector<std::string> warnings_;
};

/// Non-negative mpz value as __int128, or nullopt above `max_bits`.
inline std::optional<__int128> to_int128(const Integer& z, std::size_t max_bits = 120) {
  if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > max_bits) return std::nullopt;
  std::uint64_t words[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(words, &count, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
  return static_cast<__int128>((static_cast<unsigned __int128>(words[1]) << 64) | words[0]);
}

/// `count` addresses of the given depth with digits drawn from the counter stream.
inline std::vector<Address> sample_addresses(std::uint64_t seed, int count, int m, int depth) {
  const CounterStream stream(seed);
  std::vector<Address> out;
  for (int i = 0; i < count; ++i) {
    Address a;
    for (int j = 0; j < depth; ++j)
      a.digits.push_back(static_cast<int>(stream.at(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)) %
                                          static_cast<std::uint64_t>(m)));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace hnup
