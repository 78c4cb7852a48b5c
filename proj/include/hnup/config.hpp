#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "hnup/cantor.hpp"
#include "hnup/errors.hpp"
#include "hnup/ratio_spec.hpp"
#include "hnup/report.hpp"

namespace hnup {

/// Everything a command needs; mirrors the JSON accepted by --config.
struct RunConfig {
  int m = 2;
  std::string variant = "constant";
  std::string a = "1/3";
  std::vector<std::string> ratios;  // explicit variant only
  std::uint64_t seed = 1;
  unsigned precision_bits = 64;
  bool relaxed = false;

  long depth = 8;
  long budget_bits = static_cast<long>(kDefaultExactBudgetBits);
  double tol = 1e-12;
  double window = 0.25;
  std::string target_ratio = "100";
  int M_max = 5;
  int dims = 2;
  int samples = 10;

  std::string out;
  std::string format = "json";

  RatioSpec spec() const {
    const Admissibility adm = relaxed ? Admissibility::relaxed : Admissibility::strict;
    if (variant == "constant") return {m, Constant{parse_rational(a)}, adm};
    if (variant == "sparse-power") return {m, SparsePower{parse_rational(a)}, adm};
    if (variant == "geometric-power") return {m, GeometricPower{parse_rational(a)}, adm};
    if (variant == "explicit") {
      std::vector<Rational> list;
      for (const auto& s : ratios) list.push_back(parse_rational(s));
      if (list.empty()) throw PreconditionError("explicit variant needs --ratios");
      return {m, Explicit{std::move(list)}, adm};
    }
    if (variant == "random") return {m, RandomUniform{seed, precision_bits}, adm};
    throw PreconditionError("unknown variant '" + variant + "'");
  }

  Rational target() const { return parse_rational(target_ratio); }

  std::string output_dir() const {
    if (!out.empty()) return out;
    if (const char* env = std::getenv("HNUP_OUTPUT_DIR"); env && *env) return env;
    return ".";
  }

  void validate() const {
    (void)spec();
    if (depth < 0) throw PreconditionError("depth must be >= 0");
    if (budget_bits <= 0) throw PreconditionError("budget must be positive");
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
    if (!(window > 0.0 && window <= 1.0)) throw PreconditionError("window must lie in (0, 1]");
    if (M_max < 2) throw PreconditionError("M_max must be >= 2");
    if (dims != 1 && dims != 2) throw PreconditionError("dims must be 1 or 2");
    if (samples < 1) throw PreconditionError("samples must be positive");
    if (format != "json" && format != "csv" && format != "svg") throw PreconditionError("format must be json, csv or svg");
  }
};

/// Output echo: excludes paths so reports stay independent of where they were written.
inline json to_json(const RunConfig& c) {
  json j = {{"m", c.m},           {"variant", c.variant},     {"a", c.a},
            {"ratios", c.ratios}, {"seed", c.seed},           {"precision_bits", c.precision_bits},
            {"relaxed", c.relaxed}, {"depth", c.depth},       {"budget_bits", c.budget_bits},
            {"tol", c.tol},       {"window", c.window},       {"target_ratio", c.target_ratio},
            {"M_max", c.M_max},   {"dims", c.dims},           {"samples", c.samples},
            {"format", c.format}};
  return j;
}

/// Overlays the keys present in `j` onto `c`; unknown keys are rejected.
inline void merge_json(RunConfig& c, const json& j) {
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "m") c.m = v.get<int>();
      else if (key == "variant") c.variant = v.get<std::string>();
      else if (key == "a") c.a = v.get<std::string>();
      else if (key == "ratios") c.ratios = v.get<std::vector<std::string>>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "precision_bits") c.precision_bits = v.get<unsigned>();
      else if (key == "relaxed") c.relaxed = v.get<bool>();
      else if (key == "depth") c.depth = v.get<long>();
      else if (key == "budget_bits") c.budget_bits = v.get<long>();
      else if (key == "tol") c.tol = v.get<double>();
      else if (key == "window") c.window = v.get<double>();
      else if (key == "target_ratio") c.target_ratio = v.get<std::string>();
      else if (key == "M_max") c.M_max = v.get<int>();
      else if (key == "dims") c.dims = v.get<int>();
      else if (key == "samples") c.samples = v.get<int>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else throw PreconditionError("unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      throw PreconditionError("config key '" + key + "': " + e.what());
    }
  }
}

inline json spec_json(const RatioSpec& spec) {
  json j = {{"m", spec.m()}, {"variant", spec.variant_name()}};
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Explicit>) {
          json list = json::array();
          for (const auto& q : r.ratios) list.push_back(to_string(q));
          j["ratios"] = list;
        } else if constexpr (std::is_same_v<T, RandomUniform>) {
          j["seed"] = r.seed;
          j["precision_bits"] = r.precision_bits;
        } else {
          j["a"] = to_string(r.a);
        }
      },
      spec.rule());
  j["relaxed"] = spec.relaxed();
  return j;
}

}  // namespace hnup
