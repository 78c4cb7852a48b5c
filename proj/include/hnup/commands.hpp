#pragma once

// Command pipelines behind the hnup executable. Each analysis returns its JSON
// report; the cmd_* wrappers write reports (and a timestamp sidecar) to the
// output directory.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include "hnup/assembly.hpp"
#include "hnup/cantor.hpp"
#include "hnup/capacity.hpp"
#include "hnup/config.hpp"
#include "hnup/dimension.hpp"
#include "hnup/errors.hpp"
#include "hnup/perfectness.hpp"
#include "hnup/porosity.hpp"
#include "hnup/random_stream.hpp"
#include "hnup/report.hpp"
#include "hnup/shapes.hpp"
#include "hnup/table1.hpp"

namespace hnup {

inline json point_json(const Point2& p) { return {{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }

inline json annulus_json(const Annulus& a) {
  return {{"center", point_json(a.center)},
          {"inner_sq", exact_quantity(a.inner_sq)},
          {"outer_sq", exact_quantity(a.outer_sq)},
          {"ratio_sq", exact_quantity(a.ratio_sq())},
          {"modulus", log_quantity(a.modulus(), 1e-15)}};
}

inline json box_json(const Box& b) {
  return {{"x0", to_string(b.x0)}, {"x1", to_string(b.x1)}, {"y0", to_string(b.y0)}, {"y1", to_string(b.y1)}};
}

namespace detail {

inline json report_head(const std::string& analysis, const RunConfig& cfg) {
  return {{"analysis", analysis}, {"tool_version", std::string(kToolVersion)}, {"config", to_json(cfg)}};
}

inline CantorApprox::Options approx_options(const RunConfig& cfg) {
  return {static_cast<std::size_t>(cfg.budget_bits), true};
}

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// build

struct BuildOutput {
  json report;
  std::string intervals_csv;
  std::string endpoints_csv;
};

inline constexpr std::size_t kInlineIntervalLimit = 4096;

inline BuildOutput build_report(const RunConfig& cfg) {
  cfg.validate();
  const RatioSpec spec = cfg.spec();
  const int k = static_cast<int>(cfg.depth);
  const CantorApprox approx(spec, k, detail::approx_options(cfg));
  approx.require_enumerable(k);
  const bool exact = approx.exact_depth() >= k;

  BuildOutput out;
  json& r = out.report;
  r = detail::report_head("build", cfg);
  r["spec"] = spec_json(spec);
  r["depth"] = k;
  r["exact_depth"] = approx.exact_depth();
  r["count"] = approx.count(k);
  json warnings = json::array();
  for (const auto& w : approx.warnings()) warnings.push_back(w);
  if (!exact) warnings.push_back("exact values dropped beyond depth " + std::to_string(approx.exact_depth()));
  r["warnings"] = warnings;
  r["exact"] = exact;

  json levels = json::array();
  for (int j = 0; j <= k; ++j) {
    const DepthState& s = approx.state(j);
    json level = {{"k", j}, {"log_length", log_quantity(s.log_length, cfg.tol)}};
    if (s.length) level["length"] = exact_quantity(*s.length);
    if (s.gap) level["gap"] = exact_quantity(*s.gap);
    if (j >= 1) level["log_gap"] = log_quantity(s.log_gap, cfg.tol);
    levels.push_back(level);
  }
  r["levels"] = levels;

  out.intervals_csv = "address,left_num,left_den,len_num,len_den,log_len\n";
  out.endpoints_csv = "point_num,point_den\n";
  const std::string log_len = fmt::format("{:.17g}", static_cast<double>(approx.state(k).log_length));
  if (!exact) {
    const std::uint64_t n = approx.count(k);
    for (std::uint64_t i = 0; i < n; ++i)
      out.intervals_csv += Address::from_index(i, spec.m(), k).to_string(spec.m()) + ",,,,," + log_len + "\n";
    return out;
  }
  const auto intervals = approx.intervals(k);
  json inline_list = json::array();
  for (const auto& iv : intervals) {
    out.intervals_csv += fmt::format("{},{},{},{},{},{}\n", iv.address.to_string(spec.m()), iv.left.get_num().get_str(),
                                     iv.left.get_den().get_str(), iv.length.get_num().get_str(),
                                     iv.length.get_den().get_str(), log_len);
    if (intervals.size() <= kInlineIntervalLimit)
      inline_list.push_back(
          {{"address", iv.address.to_string(spec.m())}, {"left", to_string(iv.left)}, {"length", to_string(iv.length)}});
  }
  if (intervals.size() <= kInlineIntervalLimit) r["intervals"] = inline_list;
  for (const auto& p : approx.endpoints(k).points)
    out.endpoints_csv += p.get_num().get_str() + "," + p.get_den().get_str() + "\n";
  return out;
}

/// Parses intervals.csv back into exact intervals (rows without exact columns are skipped).
inline std::vector<BasicInterval> parse_intervals_csv(const std::string& text, int m) {
  std::vector<BasicInterval> out;
  std::size_t pos = text.find('\n');
  if (pos == std::string::npos) throw IoError("intervals CSV has no header");
  while (++pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string line = text.substr(pos, end - pos);
    pos = end == std::string::npos ? text.size() : end;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t comma; (comma = line.find(',', start)) != std::string::npos; start = comma + 1)
      cells.push_back(line.substr(start, comma - start));
    cells.push_back(line.substr(start));
    if (cells.size() != 6) throw IoError("malformed intervals row: " + line);
    if (cells[1].empty()) continue;
    Rational left{Integer(cells[1]), Integer(cells[2])}, length{Integer(cells[3]), Integer(cells[4])};
    left.canonicalize();
    length.canonicalize();
    out.push_back({Address::parse(cells[0], m), left, length});
  }
  return out;
}

// ---------------------------------------------------------------------------
// analyze

inline json analyze_dim(const RunConfig& cfg) {
  cfg.validate();
  const RatioSpec spec = cfg.spec();
  const long K = std::max(1L, cfg.depth);
  const DimEstimate est = dim_estimate_seq(spec, K, {cfg.window});
  json r = detail::report_head("dim", cfg);
  r["spec"] = spec_json(spec);
  r["K"] = K;
  r["window_start"] = est.window_start;
  r["liminf_estimate"] = log_quantity(est.liminf_estimate, cfg.tol);
  if (est.closed_form) {
    r["closed_form"] = {{"expression", est.closed_form->expression},
                        {"value", log_quantity(est.closed_form->value, cfg.tol)},
                        {"provenance", est.closed_form->provenance}};
    if (est.closed_form->value != 0.0L)
      r["relative_error"] = static_cast<double>(std::fabs(est.liminf_estimate / est.closed_form->value - 1.0L));
    else
      r["absolute_error"] = static_cast<double>(std::fabs(est.liminf_estimate));
  } else {
    r["closed_form"] = nullptr;
  }
  if (std::holds_alternative<Constant>(spec.rule())) {
    long double spread = 0.0L;
    for (const auto& s : est.samples) spread = std::max(spread, std::fabs(s.s / est.closed_form->value - 1.0L));
    r["constant_spread"] = static_cast<double>(spread);
  }
  if (const auto* sp = std::get_if<SparsePower>(&spec.rule())) {
    const auto logs = log_lengths(spec, K);
    bool hold = true;
    for (long k = 2; k <= K; ++k) {
      const LogBounds b = sparse_power_logA_bounds(sp->a, spec.m(), k);
      const long double v = logs[static_cast<std::size_t>(k)];
      if (!(b.lower <= v + 1e-9L && v <= b.upper + 1e-9L)) hold = false;
    }
    r["sparse_bounds_hold"] = hold;
  }
  if (std::holds_alternative<RandomUniform>(spec.rule())) {
    const auto logs = log_lengths(spec, K);
    long double mean = logs.back() / static_cast<long double>(K), sq = 0.0L;
    for (long k = 1; k <= K; ++k) {
      const long double d = logs[static_cast<std::size_t>(k)] - logs[static_cast<std::size_t>(k - 1)] - mean;
      sq += d * d;
    }
    const double se = static_cast<double>(std::sqrt(sq / static_cast<long double>(K - 1 > 0 ? K - 1 : 1)) /
                                          std::sqrt(static_cast<long double>(K)));
    r["mean_log_ratio"] = monte_carlo_quantity(static_cast<double>(mean), se);
  }
  json samples = json::array();
  for (const auto& s : est.samples) samples.push_back({{"k", s.k}, {"s", static_cast<double>(s.s)}});
  r["samples"] = samples;
  return r;
}

inline json analyze_cap(const RunConfig& cfg) {
  cfg.validate();
  const RatioSpec spec = cfg.spec();
  const int K = static_cast<int>(cfg.depth);
  const CantorApprox approx(spec, K + 1, detail::approx_options(cfg));
  json r = detail::report_head("cap", cfg);
  r["spec"] = spec_json(spec);
  r["K"] = K;
  bool ok = true;
  json rows = json::array();
  for (const auto& d : endpoint_diameter_seq(approx, K)) {
    json row = {{"k", d.k},
                {"n", d.product.n},
                {"log_p", log_quantity(d.product.log_p, cfg.tol)},
                {"log_p_sq", log_quantity(2.0L * d.product.log_p, cfg.tol)},
                {"log_d", log_quantity(d.product.log_d, cfg.tol)},
                {"d", log_quantity(std::exp(d.product.log_d), cfg.tol)}};
    if (d.product.exact_product) row["product"] = exact_quantity(*d.product.exact_product);
    if (d.level_bound) {
      row["level_bound"] = log_quantity(*d.level_bound, cfg.tol);
      row["bound_holds"] = d.bound_holds;
      ok = ok && d.bound_holds;
    }
    rows.push_back(row);
  }
  r["depths"] = rows;
  if (spec.m() == 2) {
    json census = json::array();
    for (int k = 0; k <= std::min(K, 8); ++k) {
      const MuCensus c = mu_census(approx, k);
      census.push_back({{"k", k},
                        {"pairs", c.pairs},
                        {"partners", c.partners},
                        {"counts_match", c.counts_match && c.counts_uniform},
                        {"bracket_holds", c.bracket_holds}});
      ok = ok && c.counts_match && c.counts_uniform && c.bracket_holds;
    }
    r["mu_census"] = census;
  }
  if (spec.m() == 2 && std::holds_alternative<GeometricPower>(spec.rule())) {
    const SeriesBound s = series_capacity_bound(spec, cfg.tol);
    json partial = json::array();
    for (const auto& v : s.partial_sums) partial.push_back(static_cast<double>(v));
    r["series"] = {{"terms", s.terms},
                   {"partial_sums", partial},
                   {"limit_estimate", log_quantity(s.limit_estimate, cfg.tol)},
                   {"closed_form_limit", log_quantity(s.closed_form_limit, cfg.tol)},
                   {"certified_cap_lower", exact_quantity(s.certified_cap_lower)}};
  }
  r["checks_pass"] = ok;
  return r;
}

inline json analyze_up(const RunConfig& cfg) {
  cfg.validate();
  const RatioSpec spec = cfg.spec();
  const int K = std::max(1, static_cast<int>(cfg.depth));
  const CantorApprox approx(spec, K, detail::approx_options(cfg));
  const Rational M = cfg.target();
  json r = detail::report_head("up", cfg);
  r["spec"] = spec_json(spec);
  r["K"] = K;
  r["target_ratio"] = exact_quantity(M);

  json moduli = json::array();
  for (int k = 1; k <= K; ++k) {
    const Rational c = canonical_ratio(spec, k);
    moduli.push_back({{"k", k}, {"ratio", exact_quantity(c)}, {"modulus", log_quantity(log_of(c), cfg.tol)}});
  }
  r["canonical_ratios"] = moduli;

  std::optional<Rational> delta;
  if (const auto* c = std::get_if<Constant>(&spec.rule())) delta = c->a;
  if (const auto* e = std::get_if<Explicit>(&spec.rule())) {
    delta = e->ratios.front();
    for (const auto& q : e->ratios) delta = q < *delta ? q : *delta;
  }
  if (delta && !spec.relaxed()) {
    const ModulusBound b = up_modulus_bound(spec.m(), *delta);
    r["up_bound"] = exact_quantity(b.ratio);
  } else {
    r["up_bound"] = nullptr;
  }

  json brute = json::array();
  for (int k = 1; k <= K && approx.count(k) <= (std::uint64_t{1} << 14); ++k) {
    const BruteForceResult b = max_separating_ratio_bruteforce(approx, k);
    json row = {{"k", k}, {"centers", b.centers}, {"separators", b.separators}};
    if (b.max_ratio) {
      row["max_ratio"] = exact_quantity(*b.max_ratio);
      row["center"] = to_string(b.center);
      row["inner"] = to_string(b.inner);
      row["outer"] = to_string(b.outer);
    } else {
      row["max_ratio"] = nullptr;
    }
    brute.push_back(row);
  }
  r["bruteforce"] = brute;

  json witnesses = json::array();
  int found = 0;
  for (const auto& addr : sample_addresses(cfg.seed, cfg.samples, spec.m(), K)) {
    const WitnessSearch w = hnup_witness(approx, addr, M, K);
    json row = {{"address", addr.to_string(spec.m())}, {"explanation", w.explanation}};
    if (w.witness) {
      ++found;
      row["status"] = "found";
      row["depth"] = w.witness->depth;
      row["point"] = point_json(w.witness->point);
      row["ratio"] = exact_quantity(w.witness->achieved_ratio);
      row["annulus"] = annulus_json(w.witness->annulus);
    } else {
      row["status"] = w.conclusive_negative ? "not-found (bounded)" : "not-found (budget)";
    }
    witnesses.push_back(row);
  }
  r["witnesses"] = witnesses;
  r["witnesses_found"] = found;
  return r;
}

inline json analyze_porosity(const RunConfig& cfg) {
  cfg.validate();
  json r = detail::report_head("porosity", cfg);
  const int N = std::clamp(static_cast<int>(cfg.depth), 1, 32);

  const Region circles = circle_family(N + 1);
  json family = json::array();
  bool ok = true;
  for (int n = 1; n <= N; ++n) {
    const auto [center, radius] = circle_family_witness(n);
    const Rational probe(1, n);
    const bool inside = dist_sq(center, {Rational(0), Rational(0)}) <= (probe - radius) * (probe - radius);
    const bool empty = circles.misses_open_ball(center, radius);
    ok = ok && inside && empty && radius / probe == circle_family_ratio(n);
    family.push_back({{"n", n},
                      {"ball_center", point_json(center)},
                      {"ball_radius", exact_quantity(radius)},
                      {"ratio", exact_quantity(radius / probe)},
                      {"verified", inside && empty}});
  }
  r["circle_family"] = family;

  const Region discrete = discrete_circle_family(24, 256);
  json probes = json::array();
  for (int n = 1; n <= 4; ++n) {
    const PorosityProbe p = empty_ball_search(discrete, {Rational(0), Rational(0)}, Rational(1, n));
    probes.push_back({{"n", n},
                      {"ratio", exact_quantity(p.ratio)},
                      {"slack", p.slack},
                      {"ball_center", point_json(p.ball_center)},
                      {"ball_radius", exact_quantity(p.ball_radius)}});
  }
  r["discrete_circle_family"] = probes;

  const RatioSpec spec = cfg.spec();
  const int k = std::min(static_cast<int>(cfg.depth), 10);
  const CantorApprox approx(spec, k, detail::approx_options(cfg));
  if (approx.count(k) <= (std::uint64_t{1} << 12)) {
    const Region line = cantor_on_line(approx, k);
    json line_probes = json::array();
    for (const auto& addr : sample_addresses(cfg.seed, std::min(cfg.samples, 4), spec.m(), k)) {
      const Point2 a{approx.interval_of(addr).left, Rational(0)};
      const PorosityProbe p = empty_ball_search(line, a, approx.length(std::min(k, 2)));
      line_probes.push_back({{"address", addr.to_string(spec.m())},
                             {"ratio", exact_quantity(p.ratio)},
                             {"slack", p.slack},
                             {"certified_constant", to_string(line_porosity_constant())}});
    }
    r["spec"] = spec_json(spec);
    r["line_probes"] = line_probes;
  }
  r["checks_pass"] = ok;
  return r;
}

inline json analyze_assembly(const RunConfig& cfg) {
  cfg.validate();
  AssemblyOptions options;
  options.M_max = cfg.M_max;
  const int depth = static_cast<int>(std::max(1L, cfg.depth));
  options.depth_rule = [depth](int) { return depth; };
  const PlanarSet set = cfg.dims == 2 ? build_E(options) : build_W(options);
  const Rational M = cfg.target();

  json r = detail::report_head("assembly", cfg);
  r["dims"] = set.dims;
  r["target_ratio"] = exact_quantity(M);
  r["containment"] = true;  // build throws otherwise

  json comps = json::array();
  const auto dims = component_dimensions(set);
  long double sup_lower = 0.0L;
  for (std::size_t i = 0; i < set.components.size(); ++i) {
    const Component& c = set.components[i];
    sup_lower = std::max(sup_lower, dims[i].lower);
    comps.push_back({{"m", c.m},
                     {"scale", exact_quantity(c.map.scale)},
                     {"translation", point_json(c.map.translation)},
                     {"bounds", box_json(c.bounds)},
                     {"dim_lower", log_quantity(dims[i].lower, cfg.tol)},
                     {"dim_upper", log_quantity(dims[i].upper, cfg.tol)},
                     {"area_null", dims[i].upper < 2.0L}});
  }
  r["components"] = comps;
  r["sup_dim_lower"] = log_quantity(sup_lower, cfg.tol);

  bool packing_ok = true;
  json rings = json::array();
  const auto packing = verify_packing(set);
  for (int n = 4; n <= 2 * cfg.M_max + 1; ++n) {
    bool empty = false;
    for (const auto& p : packing)
      if (p.ring == n) empty = p.empty;
    const bool odd = n % 2 == 1;
    if (odd) packing_ok = packing_ok && empty;
    rings.push_back({{"n", n},
                     {"inner", exact_quantity(set.rho.rho(n + 1))},
                     {"outer", exact_quantity(set.rho.rho(n))},
                     {"ratio", exact_quantity(set.rho.ratio(n))},
                     {"empty", empty}});
  }
  r["rings"] = rings;
  r["packing"] = packing_ok;

  json witnesses = json::array();
  auto record = [&](const std::string& label, const std::optional<AdditionalWitness>& w) {
    json row = {{"point", label}};
    if (w) {
      row["status"] = "found";
      row["route"] = w->route;
      row["annulus"] = annulus_json(w->annulus);
      row["outer_point"] = point_json(w->outer_point);
    } else {
      row["status"] = "not-found";
    }
    witnesses.push_back(row);
    return w.has_value();
  };
  int found = record("origin", additional_property_witness(set, Origin{}, M)) ? 1 : 0;
  const CounterStream stream(cfg.seed);
  for (int i = 0; i < cfg.samples; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i) % set.components.size();
    const int m = set.components[idx].m;
    const auto xs = sample_addresses(stream.at(static_cast<std::uint64_t>(i), 1001), 1, m, 8);
    const auto ys = sample_addresses(stream.at(static_cast<std::uint64_t>(i), 1002), 1, m, 8);
    ComponentPoint p{idx, xs[0], set.dims == 2 ? ys[0] : Address{}};
    const std::string label = "m=" + std::to_string(m) + " x=" + xs[0].to_string(m) +
                              (set.dims == 2 ? " y=" + ys[0].to_string(m) : std::string());
    found += record(label, additional_property_witness(set, p, M)) ? 1 : 0;
  }
  r["witnesses"] = witnesses;
  r["witnesses_found"] = found;
  r["witnesses_total"] = cfg.samples + 1;
  r["checks_pass"] = packing_ok;
  return r;
}

inline json analyze(const RunConfig& cfg, const std::string& which) {
  if (which == "dim") return analyze_dim(cfg);
  if (which == "cap") return analyze_cap(cfg);
  if (which == "up") return analyze_up(cfg);
  if (which == "porosity") return analyze_porosity(cfg);
  if (which == "assembly") return analyze_assembly(cfg);
  throw PreconditionError("unknown analysis '" + which + "'");
}

// ---------------------------------------------------------------------------
// render

struct Rendered {
  std::string name;  // file name within the output directory
  std::string content;
};

/// Deterministic figures and plot tables for a report.
inline std::vector<Rendered> render(const json& report) {
  const std::string kind = report.at("analysis").get<std::string>();
  std::vector<Rendered> out;
  if (kind == "build") {
    if (!report.contains("intervals")) throw PreconditionError("build report has no inline intervals to draw");
    out.push_back({"build.svg", render_intervals_svg(report)});
  } else if (kind == "assembly") {
    out.push_back({"assembly.svg", render_assembly_svg(report)});
  } else if (kind == "dim") {
    std::vector<std::vector<double>> rows;
    for (const auto& s : report.at("samples")) rows.push_back({s.at("k").get<double>(), s.at("s").get<double>()});
    out.push_back({"dim_samples.csv", csv_table({"k", "s_k"}, rows)});
  } else if (kind == "up") {
    std::vector<std::vector<double>> rows;
    for (const auto& s : report.at("canonical_ratios"))
      rows.push_back({s.at("k").get<double>(), quantity_value(s.at("ratio")), quantity_value(s.at("modulus"))});
    out.push_back({"modulus_vs_k.csv", csv_table({"k", "ratio", "modulus"}, rows)});
  } else if (kind == "cap") {
    std::vector<std::vector<double>> rows;
    for (const auto& d : report.at("depths"))
      rows.push_back({d.at("k").get<double>(), quantity_value(d.at("log_p_sq")),
                      d.contains("level_bound") ? quantity_value(d.at("level_bound")) : std::nan("")});
    out.push_back({"capacity_depths.csv", csv_table({"k", "log_p_sq", "level_bound"}, rows)});
    if (report.contains("series")) {
      std::vector<std::vector<double>> sums;
      double l = 0;
      for (const auto& v : report.at("series").at("partial_sums")) sums.push_back({l++, v.get<double>()});
      out.push_back({"capacity_partial_sums.csv", csv_table({"l", "partial_sum"}, sums)});
    }
  } else {
    throw PreconditionError("nothing to render for '" + kind + "' reports");
  }
  return out;
}

// ---------------------------------------------------------------------------
// file-writing wrappers

inline void write_sidecar(const std::filesystem::path& dir, const std::string& name, const std::string& started) {
  const json run = {{"tool_version", std::string(kToolVersion)},
                    {"command", name},
                    {"started", started},
                    {"finished", detail::utc_now()}};
  atomic_write(dir / (name + ".run.json"), dump(run));
}

inline json cmd_build(const RunConfig& cfg) {
  const std::string started = detail::utc_now();
  const BuildOutput b = build_report(cfg);
  const std::filesystem::path dir = cfg.output_dir();
  atomic_write(dir / "intervals.csv", b.intervals_csv);
  atomic_write(dir / "endpoints.csv", b.endpoints_csv);
  atomic_write(dir / "build.json", dump(b.report));
  if (cfg.format == "svg" && b.report.contains("intervals"))
    for (const auto& f : render(b.report)) atomic_write(dir / f.name, f.content);
  write_sidecar(dir, "build", started);
  return b.report;
}

/// Writes <which>.json (plus rendered files for csv/svg formats). Failed
/// structural checks surface as InvariantViolation after the report is saved.
inline json cmd_analyze(const RunConfig& cfg, const std::string& which) {
  const std::string started = detail::utc_now();
  const json report = analyze(cfg, which);
  const std::filesystem::path dir = cfg.output_dir();
  atomic_write(dir / (which + ".json"), dump(report));
  if (cfg.format != "json") {
    for (const auto& f : render(report)) {
      const bool is_svg = f.name.ends_with(".svg");
      if (is_svg == (cfg.format == "svg")) atomic_write(dir / f.name, f.content);
    }
  }
  write_sidecar(dir, which, started);
  if (report.contains("checks_pass") && !report.at("checks_pass").get<bool>())
    throw InvariantViolation(which + " analysis: structural checks failed (see report)");
  return report;
}

inline json table1_report(const RunConfig& cfg) {
  const auto cells = table1_suite();
  json r = detail::report_head("table1", cfg);
  int verified = 0, cited = 0, scope = 0, trivial = 0;
  bool ok = true;
  for (const auto& c : cells) {
    verified += c.status == "verified-at-depth";
    cited += c.status == "cited-not-computed";
    scope += c.status == "out-of-scope";
    trivial += c.status == "trivial";
    ok = ok && c.pass();
  }
  r["cells"] = table1_json(cells);
  r["summary"] = {{"verified-at-depth", verified},
                  {"cited-not-computed", cited},
                  {"out-of-scope", scope},
                  {"trivial", trivial}};
  r["checks_pass"] = ok;
  return r;
}

inline json cmd_table1(const RunConfig& cfg) {
  const std::string started = detail::utc_now();
  const json report = table1_report(cfg);
  const std::filesystem::path dir = cfg.output_dir();
  atomic_write(dir / "table1.json", dump(report));
  write_sidecar(dir, "table1", started);
  if (!report.at("checks_pass").get<bool>()) throw InvariantViolation("table1: a witness check failed (see report)");
  return report;
}

inline std::vector<std::string> cmd_render(const std::filesystem::path& report_path, const RunConfig& cfg) {
  const std::string started = detail::utc_now();
  const json report = read_json(report_path);
  const std::filesystem::path dir = cfg.output_dir();
  std::vector<std::string> written;
  for (const auto& f : render(report)) {
    atomic_write(dir / f.name, f.content);
    written.push_back((dir / f.name).string());
  }
  write_sidecar(dir, "render", started);
  return written;
}

}  // namespace hnup
