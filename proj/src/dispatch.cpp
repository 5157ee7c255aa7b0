#include "helson/dispatch.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <ostream>

#include "helson/errors.hpp"
#include "helson/helson.hpp"
#include "helson/mellin.hpp"
#include "helson/spectra.hpp"

namespace helson {
namespace {

using nlohmann::json;
using std::numbers::pi;

json grid_json(const GridSpec& g) {
  return {{"t_min", g.t_min}, {"t_max", g.t_max}, {"panels_per_decade", g.panels_per_decade},
          {"nodes_per_panel", g.nodes_per_panel}};
}

SpectrumTarget spectrum_target(const RunConfig& c) {
  if (c.family == "mult-hilbert") return HelsonSpec{0.0, 2, c.N};
  if (c.family == "helson") return HelsonSpec{*c.a, 1, c.N};
  return KernelSpec{kernel_family_from_string(c.family), c.a.value_or(0.0)};
}

ScalarFunction test_function(const std::string& name) {
  if (name == "exp") return [](double t) { return std::exp(-t); };
  return [](double t) {
    const double l = std::log(t);
    return std::exp(-l * l);
  };
}

json run_matrix(const RunConfig& c) {
  const SymmetricMatrix m = operator_matrix(c);
  return {{"dim", m.dim()}, {"trace", m.trace()}, {"frobenius", m.dense().norm()}};
}

json run_spectrum(const RunConfig& c) {
  const SpectrumReport rep = spectrum_report(spectrum_target(c), c.grid);
  json doc;
  doc["dim"] = rep.eigenvalues.size();
  doc["top"] = rep.eigenvalues.size() ? rep.eigenvalues(rep.eigenvalues.size() - 1) : 0.0;
  doc["count_above_pi"] = rep.count_above_pi;
  doc["count_below_zero"] = rep.count_below_zero;
  doc["histogram"] = rep.histogram;
  doc["fill"] = rep.fill;
  doc["ladder"] = json::array();
  for (const auto& l : rep.ladder)
    doc["ladder"].push_back({{"label", l.label}, {"dim", l.dim}, {"top", l.top}, {"fill", l.fill}});
  json table = make_table({"index", "eigenvalue"});
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) table["rows"].push_back({i, rep.eigenvalues(i)});
  doc["table"] = std::move(table);
  return doc;
}

json run_curve(const RunConfig& c) {
  CurveConfig cfg;
  cfg.grid = c.grid;
  cfg.truncation_orders = {c.N};
  const auto curve = lambda_curve(c.a_values(), cfg);
  json table = make_table(
      {"a", "lambda_nystrom", "lambda_trunc_N", "lambda_lower_bound", "lambda_upper_bound", "above_pi"});
  bool bounds_ok = true;
  for (const auto& p : curve) {
    table["rows"].push_back({p.a, p.lambda_nystrom, p.lambda_trunc.front().second, p.lower_bound(),
                             p.upper_bound(), p.above_pi});
    bounds_ok = bounds_ok && p.lower_ok && p.upper_ok;
  }
  return {{"N", c.N}, {"grid", grid_json(c.grid)}, {"non_increasing", curve_non_increasing(curve)},
          {"bounds_ok", bounds_ok}, {"table", table}};
}

json sample_json(const IndicatorSample& s) {
  return {s.a, s.lambda_level1, s.lambda_level2, s.margin, s.level1, s.level2};
}

json run_critical_a(const RunConfig& c) {
  const AStarEstimate est = estimate_a_star(c.tol, AStarConfig::for_grid(c.grid));
  json doc;
  doc["a_lo"] = est.a_lo;
  doc["a_hi"] = est.a_hi;
  doc["indicator_margin"] = est.indicator_margin;
  doc["levels_overlap"] = est.levels_overlap();
  doc["levels"] = json::array();
  for (const auto& l : est.levels)
    doc["levels"].push_back({{"grid", grid_json(l.grid)}, {"a_lo", l.a_lo}, {"a_hi", l.a_hi}});
  json table = make_table({"a", "lambda_level1", "lambda_level2", "margin", "indicator_level1", "indicator_level2"});
  for (const auto& s : est.evaluations) table["rows"].push_back(sample_json(s));
  doc["table"] = std::move(table);
  return doc;
}

json run_mellin(const RunConfig& c) {
  const ScalarFunction f = test_function(c.function);
  const MellinSettings settings{c.u_min, c.u_max, c.points};
  const MellinSample sample = mellin_critical_line(f, settings);
  json doc;
  doc["function"] = c.function;
  doc["plancherel_defect"] = plancherel_error(f, settings);
  doc["multiplier_defect"] = multiplier_check(f, build_grid(c.grid));
  doc["multiplier_settings"] = {{"u_min", kMultiplierSettings.u_min},
                                {"u_max", kMultiplierSettings.u_max},
                                {"points", kMultiplierSettings.points}};
  doc["tail_mass"] = sample.tail_mass;
  doc["warning"] = sample.warning ? json(*sample.warning) : json(nullptr);
  json table = make_table({"tau", "re", "im"});
  for (Eigen::Index r = 0; r < sample.tau.size(); ++r)
    table["rows"].push_back({sample.tau(r), sample.values(r).real(), sample.values(r).imag()});
  doc["table"] = std::move(table);
  return doc;
}

json run_residual(const RunConfig& c) {
  const double r = eigenfunction_residual(c.k, c.grid);
  const double interior = eigenfunction_residual(c.k, c.grid, ResidualWindow{1e-4});
  json table = make_table({"k", "lambda", "residual"});
  table["rows"].push_back({c.k, lambda_of_k(c.k), r});
  return {{"residual", r}, {"interior_residual", interior}, {"interior_t_lo", 1e-4}, {"table", table}};
}

json run_equivalence(const RunConfig& c) {
  const EquivalenceReport rep = equivalence_check(c.a.value_or(1.0), c.N, c.grid);
  json table = make_table({"rank", "gram_rows", "gram_cols", "nystrom", "gram_refined", "nystrom_refined"});
  for (Eigen::Index i = 0; i < rep.gram_cols.size(); ++i)
    table["rows"].push_back({i + 1, rep.gram_rows(i), rep.gram_cols(i), rep.nystrom(i),
                             rep.gram_refined(i), rep.nystrom_refined(i)});
  return {{"a", rep.a},
          {"n_min", rep.n_min},
          {"N", rep.N},
          {"grid", grid_json(rep.grid)},
          {"refined_grid", grid_json(rep.refined)},
          {"factor_agreement", rep.factor_agreement},
          {"gap", rep.gap},
          {"gap_refined", rep.gap_refined},
          {"table", table}};
}

json run_report(const RunConfig& c) {
  const double a = c.a.value_or(1.0);
  json table = make_table({"check", "value", "status"});
  const HsGapReport h0 = hs_gap(KernelSpec::h0(), c.grid);
  const HsGapReport ha = hs_gap(KernelSpec::ha(a), c.grid);
  auto gap_status = [](const HsGapReport& r) {
    return r.divergent ? "DIVERGENT" : (r.stable ? "stable" : "unstable");
  };
  table["rows"].push_back({"hs_gap_h0", h0.value, gap_status(h0)});
  table["rows"].push_back({"hs_gap_ha", ha.value, gap_status(ha)});

  const MonotonicityReport mono = monotonicity_check(a, c.b, c.trials, c.N, c.grid);
  table["rows"].push_back({"monotonicity_passes", mono.passes, mono.passed() ? "pass" : "fail"});

  const MultiplicityReport mult = multiplicity_diagnostic(c.alpha, c.beta, c.grid);
  table["rows"].push_back({"multiplicity_ratio", mult.ratio ? json(*mult.ratio) : json(nullptr),
                           mult.sufficient ? "exploratory" : "insufficient"});

  return {{"hs_gap", {{"h0", {{"value", h0.value}, {"refined", h0.refined}, {"widened", h0.widened},
                              {"status", gap_status(h0)}}},
                      {"ha", {{"a", a}, {"value", ha.value}, {"refined", ha.refined},
                              {"widened", ha.widened}, {"status", gap_status(ha)}}}}},
          {"monotonicity", {{"a", mono.a}, {"b", mono.b}, {"trials", mono.trials}, {"passes", mono.passes},
                            {"lambda_a", mono.lambda_a}, {"lambda_b", mono.lambda_b},
                            {"eigen_ok", mono.eigen_ok}}},
          {"multiplicity", {{"alpha", mult.alpha}, {"beta", mult.beta},
                            {"carleman_count", mult.carleman_count}, {"hstar_count", mult.hstar_count},
                            {"ratio", mult.ratio ? json(*mult.ratio) : json(nullptr)},
                            {"sufficient", mult.sufficient}}},
          {"table", table}};
}

}  // namespace

SymmetricMatrix operator_matrix(const RunConfig& c) {
  const SpectrumTarget target = spectrum_target(c);
  if (const auto* h = std::get_if<HelsonSpec>(&target))
    return h->n_min == 2 ? multiplicative_hilbert_matrix(h->N).matrix : helson_matrix(h->a, h->N).matrix;
  return discretize_hankel(std::get<KernelSpec>(target), build_grid(c.grid));
}

ResultDocument run_command(const RunConfig& c) {
  json doc;
  switch (c.command) {
    case Command::Matrix: doc = run_matrix(c); break;
    case Command::Spectrum: doc = run_spectrum(c); break;
    case Command::Curve: doc = run_curve(c); break;
    case Command::CriticalA: doc = run_critical_a(c); break;
    case Command::MellinCheck: doc = run_mellin(c); break;
    case Command::Residual: doc = run_residual(c); break;
    case Command::Equivalence: doc = run_equivalence(c); break;
    case Command::Report: doc = run_report(c); break;
  }
  doc["command"] = to_string(c.command);
  return doc;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    json document;
    if (auto cached = cache_lookup(config)) {
      err << "cache hit: " << cache_path(config).string() << "\n";
      document = std::move(*cached);
    } else {
      document = output_document(run_command(config), config);
      cache_store(config, document);
    }
    auto written = write_outputs(document, config);
    if (config.command == Command::Matrix) {
      written.push_back(output_path(config, "bin"));
      std::filesystem::create_directories(written.back().parent_path());
      const SymmetricMatrix m = operator_matrix(config);
      std::string tmp = written.back().string() + ".tmp";
      write_matrix_dump(tmp, m);
      std::filesystem::rename(tmp, written.back());
    }
    for (const auto& p : written) out << p.string() << "\n";
    return 0;
  } catch (const IndicatorScanError& e) {
    json scan = json::array();
    for (const auto& s : e.scan()) scan.push_back(sample_json(s));
    err << "error: " << e.what() << "\nscan: " << scan.dump() << "\n";
    return 1;
  } catch (const IterationError& e) {
    err << "error: " << e.what() << "\nbest estimates: " << json(e.best_estimates()).dump() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace helson
