// Command-line front end: capacity estimation, deformation sweeps, Julia-set
// sampling, boundary-correspondence tables, verification suites, and
// dimension surveys. Every run writes its outputs plus a manifest carrying
// the config hash; identical argv and seed give byte-identical outputs.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capmotion/capmotion.hpp"

using namespace capmotion;

namespace {

std::string resolve_out_path(const std::string& path) {
  if (path.empty()) return path;
  const char* outdir = std::getenv("CAPMOTION_OUTDIR");
  if (!outdir || *outdir == '\0') return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(outdir) / p).string();
}

void write_with_manifest(const std::string& out, const std::string& content,
                         const RunConfig& cfg, double wall_seconds) {
  std::string path = resolve_out_path(out);
  write_text_file(path, content);
  json manifest = make_manifest(cfg.config_hash(), cfg.seed(), wall_seconds);
  write_text_file(path + ".manifest.json", manifest.dump(2) + "\n");
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t comma = csv.find(',', start);
    out.push_back(std::stoull(csv.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + csv);
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t comma = csv.find(',', start);
    out.push_back(std::stod(csv.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + csv);
  return out;
}

Complex parse_c_flag(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma != std::string::npos)
    return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  return parse_complex_literal(text);
}

std::vector<std::size_t> ladder_up_to(std::size_t n_max) {
  std::vector<std::size_t> ladder;
  for (std::size_t n : {std::size_t(8), std::size_t(12), std::size_t(16), std::size_t(24),
                        std::size_t(32), std::size_t(48), std::size_t(64), std::size_t(96)}) {
    if (n < n_max) ladder.push_back(n);
  }
  ladder.push_back(n_max);
  if (ladder.size() < 3) ladder.insert(ladder.begin(), {n_max / 4 < 2 ? 2 : n_max / 4, n_max / 2});
  return ladder;
}

// Per-run state shared by the subcommand handlers.
struct Common {
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out, plot, plot_column, config_file;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  double wall() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void maybe_plot(const Common& common, const std::vector<double>& xs,
                const std::vector<double>& ys, const std::string& x_label,
                const std::string& y_label, const RunConfig& cfg) {
  if (common.plot.empty()) return;
  write_text_file(resolve_out_path(common.plot),
                  svg_line_plot(xs, ys, x_label, y_label, cfg.config_hash()));
}

// Values from a config file serve as defaults; explicit flags win because
// CLI11 assigns only the flags that actually appear on the command line.
void preload_config(int argc, char** argv, RunConfig& file_cfg) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") file_cfg = parse_config_text(read_text_file(argv[i + 1]));
}

int run_capacity(const Common& common, const RunConfig& cfg) {
  PointCloud cloud;
  if (cfg.has("input"))
    cloud = cloud_from_csv(read_text_file(cfg.get("input")), cfg.get("input"));
  else
    cloud = parse_set_spec(cfg.get("set", "circle"));

  json out;
  if (cfg.get("method", "fekete") == "fekete") {
    std::vector<std::size_t> ladder = cfg.has("n-list")
                                          ? parse_size_list(cfg.get("n-list"))
                                          : ladder_up_to(std::size_t(cfg.get_int("n", 32)));
    CapacityReport rep = fekete_capacity(cloud, ladder, std::size_t(cfg.get_int("passes", 6)),
                                         cfg.seed(), common.workers);
    out = capacity_report_to_json(rep);
    if (!common.plot.empty()) {
      std::vector<double> xs, ys;
      for (auto& [n, d] : rep.diameters) {
        xs.push_back(double(n));
        ys.push_back(d);
      }
      maybe_plot(common, xs, ys, "n", "diameter", cfg);
    }
  } else if (cfg.get("method") == "energy") {
    EnergyEstimate est = energy_capacity(cloud, std::size_t(cfg.get_int("pairs", 200000)),
                                         cfg.seed(), common.workers);
    out = json{{"pair_count", est.pair_count},
               {"skipped_pairs", est.skipped_pairs},
               {"mean_neg_log_distance", est.mean_neg_log_distance},
               {"capacity", est.capacity},
               {"method", "pair-energy"}};
  } else {
    throw std::invalid_argument("unknown method: " + cfg.get("method"));
  }
  out["config_hash"] = cfg.config_hash();
  write_with_manifest(common.out, out.dump(2) + "\n", cfg, common.wall());
  return 0;
}

int run_sweep(const Common& common, const RunConfig& cfg) {
  if (!cfg.has("motion")) throw std::invalid_argument("sweep requires --motion");
  Motion motion = parse_motion_spec(cfg.get("motion"));
  PointCloud set = parse_set_spec(cfg.get("set", "circle"));
  LambdaGrid grid = parse_grid_spec(cfg.get("grid", "real:-0.8:0.8:17"));

  SweepConfig sweep_cfg;
  sweep_cfg.seed = cfg.seed();
  sweep_cfg.workers = common.workers;
  if (cfg.has("ladder")) sweep_cfg.n_values = parse_size_list(cfg.get("ladder"));
  sweep_cfg.compute_area = cfg.get_int("area", 0) != 0;
  sweep_cfg.compute_boxdim = cfg.get_int("boxdim", 0) != 0;
  sweep_cfg.max_passes = std::size_t(cfg.get_int("passes", 6));

  SweepTable table = capacity_sweep(motion, set, grid, sweep_cfg);
  table.config_hash = cfg.config_hash();
  write_with_manifest(common.out, sweep_to_csv(table), cfg, common.wall());

  if (!common.plot.empty()) {
    std::string column = common.plot_column.empty() ? "capacity" : common.plot_column;
    std::vector<double> xs, ys;
    for (const SweepRow& r : table.rows) {
      if (r.failed) continue;
      double y;
      if (column == "capacity")
        y = r.capacity;
      else if (column == "cap_err")
        y = r.capacity_err;
      else if (column == "area" && r.area)
        y = *r.area;
      else if (column == "boxdim" && r.boxdim)
        y = *r.boxdim;
      else if (column == "area" || column == "boxdim")
        continue;
      else
        throw std::invalid_argument("unknown plot column: " + column);
      xs.push_back(r.lambda.real());
      ys.push_back(y);
    }
    if (xs.empty()) throw std::invalid_argument("plot column has no values: " + column);
    maybe_plot(common, xs, ys, "lambda_re", column, cfg);
  }
  return 0;
}

int run_julia(const Common& common, const RunConfig& cfg) {
  Complex c = parse_c_flag(cfg.get("c", "0"));
  std::size_t samples = std::size_t(cfg.get_int("samples", 4096));
  std::string algo = cfg.get("algo", "inverse-iteration");
  PointCloud cloud;
  if (algo == "inverse-iteration") {
    cloud = julia_inverse_iteration(c, samples, std::size_t(cfg.get_int("burn-in", 64)),
                                    cfg.seed(), common.workers);
  } else if (algo == "ray-landing") {
    BottcherParams params;
    params.depth = std::size_t(cfg.get_int("depth", 24));
    if (cfg.get_int("allow-large-c", 0) != 0) params.allow_outside_test_region = true;
    cloud.points.resize(samples);
    parallel_for(samples, common.workers, [&](std::size_t k) {
      cloud.points[k] = external_ray_landing(c, double(k) / double(samples), params);
    });
    cloud.label = "julia";
    cloud.generator_params = {{"algo", "ray-landing"},
                              {"c_re", format_double(c.real())},
                              {"c_im", format_double(c.imag())},
                              {"samples", std::to_string(samples)},
                              {"depth", std::to_string(params.depth)}};
  } else {
    throw std::invalid_argument("unknown algo: " + algo);
  }
  write_with_manifest(common.out, cloud_to_csv(cloud, cfg.config_hash()), cfg, common.wall());
  return 0;
}

int run_welding(const Common& common, const RunConfig& cfg) {
  Complex c = parse_c_flag(cfg.get("c", "0"));
  BottcherParams params;
  params.depth = std::size_t(cfg.get_int("depth", 24));
  if (cfg.get_int("allow-large-c", 0) != 0) params.allow_outside_test_region = true;
  WeldingTable table =
      welding_table(c, std::size_t(cfg.get_int("resolution", 64)),
                    std::size_t(cfg.get_int("walks", 100000)), cfg.get_double("epsilon", 0.0),
                    cfg.seed(), params, common.workers);
  write_with_manifest(common.out, welding_to_csv(table, cfg.config_hash()), cfg, common.wall());

  if (cfg.has("report")) {
    json report;
    report["c"] = {c.real(), c.imag()};
    report["resolution"] = table.size();
    report["walks"] = table.n_walks;
    report["lost_walks"] = table.lost_walks;
    report["epsilon"] = table.epsilon;
    report["ks_identity_distance"] = ks_identity_distance(table);
    report["strictly_monotone"] = table.strictly_monotone;
    report["zero_cells"] = table.zero_cells;
    json conc = json::object();
    for (double alpha : {0.5, 0.75, 0.9})
      conc[format_double(alpha)] = concentration_statistic(table, alpha);
    report["concentration"] = conc;
    report["indicator_note"] =
        "qualitative indicators; no absolute singularity threshold is claimed";
    report["config_hash"] = cfg.config_hash();
    write_text_file(resolve_out_path(cfg.get("report")), report.dump(2) + "\n");
  }
  if (!common.plot.empty())
    maybe_plot(common, table.external_angles, table.internal_angles, "theta", "phi", cfg);
  return 0;
}

int run_checks(const Common& common, const RunConfig& cfg) {
  std::string suite = cfg.get("suite");
  if (suite.empty()) throw std::invalid_argument("checks requires --suite");
  if (suite != "motion-axioms" && !cfg.has("in"))
    throw std::invalid_argument("suite '" + suite + "' requires --in");
  json out;

  if (suite == "motion-axioms") {
    Motion motion = parse_motion_spec(cfg.get("motion"));
    PointCloud set = parse_set_spec(cfg.get("set", "circle:n=24"));
    auto rep = check_motion_axioms(motion, set, cfg.get_double("radius", 0.5),
                                   std::size_t(cfg.get_int("n-lambda", 16)), cfg.seed());
    double tol = cfg.get_double("tolerance", motion.name == "bottcher" ? 1e-4 : 1e-10);
    out = json{{"check", "motion-axioms"},
               {"motion", motion.name},
               {"identity_residual", rep.identity_residual},
               {"circle_mean_residual", rep.circle_mean_residual},
               {"cauchy_riemann_residual", rep.cauchy_riemann_residual},
               {"min_image_separation", rep.min_image_separation},
               {"injectivity_flag", rep.injectivity_flag},
               {"injectivity_note", "sampled check, not a proof"},
               {"tolerance", tol},
               {"pass", rep.passes(tol)}};
  } else {
    std::string text = read_text_file(cfg.get("in"));
    SweepTable table = sweep_from_csv(text);
    if (table.config_hash.empty() && cfg.get_int("force", 0) == 0)
      throw std::invalid_argument(
          "input table carries no config hash; rerun the producer or pass --force");
    if (cfg.has("expect-hash") && table.config_hash != cfg.get("expect-hash") &&
        cfg.get_int("force", 0) == 0)
      throw std::invalid_argument("input table hash " + table.config_hash +
                                  " does not match --expect-hash");

    SampledFunction u = SampledFunction::from_sweep_log_capacity(table);
    if (suite == "submean") {
      // Rings shared by >= 16 samples become test radii.
      std::map<long long, std::size_t> ring_counts;
      for (Complex z : u.points) {
        long long key = llround(std::abs(z) * 1e9);
        if (key != 0) ++ring_counts[key];
      }
      std::vector<double> radii;
      for (auto [key, count] : ring_counts)
        if (count >= 16) radii.push_back(double(key) * 1e-9);
      auto rep = submean_check(u, {Complex(0, 0)}, radii, cfg.get_double("tolerance", 1e-2));
      out = check_report_to_json(rep);
    } else if (suite == "harnack") {
      double max_u = -std::numeric_limits<double>::infinity();
      for (double v : u.values) max_u = std::max(max_u, v);
      double M = cfg.has("M") ? cfg.get_double("M", 0.0) : max_u + 0.5;
      auto rep = harnack_check(u, cfg.get_double("rho", 0.9), M, cfg.get_double("tolerance", 1e-2));
      out = check_report_to_json(rep);
      out["M"] = M;
    } else if (suite == "continuity") {
      std::vector<Complex> path;
      for (const SweepRow& r : table.rows)
        if (!r.failed && r.lambda.imag() == 0.0) path.push_back(r.lambda);
      std::sort(path.begin(), path.end(),
                [](Complex a, Complex b) { return a.real() < b.real(); });
      auto rep = continuity_report(table, path, cfg.get_double("slope-constant", 1.0),
                                   cfg.get_double("floor", 0.0));
      out = check_report_to_json(rep);
    } else {
      throw std::invalid_argument("unknown suite: " + suite);
    }
    out["input_hash"] = table.config_hash;
  }
  out["config_hash"] = cfg.config_hash();
  write_with_manifest(common.out, out.dump(2) + "\n", cfg, common.wall());
  return 0;
}

int run_dims(const Common& common, const RunConfig& cfg) {
  std::vector<double> c_list = parse_double_list(cfg.get("c-list", "-2.5,-5,-10,-20"));
  std::vector<std::size_t> depths = cfg.has("depths") ? parse_size_list(cfg.get("depths"))
                                                      : std::vector<std::size_t>{3, 4, 5, 6, 7, 8, 9, 10};
  auto rows = dimension_table(c_list, std::size_t(cfg.get_int("samples", 30000)), depths,
                              cfg.seed(), std::size_t(cfg.get_int("burn-in", 96)),
                              std::size_t(cfg.get_int("pairs", 200000)), common.workers);
  write_with_manifest(common.out, dimension_table_to_csv(rows, cfg.config_hash()), cfg,
                      common.wall());
  if (!common.plot.empty()) {
    std::vector<double> xs, ys;
    std::string column = common.plot_column.empty() ? "boxdim" : common.plot_column;
    for (const DimensionRow& r : rows) {
      xs.push_back(r.c);
      ys.push_back(column == "capacity" ? r.capacity : r.boxdim);
    }
    maybe_plot(common, xs, ys, "c", column, cfg);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar capacity, deformation families, and harmonic-measure toolkit"};
  app.require_subcommand(1);

  RunConfig file_cfg;
  try {
    preload_config(argc, argv, file_cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  auto preset = [&file_cfg](const std::string& key, const std::string& fallback) {
    return file_cfg.get(key, fallback);
  };

  Common common;
  common.seed = std::uint64_t(std::stoll(preset("seed", "0")));
  common.workers = std::stoi(preset("workers", "0"));
  common.out = preset("out", "");
  common.plot = preset("plot", "");
  common.plot_column = preset("plot-column", "");

  // Keys mirror the long flag names; a config file provides defaults and
  // explicit flags override them (CLI11 only assigns flags that appear).
  std::map<std::string, std::string> values;  // "<subcommand>:<flag>" -> value
  auto add_option = [&](CLI::App* cmd, const std::string& flag, const std::string& fallback,
                        const std::string& desc) {
    auto it = values.emplace(cmd->get_name() + ":" + flag, preset(flag, fallback)).first;
    cmd->add_option("--" + flag, it->second, desc);
  };

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "random stream seed (default 0)");
    cmd->add_option("--workers", common.workers, "worker threads (0 = all cores)");
    cmd->add_option("--out", common.out, "output path");
    cmd->add_option("--plot", common.plot, "also write an SVG line plot here");
    cmd->add_option("--plot-column", common.plot_column, "table column to plot");
    cmd->add_option("--config", common.config_file, "key = value config file with defaults");
  };

  CLI::App* capacity_cmd = app.add_subcommand("capacity", "diameter-ladder or pair-energy capacity");
  add_common(capacity_cmd);
  add_option(capacity_cmd, "input", "", "point-cloud CSV path");
  add_option(capacity_cmd, "set", "", "generator spec instead of --input");
  add_option(capacity_cmd, "method", "fekete", "fekete | energy");
  add_option(capacity_cmd, "n", "32", "largest ladder size");
  add_option(capacity_cmd, "n-list", "", "explicit comma-separated ladder");
  add_option(capacity_cmd, "passes", "6", "exchange passes per ladder step");
  add_option(capacity_cmd, "pairs", "200000", "sampled pairs for the energy method");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "capacity (and area/dimension) over a parameter grid");
  add_common(sweep_cmd);
  add_option(sweep_cmd, "motion", "", "motion spec, e.g. scaling:beta=0.5");
  add_option(sweep_cmd, "set", "circle", "point-set spec or CSV path");
  add_option(sweep_cmd, "grid", "real:-0.8:0.8:17", "parameter grid spec");
  add_option(sweep_cmd, "ladder", "", "comma-separated ladder sizes");
  add_option(sweep_cmd, "passes", "6", "exchange passes");
  add_option(sweep_cmd, "area", "0", "1 = fill the image curve and estimate area");
  add_option(sweep_cmd, "boxdim", "0", "1 = box-dimension column");

  CLI::App* julia_cmd = app.add_subcommand("julia", "sample a quadratic Julia set");
  add_common(julia_cmd);
  add_option(julia_cmd, "c", "0", "parameter, as re,im or a complex literal");
  add_option(julia_cmd, "samples", "4096", "number of output points");
  add_option(julia_cmd, "algo", "inverse-iteration", "inverse-iteration | ray-landing");
  add_option(julia_cmd, "burn-in", "64", "backward steps per sample");
  add_option(julia_cmd, "depth", "24", "backward depth for ray landing");
  add_option(julia_cmd, "allow-large-c", "0", "1 = bypass the |c| test-region guard");

  CLI::App* welding_cmd = app.add_subcommand("welding", "boundary correspondence table of a Julia set");
  add_common(welding_cmd);
  add_option(welding_cmd, "c", "0", "parameter, as re,im or a complex literal");
  add_option(welding_cmd, "resolution", "64", "number of rays (power of 2)");
  add_option(welding_cmd, "walks", "100000", "interior walks");
  add_option(welding_cmd, "epsilon", "0", "absorption distance (0 = 1e-3 x diameter)");
  add_option(welding_cmd, "depth", "24", "ray-landing depth");
  add_option(welding_cmd, "allow-large-c", "0", "1 = bypass the |c| test-region guard");
  add_option(welding_cmd, "report", "", "also write indicator JSON here");

  CLI::App* checks_cmd = app.add_subcommand("checks", "verification suites over sweep tables");
  add_common(checks_cmd);
  add_option(checks_cmd, "suite", "", "submean | harnack | motion-axioms | continuity");
  add_option(checks_cmd, "in", "", "input sweep CSV");
  add_option(checks_cmd, "tolerance", "", "suite tolerance override");
  add_option(checks_cmd, "rho", "0.9", "harnack disk radius");
  add_option(checks_cmd, "M", "", "harnack upper bound (default max u + 0.5)");
  add_option(checks_cmd, "slope-constant", "1", "continuity modulus slope");
  add_option(checks_cmd, "floor", "0", "continuity modulus floor");
  add_option(checks_cmd, "motion", "", "motion spec for motion-axioms");
  add_option(checks_cmd, "set", "circle:n=24", "test points for motion-axioms");
  add_option(checks_cmd, "radius", "0.5", "parameter circle radius for motion-axioms");
  add_option(checks_cmd, "n-lambda", "16", "parameter circle samples for motion-axioms");
  add_option(checks_cmd, "expect-hash", "", "require the input table to carry this hash");
  add_option(checks_cmd, "force", "0", "1 = accept unhashed or mismatched inputs");

  CLI::App* dims_cmd = app.add_subcommand("dims", "dimension/capacity survey over escape parameters");
  add_common(dims_cmd);
  add_option(dims_cmd, "c-list", "-2.5,-5,-10,-20", "real parameters outside the set");
  add_option(dims_cmd, "samples", "30000", "backward-orbit samples per parameter");
  add_option(dims_cmd, "depths", "", "comma-separated dyadic depths");
  add_option(dims_cmd, "burn-in", "96", "backward steps per sample");
  add_option(dims_cmd, "pairs", "200000", "sampled pairs for the energy estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // prints usage; nonzero for errors
  }

  CLI::App* active = app.get_subcommands().front();
  RunConfig cfg;
  cfg.set("subcommand", active->get_name());
  cfg.set_int("seed", static_cast<long long>(common.seed));
  std::string prefix = active->get_name() + ":";
  for (const auto& [key, value] : values) {
    if (key.rfind(prefix, 0) != 0) continue;
    if (!value.empty()) cfg.set(key.substr(prefix.size()), value);
  }
  if (common.out.empty()) {
    std::cerr << "error: --out is required (flag or config file)\n";
    return 1;
  }
  cfg.set("out", common.out);

  try {
    const std::string& name = active->get_name();
    if (name == "capacity") return run_capacity(common, cfg);
    if (name == "sweep") return run_sweep(common, cfg);
    if (name == "julia") return run_julia(common, cfg);
    if (name == "welding") return run_welding(common, cfg);
    if (name == "checks") return run_checks(common, cfg);
    if (name == "dims") return run_dims(common, cfg);
    std::cerr << "error: unknown subcommand\n";
    return 1;
  } catch (const numerical_failure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
