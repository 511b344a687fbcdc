#include "tickcoint/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "tickcoint/config.hpp"
#include "tickcoint/csv.hpp"
#include "tickcoint/errors.hpp"
#include "tickcoint/estimators.hpp"
#include "tickcoint/limitlab.hpp"
#include "tickcoint/market.hpp"
#include "tickcoint/parallel.hpp"
#include "tickcoint/ticks.hpp"

namespace tickcoint {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string config;
  std::optional<Seed> seed;
  std::optional<std::size_t> workers;
  std::string out;
};

struct EstimateOptions {
  std::string input;
  std::string format = "auto";
  std::string estimator;
};

RunConfig load(const GlobalOptions& g, bool required) {
  if (g.config.empty()) {
    if (required) throw InputError("--config is required for this command");
    return parse_config("[market]\n");
  }
  return load_config(g.config);
}

Seed resolve_seed(const GlobalOptions& g, const RunConfig& c) { return g.seed.value_or(c.run.seed); }

std::size_t resolve_workers(const GlobalOptions& g, const RunConfig& c) {
  if (g.workers) {
    if (*g.workers == 0) throw InputError("--workers must be >= 1");
    return *g.workers;
  }
  if (const char* env = std::getenv("TICKCOINT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw InputError("TICKCOINT_WORKERS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  if (c.run.workers > 0) return c.run.workers;
  return default_workers();
}

fs::path resolve_out(const GlobalOptions& g, const RunConfig& c) { return g.out.empty() ? fs::path(c.run.output) : fs::path(g.out); }

void warn_all(const RunConfig& c, std::ostream& err) {
  for (const auto& w : config_warnings(c)) err << "warning: " << w << "\n";
}

// ---- simulate ----

int cmd_simulate(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const RunConfig c = load(g, true);
  warn_all(c, err);
  const Seed seed = resolve_seed(g, c);
  const fs::path dir = resolve_out(g, c);
  const auto sim = simulate(c.market, seed);
  for (const auto& w : sim.warnings) err << "warning: " << w << "\n";

  const double dt = c.estimator.dt;
  const auto n = static_cast<std::size_t>(std::floor(c.market.horizon / dt * (1.0 + 1e-12)));
  csv::Writer path({"time", "y1", "y2"});
  path.field(0.0).field(sim.y1.initial).field(sim.y2.initial).end_row();
  for (std::size_t j = 1; j <= n; ++j) {
    const double t = static_cast<double>(j) * dt;
    path.field(t).field(sim.y1.value_at(t)).field(sim.y2.value_at(t)).end_row();
  }

  csv::Writer durations({"asset", "k", "tau"});
  csv::Writer clock({"asset", "k", "t_k"});
  csv::Writer events({"asset", "k", "t_k", "e_k", "eta_k"});
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& a = sim.assets[i];
    const std::size_t count = a.clock.count(c.market.horizon);
    for (std::size_t k = 1; k <= count; ++k) {
      durations.field(i + 1).field(k).field(a.durations[k - 1]).end_row();
      clock.field(i + 1).field(k).field(a.clock.event_time(k)).end_row();
      events.field(i + 1).field(k).field(a.clock.event_time(k)).field(a.efficient[k - 1]).field(a.eta[k - 1]).end_row();
    }
  }
  csv::write_file_atomic(dir / "path.csv", path.str());
  csv::write_file_atomic(dir / "ticks.csv", ticks_csv(sim));
  csv::write_file_atomic(dir / "durations.csv", durations.str());
  csv::write_file_atomic(dir / "clock.csv", clock.str());
  csv::write_file_atomic(dir / "events.csv", events.str());
  out << "simulate: seed " << seed << ", events " << sim.assets[0].clock.count(c.market.horizon) << " / "
      << sim.assets[1].clock.count(c.market.horizon) << ", wrote " << dir.string() << "\n";
  return kExitOk;
}

// ---- estimate ----

struct SampledInput {
  std::vector<double> y1, y2;
  double x1 = 0.0, x2 = 0.0;  // values at the first grid point
  double dt = 1.0;
  std::optional<std::array<StepPath, 2>> paths;
};

bool looks_like_ticks(const fs::path& p) {
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  return header.find("asset") != std::string::npos;
}

SampledInput read_path_csv(const fs::path& p) {
  const auto t = csv::read_file(p);
  const auto ct = t.column("time");
  const auto c1 = t.column("y1");
  const auto c2 = t.column("y2");
  if (t.rows.size() < 3) throw InputError("path csv needs x_0 and at least two further rows");
  SampledInput s;
  std::vector<double> times;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    try {
      times.push_back(csv::parse_double(t.rows[r][ct]));
      const double a = csv::parse_double(t.rows[r][c1]);
      const double b = csv::parse_double(t.rows[r][c2]);
      if (r == 0) {
        s.x1 = a;
        s.x2 = b;
      } else {
        s.y1.push_back(a);
        s.y2.push_back(b);
      }
    } catch (const InputError& e) {
      throw InputError("path csv row " + std::to_string(r + 1) + ": " + e.what());
    }
    if (r > 0 && !(times[r] > times[r - 1])) throw InputError("path csv row " + std::to_string(r + 1) + ": time not increasing");
  }
  s.dt = times[1] - times[0];
  return s;
}

SampledInput sample_ticks(const fs::path& p, double dt) {
  SampledInput s;
  auto paths = ingest_ticks_file(p);
  const double start = std::max(paths[0].origin, paths[1].origin);
  const double end = std::min(paths[0].horizon, paths[1].horizon);
  const auto n = static_cast<std::size_t>(std::floor((end - start) / dt * (1.0 + 1e-12)));
  if (n < 2) throw InputError("tick data span fewer than two sampling steps of length dt");
  s.x1 = paths[0].value_at(start);
  s.x2 = paths[1].value_at(start);
  s.y1 = sample_grid(paths[0], dt, n, start);
  s.y2 = sample_grid(paths[1], dt, n, start);
  s.dt = dt;
  s.paths = std::move(paths);
  return s;
}

int cmd_estimate(const GlobalOptions& g, const EstimateOptions& o, std::ostream& out, std::ostream& err) {
  const RunConfig c = load(g, false);
  const fs::path in(o.input);
  bool ticks = false;
  if (o.format == "ticks")
    ticks = true;
  else if (o.format == "auto")
    ticks = looks_like_ticks(in);
  else if (o.format != "path")
    throw InputError("--format must be auto, ticks or path");
  if (!fs::exists(in)) throw InputError("input '" + o.input + "' does not exist");
  const SampledInput s = ticks ? sample_ticks(in, c.estimator.dt) : read_path_csv(in);

  const std::string name = o.estimator.empty() ? c.estimator.name : o.estimator;
  std::vector<std::string> names;
  if (name == "all")
    names = {"ols", "taper", "spurious", "gph"};
  else
    names = {name};
  if (name == "all" && ticks) names.insert(names.begin() + 2, "ctaper");

  const auto& taper = c.estimator.taper;
  csv::Writer w({"estimator", "theta_hat", "n", "m", "delta", "dt"});
  for (const auto& est : names) {
    EstimateReport r;
    r.estimator = est;
    r.n = s.y1.size();
    r.m = taper.m;
    r.dt = s.dt;
    r.delta = c.estimator.delta;
    if (est == "ols" || est == "spurious") {
      r.theta_hat = est == "ols" ? ols_theta(s.y1, s.y2) : spurious_delta(s.y1, s.y2);
      r.m = 0;
      r.delta = 0.0;
    } else if (est == "taper") {
      const auto e = taper_estimate(s.y1, s.y2, taper, s.x1, s.x2);
      r.theta_hat = e.theta;
      r.denominator = e.denominator;
      r.delta = 0.0;
      r.frequency_warning = 2 * taper.m >= r.n;
    } else if (est == "ctaper") {
      if (!s.paths) throw InputError("ctaper needs tick input (continuous record)");
      const auto& p = *s.paths;
      const auto e = ctaper_estimate(p[0], p[1], c.estimator.delta, taper);
      r.theta_hat = e.theta;
      r.denominator = e.denominator;
      const double span = std::min(p[0].horizon, p[1].horizon) - std::max(p[0].origin, p[1].origin);
      r.n = static_cast<std::size_t>(std::floor(span / c.estimator.delta * (1.0 + 1e-12)));
      r.dt = 0.0;
    } else if (est == "gph") {
      // Memory of the OLS residual levels.
      const double th = ols_theta(s.y1, s.y2);
      std::vector<double> z(s.y1.size());
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = s.y1[j] - th * s.y2[j];
      const std::size_t bw = c.estimator.gph_bandwidth
                                 ? c.estimator.gph_bandwidth
                                 : static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(z.size()))));
      r.theta_hat = gph_memory(z, bw);
      r.m = bw;
      r.delta = 0.0;
    } else {
      throw InputError("unknown estimator '" + est + "' (expected ols, taper, ctaper, spurious, gph, all)");
    }
    if (r.frequency_warning) err << "warning: " << est << ": frequency l >= n / 2\n";
    w.field(r.estimator).field(r.theta_hat).field(r.n).field(r.m).field(r.delta).field(r.dt).end_row();
    out << est << ": " << csv::format_double(r.theta_hat) << " (n = " << r.n << ")\n";
  }
  const fs::path dir = resolve_out(g, c);
  csv::write_file_atomic(dir / "estimates.csv", w.str());
  return kExitOk;
}

// ---- Monte Carlo ----

const std::vector<std::size_t>& require_grid(const RunConfig& c) {
  if (c.experiment.n_grid.empty()) throw ConfigError("experiment.n_grid is required", 0, "experiment.n_grid");
  return c.experiment.n_grid;
}

int cmd_mc_rate(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const RunConfig c = load(g, true);
  warn_all(c, err);
  const auto& grid = require_grid(c);
  const auto spec = experiment_spec(c);
  const auto rep = rate_experiment(spec, grid, c.experiment.reps, resolve_seed(g, c), resolve_workers(g, c));
  const fs::path dir = resolve_out(g, c);
  csv::write_file_atomic(dir / "replications.csv", replications_csv(rep));
  csv::write_file_atomic(dir / "summary.csv", summary_csv(rep));
  out << "mc-rate " << rep.experiment << ": slope " << csv::format_double(rep.rate.slope) << " (se "
      << csv::format_double(rep.rate.slope_se) << "), IQR ratio of n(err) " << csv::format_double(rep.iqr_ratio)
      << ", spread " << csv::format_double(rep.iqr_spread) << "\n";
  return kExitOk;
}

std::string reference_csv(const std::vector<double>& v) {
  csv::Writer w({"k", "value"});
  for (std::size_t k = 0; k < v.size(); ++k) w.field(k + 1).field(v[k]).end_row();
  return w.str();
}

int cmd_mc_dist(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const RunConfig c = load(g, true);
  warn_all(c, err);
  const auto& grid = require_grid(c);
  const auto spec = experiment_spec(c);
  const auto f = resolve_functional(c);
  const auto rep = distribution_experiment(spec, grid, c.experiment.reps, f, c.experiment.reference_count,
                                           c.experiment.reference_grid, resolve_seed(g, c), resolve_workers(g, c));
  const fs::path dir = resolve_out(g, c);
  csv::write_file_atomic(dir / "replications.csv", replications_csv(rep));
  csv::write_file_atomic(dir / "summary.csv", summary_csv(rep));
  csv::write_file_atomic(dir / "reference.csv", reference_csv(rep.reference));
  for (const auto& s : rep.summary)
    out << "mc-dist " << rep.experiment << " n = " << s.n << ": KS " << csv::format_double(s.ks_stat) << " (p "
        << csv::format_double(s.ks_p) << ")\n";
  return kExitOk;
}

int cmd_mc_levels(const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const RunConfig c = load(g, true);
  warn_all(c, err);
  const auto& grid = require_grid(c);
  const auto rep = levels_experiment(c.market, grid, c.experiment.reps, resolve_seed(g, c), resolve_workers(g, c));
  csv::write_file_atomic(resolve_out(g, c) / "levels.csv", levels_csv(rep));
  out << "mc-levels: max relative error " << csv::format_double(rep.max_relative_error) << "\n";
  return kExitOk;
}

int cmd_reference(const GlobalOptions& g, std::ostream& out) {
  const RunConfig c = load(g, true);
  const auto f = resolve_functional(c);
  const auto v = sample_functional(f, c.experiment.reference_grid, c.experiment.reference_count,
                                   stream_seed(resolve_seed(g, c), Stream::kReference), resolve_workers(g, c));
  csv::write_file_atomic(resolve_out(g, c) / "reference.csv", reference_csv(v));
  out << "reference " << to_string(f.kind) << ": " << v.size() << " samples, scale " << csv::format_double(f.scale)
      << "\n";
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tick-time cointegration: simulation, estimation and Monte Carlo checks", "tickcoint"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config,-c", g.config, "Run configuration file");
  app.add_option("--seed", g.seed, "Master seed (overrides run.seed)");
  app.add_option("--workers", g.workers, "Worker threads (fallback: TICKCOINT_WORKERS)");
  app.add_option("--out,-o", g.out, "Output directory (overrides run.output)");

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate one market and write paths, ticks and events");
  EstimateOptions eo;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate theta from a tick or path CSV");
  estimate_cmd->add_option("--input,-i", eo.input, "Tick CSV (asset,time,logprice) or path CSV (time,y1,y2)")
      ->required();
  estimate_cmd->add_option("--format", eo.format, "auto | ticks | path");
  estimate_cmd->add_option("--estimator,-e", eo.estimator, "ols | taper | ctaper | spurious | gph | all");
  auto* rate_cmd = app.add_subcommand("mc-rate", "Convergence-rate experiment");
  auto* dist_cmd = app.add_subcommand("mc-dist", "Scaled-error distribution against the limit law");
  auto* levels_cmd = app.add_subcommand("mc-levels", "Levels covariance experiment");
  auto* ref_cmd = app.add_subcommand("reference", "Sample the limit functional");
  // Global flags may also follow the subcommand.
  for (auto* sub : {simulate_cmd, estimate_cmd, rate_cmd, dist_cmd, levels_cmd, ref_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*simulate_cmd) return cmd_simulate(g, out, err);
    if (*estimate_cmd) return cmd_estimate(g, eo, out, err);
    if (*rate_cmd) return cmd_mc_rate(g, out, err);
    if (*dist_cmd) return cmd_mc_dist(g, out, err);
    if (*levels_cmd) return cmd_mc_levels(g, out, err);
    if (*ref_cmd) return cmd_reference(g, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace tickcoint
