#include "tickcoint/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tickcoint/csv.hpp"
#include "tickcoint/errors.hpp"

namespace tickcoint {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, Entry> entries;
};

using Document = std::map<std::string, Section>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const char* const kSections[] = {"market", "asset1", "asset2", "estimator", "experiment", "run"};

Document tokenize(std::string_view text) {
  Document doc;
  std::string current;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", lineno, "");
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      bool known = false;
      for (const char* s : kSections) known = known || current == s;
      if (!known) throw ConfigError("unknown section [" + current + "]", lineno, current);
      if (doc.count(current)) throw ConfigError("duplicate section [" + current + "]", lineno, current);
      doc[current].line = lineno;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', found '" + line + "'", lineno, "");
    if (current.empty()) throw ConfigError("key outside of any section", lineno, "");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno, current);
    auto& entries = doc[current].entries;
    if (entries.count(key)) throw ConfigError("duplicate key '" + key + "'", lineno, current + "." + key);
    entries[key] = Entry{value, lineno, false};
  }
  return doc;
}

// Typed access to one section. Every lookup marks the key as consumed;
// finish() rejects whatever is left.
class Reader {
 public:
  Reader(Document& doc, std::string name, std::map<std::string, std::size_t>& lines)
      : name_(std::move(name)), lines_(lines) {
    auto it = doc.find(name_);
    if (it != doc.end()) section_ = &it->second;
  }

  bool present() const { return section_ != nullptr; }

  const Entry* get(const std::string& key) {
    if (!section_) return nullptr;
    auto it = section_->entries.find(key);
    if (it == section_->entries.end()) return nullptr;
    it->second.used = true;
    lines_[path(key)] = it->second.line;
    return &it->second;
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

  std::string str(const std::string& key, std::string def) {
    const Entry* e = get(key);
    if (!e) return def;
    if (e->value.empty()) throw ConfigError("empty value", e->line, path(key));
    return e->value;
  }

  std::optional<double> opt_num(const std::string& key) {
    const Entry* e = get(key);
    if (!e) return std::nullopt;
    return to_num(*e, key);
  }

  double num(const std::string& key, double def) { return opt_num(key).value_or(def); }

  std::size_t count(const std::string& key, std::size_t def) {
    const Entry* e = get(key);
    if (!e) return def;
    return to_count(e->value, *e, key);
  }

  std::uint64_t u64(const std::string& key, std::uint64_t def) {
    const Entry* e = get(key);
    if (!e) return def;
    std::uint64_t v = 0;
    const auto r = std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
    if (r.ec != std::errc() || r.ptr != e->value.data() + e->value.size())
      throw ConfigError("expected a nonnegative integer, found '" + e->value + "'", e->line, path(key));
    return v;
  }

  bool flag(const std::string& key, bool def) {
    const Entry* e = get(key);
    if (!e) return def;
    if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no") return false;
    throw ConfigError("expected true or false, found '" + e->value + "'", e->line, path(key));
  }

  std::vector<std::size_t> counts(const std::string& key) {
    const Entry* e = get(key);
    if (!e) return {};
    std::vector<std::size_t> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_count(trim(item), *e, key));
    return out;
  }

  // Converts a ValidationError raised while interpreting a value.
  template <class F>
  auto convert(const std::string& key, const std::string& def, F&& f) {
    const Entry* e = get(key);
    const std::string v = e ? e->value : def;
    try {
      return f(v);
    } catch (const ValidationError& ex) {
      throw ConfigError(ex.what(), e ? e->line : 0, path(key));
    }
  }

  void finish() const {
    if (!section_) return;
    for (const auto& [key, e] : section_->entries)
      if (!e.used) throw ConfigError("unknown key '" + key + "' in [" + name_ + "]", e.line, path(key));
  }

 private:
  double to_num(const Entry& e, const std::string& key) const {
    try {
      return csv::parse_double(e.value);
    } catch (const ValidationError&) {
      throw ConfigError("expected a number, found '" + e.value + "'", e.line, path(key));
    }
  }

  std::size_t to_count(const std::string& v, const Entry& e, const std::string& key) const {
    std::size_t out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
      throw ConfigError("expected a nonnegative integer, found '" + v + "'", e.line, path(key));
    return out;
  }

  std::string name_;
  std::map<std::string, std::size_t>& lines_;
  Section* section_ = nullptr;
};

std::vector<DeformationPiece> parse_pieces(const std::string& text) {
  std::vector<DeformationPiece> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> f;
    std::stringstream is(trim(item));
    std::string tok;
    while (std::getline(is, tok, ':')) f.push_back(trim(tok));
    if (f.size() != 5)
      throw ParameterError("deformation piece '" + trim(item) + "' must read kind:length:slope:amplitude:jump");
    DeformationPiece p;
    if (f[0] == "trading")
      p.kind = DeformationPiece::Kind::kTrading;
    else if (f[0] == "nontrading")
      p.kind = DeformationPiece::Kind::kNontrading;
    else
      throw ParameterError("deformation piece kind must be trading or nontrading, found '" + f[0] + "'");
    p.length = csv::parse_double(f[1]);
    p.slope = csv::parse_double(f[2]);
    p.amplitude = csv::parse_double(f[3]);
    p.jump = csv::parse_double(f[4]);
    out.push_back(p);
  }
  if (out.empty()) throw ParameterError("deformation schedule has no pieces");
  return out;
}

std::string format_pieces(const std::vector<DeformationPiece>& pieces) {
  std::string s;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (i) s += ", ";
    s += p.kind == DeformationPiece::Kind::kTrading ? "trading" : "nontrading";
    for (double v : {p.length, p.slope, p.amplitude, p.jump}) s += ":" + csv::format_double(v);
  }
  return s;
}

AssetConfig parse_asset(Reader& r) {
  AssetConfig a;
  const std::string kind = r.str("durations", "iid");
  DurationModel& d = a.durations;
  if (kind == "iid")
    d.kind = DurationModel::Kind::kIid;
  else if (kind == "lmsd")
    d.kind = DurationModel::Kind::kLmsd;
  else if (kind == "acd")
    d.kind = DurationModel::Kind::kAcd;
  else
    throw ConfigError("durations must be iid, lmsd or acd, found '" + kind + "'", r.get("durations")->line,
                      r.path("durations"));

  d.iid_law = r.convert("iid.law", "exponential", innovation_law_from_string);
  d.iid_mean = r.num("iid.mean", 1.0);

  d.lmsd.sigma = r.num("lmsd.sigma", d.lmsd.sigma);
  d.lmsd.innovation = r.convert("lmsd.innovation", "exponential", innovation_law_from_string);
  const std::string driver = r.str("lmsd.driver", "long-memory");
  const double lm_h = r.num("lmsd.hurst", 0.7);
  const double lm_c = r.num("lmsd.memory_scale", 0.5);
  if (driver == "long-memory")
    d.lmsd.driver = GaussianSpec::long_memory(lm_h, lm_c, 1);
  else if (driver == "white")
    d.lmsd.driver = GaussianSpec::white(1);
  else
    throw ConfigError("lmsd.driver must be long-memory or white, found '" + driver + "'",
                      r.get("lmsd.driver")->line, r.path("lmsd.driver"));

  d.acd.omega = r.num("acd.omega", d.acd.omega);
  d.acd.alpha = r.num("acd.alpha", d.acd.alpha);
  d.acd.beta = r.num("acd.beta", d.acd.beta);
  d.acd.innovation = r.convert("acd.innovation", "exponential", innovation_law_from_string);
  d.acd.burn_in = r.count("acd.burn_in", d.acd.burn_in);
  d.acd.assert_moments = r.flag("acd.assert_moments", false);

  const std::string def = r.str("deformation", "none");
  const double period = r.num("deformation.period", 1.0);
  const double amplitude = r.num("deformation.amplitude", 0.0);
  const Entry* pieces_entry = r.get("deformation.pieces");
  DeformationSpec f;
  if (def == "seasonal") {
    f.pieces = {DeformationPiece{DeformationPiece::Kind::kTrading, period, 1.0, amplitude, 0.0}};
    f.min_slope = 1e-6;
  } else if (def == "schedule") {
    if (!pieces_entry)
      throw ConfigError("deformation = schedule requires deformation.pieces", r.get("deformation")->line,
                        r.path("deformation.pieces"));
    try {
      f.pieces = parse_pieces(pieces_entry->value);
    } catch (const ValidationError& e) {
      throw ConfigError(e.what(), pieces_entry->line, r.path("deformation.pieces"));
    }
  } else if (def != "none") {
    throw ConfigError("deformation must be none, seasonal or schedule, found '" + def + "'",
                      r.get("deformation")->line, r.path("deformation"));
  }
  f.periodic = r.flag("deformation.periodic", f.periodic);
  f.phase = r.num("deformation.phase", f.phase);
  f.random_phase = r.flag("deformation.random_phase", f.random_phase);
  f.min_interval = r.num("deformation.min_interval", f.min_interval);
  f.max_nontrading = r.num("deformation.max_nontrading", f.max_nontrading);
  f.min_slope = r.num("deformation.min_slope", f.min_slope);
  f.max_jump = r.num("deformation.max_jump", f.max_jump);
  if (def != "none") a.deformation = f;

  a.efficient.variance = r.num("efficient.variance", 1.0);
  a.efficient.law = r.convert("efficient.law", "gaussian", efficient_law_from_string);

  a.noise.regime = r.convert("noise.regime", "none", noise_regime_from_string);
  a.noise.hurst = r.num("noise.hurst", a.noise.hurst);
  a.noise.scale = r.num("noise.scale", a.noise.scale);
  a.noise.xi = r.convert("noise.xi", "iid", xi_construction_from_string);
  a.noise.memory_scale = r.num("noise.memory_scale", a.noise.memory_scale);
  a.noise.driver_sigma = r.num("noise.driver_sigma", a.noise.driver_sigma);
  a.noise.hermite_weight = r.num("noise.hermite_weight", a.noise.hermite_weight);
  r.finish();
  return a;
}

void write_asset(std::ostringstream& o, const char* name, const AssetConfig& a) {
  const auto num = [](double v) { return csv::format_double(v); };
  const auto& d = a.durations;
  o << "[" << name << "]\n";
  o << "durations = " << to_string(d.kind) << "\n";
  o << "iid.law = " << to_string(d.iid_law) << "\n";
  o << "iid.mean = " << num(d.iid_mean) << "\n";
  o << "lmsd.sigma = " << num(d.lmsd.sigma) << "\n";
  o << "lmsd.innovation = " << to_string(d.lmsd.innovation) << "\n";
  const bool lm = d.lmsd.driver.kind == GaussianSpec::Kind::kLongMemory;
  o << "lmsd.driver = " << (lm ? "long-memory" : "white") << "\n";
  o << "lmsd.hurst = " << num(lm ? d.lmsd.driver.hurst : 0.7) << "\n";
  o << "lmsd.memory_scale = " << num(lm ? d.lmsd.driver.scale : 0.5) << "\n";
  o << "acd.omega = " << num(d.acd.omega) << "\n";
  o << "acd.alpha = " << num(d.acd.alpha) << "\n";
  o << "acd.beta = " << num(d.acd.beta) << "\n";
  o << "acd.innovation = " << to_string(d.acd.innovation) << "\n";
  o << "acd.burn_in = " << d.acd.burn_in << "\n";
  o << "acd.assert_moments = " << (d.acd.assert_moments ? "true" : "false") << "\n";
  if (a.deformation) {
    const auto& f = *a.deformation;
    o << "deformation = schedule\n";
    o << "deformation.pieces = " << format_pieces(f.pieces) << "\n";
    o << "deformation.periodic = " << (f.periodic ? "true" : "false") << "\n";
    o << "deformation.phase = " << num(f.phase) << "\n";
    o << "deformation.random_phase = " << (f.random_phase ? "true" : "false") << "\n";
    o << "deformation.min_interval = " << num(f.min_interval) << "\n";
    o << "deformation.max_nontrading = " << num(f.max_nontrading) << "\n";
    o << "deformation.min_slope = " << num(f.min_slope) << "\n";
    o << "deformation.max_jump = " << num(f.max_jump) << "\n";
  } else {
    o << "deformation = none\n";
  }
  o << "efficient.variance = " << num(a.efficient.variance) << "\n";
  o << "efficient.law = " << to_string(a.efficient.law) << "\n";
  o << "noise.regime = " << to_string(a.noise.regime) << "\n";
  o << "noise.hurst = " << num(a.noise.hurst) << "\n";
  o << "noise.scale = " << num(a.noise.scale) << "\n";
  o << "noise.xi = " << to_string(a.noise.xi) << "\n";
  o << "noise.memory_scale = " << num(a.noise.memory_scale) << "\n";
  o << "noise.driver_sigma = " << num(a.noise.driver_sigma) << "\n";
  o << "noise.hermite_weight = " << num(a.noise.hermite_weight) << "\n\n";
}

void validate_config(const RunConfig& c, const std::map<std::string, std::size_t>& lines) {
  const auto fail = [&](const std::string& msg, const std::string& field) {
    auto it = lines.find(field);
    throw ConfigError(msg, it == lines.end() ? 0 : it->second, field);
  };
  try {
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string prefix = "asset" + std::to_string(i + 1);
      const auto& d = c.market.assets[i].durations;
      try {
        d.validate();
      } catch (const ConfigError&) {
        throw;
      } catch (const ValidationError& e) {
        const std::string field = prefix + "." + (d.kind == DurationModel::Kind::kAcd    ? "acd"
                                                  : d.kind == DurationModel::Kind::kLmsd ? "lmsd"
                                                                                          : "iid");
        fail(e.what(), field);
      }
    }
    c.market.validate();
  } catch (const ConfigError& e) {
    if (e.line() != 0) throw;
    // Attach the line of the closest configured key under the failing path.
    std::size_t line = 0;
    for (const auto& [k, l] : lines)
      if (!e.field().empty() && k.rfind(e.field(), 0) == 0) line = line == 0 ? l : std::min(line, l);
    throw ConfigError(e.message(), line, e.field());
  }
  if (c.mode == MarketMode::kCointegrated && !c.market.is_cointegrated())
    fail("cointegrated mode requires theta12 = 1 / theta21", "market.theta");
  if (c.mode == MarketMode::kSpurious && c.market.is_cointegrated())
    fail("spurious mode requires theta12 != 1 / theta21", "market.theta12");
  const auto& est = c.estimator;
  if (est.name != "ols" && est.name != "taper" && est.name != "ctaper" && est.name != "spurious" && est.name != "gph")
    fail("estimator.name must be ols, taper, ctaper, spurious or gph", "estimator.name");
  if (est.taper.m < 1) fail("m must be >= 1", "estimator.m");
  if (!(est.dt > 0.0) || !std::isfinite(est.dt)) fail("dt must be positive", "estimator.dt");
  if (!(est.delta > 0.0) || !std::isfinite(est.delta)) fail("delta must be positive", "estimator.delta");
  if (est.gph_bandwidth != 0 && est.gph_bandwidth < 3) fail("gph_bandwidth must be >= 3", "estimator.gph_bandwidth");
  const auto& ex = c.experiment;
  if (ex.reps < 2) fail("reps must be >= 2", "experiment.reps");
  for (std::size_t i = 0; i < ex.n_grid.size(); ++i) {
    if (ex.n_grid[i] < 2) fail("n values must be >= 2", "experiment.n_grid");
    if (i && ex.n_grid[i] <= ex.n_grid[i - 1]) fail("n grid must be strictly increasing", "experiment.n_grid");
  }
  if (ex.reference_count < 2) fail("reference_count must be >= 2", "experiment.reference_count");
  if (ex.reference_grid < kMinReferenceGrid)
    fail("reference_grid must be >= " + std::to_string(kMinReferenceGrid), "experiment.reference_grid");
  if (ex.functional_hurst && !(*ex.functional_hurst > 0.0 && *ex.functional_hurst < 1.0))
    fail("functional.hurst must lie in (0, 1)", "experiment.functional.hurst");
  if (!(ex.max_failure_fraction >= 0.0 && ex.max_failure_fraction <= 1.0))
    fail("max_failure_fraction must lie in [0, 1]", "experiment.max_failure_fraction");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  Document doc = tokenize(text);
  std::map<std::string, std::size_t> lines;
  RunConfig c;

  Reader market(doc, "market", lines);
  if (!market.present()) throw ConfigError("missing required section [market]", 0, "market");
  const std::string mode = market.str("mode", "cointegrated");
  const auto theta = market.opt_num("theta");
  const auto t21 = market.opt_num("theta21");
  const auto t12 = market.opt_num("theta12");
  if (mode == "cointegrated") {
    c.mode = MarketMode::kCointegrated;
    if (t12) throw ConfigError("theta12 is implied in cointegrated mode", lines["market.theta12"], "market.theta12");
    if (theta && t21) throw ConfigError("give theta or theta21, not both", lines["market.theta21"], "market.theta21");
    const double th = theta ? *theta : t21.value_or(1.0);
    if (th == 0.0 || !std::isfinite(th))
      throw ConfigError("theta must be finite and nonzero", lines["market.theta"], "market.theta");
    c.market.theta21 = th;
    c.market.theta12 = 1.0 / th;
  } else if (mode == "spurious") {
    c.mode = MarketMode::kSpurious;
    if (theta) throw ConfigError("spurious mode takes theta21 and theta12", lines["market.theta"], "market.theta");
    if (!t21 || !t12)
      throw ConfigError("spurious mode requires theta21 and theta12", market.get("mode") ? market.get("mode")->line : 0,
                        "market.theta12");
    c.market.theta21 = *t21;
    c.market.theta12 = *t12;
  } else {
    throw ConfigError("mode must be cointegrated or spurious, found '" + mode + "'", lines["market.mode"],
                      "market.mode");
  }
  c.market.horizon = market.num("horizon", c.market.horizon);
  market.finish();

  for (std::size_t i = 0; i < 2; ++i) {
    Reader r(doc, "asset" + std::to_string(i + 1), lines);
    c.market.assets[i] = parse_asset(r);
  }

  Reader est(doc, "estimator", lines);
  c.estimator.name = est.str("name", "ols");
  c.estimator.taper.m = est.count("m", 3);
  c.estimator.taper.taper = est.convert("taper", "cosine", Taper::from_string);
  c.estimator.dt = est.num("dt", 1.0);
  c.estimator.delta = est.num("delta", 1.0);
  c.estimator.gph_bandwidth = est.count("gph_bandwidth", 0);
  est.finish();

  Reader ex(doc, "experiment", lines);
  auto& e = c.experiment;
  e.name = ex.str("name", e.name);
  e.estimator = ex.convert("estimator", "ols", estimator_id_from_string);
  e.n_grid = ex.counts("n_grid");
  e.reps = ex.count("reps", e.reps);
  e.target = ex.opt_num("target");
  e.scale_exponent = ex.opt_num("scale_exponent");
  e.functional = ex.convert("functional", "ratio-BBH", functional_kind_from_string);
  e.functional_hurst = ex.opt_num("functional.hurst");
  const std::string fscale = ex.str("functional.scale", "auto");
  if (fscale != "auto") {
    try {
      e.functional_scale = csv::parse_double(fscale);
    } catch (const ValidationError&) {
      throw ConfigError("functional.scale must be auto or a number", lines["experiment.functional.scale"],
                        "experiment.functional.scale");
    }
  }
  e.functional_display = ex.flag("functional.display", false);
  e.reference_count = ex.count("reference_count", e.reference_count);
  e.reference_grid = ex.count("reference_grid", e.reference_grid);
  e.planted_rate = ex.num("planted.rate", e.planted_rate);
  const std::string law = ex.str("planted.law", "normal");
  if (law == "functional")
    e.planted_from_functional = true;
  else if (law != "normal")
    throw ConfigError("planted.law must be normal or functional", lines["experiment.planted.law"],
                      "experiment.planted.law");
  e.max_failure_fraction = ex.num("max_failure_fraction", e.max_failure_fraction);
  ex.finish();

  Reader run(doc, "run", lines);
  c.run.output = run.str("output", c.run.output);
  c.run.seed = run.u64("seed", c.run.seed);
  c.run.workers = run.count("workers", 0);
  run.finish();

  validate_config(c, lines);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  const auto num = [](double v) { return csv::format_double(v); };
  std::ostringstream o;
  o << "[market]\n";
  if (c.mode == MarketMode::kCointegrated) {
    o << "mode = cointegrated\ntheta = " << num(c.market.theta21) << "\n";
  } else {
    o << "mode = spurious\ntheta21 = " << num(c.market.theta21) << "\ntheta12 = " << num(c.market.theta12) << "\n";
  }
  o << "horizon = " << num(c.market.horizon) << "\n\n";
  write_asset(o, "asset1", c.market.assets[0]);
  write_asset(o, "asset2", c.market.assets[1]);
  o << "[estimator]\n";
  o << "name = " << c.estimator.name << "\n";
  o << "m = " << c.estimator.taper.m << "\n";
  o << "taper = " << c.estimator.taper.taper.name() << "\n";
  o << "dt = " << num(c.estimator.dt) << "\n";
  o << "delta = " << num(c.estimator.delta) << "\n";
  o << "gph_bandwidth = " << c.estimator.gph_bandwidth << "\n\n";
  const auto& e = c.experiment;
  o << "[experiment]\n";
  o << "name = " << e.name << "\n";
  o << "estimator = " << to_string(e.estimator) << "\n";
  if (!e.n_grid.empty()) {
    o << "n_grid = ";
    for (std::size_t i = 0; i < e.n_grid.size(); ++i) o << (i ? "," : "") << e.n_grid[i];
    o << "\n";
  }
  o << "reps = " << e.reps << "\n";
  if (e.target) o << "target = " << num(*e.target) << "\n";
  if (e.scale_exponent) o << "scale_exponent = " << num(*e.scale_exponent) << "\n";
  o << "functional = " << to_string(e.functional) << "\n";
  if (e.functional_hurst) o << "functional.hurst = " << num(*e.functional_hurst) << "\n";
  o << "functional.scale = " << (e.functional_scale ? num(*e.functional_scale) : std::string("auto")) << "\n";
  o << "functional.display = " << (e.functional_display ? "true" : "false") << "\n";
  o << "reference_count = " << e.reference_count << "\n";
  o << "reference_grid = " << e.reference_grid << "\n";
  o << "planted.rate = " << num(e.planted_rate) << "\n";
  o << "planted.law = " << (e.planted_from_functional ? "functional" : "normal") << "\n";
  o << "max_failure_fraction = " << num(e.max_failure_fraction) << "\n\n";
  o << "[run]\n";
  o << "output = " << c.run.output << "\n";
  o << "seed = " << c.run.seed << "\n";
  o << "workers = " << c.run.workers << "\n";
  return o.str();
}

std::vector<std::string> config_warnings(const RunConfig& c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& a = c.market.assets[i];
    const bool strongish = a.noise.regime == NoiseRegime::kStrong || a.noise.regime == NoiseRegime::kStandard;
    if (strongish && a.durations.kind == DurationModel::Kind::kAcd && !a.durations.acd.assert_moments)
      out.push_back("asset" + std::to_string(i + 1) +
                    ": ACD durations in the " + to_string(a.noise.regime) +
                    " regime need higher moment conditions; set acd.assert_moments = true once verified");
  }
  return out;
}

double implied_hurst(const RunConfig& c) {
  if (c.experiment.functional_hurst) return *c.experiment.functional_hurst;
  const auto& a = c.market.assets[0];
  switch (a.noise.regime) {
    case NoiseRegime::kWeak:
      return a.noise.hurst;
    case NoiseRegime::kStrong:
      if (a.noise.xi == XiConstruction::kLeverageSquare && a.durations.kind == DurationModel::Kind::kLmsd &&
          a.durations.lmsd.driver.kind == GaussianSpec::Kind::kLongMemory)
        return a.durations.lmsd.driver.hurst;
      return a.noise.hurst;
    default:
      return 0.5;
  }
}

LimitFunctional resolve_functional(const RunConfig& c) {
  const auto& e = c.experiment;
  LimitFunctional f;
  f.kind = e.functional;
  f.hurst = implied_hurst(c);
  f.taper = c.estimator.taper;
  f.display_variant = e.functional_display;
  f.sigma = levels_covariance(c.market);
  if (e.functional_scale) {
    f.scale = *e.functional_scale;
    return f;
  }
  ScaleParams p = scale_params(c.market, c.estimator.delta);
  p.hurst = f.hurst;
  switch (f.kind) {
    case FunctionalKind::kRatioBBH:
      f.scale = weak_ols_scale(p, e.functional_display);
      break;
    case FunctionalKind::kTaperWeak:
      f.scale = weak_taper_scale(p, e.functional_display);
      break;
    case FunctionalKind::kRatioBdBH:
    case FunctionalKind::kTaperStrong:
      f.scale = e.estimator == EstimatorId::kCTaper ? continuous_strong_scale(p) : strong_scale(p);
      break;
    case FunctionalKind::kSpurious:
    case FunctionalKind::kLevels:
      f.scale = 1.0;
      break;
  }
  return f;
}

ExperimentSpec experiment_spec(const RunConfig& c) {
  const auto& e = c.experiment;
  ExperimentSpec s;
  s.name = e.name;
  s.market = c.market;
  s.estimator = e.estimator;
  s.taper = c.estimator.taper;
  s.dt = c.estimator.dt;
  s.delta = c.estimator.delta;
  s.target = e.target;
  s.planted_rate = e.planted_rate;
  s.max_failure_fraction = e.max_failure_fraction;
  s.planted_grid = e.reference_grid;
  if (e.planted_from_functional) s.planted_law = resolve_functional(c);
  if (e.scale_exponent) {
    s.scale_exponent = *e.scale_exponent;
  } else {
    const double h = implied_hurst(c);
    switch (e.estimator) {
      case EstimatorId::kPlanted:
        s.scale_exponent = -e.planted_rate;
        break;
      case EstimatorId::kSpurious:
        s.scale_exponent = 0.0;
        break;
      default:
        s.scale_exponent = e.functional == FunctionalKind::kRatioBdBH || e.functional == FunctionalKind::kTaperStrong
                               ? 1.5 - h
                               : 0.5 - h;
        break;
    }
  }
  return s;
}

}  // namespace tickcoint
