#include "tickcoint/durations.hpp"

#include <cmath>

#include "tickcoint/errors.hpp"

namespace tickcoint {

std::string to_string(InnovationLaw law) {
  switch (law) {
    case InnovationLaw::kExponential:
      return "exponential";
    case InnovationLaw::kUnitLognormal:
      return "lognormal";
    case InnovationLaw::kDegenerate:
      return "degenerate";
  }
  return "exponential";
}

InnovationLaw innovation_law_from_string(const std::string& name) {
  if (name == "exponential") return InnovationLaw::kExponential;
  if (name == "lognormal") return InnovationLaw::kUnitLognormal;
  if (name == "degenerate") return InnovationLaw::kDegenerate;
  throw ParameterError("unknown innovation law '" + name + "' (expected exponential, lognormal, degenerate)");
}

double draw_innovation(InnovationLaw law, Rng& rng) {
  switch (law) {
    case InnovationLaw::kExponential:
      return std::exponential_distribution<double>(1.0)(rng);
    case InnovationLaw::kUnitLognormal: {
      const double s = kLognormalLogScale;
      return std::exp(s * std::normal_distribution<double>()(rng) - 0.5 * s * s);
    }
    case InnovationLaw::kDegenerate:
      return 1.0;
  }
  return 1.0;
}

double LmsdSpec::intensity() const { return std::exp(-0.5 * sigma * sigma); }

void LmsdSpec::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ParameterError("lmsd: sigma must be a finite nonnegative number");
  if (length < 1) throw ParameterError("lmsd: length must be >= 1");
  GaussianSpec d = driver;
  d.length = length + 1;
  d.validate();
}

LmsdSample gen_lmsd(const LmsdSpec& spec, Seed seed) {
  spec.validate();
  GaussianSpec d = spec.driver;
  d.length = spec.length + 1;
  LmsdSample out;
  out.driver = gen_long_memory_gaussian(d, derive_seed(seed, {1}));
  Rng rng = make_rng(derive_seed(seed, {2}));
  out.durations.resize(spec.length);
  for (std::size_t k = 0; k < spec.length; ++k) {
    out.durations[k] = draw_innovation(spec.innovation, rng) * std::exp(spec.sigma * out.driver[k]);
  }
  return out;
}

double AcdSpec::intensity() const { return (1.0 - alpha - beta) / omega; }

void AcdSpec::validate() const {
  if (!(omega > 0.0)) throw ParameterError("acd: omega must be positive");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ParameterError("acd: alpha and beta must be nonnegative");
  if (!(alpha + beta < 1.0)) throw ParameterError("acd: alpha + beta must be < 1 (nonstationary ACD)");
  if (length < 1) throw ParameterError("acd: length must be >= 1");
}

AcdSample gen_acd_with_psi(const AcdSpec& spec, Seed seed) {
  spec.validate();
  Rng rng = make_rng(seed);
  double psi = spec.omega / (1.0 - spec.alpha - spec.beta);
  double tau = psi;
  AcdSample out;
  out.durations.resize(spec.length);
  out.psi.resize(spec.length);
  const std::size_t total = spec.burn_in + spec.length;
  for (std::size_t k = 0; k < total; ++k) {
    if (k > 0) psi = spec.omega + spec.alpha * tau + spec.beta * psi;
    tau = psi * draw_innovation(spec.innovation, rng);
    if (k >= spec.burn_in) {
      out.durations[k - spec.burn_in] = tau;
      out.psi[k - spec.burn_in] = psi;
    }
  }
  return out;
}

std::vector<double> gen_acd(const AcdSpec& spec, Seed seed) { return gen_acd_with_psi(spec, seed).durations; }

std::vector<double> gen_iid_durations(InnovationLaw law, std::size_t n, Seed seed, double mean) {
  if (!(mean > 0.0)) throw ParameterError("iid durations: mean must be positive");
  Rng rng = make_rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = mean * draw_innovation(law, rng);
  return out;
}

DurationModel DurationModel::poisson(double intensity) {
  DurationModel m;
  m.kind = Kind::kIid;
  m.iid_law = InnovationLaw::kExponential;
  m.iid_mean = 1.0 / intensity;
  return m;
}

DurationModel DurationModel::deterministic(double spacing) {
  DurationModel m;
  m.kind = Kind::kIid;
  m.iid_law = InnovationLaw::kDegenerate;
  m.iid_mean = spacing;
  return m;
}

DurationModel DurationModel::from_lmsd(LmsdSpec spec) {
  DurationModel m;
  m.kind = Kind::kLmsd;
  m.lmsd = std::move(spec);
  return m;
}

DurationModel DurationModel::from_acd(AcdSpec spec) {
  DurationModel m;
  m.kind = Kind::kAcd;
  m.acd = spec;
  return m;
}

double DurationModel::intensity() const {
  switch (kind) {
    case Kind::kIid:
      return 1.0 / iid_mean;
    case Kind::kLmsd:
      return lmsd.intensity();
    case Kind::kAcd:
      return acd.intensity();
  }
  return 1.0;
}

void DurationModel::validate() const {
  switch (kind) {
    case Kind::kIid:
      if (!(iid_mean > 0.0) || !std::isfinite(iid_mean)) throw ParameterError("iid durations: mean must be positive");
      break;
    case Kind::kLmsd:
      lmsd.validate();
      break;
    case Kind::kAcd:
      acd.validate();
      break;
  }
}

std::string to_string(DurationModel::Kind kind) {
  switch (kind) {
    case DurationModel::Kind::kIid:
      return "iid";
    case DurationModel::Kind::kLmsd:
      return "lmsd";
    case DurationModel::Kind::kAcd:
      return "acd";
  }
  return "iid";
}

DurationSample gen_durations(const DurationModel& model, std::size_t n, Seed seed) {
  DurationSample out;
  switch (model.kind) {
    case DurationModel::Kind::kIid:
      out.durations = gen_iid_durations(model.iid_law, n, seed, model.iid_mean);
      break;
    case DurationModel::Kind::kLmsd: {
      LmsdSpec s = model.lmsd;
      s.length = n;
      auto r = gen_lmsd(s, seed);
      out.durations = std::move(r.durations);
      out.driver = std::move(r.driver);
      break;
    }
    case DurationModel::Kind::kAcd: {
      AcdSpec s = model.acd;
      s.length = n;
      out.durations = gen_acd(s, seed);
      break;
    }
  }
  return out;
}

}  // namespace tickcoint
