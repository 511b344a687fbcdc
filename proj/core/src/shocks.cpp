#include "tickcoint/shocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tickcoint/errors.hpp"
#include "tickcoint/fracgauss.hpp"

namespace tickcoint {

void EfficientSpec::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw ParameterError("efficient shocks: variance must be positive");
}

std::string to_string(EfficientSpec::Law law) {
  switch (law) {
    case EfficientSpec::Law::kGaussian:
      return "gaussian";
    case EfficientSpec::Law::kTwoPoint:
      return "two-point";
    case EfficientSpec::Law::kUniform:
      return "uniform";
  }
  return "gaussian";
}

EfficientSpec::Law efficient_law_from_string(const std::string& name) {
  if (name == "gaussian") return EfficientSpec::Law::kGaussian;
  if (name == "two-point") return EfficientSpec::Law::kTwoPoint;
  if (name == "uniform") return EfficientSpec::Law::kUniform;
  throw ParameterError("unknown efficient law '" + name + "' (expected gaussian, two-point, uniform)");
}

std::vector<double> gen_efficient(const EfficientSpec& spec, std::size_t n, Seed seed) {
  spec.validate();
  Rng rng = make_rng(seed);
  const double sd = std::sqrt(spec.variance);
  std::vector<double> out(n);
  switch (spec.law) {
    case EfficientSpec::Law::kGaussian: {
      std::normal_distribution<double> d(0.0, sd);
      for (auto& v : out) v = d(rng);
      break;
    }
    case EfficientSpec::Law::kTwoPoint: {
      std::bernoulli_distribution d(0.5);
      for (auto& v : out) v = d(rng) ? sd : -sd;
      break;
    }
    case EfficientSpec::Law::kUniform: {
      const double a = sd * std::sqrt(3.0);
      std::uniform_real_distribution<double> d(-a, a);
      for (auto& v : out) v = d(rng);
      break;
    }
  }
  return out;
}

std::string to_string(NoiseRegime r) {
  switch (r) {
    case NoiseRegime::kNone:
      return "none";
    case NoiseRegime::kWeak:
      return "weak";
    case NoiseRegime::kStrong:
      return "strong";
    case NoiseRegime::kStandard:
      return "standard";
  }
  return "none";
}

NoiseRegime noise_regime_from_string(const std::string& name) {
  if (name == "none") return NoiseRegime::kNone;
  if (name == "weak") return NoiseRegime::kWeak;
  if (name == "strong") return NoiseRegime::kStrong;
  if (name == "standard") return NoiseRegime::kStandard;
  throw ParameterError("unknown noise regime '" + name + "' (expected none, weak, strong, standard)");
}

std::string to_string(XiConstruction c) {
  switch (c) {
    case XiConstruction::kIidGaussian:
      return "iid";
    case XiConstruction::kIndependentLongMemory:
      return "independent-long-memory";
    case XiConstruction::kLeverageSquare:
      return "leverage-square";
    case XiConstruction::kLeverageHermite23:
      return "leverage-hermite23";
    case XiConstruction::kMartingaleProduct:
      return "martingale-product";
  }
  return "iid";
}

XiConstruction xi_construction_from_string(const std::string& name) {
  if (name == "iid") return XiConstruction::kIidGaussian;
  if (name == "independent-long-memory") return XiConstruction::kIndependentLongMemory;
  if (name == "leverage-square") return XiConstruction::kLeverageSquare;
  if (name == "leverage-hermite23") return XiConstruction::kLeverageHermite23;
  if (name == "martingale-product") return XiConstruction::kMartingaleProduct;
  throw ParameterError("unknown xi construction '" + name +
                       "' (expected iid, independent-long-memory, leverage-square, leverage-hermite23, "
                       "martingale-product)");
}

bool NoiseSpec::needs_driver() const noexcept {
  if (regime != NoiseRegime::kStrong && regime != NoiseRegime::kStandard) return false;
  return xi == XiConstruction::kLeverageSquare || xi == XiConstruction::kLeverageHermite23 ||
         xi == XiConstruction::kMartingaleProduct;
}

void NoiseSpec::validate() const {
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw ParameterError("noise: scale must be nonnegative");
  switch (regime) {
    case NoiseRegime::kNone:
      return;
    case NoiseRegime::kWeak:
      if (!(hurst > 0.0 && hurst < 0.5)) throw ParameterError("noise: weak regime needs H in (0, 1/2)");
      return;
    case NoiseRegime::kStrong:
      if (xi == XiConstruction::kIndependentLongMemory) {
        if (!(hurst > 0.5 && hurst < 1.0)) throw ParameterError("noise: strong regime needs H in (1/2, 1)");
        if (!(memory_scale > 0.0 && memory_scale <= 1.0))
          throw ParameterError("noise: memory_scale must lie in (0, 1]");
        return;
      }
      if (xi != XiConstruction::kLeverageSquare)
        throw ParameterError("noise: strong regime supports independent-long-memory or leverage-square xi");
      return;
    case NoiseRegime::kStandard:
      if (xi != XiConstruction::kIidGaussian && xi != XiConstruction::kLeverageHermite23 &&
          xi != XiConstruction::kMartingaleProduct)
        throw ParameterError("noise: standard regime supports iid, leverage-hermite23 or martingale-product xi");
      if (xi == XiConstruction::kMartingaleProduct && !(driver_sigma >= 0.0))
        throw ParameterError("noise: driver_sigma must be nonnegative");
      if (!std::isfinite(hermite_weight)) throw ParameterError("noise: hermite_weight must be finite");
      return;
  }
}

std::vector<double> gen_weak_noise(const NoiseSpec& spec, std::size_t n, Seed seed) {
  if (spec.regime != NoiseRegime::kWeak) throw ParameterError("gen_weak_noise: regime must be weak");
  spec.validate();
  if (n == 0) return {};
  if (spec.scale == 0.0) return std::vector<double>(n, 0.0);
  auto eta = gen_fgn(spec.hurst, n, seed);
  for (auto& v : eta) v *= spec.scale;
  return eta;
}

XiSample gen_xi(const NoiseSpec& spec, std::span<const double> driver, std::size_t n, Seed seed) {
  if (spec.regime != NoiseRegime::kStrong && spec.regime != NoiseRegime::kStandard)
    throw ParameterError("gen_xi: regime must be strong or standard");
  spec.validate();
  if (spec.needs_driver() && driver.size() < n + 1)
    throw ConfigError("leverage construction '" + to_string(spec.xi) +
                          "' requires the LMSD driver of the same asset (n + 1 values)",
                      0, "noise.xi");
  XiSample out;
  out.raw.resize(n + 1);
  switch (spec.xi) {
    case XiConstruction::kIidGaussian: {
      Rng rng = make_rng(seed);
      std::normal_distribution<double> d;
      for (auto& v : out.raw) v = d(rng);
      break;
    }
    case XiConstruction::kIndependentLongMemory:
      out.raw = gen_long_memory_gaussian(GaussianSpec::long_memory(spec.hurst, spec.memory_scale, n + 1), seed);
      break;
    case XiConstruction::kLeverageSquare:
      for (std::size_t k = 0; k <= n; ++k) out.raw[k] = hermite(2, driver[k]);
      break;
    case XiConstruction::kLeverageHermite23:
      for (std::size_t k = 0; k <= n; ++k)
        out.raw[k] = hermite(2, driver[k]) + spec.hermite_weight * hermite(3, driver[k]);
      break;
    case XiConstruction::kMartingaleProduct: {
      Rng rng = make_rng(seed);
      std::bernoulli_distribution coin(0.5);
      for (std::size_t k = 0; k <= n; ++k)
        out.raw[k] = (coin(rng) ? 1.0 : -1.0) * std::exp(0.5 * spec.driver_sigma * driver[k]);
      break;
    }
  }
  for (auto& v : out.raw) v *= spec.scale;
  out.levels.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out.levels[k] = out.raw[k] - out.raw[0];
  out.eta.resize(n);
  for (std::size_t k = 1; k <= n; ++k) out.eta[k - 1] = out.raw[k] - out.raw[k - 1];
  return out;
}

XiSample gen_noise(const NoiseSpec& spec, std::span<const double> driver, std::size_t n, Seed seed) {
  switch (spec.regime) {
    case NoiseRegime::kNone: {
      XiSample s;
      s.raw.assign(n + 1, 0.0);
      s.levels.assign(n + 1, 0.0);
      s.eta.assign(n, 0.0);
      return s;
    }
    case NoiseRegime::kWeak: {
      XiSample s;
      s.eta = gen_weak_noise(spec, n, seed);
      s.levels.assign(n + 1, 0.0);
      for (std::size_t k = 1; k <= n; ++k) s.levels[k] = s.levels[k - 1] + s.eta[k - 1];
      s.raw = s.levels;
      return s;
    }
    case NoiseRegime::kStrong:
    case NoiseRegime::kStandard:
      return gen_xi(spec, driver, n, seed);
  }
  return {};
}

LeverageConstants leverage_constants(XiConstruction c, double sigma, double scale, double hermite_weight) {
  // E[He_k(Y) exp(sigma Y)] = sigma^k exp(sigma^2 / 2) for standard Gaussian Y,
  // and lambda = exp(-sigma^2 / 2) for unit-mean innovations.
  double a = 0.0;
  double b = 0.0;
  switch (c) {
    case XiConstruction::kLeverageSquare:
      a = 1.0;
      break;
    case XiConstruction::kLeverageHermite23:
      a = 1.0;
      b = hermite_weight;
      break;
    default:
      return {};
  }
  LeverageConstants k;
  const double poly = a * sigma * sigma + b * sigma * sigma * sigma;
  k.m = scale * poly * std::exp(0.5 * sigma * sigma);
  k.mu_star = scale * poly;
  return k;
}

double leverage_memory_coefficient(XiConstruction c, double sigma, double scale, double hermite_weight) {
  double b = 0.0;
  switch (c) {
    case XiConstruction::kLeverageSquare:
      break;
    case XiConstruction::kLeverageHermite23:
      b = hermite_weight;
      break;
    default:
      return 0.0;
  }
  return scale * std::exp(0.5 * sigma * sigma) * (2.0 * sigma + 3.0 * b * sigma * sigma);
}

std::vector<CointErrorTerms> coint_error_decomposition(const CointInputs& in, double theta,
                                                       std::span<const double> times,
                                                       std::span<const double> y1,
                                                       std::span<const double> y2) {
  if (in.clock1 == nullptr || in.clock2 == nullptr) throw InputError("coint decomposition: clocks missing");
  if (times.size() != y1.size() || times.size() != y2.size())
    throw InputError("coint decomposition: times and observations differ in length");
  const EventClock& c1 = *in.clock1;
  const EventClock& c2 = *in.clock2;
  std::vector<CointErrorTerms> out;
  out.reserve(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double t = times[j];
    const std::size_t n1 = c1.count(t);
    const std::size_t n2 = c2.count(t);
    if (n1 > in.e1.size() || n2 > in.e2.size() || n1 >= in.xi1.size() || n2 >= in.xi2.size())
      throw InputError("coint decomposition: shock sequences shorter than the event counts");
    const std::size_t a1 = n2 == 0 ? 0 : c1.count(c2.event_time(n2));
    const std::size_t a2 = n1 == 0 ? 0 : c2.count(c1.event_time(n1));
    CointErrorTerms r;
    r.time = t;
    for (std::size_t k = a1 + 1; k <= n1; ++k) r.efficient1 += in.e1[k - 1];
    double s2 = 0.0;
    for (std::size_t k = a2 + 1; k <= n2; ++k) s2 += in.e2[k - 1];
    r.efficient2 = -theta * s2;
    r.noise1 = in.xi1[n1] - in.xi1[0];
    r.noise2 = -theta * (in.xi2[n2] - in.xi2[0]);
    const double observed = y1[j] - theta * y2[j];
    const double mag = std::max({1.0, std::abs(y1[j]), std::abs(theta * y2[j]), std::abs(r.efficient1),
                                 std::abs(r.efficient2), std::abs(r.noise1), std::abs(r.noise2)});
    if (std::abs(r.total() - observed) > 1e-9 * mag)
      throw ConsistencyError("coint decomposition: terms sum to " + std::to_string(r.total()) +
                             " but y1 - theta y2 = " + std::to_string(observed) + " at t = " + std::to_string(t));
    out.push_back(r);
  }
  return out;
}

}  // namespace tickcoint
