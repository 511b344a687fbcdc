#include "tickcoint/fracgauss.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "tickcoint/errors.hpp"
#include "tickcoint/fft.hpp"

namespace tickcoint {

namespace {

// Row-major lower-triangular factor of a dense covariance matrix.
std::vector<double> cholesky_factor(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw ParameterError("covariance matrix is not positive definite");
  }
  const Eigen::MatrixXd l = llt.matrixL();
  const auto n = static_cast<std::size_t>(cov.rows());
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) out[i * n + j] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

std::vector<double> apply_cholesky(const std::vector<double>& l, std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> z(n);
  for (auto& v : z) v = normal(rng);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const double* row = l.data() + i * n;
    for (std::size_t j = 0; j <= i; ++j) s += row[j] * z[j];
    out[i] = s;
  }
  return out;
}

bool is_uniform_grid(std::span<const double> t) {
  const std::size_t m = t.size() - 1;
  const double step = t.back() / static_cast<double>(m);
  const double tol = 1e-12 * std::max(1.0, t.back());
  for (std::size_t j = 0; j <= m; ++j) {
    if (std::abs(t[j] - step * static_cast<double>(j)) > tol) return false;
  }
  return true;
}

// Spectral factors are reused across replications of equal length. The cache
// only memoizes a pure function of its key, so results stay deterministic.
enum class CacheKind { kLongMemory, kFgn };

std::shared_ptr<const StationaryGaussianSampler> cached_sampler(
    CacheKind kind, double hurst, double scale, std::size_t n,
    const std::function<double(std::size_t)>& acvf) {
  using Key = std::tuple<int, double, double, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const StationaryGaussianSampler>> cache;
  const Key key{static_cast<int>(kind), hurst, scale, n};
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto sampler = std::make_shared<const StationaryGaussianSampler>(acvf, n);
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() >= 256) cache.clear();
  cache.emplace(key, sampler);
  return sampler;
}

}  // namespace

GaussianSpec GaussianSpec::long_memory(double hurst, double c, std::size_t n) {
  GaussianSpec s;
  s.kind = Kind::kLongMemory;
  s.hurst = hurst;
  s.scale = c;
  s.length = n;
  s.acvf.clear();
  return s;
}

GaussianSpec GaussianSpec::summable(std::vector<double> acvf, std::size_t n) {
  GaussianSpec s;
  s.kind = Kind::kSummable;
  s.acvf = std::move(acvf);
  s.length = n;
  return s;
}

GaussianSpec GaussianSpec::white(std::size_t n) { return summable({1.0}, n); }

double GaussianSpec::autocovariance(std::size_t lag) const {
  if (lag == 0) return 1.0;
  if (kind == Kind::kLongMemory) {
    return scale * std::pow(static_cast<double>(lag), 2.0 * hurst - 2.0);
  }
  return lag < acvf.size() ? acvf[lag] : 0.0;
}

void GaussianSpec::validate() const {
  if (length < 1) throw ParameterError("gaussian spec: length must be >= 1");
  if (kind == Kind::kLongMemory) {
    if (!(hurst > 0.5 && hurst < 1.0))
      throw ParameterError("gaussian spec: long-memory hurst must lie in (1/2, 1)");
    if (!(scale > 0.0 && scale <= 1.0))
      throw ParameterError("gaussian spec: long-memory scale c must lie in (0, 1]");
  } else {
    if (acvf.empty() || std::abs(acvf[0] - 1.0) > 1e-12)
      throw ParameterError("gaussian spec: summable autocovariance must have rho(0) = 1");
    for (std::size_t k = 1; k < acvf.size(); ++k)
      if (std::abs(acvf[k]) > 1.0)
        throw ParameterError("gaussian spec: |rho(k)| must not exceed rho(0)");
  }
}

StationaryGaussianSampler::StationaryGaussianSampler(
    const std::function<double(std::size_t)>& acvf, std::size_t n)
    : n_(n) {
  if (n == 0) throw ParameterError("gaussian sampler: length must be >= 1");
  const std::size_t base = std::max<std::size_t>(2, fft::next_pow2(2 * (n - 1)));
  // A few extra doublings of the embedding often repair slightly negative
  // eigenvalues for slowly decaying covariances.
  for (std::size_t m = base; m <= 8 * base; m *= 2) {
    std::vector<double> row(m, 0.0);
    for (std::size_t j = 0; j <= m / 2; ++j) row[j] = acvf(j);
    for (std::size_t j = 1; j < m / 2; ++j) row[m - j] = row[j];
    const auto eig = fft::forward_real(row);
    double min_eig = eig[0].real();
    for (const auto& e : eig) min_eig = std::min(min_eig, e.real());
    if (min_eig < -kEigenTolerance) continue;
    sqrt_eigen_.resize(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k)
      sqrt_eigen_[k] = std::sqrt(std::max(0.0, eig[k].real()) * inv_m);
    return;
  }
  if (n > kCholeskyLimit) {
    throw ResourceError("gaussian sampler: circulant embedding is not nonnegative definite and n = " +
                        std::to_string(n) + " exceeds the Cholesky fallback limit");
  }
  Eigen::MatrixXd cov(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acvf(i > j ? i - j : j - i);
  cholesky_ = cholesky_factor(cov);
}

std::vector<double> StationaryGaussianSampler::sample(Rng& rng) const {
  if (!uses_circulant()) return apply_cholesky(cholesky_, n_, rng);
  std::normal_distribution<double> normal;
  const std::size_t m = sqrt_eigen_.size();
  std::vector<fft::Complex> w(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    w[k] = sqrt_eigen_[k] * fft::Complex(re, im);
  }
  const auto x = fft::forward(w);
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x[j].real();
  return out;
}

std::vector<double> gen_long_memory_gaussian(const GaussianSpec& spec, Seed seed) {
  spec.validate();
  if (spec.kind == GaussianSpec::Kind::kSummable && spec.acvf.size() == 1) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> out(spec.length);
    for (auto& v : out) v = normal(rng);
    return out;
  }
  auto acvf = [&spec](std::size_t k) { return spec.autocovariance(k); };
  Rng rng = make_rng(seed);
  if (spec.kind == GaussianSpec::Kind::kLongMemory) {
    return cached_sampler(CacheKind::kLongMemory, spec.hurst, spec.scale, spec.length, acvf)->sample(rng);
  }
  StationaryGaussianSampler sampler(acvf, spec.length);
  return sampler.sample(rng);
}

double fgn_autocovariance(double hurst, std::size_t lag) {
  const double k = static_cast<double>(lag);
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
}

double fbm_covariance(double hurst, double s, double t) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(s, h2) - std::pow(std::abs(t - s), h2) + std::pow(t, h2));
}

std::vector<double> gen_fgn(double hurst, std::size_t n, Seed seed) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw ParameterError("fgn: hurst must lie in (0, 1)");
  if (n == 0) throw ParameterError("fgn: length must be >= 1");
  auto sampler = cached_sampler(CacheKind::kFgn, hurst, 1.0, n,
                                [hurst](std::size_t k) { return fgn_autocovariance(hurst, k); });
  Rng rng = make_rng(seed);
  return sampler->sample(rng);
}

FbmSampler::FbmSampler(double hurst, std::size_t steps, double horizon)
    : hurst_(hurst),
      steps_(steps),
      horizon_(horizon),
      step_scale_(0.0),
      fgn_(
          [hurst](std::size_t k) {
            if (!(hurst > 0.0 && hurst < 1.0)) throw ParameterError("fbm: hurst must lie in (0, 1)");
            return fgn_autocovariance(hurst, k);
          },
          steps) {
  if (!(horizon > 0.0)) throw ParameterError("fbm: horizon must be positive");
  step_scale_ = std::pow(horizon / static_cast<double>(steps), hurst);
}

std::vector<double> FbmSampler::sample_increments(Rng& rng) const {
  auto inc = fgn_.sample(rng);
  for (auto& v : inc) v *= step_scale_;
  return inc;
}

FbmGrid FbmSampler::sample(Rng& rng) const {
  FbmGrid g;
  g.hurst = hurst_;
  g.times.resize(steps_ + 1);
  g.values.resize(steps_ + 1);
  const auto inc = sample_increments(rng);
  g.times[0] = 0.0;
  g.values[0] = 0.0;
  for (std::size_t j = 1; j <= steps_; ++j) {
    g.times[j] = horizon_ * static_cast<double>(j) / static_cast<double>(steps_);
    g.values[j] = g.values[j - 1] + inc[j - 1];
  }
  return g;
}

FbmGrid gen_fbm(double hurst, std::span<const double> times, Seed seed) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw ParameterError("fbm: hurst must lie in (0, 1)");
  if (times.size() < 2 || times[0] != 0.0) throw InputError("fbm: grid must start at 0 and have at least two points");
  for (std::size_t j = 1; j < times.size(); ++j)
    if (!(times[j] > times[j - 1])) throw InputError("fbm: grid must be strictly increasing");

  Rng rng = make_rng(seed);
  if (is_uniform_grid(times)) {
    FbmSampler sampler(hurst, times.size() - 1, times.back());
    FbmGrid g = sampler.sample(rng);
    g.times.assign(times.begin(), times.end());
    return g;
  }
  const std::size_t m = times.size() - 1;
  if (m > StationaryGaussianSampler::kCholeskyLimit)
    throw ResourceError("fbm: non-uniform grid too large for the dense fallback");
  Eigen::MatrixXd cov(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fbm_covariance(hurst, times[i + 1], times[j + 1]);
  const auto l = cholesky_factor(cov);
  const auto v = apply_cholesky(l, m, rng);
  FbmGrid g;
  g.hurst = hurst;
  g.times.assign(times.begin(), times.end());
  g.values.assign(m + 1, 0.0);
  std::copy(v.begin(), v.end(), g.values.begin() + 1);
  return g;
}

std::vector<double> fbm_increments(const FbmGrid& fbm) {
  std::vector<double> out;
  if (fbm.values.size() < 2) return out;
  out.resize(fbm.values.size() - 1);
  for (std::size_t j = 1; j < fbm.values.size(); ++j) out[j - 1] = fbm.values[j] - fbm.values[j - 1];
  return out;
}

double hermite(int k, double x) {
  switch (k) {
    case 2:
      return x * x - 1.0;
    case 3:
      return x * x * x - 3.0 * x;
    default:
      throw ParameterError("hermite: unsupported order " + std::to_string(k) + " (supported: 2, 3)");
  }
}

}  // namespace tickcoint
