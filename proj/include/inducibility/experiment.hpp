#pragma once

// Monte Carlo estimate of the No. 6 lower bound X on Crt for random layouts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "tanglegram.hpp"

namespace inducibility {

inline constexpr double kDefaultTheta = 2.0 / 441.0;

enum class Weighting {
  layout,      // every layout equally likely
  automorphism // reweighted by |A(T)|, i.e. every tanglegram equally likely
};

struct ExperimentConfig {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double theta = kDefaultTheta;
  std::size_t jobs = 1;
  Weighting weighting = Weighting::layout;
  std::size_t limit = kNo6Limit;
  std::function<void(std::size_t done, std::size_t total)> progress;  // may be empty
};

struct ExperimentResult {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double theta = kDefaultTheta;
  double mean_bound = 0;
  double var_bound = 0;  // unbiased sample variance
  double q10 = 0, q50 = 0, q90 = 0;
  double frac_ge_theta = 0;  // fraction with X >= theta n^2
  std::optional<double> weighted_mean;
  std::vector<double> samples;  // X per trial, in trial order
};

/// Linear-interpolation quantile of sorted data (R type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// Trial i draws its layout from stream stream_seed(seed, i), so the result
/// does not depend on the number of workers.
inline ExperimentResult expectation_experiment(const ExperimentConfig& cfg) {
  if (cfg.n < 4) throw InvalidArgument("experiment: n must be >= 4");
  if (cfg.trials < 1) throw InvalidArgument("experiment: trials must be >= 1");
  if (cfg.weighting == Weighting::automorphism && cfg.n > kAutomorphismLimit)
    throw LimitExceeded("automorphism weighting size", cfg.n, kAutomorphismLimit);
  if (cfg.n > cfg.limit) throw LimitExceeded("No. 6 bound size", cfg.n, cfg.limit);

  const double denom = binomial(cfg.n - 2, 2).get_d();
  std::vector<double> x(cfg.trials);
  std::vector<double> w(cfg.trials, 1.0);
  std::mutex progress_mutex;
  std::size_t done = 0;
  parallel_for(cfg.trials, cfg.jobs, [&](std::size_t i) {
    Rng rng(stream_seed(cfg.seed, i));
    const Tanglegram t = random_tanglegram_layout(cfg.n, rng);
    x[i] = static_cast<double>(no6_count(t, cfg.limit)) / denom;
    if (cfg.weighting == Weighting::automorphism)
      w[i] = static_cast<double>(tanglegram_automorphism_order(t));
    if (cfg.progress) {
      std::lock_guard lock(progress_mutex);
      cfg.progress(++done, cfg.trials);
    }
  });

  ExperimentResult r;
  r.n = cfg.n;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  r.theta = cfg.theta;
  double sum = 0;
  for (double v : x) sum += v;
  r.mean_bound = sum / static_cast<double>(x.size());
  double ss = 0;
  for (double v : x) ss += (v - r.mean_bound) * (v - r.mean_bound);
  r.var_bound = x.size() > 1 ? ss / static_cast<double>(x.size() - 1) : 0.0;
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  r.q10 = quantile_sorted(sorted, 0.1);
  r.q50 = quantile_sorted(sorted, 0.5);
  r.q90 = quantile_sorted(sorted, 0.9);
  const double threshold = cfg.theta * static_cast<double>(cfg.n) * static_cast<double>(cfg.n);
  std::size_t above = 0;
  for (double v : x) above += v >= threshold;
  r.frac_ge_theta = static_cast<double>(above) / static_cast<double>(x.size());
  if (cfg.weighting == Weighting::automorphism) {
    double sw = 0, swx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sw += w[i];
      swx += w[i] * x[i];
    }
    r.weighted_mean = swx / sw;
  }
  r.samples = std::move(x);
  return r;
}

}  // namespace inducibility
