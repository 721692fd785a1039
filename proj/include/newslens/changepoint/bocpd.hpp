// Copyright 2026 The newslens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "newslens/changepoint/detectors.hpp"
#include "newslens/error.hpp"

namespace newslens::cpd {

struct BocpdParams {
  double hazard = 1.0 / 52.0;
  /// A candidate is emitted at t when the MAP run length drops to at most
  /// `reset_max` after being at least `prior_min` at t - 1.
  std::size_t reset_max = 3;
  std::size_t prior_min = 3;
};

struct BocpdResult {
  DetectorCandidates candidates;
  /// posterior[t - 1][r] = P(run length r | x_1..x_t), r = 0..t.
  std::vector<std::vector<double>> posterior;
  /// MAP run length after each observation.
  std::vector<std::size_t> map_run_length;
};

namespace detail {

/// Normal-Gamma sufficient statistics.
struct NormalGamma {
  double mu, kappa, alpha, beta;

  NormalGamma updated(double x) const {
    return {(kappa * mu + x) / (kappa + 1.0), kappa + 1.0, alpha + 0.5,
            beta + kappa * (x - mu) * (x - mu) / (2.0 * (kappa + 1.0))};
  }

  /// Log Student-t posterior predictive density at x.
  double log_predictive(double x) const {
    const double nu = 2.0 * alpha;
    const double scale2 = beta * (kappa + 1.0) / (alpha * kappa);
    const double z = (x - mu) * (x - mu) / (nu * scale2);
    return std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
           0.5 * std::log(nu * std::numbers::pi * scale2) - (nu + 1.0) / 2.0 * std::log1p(z);
  }
};

inline double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace detail

/// Bayesian online change-point detection with a constant hazard and a
/// Gaussian likelihood under a Normal-Gamma prior (mu0 = series mean,
/// kappa0 = 1, alpha0 = 1, beta0 = series variance or 1 if zero).
inline BocpdResult bocpd(std::span<const double> values, const BocpdParams& params = {}) {
  const std::size_t n = values.size();
  if (n < 2) throw InputError("bocpd needs at least 2 points");
  if (!(params.hazard > 0.0 && params.hazard < 1.0)) throw InputError("bocpd hazard must be in (0, 1)");

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const detail::NormalGamma prior{mean, 1.0, 1.0, var > 0.0 ? var : 1.0};

  const double log_h = std::log(params.hazard);
  const double log_1mh = std::log1p(-params.hazard);

  BocpdResult result;
  result.candidates.detector = Detector::bocpd;
  result.candidates.parameters = {{"hazard", params.hazard},
                                  {"reset_max", static_cast<double>(params.reset_max)},
                                  {"prior_min", static_cast<double>(params.prior_min)}};
  result.posterior.reserve(n);
  result.map_run_length.reserve(n);

  std::vector<double> log_r{0.0};  // P(r_0 = 0) = 1
  std::vector<detail::NormalGamma> stats{prior};
  std::vector<double> joint;
  for (std::size_t t = 1; t <= n; ++t) {
    const double x = values[t - 1];
    std::vector<double> next(t + 1);
    joint.resize(t);
    for (std::size_t r = 0; r < t; ++r) {
      joint[r] = log_r[r] + stats[r].log_predictive(x);
      next[r + 1] = joint[r] + log_1mh;
    }
    next[0] = detail::log_sum_exp(joint) + log_h;
    const double evidence = detail::log_sum_exp(next);
    for (double& v : next) v -= evidence;

    std::vector<double> probs(t + 1);
    std::size_t map = 0;
    for (std::size_t r = 0; r <= t; ++r) {
      probs[r] = std::exp(next[r]);
      if (probs[r] > probs[map]) map = r;
    }
    result.posterior.push_back(std::move(probs));
    result.map_run_length.push_back(map);

    std::vector<detail::NormalGamma> updated;
    updated.reserve(t + 1);
    updated.push_back(prior);
    for (const auto& s : stats) updated.push_back(s.updated(x));
    stats.swap(updated);
    log_r.swap(next);
  }

  for (std::size_t t = 2; t <= n; ++t) {
    const std::size_t now = result.map_run_length[t - 1];
    const std::size_t before = result.map_run_length[t - 2];
    if (now > params.reset_max || before < params.prior_min) continue;
    // The current run began `now` observations before x_t ended.
    const std::size_t index = t - now;
    if (index < 1 || index > n - 1) continue;
    auto& idx = result.candidates.indices;
    if (idx.empty() || idx.back() < index) idx.push_back(index);
  }
  return result;
}

}  // namespace newslens::cpd
