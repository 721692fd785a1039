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
#include <set>
#include <vector>

#include "newslens/changepoint/bocpd.hpp"
#include "newslens/changepoint/consensus.hpp"
#include "newslens/changepoint/detectors.hpp"
#include "newslens/changepoint/rbf_cost.hpp"
#include "newslens/changepoint/series.hpp"

namespace newslens::cpd {

struct CpdParams {
  /// PELT penalties are multiplier * ln(T).
  std::vector<double> penalty_multipliers{0.5, 1.0, 2.0};
  double baseline_multiplier = 1.0;
  BocpdParams bocpd;
  std::size_t window = 3;
  double loess_span = 0.25;
};

struct CpdResult {
  std::vector<double> raw;
  std::vector<double> smoothed;
  /// Empty when the series is too short for LOESS.
  std::vector<double> loess;
  std::vector<PeltResult> pelt_grid;
  ChangePointReport report;
  /// False when the series was too short to run the detectors.
  bool detected = false;
};

/// Smooths with a centered moving average and runs PELT over the penalty
/// grid, BinSeg with PELT's baseline breakpoint count, and BOCPD on the
/// smoothed series, then forms the consensus. The PELT candidate set is the
/// union over the grid.
inline CpdResult detect_change_points(std::vector<double> raw, const CpdParams& params = {}) {
  CpdResult result;
  result.smoothed = moving_average(raw, params.window);
  result.raw = std::move(raw);
  const std::size_t n = result.smoothed.size();
  if (n >= 4) result.loess = loess_trend(result.smoothed, params.loess_span);
  if (n < 4) return result;

  const RbfCost cost(result.smoothed);
  const double log_t = std::log(static_cast<double>(n));
  std::set<std::size_t> pelt_union;
  std::size_t baseline_count = 0;
  bool have_baseline = false;
  for (double m : params.penalty_multipliers) {
    PeltResult r = pelt_rbf(cost, m * log_t);
    r.candidates.parameters["multiplier"] = m;
    pelt_union.insert(r.candidates.indices.begin(), r.candidates.indices.end());
    if (m == params.baseline_multiplier) {
      baseline_count = r.candidates.indices.size();
      have_baseline = true;
    }
    result.pelt_grid.push_back(std::move(r));
  }
  if (!have_baseline) {
    baseline_count = pelt_rbf(cost, params.baseline_multiplier * log_t).candidates.indices.size();
  }

  DetectorCandidates pelt;
  pelt.detector = Detector::pelt;
  pelt.parameters = {{"gamma", cost.gamma()}, {"baseline_penalty", params.baseline_multiplier * log_t}};
  pelt.indices.assign(pelt_union.begin(), pelt_union.end());

  DetectorCandidates bs = binseg(cost, std::min(baseline_count, n - 2));
  BocpdResult bo = bocpd(result.smoothed, params.bocpd);

  result.report = consensus({std::move(pelt), std::move(bs), std::move(bo.candidates)});
  result.report.smoothing = "ma" + std::to_string(params.window);
  result.detected = true;
  return result;
}

}  // namespace newslens::cpd
