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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newslens/changepoint/rbf_cost.hpp"
#include "newslens/error.hpp"

namespace newslens::cpd {

enum class Detector { pelt, binseg, bocpd };

inline std::string_view to_string(Detector d) {
  switch (d) {
    case Detector::pelt: return "pelt";
    case Detector::binseg: return "binseg";
    case Detector::bocpd: return "bocpd";
  }
  return "?";
}

/// Candidate change points of one detector. Index i means a new segment
/// starts at position i; indices are strictly increasing within [1, T-1].
struct DetectorCandidates {
  Detector detector = Detector::pelt;
  std::map<std::string, double> parameters;
  std::vector<std::size_t> indices;
};

struct PeltResult {
  DetectorCandidates candidates;
  /// Minimized total segment cost + penalty * (number of change points).
  double objective = 0.0;
};

/// Exact penalized RBF-cost segmentation by PELT. Pruning drops a start s
/// once F(s) + c(s, t) exceeds F(t), which is safe because the kernel cost
/// never increases when a segment is split.
inline PeltResult pelt_rbf(const RbfCost& cost, double penalty) {
  const std::size_t n = cost.size();
  if (n < 4) throw InputError("pelt needs at least 4 points");
  if (!(penalty > 0.0)) throw InputError("pelt penalty must be positive");

  std::vector<double> best(n + 1, 0.0);
  std::vector<std::size_t> last(n + 1, 0);
  best[0] = -penalty;
  std::vector<std::size_t> admissible{0};
  std::vector<double> value;
  for (std::size_t t = 1; t <= n; ++t) {
    value.assign(admissible.size(), 0.0);
    double f = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t k = 0; k < admissible.size(); ++k) {
      const std::size_t s = admissible[k];
      value[k] = best[s] + cost.cost(s, t);
      if (value[k] + penalty < f) {
        f = value[k] + penalty;
        arg = s;
      }
    }
    best[t] = f;
    last[t] = arg;
    std::vector<std::size_t> kept;
    kept.reserve(admissible.size() + 1);
    for (std::size_t k = 0; k < admissible.size(); ++k) {
      if (value[k] <= f + 1e-12) kept.push_back(admissible[k]);
    }
    kept.push_back(t);
    admissible.swap(kept);
  }

  PeltResult result;
  result.candidates.detector = Detector::pelt;
  result.candidates.parameters = {{"penalty", penalty}, {"gamma", cost.gamma()}};
  for (std::size_t t = last[n]; t > 0; t = last[t]) result.candidates.indices.push_back(t);
  std::reverse(result.candidates.indices.begin(), result.candidates.indices.end());
  result.objective = best[n];
  return result;
}

inline PeltResult pelt_rbf(std::span<const double> values, double penalty) {
  if (values.size() < 4) throw InputError("pelt needs at least 4 points");
  return pelt_rbf(RbfCost(values), penalty);
}

/// Greedy binary segmentation under the RBF cost: each step applies the
/// single split with the largest cost reduction over all current segments
/// (ties go to the smaller index), stopping after `k` splits.
inline DetectorCandidates binseg(const RbfCost& cost, std::size_t k) {
  const std::size_t n = cost.size();
  if (n < 2 || k > n - 2) throw InputError("binseg: number of breakpoints out of range");
  DetectorCandidates out;
  out.detector = Detector::binseg;
  out.parameters = {{"n_bkps", static_cast<double>(k)}, {"gamma", cost.gamma()}};
  std::vector<std::size_t> bounds{0, n};
  for (std::size_t step = 0; step < k; ++step) {
    double best_gain = -std::numeric_limits<double>::infinity();
    std::size_t best_split = 0;
    for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
      const std::size_t a = bounds[seg], b = bounds[seg + 1];
      if (b - a < 2) continue;
      const double whole = cost.cost(a, b);
      for (std::size_t s = a + 1; s < b; ++s) {
        const double gain = whole - cost.cost(a, s) - cost.cost(s, b);
        if (gain > best_gain + 1e-12 || (std::abs(gain - best_gain) <= 1e-12 && s < best_split)) {
          best_gain = gain;
          best_split = s;
        }
      }
    }
    if (best_split == 0) break;
    bounds.insert(std::upper_bound(bounds.begin(), bounds.end(), best_split), best_split);
  }
  out.indices.assign(bounds.begin() + 1, bounds.end() - 1);
  return out;
}

inline DetectorCandidates binseg(std::span<const double> values, std::size_t k) {
  if (values.size() < 2 || k > values.size() - 2) {
    throw InputError("binseg: number of breakpoints out of range");
  }
  return binseg(RbfCost(values), k);
}

}  // namespace newslens::cpd
