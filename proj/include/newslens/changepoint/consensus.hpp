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
#include <set>
#include <utility>
#include <vector>

#include "newslens/changepoint/detectors.hpp"

namespace newslens::cpd {

struct Cluster {
  std::vector<std::pair<Detector, std::size_t>> members;  // sorted by index
  std::size_t median = 0;
  std::set<Detector> detectors;
  bool supported = false;
};

struct ChangePointReport {
  std::vector<DetectorCandidates> detectors;
  std::vector<Cluster> clusters;
  std::vector<std::size_t> consensus;
  std::string smoothing = "ma3";
};

/// Maximum distance between the first and last candidate of a cluster.
inline constexpr std::size_t kMaxClusterSpan = 2;

/// Pools all candidates, links neighbours at most one index apart (a cluster
/// never spans more than two index units), and keeps each cluster's lower
/// median when at least two distinct detectors support it.
inline ChangePointReport consensus(std::vector<DetectorCandidates> detectors) {
  std::vector<std::pair<std::size_t, Detector>> pool;
  for (const auto& d : detectors) {
    for (std::size_t i : d.indices) pool.emplace_back(i, d.detector);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  ChangePointReport report;
  std::vector<std::vector<std::pair<std::size_t, Detector>>> groups;
  for (const auto& c : pool) {
    if (groups.empty() || c.first > groups.back().back().first + 1 ||
        c.first > groups.back().front().first + kMaxClusterSpan) {
      groups.emplace_back();
    }
    groups.back().push_back(c);
  }
  for (const auto& g : groups) {
    Cluster cl;
    for (const auto& [index, det] : g) {
      cl.members.emplace_back(det, index);
      cl.detectors.insert(det);
    }
    cl.median = g[(g.size() - 1) / 2].first;
    cl.supported = cl.detectors.size() >= 2;
    if (cl.supported) report.consensus.push_back(cl.median);
    report.clusters.push_back(std::move(cl));
  }
  std::sort(detectors.begin(), detectors.end(),
            [](const DetectorCandidates& a, const DetectorCandidates& b) { return a.detector < b.detector; });
  report.detectors = std::move(detectors);
  return report;
}

}  // namespace newslens::cpd
