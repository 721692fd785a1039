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
#include <span>
#include <vector>

#include "newslens/error.hpp"

namespace newslens::cpd {

/// Median heuristic: 1 / median of the nonzero pairwise squared differences,
/// or 1 when all points are equal.
inline double median_gamma(std::span<const double> x) {
  std::vector<double> d;
  d.reserve(x.size() * (x.size() - (x.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double diff = x[i] - x[j];
      if (diff != 0.0) d.push_back(diff * diff);
    }
  }
  if (d.empty()) return 1.0;
  std::sort(d.begin(), d.end());
  const std::size_t m = d.size() / 2;
  const double median = d.size() % 2 ? d[m] : 0.5 * (d[m - 1] + d[m]);
  return 1.0 / median;
}

/// Kernel (Gaussian RBF) segment cost
///   c(a, b) = (b - a) - (1 / (b - a)) * sum_{i, j in [a, b)} exp(-gamma (x_i - x_j)^2)
/// evaluated in O(1) from 2-D prefix sums of the Gram matrix.
class RbfCost {
 public:
  explicit RbfCost(std::span<const double> x) : RbfCost(x, median_gamma(x)) {}

  RbfCost(std::span<const double> x, double gamma) : n_(x.size()), gamma_(gamma) {
    if (n_ == 0) throw InputError("RBF cost over an empty series");
    const std::size_t w = n_ + 1;
    prefix_.assign(w * w, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        const double diff = x[i] - x[j];
        row += std::exp(-gamma_ * diff * diff);
        prefix_[(i + 1) * w + (j + 1)] = prefix_[i * w + (j + 1)] + row;
      }
    }
  }

  std::size_t size() const { return n_; }
  double gamma() const { return gamma_; }

  double cost(std::size_t a, std::size_t b) const {
    if (a >= b || b > n_) throw InputError("RBF cost: invalid segment");
    const std::size_t w = n_ + 1;
    const double block = prefix_[b * w + b] - prefix_[a * w + b] - prefix_[b * w + a] + prefix_[a * w + a];
    const double len = static_cast<double>(b - a);
    return std::max(0.0, len - block / len);
  }

  /// Sum of segment costs for the segmentation induced by `change_points`
  /// (each index starts a new segment) plus `penalty` per change point.
  double penalized(std::span<const std::size_t> change_points, double penalty) const {
    double total = 0.0;
    std::size_t start = 0;
    for (std::size_t cp : change_points) {
      total += cost(start, cp) + penalty;
      start = cp;
    }
    return total + cost(start, n_);
  }

 private:
  std::size_t n_;
  double gamma_;
  std::vector<double> prefix_;
};

}  // namespace newslens::cpd
