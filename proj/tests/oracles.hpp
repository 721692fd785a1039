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

// Slow, independent reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "newslens/text.hpp"

namespace oracle {

/// 1 / median of nonzero squared pairwise differences (1 if none).
inline double gamma(const std::vector<double>& x) {
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (x[i] != x[j]) d.push_back((x[i] - x[j]) * (x[i] - x[j]));
    }
  }
  if (d.empty()) return 1.0;
  std::sort(d.begin(), d.end());
  const std::size_t n = d.size();
  const double med = n % 2 == 1 ? d[n / 2] : (d[n / 2 - 1] + d[n / 2]) / 2.0;
  return 1.0 / med;
}

/// Kernel cost straight from the definition: sum of k(x_i, x_i) minus the
/// block sum of the Gram matrix divided by the segment length.
inline double rbf_cost(const std::vector<double>& x, std::size_t a, std::size_t b, double g) {
  double block = 0.0;
  for (std::size_t i = a; i < b; ++i) {
    for (std::size_t j = a; j < b; ++j) block += std::exp(-g * (x[i] - x[j]) * (x[i] - x[j]));
  }
  const double n = static_cast<double>(b - a);
  return std::max(0.0, n - block / n);
}

inline std::vector<std::vector<double>> cost_table(const std::vector<double>& x, double g) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) c[a][b] = rbf_cost(x, a, b, g);
  }
  return c;
}

/// Minimum penalized cost by enumerating every subset of change points.
inline double exhaustive_min(const std::vector<double>& x, double g, double penalty) {
  const std::size_t n = x.size();
  const auto c = cost_table(x, g);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    double total = 0.0;
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (mask >> (i - 1) & 1) {
        total += c[start][i] + penalty;
        start = i;
      }
    }
    total += c[start][n];
    best = std::min(best, total);
  }
  return best;
}

/// Optimal partitioning without pruning: F(t) = min_s F(s) + c(s, t) + penalty.
inline double full_dp_min(const std::vector<double>& x, double g, double penalty) {
  const std::size_t n = x.size();
  const auto c = cost_table(x, g);
  std::vector<double> f(n + 1, std::numeric_limits<double>::infinity());
  f[0] = -penalty;
  for (std::size_t t = 1; t <= n; ++t) {
    for (std::size_t s = 0; s < t; ++s) f[t] = std::min(f[t], f[s] + c[s][t] + penalty);
  }
  return f[n];
}

inline double segmentation_cost(const std::vector<double>& x, double g, const std::vector<std::size_t>& cps,
                                double penalty) {
  double total = 0.0;
  std::size_t start = 0;
  for (std::size_t cp : cps) {
    total += rbf_cost(x, start, cp, g) + penalty;
    start = cp;
  }
  return total + rbf_cost(x, start, x.size(), g);
}

/// Greedy binary segmentation: k times, split the segment/position with the
/// largest cost reduction (first one wins ties).
inline std::vector<std::size_t> binseg(const std::vector<double>& x, double g, std::size_t k) {
  std::vector<std::size_t> cps;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::size_t> bounds{0};
    bounds.insert(bounds.end(), cps.begin(), cps.end());
    bounds.push_back(x.size());
    double best = -1.0;
    std::size_t where = 0;
    for (std::size_t s = 1; s < x.size(); ++s) {
      if (std::find(cps.begin(), cps.end(), s) != cps.end()) continue;
      const auto hi = std::upper_bound(bounds.begin(), bounds.end(), s);
      const std::size_t a = *(hi - 1), b = *hi;
      const double gain = rbf_cost(x, a, b, g) - rbf_cost(x, a, s, g) - rbf_cost(x, s, b, g);
      if (gain > best + 1e-12) {
        best = gain;
        where = s;
      }
    }
    if (where == 0) break;
    cps.push_back(where);
    std::sort(cps.begin(), cps.end());
  }
  return cps;
}

/// Run-length posterior in probability space (fine for short series).
/// Normal-Gamma prior mu0 = mean, kappa0 = 1, alpha0 = 1, beta0 = population
/// variance (1 if zero); Student-t predictive.
inline std::vector<std::vector<double>> bocpd(const std::vector<double>& x, double hazard) {
  const std::size_t n = x.size();
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  if (var == 0.0) var = 1.0;
  struct P {
    double mu, kappa, alpha, beta;
  };
  auto pred = [](const P& p, double v) {
    const double nu = 2.0 * p.alpha;
    const double s2 = p.beta * (p.kappa + 1.0) / (p.alpha * p.kappa);
    const double z2 = (v - p.mu) * (v - p.mu) / (nu * s2);
    return std::tgamma((nu + 1.0) / 2.0) / (std::tgamma(nu / 2.0) * std::sqrt(nu * 3.14159265358979323846 * s2)) *
           std::pow(1.0 + z2, -(nu + 1.0) / 2.0);
  };
  std::vector<double> r{1.0};
  std::vector<P> params{{mean, 1.0, 1.0, var}};
  std::vector<std::vector<double>> out;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<double> next(r.size() + 1, 0.0);
    double cp = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double joint = r[k] * pred(params[k], x[t]);
      next[k + 1] = joint * (1.0 - hazard);
      cp += joint * hazard;
    }
    next[0] = cp;
    const double z = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& v : next) v /= z;
    out.push_back(next);
    std::vector<P> updated{{mean, 1.0, 1.0, var}};
    for (const auto& p : params) {
      updated.push_back({(p.kappa * p.mu + x[t]) / (p.kappa + 1.0), p.kappa + 1.0, p.alpha + 0.5,
                         p.beta + p.kappa * (x[t] - p.mu) * (x[t] - p.mu) / (2.0 * (p.kappa + 1.0))});
    }
    params = std::move(updated);
    r = std::move(next);
  }
  return out;
}

/// Local linear fit at each x = 0..n-1 by solving the 2x2 weighted normal
/// equations, tricube weights over the q nearest points.
inline std::vector<double> loess(const std::vector<double>& y, double span) {
  const std::size_t n = y.size();
  long q = std::lround(span * static_cast<double>(n));
  q = std::max<long>(3, std::min<long>(q, static_cast<long>(n)));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> d;
    for (std::size_t j = 0; j < n; ++j) d.push_back(std::fabs(double(j) - double(i)));
    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    const double h = sorted[static_cast<std::size_t>(q - 1)];
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = d[j] / h;
      const double w = u < 1.0 ? std::pow(1.0 - u * u * u, 3) : 0.0;
      const double xj = double(j);
      s0 += w;
      s1 += w * xj;
      s2 += w * xj * xj;
      t0 += w * y[j];
      t1 += w * xj * y[j];
    }
    const double det = s0 * s2 - s1 * s1;
    if (std::fabs(det) < 1e-9 * s0 * s0) {
      out[i] = t0 / s0;
    } else {
      const double a = (s2 * t0 - s1 * t1) / det;
      const double b = (s0 * t1 - s1 * t0) / det;
      out[i] = a + b * double(i);
    }
  }
  return out;
}

struct Doc {
  std::string id;
  std::string title;
  std::string body;
};

/// Brute-force BM25 for one phrase treated as a pseudo-term: counts
/// contiguous occurrences separately in title and body token sequences.
inline std::map<std::string, double> bm25(const std::vector<Doc>& docs, const std::string& phrase,
                                          double k1 = 1.2, double b = 0.75) {
  const auto q = newslens::tokenize(phrase);
  auto occurrences = [&](const std::vector<std::string>& toks) {
    std::size_t c = 0;
    for (std::size_t i = 0; i + q.size() <= toks.size(); ++i) {
      if (std::equal(q.begin(), q.end(), toks.begin() + static_cast<std::ptrdiff_t>(i))) ++c;
    }
    return c;
  };
  std::vector<std::size_t> tf, len;
  double total = 0;
  for (const auto& d : docs) {
    const auto t = newslens::tokenize(d.title), body = newslens::tokenize(d.body);
    tf.push_back(occurrences(t) + occurrences(body));
    len.push_back(t.size() + body.size());
    total += double(len.back());
  }
  const double N = double(docs.size());
  const double avgdl = total / N;
  const double df = double(std::count_if(tf.begin(), tf.end(), [](std::size_t v) { return v > 0; }));
  const double idf = std::log(1.0 + (N - df + 0.5) / (df + 0.5));
  std::map<std::string, double> scores;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (tf[i] == 0) continue;
    const double f = double(tf[i]);
    scores[docs[i].id] = idf * f * (k1 + 1.0) / (f + k1 * (1.0 - b + b * double(len[i]) / avgdl));
  }
  return scores;
}

/// Average ranks (1-based), ties share the mean rank.
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = (double(i) + double(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const double n = double(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace oracle
