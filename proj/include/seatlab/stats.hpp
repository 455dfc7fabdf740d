// Copyright 2026 The seatlab Authors.
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
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "seatlab/error.hpp"

namespace seatlab::stats {

enum class Significance { p05, p01, p001 };

constexpr double alpha(Significance s) {
  switch (s) {
    case Significance::p05: return 0.05;
    case Significance::p01: return 0.01;
    case Significance::p001: return 0.001;
  }
  return 0.0;
}

/// Upper critical values of chi-square with one degree of freedom.
constexpr double chi2_df1_critical(Significance s) {
  switch (s) {
    case Significance::p05: return 3.841458820694124;
    case Significance::p01: return 6.634896601021214;
    case Significance::p001: return 10.827566170662733;
  }
  return 0.0;
}

/// Asymptotic two-sample Kolmogorov-Smirnov coefficients c(alpha).
constexpr double ks_coefficient(Significance s) {
  switch (s) {
    case Significance::p05: return 1.358;
    case Significance::p01: return 1.628;
    case Significance::p001: return 1.949;
  }
  return 0.0;
}

/// Two-sided normal quantile used for 99.9% Wilson bands.
inline constexpr double kZ999 = 3.2905267314918945;

struct TestResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double significance = 0.0;
  bool degenerate = false;  // chi-square: a zero row or column margin
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials < 1 || successes > trials || !(z > 0)) {
    throw Error(Errc::DomainError, "wilson_interval needs 0 <= successes <= trials, trials >= 1, z > 0");
  }
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t));
  Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) iv.lo = 0.0;
  if (successes == trials) iv.hi = 1.0;
  // Rounding can push a bound past the point estimate by an ulp.
  iv.lo = std::min(iv.lo, p);
  iv.hi = std::max(iv.hi, p);
  return iv;
}

/// Pearson chi-square on a 2x2 contingency table (df = 1). A zero margin
/// gives statistic 0, pass, and the degenerate flag.
inline TestResult chi_square_independence_2x2(const std::array<std::array<std::uint64_t, 2>, 2>& table,
                                               Significance sig = Significance::p001) {
  const double a = static_cast<double>(table[0][0]);
  const double b = static_cast<double>(table[0][1]);
  const double c = static_cast<double>(table[1][0]);
  const double d = static_cast<double>(table[1][1]);
  const double total = a + b + c + d;
  if (total < 1) throw Error(Errc::DomainError, "empty contingency table");

  TestResult r;
  r.threshold = chi2_df1_critical(sig);
  r.significance = alpha(sig);
  const double rows[2] = {a + b, c + d};
  const double cols[2] = {a + c, b + d};
  if (rows[0] == 0 || rows[1] == 0 || cols[0] == 0 || cols[1] == 0) {
    r.degenerate = true;
    r.pass = true;
    return r;
  }
  const double obs[2][2] = {{a, b}, {c, d}};
  double stat = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double expected = rows[i] * cols[j] / total;
      const double diff = obs[i][j] - expected;
      stat += diff * diff / expected;
    }
  }
  r.statistic = stat;
  r.pass = stat <= r.threshold;
  return r;
}

/// Largest gap between the two empirical CDFs. Ties across samples are
/// stepped together.
inline double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::DomainError, "ks_two_sample needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

/// Two-sample KS test; pass when the statistic is at most
/// c(alpha) * sqrt((|a|+|b|) / (|a||b|)).
inline TestResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                                Significance sig = Significance::p05) {
  TestResult r;
  r.statistic = ks_statistic(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  r.threshold = ks_coefficient(sig) * std::sqrt((na + nb) / (na * nb));
  r.significance = alpha(sig);
  r.pass = r.statistic <= r.threshold;
  return r;
}

inline double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Sample variance (n-1 denominator).
inline double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

/// Pearson sample correlation; 0 when either side is constant.
inline double correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw Error(Errc::DomainError, "correlation needs paired samples");
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace seatlab::stats
