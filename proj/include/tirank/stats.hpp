#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "tirank/errors.hpp"

namespace tirank {

inline double mean(const std::vector<double>& x) {
  if (x.empty()) fail(errc::domain, "mean of empty vector");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double population_stdev(const std::vector<double>& x) {
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size()));
}

// Linear interpolation between order statistics (the common spreadsheet
// convention): h = (n-1)p.
inline double quantile(std::vector<double> x, double p) {
  if (x.empty()) fail(errc::domain, "quantile of empty vector");
  if (p < 0.0 || p > 1.0) fail(errc::domain, "quantile level outside [0, 1]");
  std::sort(x.begin(), x.end());
  const double h = static_cast<double>(x.size() - 1) * p;
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= x.size()) return x.back();
  const double frac = h - static_cast<double>(lo);
  return x[lo] + frac * (x[lo + 1] - x[lo]);
}

// Average-of-tied-positions ranks, 1-based: a tie group occupying sorted
// positions i..j all receive (i + j) / 2.
inline std::vector<double> fractional_ranks(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&x](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    fail(errc::domain, "correlation inputs differ in length: " +
                           std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()));
  }
  if (x.size() < 2) {
    fail(errc::domain, "correlation needs at least 2 observations");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    fail(errc::undefined_correlation,
         "correlation undefined: constant input vector");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    fail(errc::domain, "correlation inputs differ in length: " +
                           std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()));
  }
  return pearson(fractional_ranks(x), fractional_ranks(y));
}

}  // namespace tirank
