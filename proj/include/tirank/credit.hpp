#pragma once

#include <string>
#include <vector>

#include "tirank/corpus.hpp"
#include "tirank/errors.hpp"

namespace tirank {

// Per-position author shares for one publication. weights[k] belongs to
// byline position k+1; weights are all positive and sum to 1 within 1e-9.
struct CreditVector {
  std::string pub_id;
  std::vector<double> weights;
  bool operator==(const CreditVector&) const = default;
};

namespace detail {

// First/last 0.40 each, the remaining 0.20 split over the middle authors.
inline std::vector<double> endpoints_heavy(size_t n) {
  std::vector<double> w(n, 0.0);
  w.front() = 0.40;
  w.back() = 0.40;
  const double middle = 0.20 / static_cast<double>(n - 2);
  for (size_t i = 1; i + 1 < n; ++i) w[i] = middle;
  return w;
}

// First/last 0.30, second and second-to-last 0.15, remaining 0.10 split over
// the rest. With n = 4 there is no rest, so the schedule is scaled back up
// to unit sum, preserving the 2:1 ratio between end and adjacent shares.
inline std::vector<double> endpoints_and_neighbors(size_t n) {
  if (n == 4) {
    return {1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0};
  }
  std::vector<double> w(n, 0.0);
  w.front() = 0.30;
  w.back() = 0.30;
  w[1] = 0.15;
  w[n - 2] = 0.15;
  const double inner = 0.10 / static_cast<double>(n - 4);
  for (size_t i = 2; i + 2 < n; ++i) w[i] = inner;
  return w;
}

}  // namespace detail

inline CreditVector fractional_contributions(const Byline& byline,
                                             BylinePolicy policy) {
  const size_t n = byline.entries.size();
  if (n == 0) {
    fail(errc::byline, "byline for pub_id '" + byline.pub_id + "' is empty");
  }
  CreditVector credit;
  credit.pub_id = byline.pub_id;
  if (policy == BylinePolicy::alphabetical) {
    credit.weights.assign(n, 1.0 / static_cast<double>(n));
    return credit;
  }
  switch (n) {
    case 1:
      credit.weights = {1.0};
      return credit;
    case 2:
      credit.weights = {0.5, 0.5};
      return credit;
    case 3:
      // Second and second-to-last coincide, so both rules degenerate here.
      credit.weights = {0.40, 0.20, 0.40};
      return credit;
    default:
      break;
  }
  const bool ends_share_university =
      byline.entries.front().university_id == byline.entries.back().university_id;
  credit.weights = ends_share_university ? detail::endpoints_heavy(n)
                                         : detail::endpoints_and_neighbors(n);
  return credit;
}

// Share of one professor: the sum of the credit weights at the byline
// positions they hold.
inline double share_of_positions(const CreditVector& credit,
                                 const std::vector<int>& positions) {
  double share = 0.0;
  for (int position : positions) {
    if (position < 1 || static_cast<size_t>(position) > credit.weights.size()) {
      fail(errc::byline, "pub_id '" + credit.pub_id + "': position " +
                             std::to_string(position) + " outside byline of " +
                             std::to_string(credit.weights.size()));
    }
    share += credit.weights[static_cast<size_t>(position) - 1];
  }
  return share;
}

}  // namespace tirank
