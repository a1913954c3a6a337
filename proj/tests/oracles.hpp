// Brute-force reference implementations used by the tests. These stay
// independent of the library code paths they check: the edit distance is a
// plain recursion with no table, and the EER builds its operating points
// from midpoint thresholds and finds the crossing by bisection.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "okse/metrics.hpp"

namespace okse::test {

inline std::size_t edit_distance_recursive(const std::vector<std::string>& ref, std::size_t i,
                                           const std::vector<std::string>& hyp, std::size_t j) {
  if (i == ref.size()) {
    return hyp.size() - j;
  }
  if (j == hyp.size()) {
    return ref.size() - i;
  }
  std::size_t best = edit_distance_recursive(ref, i + 1, hyp, j + 1) +
                     (ref[i] == hyp[j] ? 0 : 1);
  best = std::min(best, edit_distance_recursive(ref, i + 1, hyp, j) + 1);  // deletion
  best = std::min(best, edit_distance_recursive(ref, i, hyp, j + 1) + 1);  // insertion
  return best;
}

inline double eer_oracle(const std::vector<Trial>& trials) {
  std::vector<double> targets, nontargets, scores;
  for (const Trial& t : trials) {
    (t.target ? targets : nontargets).push_back(t.score);
    scores.push_back(t.score);
  }
  std::sort(scores.begin(), scores.end());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());

  std::vector<double> thresholds;
  thresholds.push_back(scores.front() - 1.0);
  for (std::size_t i = 0; i + 1 < scores.size(); ++i) {
    thresholds.push_back((scores[i] + scores[i + 1]) / 2.0);
  }
  thresholds.push_back(scores.back() + 1.0);
  // Thresholds exactly at the scores reproduce the same step levels.
  thresholds.insert(thresholds.end(), scores.begin(), scores.end());
  std::sort(thresholds.begin(), thresholds.end());

  struct Point {
    double far, frr;
  };
  std::vector<Point> points;
  for (double th : thresholds) {
    double far = 0.0, frr = 0.0;
    for (double s : nontargets) {
      if (s >= th) {
        far += 1.0;
      }
    }
    for (double s : targets) {
      if (s < th) {
        frr += 1.0;
      }
    }
    points.push_back({far / nontargets.size(), frr / targets.size()});
  }
  std::vector<Point> corners;
  for (const Point& p : points) {
    if (corners.empty() || p.far != corners.back().far) {
      corners.push_back(p);
    }
  }
  for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
    auto diff_at = [&](double t) {
      double far = corners[i].far + t * (corners[i + 1].far - corners[i].far);
      double frr = corners[i].frr + t * (corners[i + 1].frr - corners[i].frr);
      return far - frr;
    };
    double d0 = diff_at(0.0), d1 = diff_at(1.0);
    if (d0 == 0.0) {
      return 100.0 * corners[i].far;
    }
    if (d0 > 0.0 && d1 <= 0.0) {
      double lo = 0.0, hi = 1.0;
      for (int iter = 0; iter < 80; ++iter) {
        double mid = (lo + hi) / 2.0;
        (diff_at(mid) > 0.0 ? lo : hi) = mid;
      }
      double t = (lo + hi) / 2.0;
      return 100.0 * (corners[i].far + t * (corners[i + 1].far - corners[i].far));
    }
  }
  return 100.0 * corners.back().far;
}

}  // namespace okse::test
