#include "okse/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "okse/errors.hpp"

namespace okse {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) {
    tokens.push_back(std::move(current));
  }
  return tokens;
}

std::size_t word_edit_distance(const std::vector<std::string>& reference,
                               const std::vector<std::string>& hypothesis) {
  const std::size_t nr = reference.size();
  const std::size_t nh = hypothesis.size();
  std::vector<std::size_t> prev(nh + 1), curr(nh + 1);
  for (std::size_t j = 0; j <= nh; ++j) {
    prev[j] = j;
  }
  for (std::size_t i = 1; i <= nr; ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= nh; ++j) {
      std::size_t sub = prev[j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
    }
    std::swap(prev, curr);
  }
  return prev[nh];
}

double wer(const std::vector<TranscriptPair>& pairs) {
  std::size_t total_edits = 0;
  std::size_t total_ref_words = 0;
  for (const auto& pair : pairs) {
    total_edits += word_edit_distance(pair.reference, pair.hypothesis);
    total_ref_words += pair.reference.size();
  }
  if (total_ref_words == 0) {
    throw MetricError("wer: no reference words");
  }
  return 100.0 * static_cast<double>(total_edits) / static_cast<double>(total_ref_words);
}

double eer(const std::vector<Trial>& trials) {
  std::vector<double> targets, nontargets;
  for (const Trial& t : trials) {
    (t.target ? targets : nontargets).push_back(t.score);
  }
  if (targets.empty() || nontargets.empty()) {
    throw MetricError("eer: need at least one target and one non-target score");
  }
  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());

  std::vector<double> thresholds;
  thresholds.reserve(trials.size());
  for (const Trial& t : trials) {
    thresholds.push_back(t.score);
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  // Operating points swept from accept-everything to reject-everything.
  struct Point {
    double far;
    double frr;
  };
  std::vector<Point> points;
  points.push_back({1.0, 0.0});
  const double nt = static_cast<double>(nontargets.size());
  const double tt = static_cast<double>(targets.size());
  for (double th : thresholds) {
    double far = static_cast<double>(nontargets.end() -
                                     std::lower_bound(nontargets.begin(), nontargets.end(), th)) /
                 nt;
    double frr = static_cast<double>(std::lower_bound(targets.begin(), targets.end(), th) -
                                     targets.begin()) /
                 tt;
    points.push_back({far, frr});
  }
  points.push_back({0.0, 1.0});

  // Keep the outer staircase corner per distinct FAR (the smallest FRR,
  // which is the first point of each run since FRR only grows).
  std::vector<Point> corners;
  for (const Point& p : points) {
    if (corners.empty() || p.far != corners.back().far) {
      corners.push_back(p);
    }
  }

  // FAR - FRR decreases strictly along the corners; find the sign change
  // and interpolate linearly along that segment.
  double prev_diff = corners.front().far - corners.front().frr;
  if (prev_diff == 0.0) {
    return 100.0 * corners.front().far;
  }
  for (std::size_t i = 1; i < corners.size(); ++i) {
    double diff = corners[i].far - corners[i].frr;
    if (diff == 0.0) {
      return 100.0 * corners[i].far;
    }
    if (prev_diff > 0.0 && diff < 0.0) {
      double alpha = prev_diff / (prev_diff - diff);
      double value = corners[i - 1].far + alpha * (corners[i].far - corners[i - 1].far);
      return 100.0 * value;
    }
    prev_diff = diff;
  }
  throw MetricError("eer: no crossing found");  // unreachable for valid input
}

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size() || u.empty()) {
    throw InvalidParameterError("cosine_similarity: vectors must be non-empty and equal length");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) {
    throw MetricError("cosine_similarity: zero vector");
  }
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

}  // namespace okse
