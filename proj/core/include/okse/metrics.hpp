#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace okse {

struct TranscriptPair {
  std::vector<std::string> reference;
  std::vector<std::string> hypothesis;
};

/// Lowercases and splits on whitespace.
std::vector<std::string> tokenize(std::string_view text);

/// Minimum-edit-distance word alignment with unit costs.
std::size_t word_edit_distance(const std::vector<std::string>& reference,
                               const std::vector<std::string>& hypothesis);

/// Corpus-level word error rate in percent: 100 * (total edits) / (total
/// reference words). Can exceed 100 when hypotheses run long.
double wer(const std::vector<TranscriptPair>& pairs);

struct Trial {
  double score = 0.0;
  bool target = false;
};

/// Equal error rate in percent. Threshold sweep over the scores with
/// accept-iff-score>=threshold; the EER is read off the piecewise-linear
/// ROC through the staircase corners where the false-accept and
/// false-reject rates cross. Depends only on the ranking of the scores.
double eer(const std::vector<Trial>& trials);

double cosine_similarity(const std::vector<double>& u, const std::vector<double>& v);

}  // namespace okse
