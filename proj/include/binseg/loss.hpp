#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "binseg/data_sequence.hpp"

namespace binseg {

enum class LossKind { Square, L1, Poisson };

LossKind loss_kind_from_string(const std::string& name);  // square|l1|poisson
std::string to_string(LossKind kind);

// Two loss decreases count as tied when they differ by at most this relative
// tolerance, floored at 1 so near-zero decreases compare absolutely.
inline constexpr double kLossTieRelTol = 1e-9;

inline bool loss_tied(double a, double b) {
  return std::abs(a - b) <=
         kLossTieRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Optimal constant-model loss of the half-open segment [first,last).
//   Square:  sum x^2 - (sum x)^2 / n      (fitted mean)
//   L1:      sum |x - median|             (fitted median; even lengths use
//            the midpoint of the two central order statistics, which leaves
//            the loss unchanged)
//   Poisson: s - s*ln(s/n) for segment sum s > 0, exactly 0 for s == 0.
//            Requires all data values >= 0, else std::domain_error.
// Square and Poisson are O(1) via prefix stats, L1 is O(len log len).
double segment_loss(const DataSequence& seq, LossKind kind, std::int64_t first,
                    std::int64_t last);

// A split at position p separates [first,p) from [p,last). For a whole
// sequence p is the number of data points before the change, which matches
// the 1-based "change after position p" phrasing used in the outputs.
// Candidates run over p in [first+m, last-m]; there are g(len, m) of them.

// Split loss at every candidate, in position order. Used by tests and by the
// L1 sweep; best_split computes the same numbers.
std::vector<double> candidate_split_losses(const DataSequence& seq,
                                           LossKind kind, std::int64_t first,
                                           std::int64_t last,
                                           std::int64_t min_seg_len);

struct SplitEvaluation {
  std::int64_t first = 0;
  std::int64_t last = 0;
  std::int64_t min_seg_len = 1;
  std::int64_t candidates = 0;      // positions swept, equals g(len, m)
  double loss_before = 0.0;         // loss of the unsplit segment
  double best_split_loss = 0.0;     // min over candidates
  double best_decrease = 0.0;       // loss_before - best_split_loss
  std::vector<std::int64_t> tied;   // all candidates whose decrease ties the
                                    // best one, ascending
};

// Evaluates every candidate of a splittable segment (len >= 2*min_seg_len,
// else std::invalid_argument). Tie-breaking between the tied candidates is
// the segmenter's job, see choose_split.
SplitEvaluation best_split(const DataSequence& seq, LossKind kind,
                           std::int64_t first, std::int64_t last,
                           std::int64_t min_seg_len);

}  // namespace binseg
