#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "binseg/loss.hpp"

namespace binseg {

enum class TieBreakMode { Full, Naive };

TieBreakMode tie_break_from_string(const std::string& name);  // full|naive
std::string to_string(TieBreakMode mode);

// Picks one position out of eval.tied.
//   Full:  fewest next-round candidates g(left)+g(right), then largest
//          distance to the segment edge min(left,right)-1, then lowest
//          position.
//   Naive: lowest position, nothing else.
std::int64_t choose_split(const SplitEvaluation& eval, TieBreakMode mode,
                          std::int64_t min_seg_len);

// A splittable segment waiting in the container together with its chosen
// split. next_candidates and boundary_distance describe the chosen split and
// feed both tie-break levels of the container ordering.
struct SegmentRecord {
  std::int64_t first = 0;
  std::int64_t last = 0;   // half-open
  std::int64_t split = 0;  // position picked by choose_split
  double loss_before = 0.0;
  double loss_after = 0.0;  // best split loss
  double decrease = 0.0;    // loss_before - loss_after
  std::int64_t candidates = 0;        // sweep cost, g(size)
  std::int64_t next_candidates = 0;   // g(left) + g(right) of the chosen split
  std::int64_t boundary_distance = 0; // min(left, right) - 1 of the chosen split

  std::int64_t size() const { return last - first; }
};

// Ordered container keyed by (decrease desc, next_candidates asc,
// boundary_distance desc, first asc). The stored key compares decreases
// exactly; pop_best rescans the leading band of records whose decreases tie
// the maximum under loss_tied() and applies the mode's tie rules there, so
// tolerance-equal decreases behave as equal without breaking the strict
// ordering std::multiset needs.
class SegmentContainer {
 public:
  bool empty() const { return records_.empty(); }
  std::int64_t size() const {
    return static_cast<std::int64_t>(records_.size());
  }
  void insert(SegmentRecord rec) { records_.insert(rec); }
  SegmentRecord pop_best(TieBreakMode mode);

 private:
  struct Key {
    bool operator()(const SegmentRecord& a, const SegmentRecord& b) const {
      if (a.decrease != b.decrease) return a.decrease > b.decrease;
      if (a.next_candidates != b.next_candidates)
        return a.next_candidates < b.next_candidates;
      if (a.boundary_distance != b.boundary_distance)
        return a.boundary_distance > b.boundary_distance;
      return a.first < b.first;  // live segments never share a start
    }
  };
  std::multiset<SegmentRecord, Key> records_;
};

// One row per performed split. Iteration i covers: evaluate the segments
// created by split i-1 (the root when i == 1), insert the splittable ones,
// sample the container size, then pop and perform split i. The root
// evaluation is charged to iteration 1 and the children of split i are
// charged to iteration i+1; children of the final split are never evaluated.
struct IterationMetrics {
  std::int64_t iteration = 0;  // 1-based
  std::int64_t split = 0;
  double decrease = 0.0;
  double model_loss = 0.0;  // total loss after this split, accumulated
  std::int64_t candidates = 0;
  std::int64_t cumulative_candidates = 0;
  std::vector<std::int64_t> sizes_before_inserts;
  std::int64_t container_size_after = 0;  // sampled after inserts, before the pop
};

struct RunMetrics {
  std::vector<IterationMetrics> iterations;
  std::int64_t total_candidates = 0;
  std::int64_t max_container_size = 0;
};

struct BinsegResult {
  std::vector<SegmentRecord> splits;  // in pop order
  RunMetrics metrics;
};

// Best-first binary segmentation, instrumented. Runs at most max_splits
// iterations and stops early when nothing splittable remains.
BinsegResult binseg(const DataSequence& seq, LossKind kind,
                    std::int64_t max_splits, std::int64_t min_seg_len = 1,
                    TieBreakMode mode = TieBreakMode::Full);

// Loss of the model defined by the first k splits, recomputed from scratch
// (the metrics column accumulates decreases instead; they agree up to float
// error).
double model_loss(const std::vector<SegmentRecord>& splits,
                  const DataSequence& seq, LossKind kind, std::int64_t k);

}  // namespace binseg
