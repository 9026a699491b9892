#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binseg/csv.hpp"
#include "binseg/loss.hpp"

namespace binseg {

struct AnalyzeOptions {
  LossKind loss = LossKind::Square;
  // -1 means the max policy K = N-1; otherwise a fixed K per sequence.
  std::int64_t fixed_splits = -1;
  std::int64_t min_seg_len = 1;
  // the exact dp bound is only computed for sequences with N <= dp_threshold
  std::int64_t dp_threshold = 200;
  int jobs = 1;
  // wall time is not deterministic, so the runtime column stays empty unless
  // asked for; identical invocations are then byte-identical
  bool timings = false;
};

struct AnalysisRow {
  std::string sequence_id;
  std::int64_t n = 0;
  std::int64_t splits_requested = 0;
  std::int64_t splits_achieved = 0;
  LossKind loss = LossKind::Square;
  std::int64_t candidates_empirical = 0;
  std::int64_t candidates_dp = -1;  // -1: not computed (n over threshold)
  std::int64_t candidates_heuristic = 0;
  std::int64_t candidates_worst = 0;
  std::int64_t max_container_size = 0;
  double runtime_ms = -1.0;  // -1: not measured
};

// One engine run per sequence plus bounds. When the requested K is infeasible
// for a sequence the bounds are computed at the largest feasible K instead,
// min(K, floor(N/m) - 1); the row reports both requested and achieved splits.
// jobs > 1 runs sequences concurrently; rows always come back in input order.
std::vector<AnalysisRow> analyze_sequences(
    const std::vector<NamedSequence>& sequences, const AnalyzeOptions& options);

std::string analysis_csv_header();
std::string analysis_csv_row(const AnalysisRow& row);

}  // namespace binseg
