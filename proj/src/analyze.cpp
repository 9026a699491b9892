#include "binseg/analyze.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "binseg/bounds.hpp"
#include "binseg/segmenter.hpp"

namespace binseg {

namespace {

AnalysisRow analyze_one(const NamedSequence& named,
                        const AnalyzeOptions& options) {
  AnalysisRow row;
  row.sequence_id = named.id;
  row.loss = options.loss;
  const DataSequence seq(named.values);
  const std::int64_t n = seq.size();
  const std::int64_t m = options.min_seg_len;
  row.n = n;
  row.splits_requested =
      options.fixed_splits >= 0 ? options.fixed_splits : n - 1;
  const auto started = std::chrono::steady_clock::now();
  BinsegResult run;
  try {
    run = binseg(seq, options.loss, row.splits_requested, m);
  } catch (const std::domain_error& e) {
    throw std::domain_error("sequence '" + named.id + "': " + e.what());
  }
  if (options.timings) {
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  }
  row.splits_achieved = static_cast<std::int64_t>(run.splits.size());
  row.candidates_empirical = run.metrics.total_candidates;
  row.max_container_size = run.metrics.max_container_size;
  // bounds at the largest feasible K not above the request
  const std::int64_t k_cap =
      std::max<std::int64_t>(0, std::min(row.splits_requested, n / m - 1));
  row.candidates_worst = worst_case(n, k_cap, m);
  row.candidates_heuristic =
      k_cap >= 1 ? heuristic_lower_bound(n, k_cap, m) : 0;
  if (n <= options.dp_threshold) {
    row.candidates_dp = k_cap >= 1 ? dp_operational(n, k_cap, m) : 0;
  }
  return row;
}

}  // namespace

std::vector<AnalysisRow> analyze_sequences(
    const std::vector<NamedSequence>& sequences,
    const AnalyzeOptions& options) {
  if (options.min_seg_len < 1) {
    throw std::invalid_argument("min segment length must be >= 1");
  }
  std::vector<AnalysisRow> rows(sequences.size());
  const int jobs = std::max(
      1, std::min<int>(options.jobs, static_cast<int>(sequences.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < sequences.size(); ++i) {
      rows[i] = analyze_one(sequences[i], options);
    }
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sequences.size()) return;
      try {
        rows[i] = analyze_one(sequences[i], options);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

std::string analysis_csv_header() {
  return "sequence_id,n,splits_requested,splits_achieved,loss,"
         "candidates_empirical,candidates_dp,candidates_heuristic,"
         "candidates_worst,max_container_size,runtime_ms";
}

std::string analysis_csv_row(const AnalysisRow& row) {
  std::string out = row.sequence_id;
  out += "," + std::to_string(row.n);
  out += "," + std::to_string(row.splits_requested);
  out += "," + std::to_string(row.splits_achieved);
  out += "," + to_string(row.loss);
  out += "," + std::to_string(row.candidates_empirical);
  out += ",";
  if (row.candidates_dp >= 0) out += std::to_string(row.candidates_dp);
  out += "," + std::to_string(row.candidates_heuristic);
  out += "," + std::to_string(row.candidates_worst);
  out += "," + std::to_string(row.max_container_size);
  out += ",";
  if (row.runtime_ms >= 0) out += format_double(row.runtime_ms);
  return out;
}

}  // namespace binseg
