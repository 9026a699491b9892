#include "binseg/segmenter.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "binseg/bounds.hpp"

namespace binseg {

TieBreakMode tie_break_from_string(const std::string& name) {
  if (name == "full") return TieBreakMode::Full;
  if (name == "naive") return TieBreakMode::Naive;
  throw std::invalid_argument("unknown tie-break mode '" + name +
                              "' (expected full or naive)");
}

std::string to_string(TieBreakMode mode) {
  return mode == TieBreakMode::Full ? "full" : "naive";
}

std::int64_t choose_split(const SplitEvaluation& eval, TieBreakMode mode,
                          std::int64_t min_seg_len) {
  if (eval.tied.empty()) {
    throw std::invalid_argument("choose_split needs a non-empty tie set");
  }
  if (mode == TieBreakMode::Naive) return eval.tied.front();
  std::int64_t best_pos = -1;
  std::int64_t best_nc = 0;
  std::int64_t best_dist = 0;
  for (std::int64_t p : eval.tied) {
    const std::int64_t nc =
        g(p - eval.first, min_seg_len) + g(eval.last - p, min_seg_len);
    const std::int64_t dist = std::min(p - eval.first, eval.last - p) - 1;
    // tied is ascending, so strict improvement leaves the lowest position
    // as the final fallback
    if (best_pos < 0 || nc < best_nc ||
        (nc == best_nc && dist > best_dist)) {
      best_pos = p;
      best_nc = nc;
      best_dist = dist;
    }
  }
  return best_pos;
}

SegmentRecord SegmentContainer::pop_best(TieBreakMode mode) {
  if (records_.empty()) {
    throw std::logic_error("pop_best on empty container");
  }
  auto best = records_.begin();
  const double top = best->decrease;
  // The band is anchored at the maximum decrease; everything outside it is
  // strictly worse. Within the band the stored key's decrease ordering is
  // ignored and only the tie rules decide.
  for (auto it = std::next(records_.begin());
       it != records_.end() && loss_tied(top, it->decrease); ++it) {
    if (mode == TieBreakMode::Naive) {
      if (it->split < best->split) best = it;
      continue;
    }
    if (it->next_candidates != best->next_candidates) {
      if (it->next_candidates < best->next_candidates) best = it;
    } else if (it->boundary_distance != best->boundary_distance) {
      if (it->boundary_distance > best->boundary_distance) best = it;
    } else if (it->first != best->first) {
      if (it->first < best->first) best = it;
    } else if (it->split < best->split) {
      best = it;
    }
  }
  SegmentRecord rec = *best;
  records_.erase(best);
  return rec;
}

namespace {

SegmentRecord make_record(const DataSequence& seq, LossKind kind,
                          std::int64_t first, std::int64_t last,
                          std::int64_t m, TieBreakMode mode) {
  const SplitEvaluation ev = best_split(seq, kind, first, last, m);
  assert(ev.candidates == g(last - first, m));
  SegmentRecord rec;
  rec.first = first;
  rec.last = last;
  rec.split = choose_split(ev, mode, m);
  rec.loss_before = ev.loss_before;
  rec.loss_after = ev.best_split_loss;
  rec.decrease = ev.best_decrease;
  rec.candidates = ev.candidates;
  rec.next_candidates =
      g(rec.split - first, m) + g(last - rec.split, m);
  rec.boundary_distance = std::min(rec.split - first, last - rec.split) - 1;
  return rec;
}

}  // namespace

BinsegResult binseg(const DataSequence& seq, LossKind kind,
                    std::int64_t max_splits, std::int64_t min_seg_len,
                    TieBreakMode mode) {
  if (min_seg_len < 1) {
    throw std::invalid_argument("min segment length must be >= 1");
  }
  if (max_splits < 0) {
    throw std::invalid_argument("max splits must be >= 0");
  }
  if (kind == LossKind::Poisson && seq.min_value() < 0.0) {
    throw std::domain_error("poisson loss requires nonnegative data");
  }
  BinsegResult out;
  SegmentContainer container;
  const std::int64_t m = min_seg_len;
  std::int64_t cumulative = 0;
  double model = 0.0;
  SegmentRecord prev;  // split i-1, valid from i == 2 on
  for (std::int64_t i = 1; i <= max_splits; ++i) {
    IterationMetrics it;
    it.iteration = i;
    auto evaluate = [&](std::int64_t f, std::int64_t l) {
      it.candidates += g(l - f, m);
      if (l - f >= 2 * m) {
        it.sizes_before_inserts.push_back(container.size());
        container.insert(make_record(seq, kind, f, l, m, mode));
      }
    };
    if (i == 1) {
      evaluate(0, seq.size());
    } else {
      evaluate(prev.first, prev.split);
      evaluate(prev.split, prev.last);
    }
    if (container.empty()) break;  // candidates were necessarily 0 here
    cumulative += it.candidates;
    it.cumulative_candidates = cumulative;
    it.container_size_after = container.size();
    out.metrics.max_container_size =
        std::max(out.metrics.max_container_size, it.container_size_after);
    SegmentRecord rec = container.pop_best(mode);
    if (i == 1) model = rec.loss_before;  // total loss of the unsplit data
    model -= rec.decrease;
    it.split = rec.split;
    it.decrease = rec.decrease;
    it.model_loss = model;
    out.metrics.iterations.push_back(std::move(it));
    out.splits.push_back(rec);
    prev = rec;
  }
  out.metrics.total_candidates = cumulative;
  return out;
}

double model_loss(const std::vector<SegmentRecord>& splits,
                  const DataSequence& seq, LossKind kind, std::int64_t k) {
  if (k < 0 || k > static_cast<std::int64_t>(splits.size())) {
    throw std::out_of_range("model_loss: k = " + std::to_string(k) +
                            " outside 0.." + std::to_string(splits.size()));
  }
  std::vector<std::int64_t> bounds;
  bounds.reserve(static_cast<std::size_t>(k) + 2);
  bounds.push_back(0);
  for (std::int64_t i = 0; i < k; ++i) bounds.push_back(splits[i].split);
  bounds.push_back(seq.size());
  std::sort(bounds.begin(), bounds.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    total += segment_loss(seq, kind, bounds[i], bounds[i + 1]);
  }
  return total;
}

}  // namespace binseg
