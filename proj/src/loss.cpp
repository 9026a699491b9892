#include "binseg/loss.hpp"

#include <limits>
#include <stdexcept>

#include "binseg/median_accumulator.hpp"

namespace binseg {

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "square") return LossKind::Square;
  if (name == "l1") return LossKind::L1;
  if (name == "poisson") return LossKind::Poisson;
  throw std::invalid_argument("unknown loss kind '" + name +
                              "' (expected square, l1 or poisson)");
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::Square: return "square";
    case LossKind::L1: return "l1";
    case LossKind::Poisson: return "poisson";
  }
  throw std::invalid_argument("bad LossKind");
}

namespace {

void require_poisson_domain(const DataSequence& seq, LossKind kind) {
  if (kind == LossKind::Poisson && seq.min_value() < 0.0) {
    throw std::domain_error("poisson loss requires nonnegative data");
  }
}

double square_loss(const DataSequence& seq, std::int64_t first,
                   std::int64_t last) {
  const double s = seq.range_sum(first, last);
  return seq.range_sum_sq(first, last) -
         s * s / static_cast<double>(last - first);
}

// s >= 0 is guaranteed: prefix sums of nonnegative data never decrease, even
// in floating point.
double poisson_loss(const DataSequence& seq, std::int64_t first,
                    std::int64_t last) {
  const double s = seq.range_sum(first, last);
  if (s == 0.0) return 0.0;
  return s - s * std::log(s / static_cast<double>(last - first));
}

double l1_loss(const DataSequence& seq, std::int64_t first,
               std::int64_t last) {
  std::vector<double> seg(seq.values().begin() + first,
                          seq.values().begin() + last);
  const std::size_t n = seg.size();
  const std::size_t mid = n / 2;
  std::nth_element(seg.begin(), seg.begin() + mid, seg.end());
  double med = seg[mid];
  if (n % 2 == 0) {
    // midpoint of the two central order statistics
    const double below = *std::max_element(seg.begin(), seg.begin() + mid);
    med = (below + med) / 2.0;
  }
  double total = 0.0;
  for (double x : seg) total += std::abs(x - med);
  return total;
}

double point_loss(const DataSequence& seq, LossKind kind, std::int64_t first,
                  std::int64_t last) {
  switch (kind) {
    case LossKind::Square: return square_loss(seq, first, last);
    case LossKind::Poisson: return poisson_loss(seq, first, last);
    case LossKind::L1: return l1_loss(seq, first, last);
  }
  throw std::invalid_argument("bad LossKind");
}

void require_splittable(const DataSequence& seq, std::int64_t first,
                        std::int64_t last, std::int64_t min_seg_len) {
  if (min_seg_len < 1) {
    throw std::invalid_argument("min segment length must be >= 1");
  }
  seq.check_range(first, last);
  if (last - first < 2 * min_seg_len) {
    throw std::invalid_argument(
        "segment of size " + std::to_string(last - first) +
        " is not splittable with min segment length " +
        std::to_string(min_seg_len));
  }
}

// Left and right losses for every candidate come from two monotone median
// sweeps, so each candidate costs O(log len) and nothing is ever deleted.
std::vector<double> l1_split_losses(const DataSequence& seq,
                                    std::int64_t first, std::int64_t last,
                                    std::int64_t m) {
  const std::size_t count = static_cast<std::size_t>(last - first - 2 * m + 1);
  std::vector<double> losses(count);
  MedianAccumulator acc;
  for (std::int64_t p = first + 1; p <= last - m; ++p) {
    acc.insert(seq.value(p - 1));  // left segment is now [first, p)
    if (p >= first + m) losses[static_cast<std::size_t>(p - first - m)] = acc.abs_loss();
  }
  acc.clear();
  for (std::int64_t p = last - 1; p >= first + m; --p) {
    acc.insert(seq.value(p));  // right segment is now [p, last)
    if (p <= last - m) losses[static_cast<std::size_t>(p - first - m)] += acc.abs_loss();
  }
  return losses;
}

}  // namespace

double segment_loss(const DataSequence& seq, LossKind kind, std::int64_t first,
                    std::int64_t last) {
  seq.check_range(first, last);
  require_poisson_domain(seq, kind);
  return point_loss(seq, kind, first, last);
}

std::vector<double> candidate_split_losses(const DataSequence& seq,
                                           LossKind kind, std::int64_t first,
                                           std::int64_t last,
                                           std::int64_t min_seg_len) {
  require_splittable(seq, first, last, min_seg_len);
  require_poisson_domain(seq, kind);
  if (kind == LossKind::L1) {
    return l1_split_losses(seq, first, last, min_seg_len);
  }
  std::vector<double> losses;
  losses.reserve(static_cast<std::size_t>(last - first - 2 * min_seg_len + 1));
  for (std::int64_t p = first + min_seg_len; p <= last - min_seg_len; ++p) {
    losses.push_back(point_loss(seq, kind, first, p) +
                     point_loss(seq, kind, p, last));
  }
  return losses;
}

SplitEvaluation best_split(const DataSequence& seq, LossKind kind,
                           std::int64_t first, std::int64_t last,
                           std::int64_t min_seg_len) {
  require_splittable(seq, first, last, min_seg_len);
  require_poisson_domain(seq, kind);
  SplitEvaluation ev;
  ev.first = first;
  ev.last = last;
  ev.min_seg_len = min_seg_len;
  ev.loss_before = point_loss(seq, kind, first, last);
  const std::int64_t lo = first + min_seg_len;
  const std::int64_t hi = last - min_seg_len;
  if (kind == LossKind::L1) {
    const std::vector<double> losses =
        l1_split_losses(seq, first, last, min_seg_len);
    ev.candidates = static_cast<std::int64_t>(losses.size());
    ev.best_split_loss = *std::min_element(losses.begin(), losses.end());
    ev.best_decrease = ev.loss_before - ev.best_split_loss;
    for (std::size_t i = 0; i < losses.size(); ++i) {
      if (loss_tied(ev.loss_before - losses[i], ev.best_decrease)) {
        ev.tied.push_back(lo + static_cast<std::int64_t>(i));
      }
    }
    return ev;
  }
  // Square and Poisson are O(1) per candidate, so sweep twice instead of
  // materialising the losses: once for the minimum, once for the tie set.
  double best = std::numeric_limits<double>::infinity();
  std::int64_t count = 0;
  for (std::int64_t p = lo; p <= hi; ++p) {
    const double sl =
        point_loss(seq, kind, first, p) + point_loss(seq, kind, p, last);
    ++count;
    if (sl < best) best = sl;
  }
  ev.candidates = count;
  ev.best_split_loss = best;
  ev.best_decrease = ev.loss_before - best;
  for (std::int64_t p = lo; p <= hi; ++p) {
    const double sl =
        point_loss(seq, kind, first, p) + point_loss(seq, kind, p, last);
    if (loss_tied(ev.loss_before - sl, ev.best_decrease)) ev.tied.push_back(p);
  }
  return ev;
}

}  // namespace binseg
