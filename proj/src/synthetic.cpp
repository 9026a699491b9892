#include "binseg/synthetic.hpp"

#include <stdexcept>
#include <string>

#include "binseg/bounds.hpp"
#include "binseg/segmenter.hpp"

namespace binseg {

std::vector<double> tiebreak_data(const TieBreakParams& params) {
  const double a = params.a, b = params.b, x = params.x, eps = params.eps;
  std::vector<double> values = {a,           -a,      a,       -a,
                                b + eps + x, b + eps, b - eps, b - eps - x};
  const DataSequence seq(values);
  const BinsegResult run =
      binseg(seq, LossKind::Square, 2, 1, TieBreakMode::Full);
  if (run.splits.empty() || run.splits[0].split != 4) {
    throw std::domain_error(
        "tiebreak parameters break the construction: first split not at 4");
  }
  // a degenerate high block (x = eps = 0) leaves the second split tied at
  // decrease 0 and nothing to check
  if (run.splits.size() > 1 && !loss_tied(run.splits[1].decrease, 0.0) &&
      run.splits[1].split != 6) {
    throw std::domain_error(
        "tiebreak parameters break the construction: second split not at 6");
  }
  return values;
}

std::vector<double> worst_case_data(std::int64_t n) {
  if (n < 2) {
    throw std::domain_error("worst case data needs n >= 2");
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] = (i % 2 == 0) ? -1.0 : 1.0;
  }
  return values;
}

std::vector<double> best_case_data(std::int64_t n, double scale) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::domain_error("best case data needs n to be a power of two >= 2");
  }
  std::int64_t levels = 0;
  while ((std::int64_t{1} << levels) < n) ++levels;
  std::vector<double> values(static_cast<std::size_t>(n), 0.0);
  double delta = scale;
  for (std::int64_t j = 1; j <= levels; ++j) {
    delta /= 4.0;
    const std::int64_t block = n >> (j - 1);
    for (std::int64_t start = 0; start < n; start += block) {
      for (std::int64_t i = start; i < start + block / 2; ++i) {
        values[static_cast<std::size_t>(i)] += delta;
      }
      for (std::int64_t i = start + block / 2; i < start + block; ++i) {
        values[static_cast<std::size_t>(i)] -= delta;
      }
    }
  }
  // certify: the engine must split every popped segment at its midpoint and
  // hit the dyadic closed form at every dyadic iteration
  const DataSequence seq(values);
  const BinsegResult run =
      binseg(seq, LossKind::Square, n - 1, 1, TieBreakMode::Full);
  if (static_cast<std::int64_t>(run.splits.size()) != n - 1) {
    throw std::domain_error("best case data certification failed: short run");
  }
  for (const SegmentRecord& rec : run.splits) {
    if (rec.size() % 2 != 0 || rec.split != rec.first + rec.size() / 2) {
      throw std::domain_error(
          "best case data certification failed: split of the segment at " +
          std::to_string(rec.first) + " is off centre");
    }
  }
  for (std::int64_t i = 1; i <= n; i *= 2) {
    const std::size_t done =
        static_cast<std::size_t>(std::min<std::int64_t>(i, n - 1));
    const std::int64_t cumulative =
        run.metrics.iterations[done - 1].cumulative_candidates;
    if (cumulative != dyadic_best(n, i)) {
      throw std::domain_error(
          "best case data certification failed: cumulative candidates at "
          "iteration " + std::to_string(i) + " diverge from the closed form");
    }
  }
  return values;
}

}  // namespace binseg
