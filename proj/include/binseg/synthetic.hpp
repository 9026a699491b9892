#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace binseg {

// Eight points in two blocks: an alternating low block and a staircase high
// block, [a,-a,a,-a, b+eps+x, b+eps, b-eps, b-eps-x]. The default
// x = sqrt(8/3) makes three segments tie at decrease 4/3 after two splits,
// which is what exercises the tie-break rules.
struct TieBreakParams {
  double a = 1.0;
  double b = 10.0;
  double x = std::sqrt(8.0 / 3.0);
  double eps = 2.0;
};

// Generates the values and self-tests them with an engine run (square loss,
// m = 1, full tie-breaking): split 1 must land at position 4 and split 2 at
// position 6, except that degenerate parameter sets whose second decrease
// ties zero skip the second check. Violations throw std::domain_error.
std::vector<double> tiebreak_data(const TieBreakParams& params = {});

// Alternating -1,+1,... of length n >= 2. Drives square-loss segmentation to
// detach one point per split when m = 1.
std::vector<double> worst_case_data(std::int64_t n);

// Recursive dyadic means on n = 2^J points: level j adds +-delta_j to the
// halves of each level-j block, delta_j = scale * 4^-j. The decay keeps every
// block's midpoint split strictly dominant, so the engine splits in balanced
// level order. Self-verifies with an engine run (midpoint splits everywhere,
// cumulative candidates equal to dyadic_best at every dyadic iteration) and
// throws std::domain_error when the construction cannot be certified, which
// happens once the deepest contrasts fall inside the loss tie tolerance
// (n >= 512 with the default scale).
std::vector<double> best_case_data(std::int64_t n, double scale = 1.0);

}  // namespace binseg
