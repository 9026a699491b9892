#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace binseg {

// Number of candidate splits of a fresh size-n segment with min segment
// length m: g(n) = max(n - 2m + 1, 0).
std::int64_t g(std::int64_t n, std::int64_t m);

// Admissible sizes for the child that receives d of the remaining k-1 splits
// when a size-n segment is split (d <= (k-1)/2; the sibling gets k-d-1).
// Inclusive range {lower..upper}; never empty for feasible inputs.
struct SizeSet {
  std::int64_t lower = 0;
  std::int64_t upper = -1;
};
SizeSet size_set(std::int64_t n, std::int64_t k, std::int64_t d,
                 std::int64_t m);

inline constexpr std::int64_t kInfeasible =
    std::numeric_limits<std::int64_t>::max();

// Best-case table f(s,d) = fewest candidates to compute d splits on a size-s
// segment, charging every node of the split tree including the base case
// f(s,0) = g(s). argmin back-pointers reconstruct one optimal tree; cost
// ties prefer the larger first-child split count d, then the smaller size,
// which keeps both root children internal whenever a balanced optimum exists.
class CostTable {
 public:
  CostTable(std::int64_t n, std::int64_t k, std::int64_t m);
  std::int64_t n() const { return n_; }
  std::int64_t k() const { return k_; }
  std::int64_t m() const { return m_; }
  // kInfeasible when s cannot host d splits (s < (d+1)*m).
  std::int64_t cost(std::int64_t s, std::int64_t d) const;
  // (d*, s*) giving the optimal first child; only defined for d >= 1.
  std::pair<std::int64_t, std::int64_t> argmin(std::int64_t s,
                                               std::int64_t d) const;
  std::int64_t best() const { return cost(n_, k_); }

  void set(std::int64_t s, std::int64_t d, std::int64_t value,
           std::int64_t arg_d, std::int64_t arg_s);

 private:
  std::size_t index(std::int64_t s, std::int64_t d) const;
  std::int64_t n_, k_, m_;
  std::vector<std::int64_t> cost_;
  std::vector<std::int64_t> arg_d_, arg_s_;
};

// The DP over size_set, O(N^2 K^2) time, O(NK) space. Throws
// InfeasibleError unless n >= (k+1)*m. k == 0 is allowed and gives g(n).
CostTable dp_literal(std::int64_t n, std::int64_t k, std::int64_t m);

// Same minimization under the operational convention: the children of the
// final split are never evaluated, so their g is not charged. Two-state
// recursion on top of the literal table; k >= 1.
std::int64_t dp_operational(std::int64_t n, std::int64_t k, std::int64_t m);

// Exact worst case: detach a minimum-size child at every split,
// sum_{i=0..k-1} g(n - i*m). For m == 1 this is nk - k(k+1)/2.
std::int64_t worst_case(std::int64_t n, std::int64_t k, std::int64_t m);

// Closed forms for the balanced run on n = 2^J data, m = 1, evaluated at the
// dyadic iteration counts i = 2^(j-1), j in 1..J+1:
//   best:  n*j - 2^j + 1 cumulative candidates after i iterations
//   worst: n*i - i(i+1)/2
std::int64_t dyadic_best(std::int64_t n, std::int64_t iterations);
std::int64_t dyadic_worst(std::int64_t n, std::int64_t iterations);

// Operational count of the halving schedule: split the largest remaining
// segment (ties: earliest created) at its capacity midpoint, k splits total.
// Over-estimates dp_operational except at full budget where it is exact.
// O(k log k).
std::int64_t heuristic_lower_bound(std::int64_t n, std::int64_t k,
                                   std::int64_t m);

struct SplitTree {
  std::int64_t size = 0;
  std::int64_t cost = 0;  // g(size)
  std::vector<SplitTree> children;

  bool leaf() const { return children.empty(); }
  std::int64_t internal_count() const;
  std::int64_t cost_total() const;
};

SplitTree reconstruct_tree(const CostTable& table);

std::string tree_text(const SplitTree& tree);  // two-space indentation
std::string tree_json(const SplitTree& tree);  // {"size":..,"cost":..,"children":[..]}
std::string tree_dot(const SplitTree& tree);   // labels "size=<s> g=<cost>"

// Exhaustive enumeration over all split trees (and, for the operational
// conventions, over all admissible final splits). Test oracle; keep n small.
//   AllNodes:    min over trees of the sum of g over every node
//   Operational: min over trees and final-split choices, final split's
//                children uncharged
//   WorstMax:    max over the same space as Operational
enum class BruteConvention { AllNodes, Operational, WorstMax };
std::int64_t brute_force(std::int64_t n, std::int64_t k, std::int64_t m,
                         BruteConvention convention);

}  // namespace binseg
