#include "binseg/bounds.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "binseg/errors.hpp"

namespace binseg {

namespace {

void require_basic(std::int64_t n, std::int64_t k, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("min segment length must be >= 1");
  if (k < 0) throw std::invalid_argument("split count must be >= 0");
  if (n < 1) throw std::invalid_argument("segment size must be >= 1");
  if (n < (k + 1) * m) throw InfeasibleError(n, k, m);
}

}  // namespace

std::int64_t g(std::int64_t n, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("min segment length must be >= 1");
  if (n < 0) throw std::invalid_argument("segment size must be >= 0");
  return std::max<std::int64_t>(n - 2 * m + 1, 0);
}

SizeSet size_set(std::int64_t n, std::int64_t k, std::int64_t d,
                 std::int64_t m) {
  require_basic(n, k, m);
  if (k < 1 || d < 0 || 2 * d > k - 1) {
    throw std::invalid_argument("size_set needs k >= 1 and 0 <= d <= (k-1)/2");
  }
  SizeSet s;
  s.lower = (d + 1) * m;
  // when both children receive d splits the smaller child is enough
  s.upper = (2 * d == k - 1) ? n / 2 : n + (d - k) * m;
  return s;
}

std::size_t CostTable::index(std::int64_t s, std::int64_t d) const {
  return static_cast<std::size_t>(d) * static_cast<std::size_t>(n_ + 1) +
         static_cast<std::size_t>(s);
}

CostTable::CostTable(std::int64_t n, std::int64_t k, std::int64_t m)
    : n_(n), k_(k), m_(m) {
  const std::size_t cells =
      static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(n + 1);
  cost_.assign(cells, kInfeasible);
  arg_d_.assign(cells, -1);
  arg_s_.assign(cells, -1);
}

std::int64_t CostTable::cost(std::int64_t s, std::int64_t d) const {
  if (s < 0 || s > n_ || d < 0 || d > k_) {
    throw std::out_of_range("CostTable::cost outside the table");
  }
  return cost_[index(s, d)];
}

std::pair<std::int64_t, std::int64_t> CostTable::argmin(std::int64_t s,
                                                        std::int64_t d) const {
  if (s < 0 || s > n_ || d < 1 || d > k_) {
    throw std::out_of_range("CostTable::argmin outside the table");
  }
  return {arg_d_[index(s, d)], arg_s_[index(s, d)]};
}

void CostTable::set(std::int64_t s, std::int64_t d, std::int64_t value,
                    std::int64_t arg_d, std::int64_t arg_s) {
  cost_[index(s, d)] = value;
  arg_d_[index(s, d)] = arg_d;
  arg_s_[index(s, d)] = arg_s;
}

CostTable dp_literal(std::int64_t n, std::int64_t k, std::int64_t m) {
  require_basic(n, k, m);
  CostTable table(n, k, m);
  for (std::int64_t s = m; s <= n; ++s) table.set(s, 0, g(s, m), -1, -1);
  for (std::int64_t d = 1; d <= k; ++d) {
    for (std::int64_t s = (d + 1) * m; s <= n; ++s) {
      std::int64_t best = kInfeasible;
      std::int64_t best_d = -1, best_s = -1;
      // scan dd downward so cost ties keep the larger split count, which
      // keeps both children internal whenever a balanced optimum exists
      for (std::int64_t dd = (d - 1) / 2; dd >= 0; --dd) {
        const SizeSet sizes = size_set(s, d, dd, m);
        for (std::int64_t ss = sizes.lower; ss <= sizes.upper; ++ss) {
          const std::int64_t a = table.cost(ss, dd);
          const std::int64_t b = table.cost(s - ss, d - dd - 1);
          if (a == kInfeasible || b == kInfeasible) continue;
          if (a + b < best) {
            best = a + b;
            best_d = dd;
            best_s = ss;
          }
        }
      }
      if (best != kInfeasible) table.set(s, d, g(s, m) + best, best_d, best_s);
    }
  }
  return table;
}

std::int64_t dp_operational(std::int64_t n, std::int64_t k, std::int64_t m) {
  require_basic(n, k, m);
  if (k < 1) {
    throw std::invalid_argument("dp_operational needs at least one split");
  }
  const CostTable f0 = dp_literal(n, k, m);
  // f1(s,d): fewest candidates when the subtree of s performs the run's
  // final split, whose children are not charged. f1(s,1) = g(s).
  const std::size_t cells =
      static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(n + 1);
  std::vector<std::int64_t> f1(cells, kInfeasible);
  auto at = [n](std::int64_t s, std::int64_t d) {
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(n + 1) +
           static_cast<std::size_t>(s);
  };
  for (std::int64_t s = 2 * m; s <= n; ++s) f1[at(s, 1)] = g(s, m);
  for (std::int64_t d = 2; d <= k; ++d) {
    for (std::int64_t s = (d + 1) * m; s <= n; ++s) {
      std::int64_t best = kInfeasible;
      for (std::int64_t dd = 0; 2 * dd <= d - 1; ++dd) {
        const SizeSet sizes = size_set(s, d, dd, m);
        for (std::int64_t ss = sizes.lower; ss <= sizes.upper; ++ss) {
          // the final split lives in exactly one child
          if (dd >= 1 && f1[at(ss, dd)] != kInfeasible) {
            const std::int64_t other = f0.cost(s - ss, d - dd - 1);
            if (other != kInfeasible)
              best = std::min(best, f1[at(ss, dd)] + other);
          }
          if (f1[at(s - ss, d - dd - 1)] != kInfeasible) {
            const std::int64_t other = f0.cost(ss, dd);
            if (other != kInfeasible)
              best = std::min(best, other + f1[at(s - ss, d - dd - 1)]);
          }
        }
      }
      if (best != kInfeasible) f1[at(s, d)] = g(s, m) + best;
    }
  }
  return f1[at(n, k)];
}

std::int64_t worst_case(std::int64_t n, std::int64_t k, std::int64_t m) {
  require_basic(n, k, m);
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < k; ++i) total += g(n - i * m, m);
  return total;
}

namespace {

bool is_power_of_two(std::int64_t v) { return v >= 1 && (v & (v - 1)) == 0; }

void require_dyadic(std::int64_t n, std::int64_t iterations) {
  if (n < 2 || !is_power_of_two(n)) {
    throw std::domain_error("dyadic bounds need n to be a power of two >= 2");
  }
  if (!is_power_of_two(iterations) || iterations > n) {
    throw std::domain_error(
        "dyadic bounds need the iteration count to be a power of two <= n");
  }
}

}  // namespace

std::int64_t dyadic_best(std::int64_t n, std::int64_t iterations) {
  require_dyadic(n, iterations);
  std::int64_t j = 1;
  while ((std::int64_t{1} << (j - 1)) < iterations) ++j;
  return n * j - (std::int64_t{1} << j) + 1;
}

std::int64_t dyadic_worst(std::int64_t n, std::int64_t iterations) {
  require_dyadic(n, iterations);
  return n * iterations - iterations * (iterations + 1) / 2;
}

std::int64_t heuristic_lower_bound(std::int64_t n, std::int64_t k,
                                   std::int64_t m) {
  require_basic(n, k, m);
  if (k == 0) return 0;
  // max-heap on (size, creation order); pair's second is negated so equal
  // sizes pop earliest-created first
  std::priority_queue<std::pair<std::int64_t, std::int64_t>> heap;
  std::int64_t seq = 0;
  heap.emplace(n, -seq++);
  std::int64_t total = 0;
  std::int64_t prev_left = 0, prev_right = 0;
  for (std::int64_t i = 1; i <= k; ++i) {
    if (i == 1) {
      total += g(n, m);
    } else {
      total += g(prev_left, m) + g(prev_right, m);
    }
    if (heap.empty()) {
      // cannot happen: capacity-midpoint halving never strands capacity
      throw std::logic_error("heuristic schedule ran out of segments");
    }
    const std::int64_t sz = heap.top().first;
    heap.pop();
    // split at the capacity midpoint: both children keep floor(u/2) and
    // ceil(u/2) of the parent's u = floor(sz/m) capacity units, so feasible
    // budgets always complete; for m == 1 this is plain floor(sz/2)
    const std::int64_t u = sz / m;
    const std::int64_t left = m * (u / 2) + (sz - m * u);
    const std::int64_t right = sz - left;
    prev_left = left;
    prev_right = right;
    if (left >= 2 * m) heap.emplace(left, -seq++);
    if (right >= 2 * m) heap.emplace(right, -seq++);
  }
  return total;
}

std::int64_t SplitTree::internal_count() const {
  if (leaf()) return 0;
  std::int64_t total = 1;
  for (const SplitTree& c : children) total += c.internal_count();
  return total;
}

std::int64_t SplitTree::cost_total() const {
  std::int64_t total = cost;
  for (const SplitTree& c : children) total += c.cost_total();
  return total;
}

namespace {

SplitTree build_tree(const CostTable& table, std::int64_t s, std::int64_t d) {
  SplitTree node;
  node.size = s;
  node.cost = g(s, table.m());
  if (d >= 1) {
    const auto [ad, as] = table.argmin(s, d);
    if (ad < 0 || as < 0) {
      throw std::logic_error("missing argmin while reconstructing tree");
    }
    node.children.push_back(build_tree(table, as, ad));
    node.children.push_back(build_tree(table, s - as, d - ad - 1));
  }
  return node;
}

}  // namespace

SplitTree reconstruct_tree(const CostTable& table) {
  if (table.best() == kInfeasible) {
    throw std::logic_error("cost table has no feasible solution");
  }
  return build_tree(table, table.n(), table.k());
}

namespace {

void text_walk(const SplitTree& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "size=" + std::to_string(node.size) +
         " g=" + std::to_string(node.cost) + "\n";
  for (const SplitTree& c : node.children) text_walk(c, depth + 1, out);
}

nlohmann::ordered_json json_walk(const SplitTree& node) {
  nlohmann::ordered_json j;
  j["size"] = node.size;
  j["cost"] = node.cost;
  j["children"] = nlohmann::ordered_json::array();
  for (const SplitTree& c : node.children) j["children"].push_back(json_walk(c));
  return j;
}

void dot_walk(const SplitTree& node, std::int64_t& counter,
              std::string& nodes, std::string& edges) {
  const std::int64_t id = counter++;
  nodes += "  n" + std::to_string(id) + " [label=\"size=" +
           std::to_string(node.size) + " g=" + std::to_string(node.cost) +
           "\"];\n";
  for (const SplitTree& c : node.children) {
    const std::int64_t child_id = counter;
    dot_walk(c, counter, nodes, edges);
    edges += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) +
             ";\n";
  }
}

}  // namespace

std::string tree_text(const SplitTree& tree) {
  std::string out;
  text_walk(tree, 0, out);
  return out;
}

std::string tree_json(const SplitTree& tree) {
  return json_walk(tree).dump();
}

std::string tree_dot(const SplitTree& tree) {
  std::string nodes, edges;
  std::int64_t counter = 0;
  dot_walk(tree, counter, nodes, edges);
  return "digraph split_tree {\n" + nodes + edges + "}\n";
}

namespace {

// Per-tree summary for the brute-force oracle: total g over all nodes plus
// the largest and smallest g(left)+g(right) over admissible final splits
// (internal nodes with two leaf children). Distinct trees sharing a summary
// collapse, which keeps the enumeration tractable without using the DP's
// size_set or symmetry shortcuts anywhere.
struct TreeSummary {
  std::int64_t cost = 0;
  std::int64_t max_bonus = -1;  // -1 on leaves
  std::int64_t min_bonus = -1;
  bool operator<(const TreeSummary& o) const {
    return std::tie(cost, max_bonus, min_bonus) <
           std::tie(o.cost, o.max_bonus, o.min_bonus);
  }
};

class BruteEnumerator {
 public:
  explicit BruteEnumerator(std::int64_t m) : m_(m) {}

  const std::vector<TreeSummary>& enumerate(std::int64_t n, std::int64_t k) {
    const auto key = std::make_pair(n, k);
    auto found = memo_.find(key);
    if (found != memo_.end()) return found->second;
    std::set<TreeSummary> out;
    if (k == 0) {
      out.insert({g(n, m_), -1, -1});
    } else {
      for (std::int64_t d = 0; d <= k - 1; ++d) {
        for (std::int64_t s = m_; s <= n - m_; ++s) {
          if (s < (d + 1) * m_ || n - s < (k - d) * m_) continue;
          const auto left = enumerate(s, d);
          const auto right = enumerate(n - s, k - d - 1);
          for (const TreeSummary& a : left) {
            for (const TreeSummary& b : right) {
              TreeSummary t;
              t.cost = g(n, m_) + a.cost + b.cost;
              if (d == 0 && k - 1 - d == 0) {
                t.max_bonus = t.min_bonus = g(s, m_) + g(n - s, m_);
              } else {
                t.max_bonus = std::max(a.max_bonus, b.max_bonus);
                t.min_bonus = kInfeasible;
                if (a.min_bonus >= 0) t.min_bonus = a.min_bonus;
                if (b.min_bonus >= 0)
                  t.min_bonus = std::min(t.min_bonus, b.min_bonus);
              }
              out.insert(t);
            }
          }
        }
      }
    }
    return memo_.emplace(key, std::vector<TreeSummary>(out.begin(), out.end()))
        .first->second;
  }

 private:
  std::int64_t m_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<TreeSummary>>
      memo_;
};

}  // namespace

std::int64_t brute_force(std::int64_t n, std::int64_t k, std::int64_t m,
                         BruteConvention convention) {
  require_basic(n, k, m);
  if (k == 0) {
    return convention == BruteConvention::AllNodes ? g(n, m) : 0;
  }
  BruteEnumerator enumerator(m);
  const std::vector<TreeSummary>& summaries = enumerator.enumerate(n, k);
  if (summaries.empty()) {
    throw std::logic_error("brute force found no trees for feasible input");
  }
  std::int64_t result =
      convention == BruteConvention::WorstMax ? -1 : kInfeasible;
  for (const TreeSummary& t : summaries) {
    switch (convention) {
      case BruteConvention::AllNodes:
        result = std::min(result, t.cost);
        break;
      case BruteConvention::Operational:
        result = std::min(result, t.cost - t.max_bonus);
        break;
      case BruteConvention::WorstMax:
        result = std::max(result, t.cost - t.min_bonus);
        break;
    }
  }
  return result;
}

}  // namespace binseg
