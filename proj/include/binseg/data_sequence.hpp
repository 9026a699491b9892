#pragma once

#include <cstdint>
#include <vector>

namespace binseg {

// Immutable data vector with prefix sums of x and x^2 so that the sum or
// mean-model loss of any segment costs O(1). prefix[0] == 0 and prefix[i]
// covers the first i values, hence a half-open range [first,last) sums to
// prefix[last] - prefix[first].
class DataSequence {
 public:
  // Rejects empty input and non-finite values.
  explicit DataSequence(std::vector<double> values);

  std::int64_t size() const {
    return static_cast<std::int64_t>(values_.size());
  }
  double value(std::int64_t i) const {
    return values_[static_cast<std::size_t>(i)];
  }
  const std::vector<double>& values() const { return values_; }
  double min_value() const { return min_value_; }

  double range_sum(std::int64_t first, std::int64_t last) const;
  double range_sum_sq(std::int64_t first, std::int64_t last) const;

  // Throws std::out_of_range unless 0 <= first < last <= size().
  void check_range(std::int64_t first, std::int64_t last) const;

 private:
  std::vector<double> values_;
  std::vector<double> prefix_sum_;
  std::vector<double> prefix_sum_sq_;
  double min_value_;
};

}  // namespace binseg
