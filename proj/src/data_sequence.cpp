#include "binseg/data_sequence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace binseg {

DataSequence::DataSequence(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("data sequence must not be empty");
  }
  const std::size_t n = values_.size();
  prefix_sum_.resize(n + 1, 0.0);
  prefix_sum_sq_.resize(n + 1, 0.0);
  min_value_ = values_[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double x = values_[i];
    if (!std::isfinite(x)) {
      throw std::invalid_argument("data value at index " + std::to_string(i) +
                                  " is not finite");
    }
    prefix_sum_[i + 1] = prefix_sum_[i] + x;
    prefix_sum_sq_[i + 1] = prefix_sum_sq_[i] + x * x;
    if (x < min_value_) min_value_ = x;
  }
}

void DataSequence::check_range(std::int64_t first, std::int64_t last) const {
  if (first < 0 || last > size() || first >= last) {
    throw std::out_of_range("segment [" + std::to_string(first) + "," +
                            std::to_string(last) + ") out of range for " +
                            std::to_string(size()) + " data points");
  }
}

double DataSequence::range_sum(std::int64_t first, std::int64_t last) const {
  check_range(first, last);
  return prefix_sum_[static_cast<std::size_t>(last)] -
         prefix_sum_[static_cast<std::size_t>(first)];
}

double DataSequence::range_sum_sq(std::int64_t first, std::int64_t last) const {
  check_range(first, last);
  return prefix_sum_sq_[static_cast<std::size_t>(last)] -
         prefix_sum_sq_[static_cast<std::size_t>(first)];
}

}  // namespace binseg
