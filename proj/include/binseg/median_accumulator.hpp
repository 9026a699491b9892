#pragma once

#include <cstdint>
#include <set>

namespace binseg {

// Streaming median plus absolute-deviation loss. The lower half of the
// inserted values lives in lower_ (its max is the running median candidate),
// the upper half in upper_; lower_ holds either the same number of elements
// as upper_ or one more. insert is O(log n), median and abs_loss are O(1).
class MedianAccumulator {
 public:
  void insert(double x) {
    if (lower_.empty() || x <= *lower_.rbegin()) {
      lower_.insert(x);
      lower_sum_ += x;
    } else {
      upper_.insert(x);
      upper_sum_ += x;
    }
    if (lower_.size() > upper_.size() + 1) {
      auto it = std::prev(lower_.end());
      const double v = *it;
      lower_.erase(it);
      lower_sum_ -= v;
      upper_.insert(v);
      upper_sum_ += v;
    } else if (upper_.size() > lower_.size()) {
      auto it = upper_.begin();
      const double v = *it;
      upper_.erase(it);
      upper_sum_ -= v;
      lower_.insert(v);
      lower_sum_ += v;
    }
  }

  std::int64_t size() const {
    return static_cast<std::int64_t>(lower_.size() + upper_.size());
  }

  // Even sizes take the midpoint of the two central order statistics; any
  // value between them minimizes the absolute loss, so abs_loss does not
  // depend on the choice.
  double median() const {
    if (lower_.size() > upper_.size()) return *lower_.rbegin();
    return (*lower_.rbegin() + *upper_.begin()) / 2.0;
  }

  // sum |x - median()| over everything inserted so far.
  double abs_loss() const {
    if (lower_.empty()) return 0.0;
    const double med = median();
    return (med * static_cast<double>(lower_.size()) - lower_sum_) +
           (upper_sum_ - med * static_cast<double>(upper_.size()));
  }

  void clear() {
    lower_.clear();
    upper_.clear();
    lower_sum_ = upper_sum_ = 0.0;
  }

 private:
  std::multiset<double> lower_;
  std::multiset<double> upper_;
  double lower_sum_ = 0.0;
  double upper_sum_ = 0.0;
};

}  // namespace binseg
