#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace spincat {

/// Kahan-compensated running sum.
template <typename T>
class CompensatedSum {
 public:
  void add(const T& x) {
    const T y = x - carry_;
    const T t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  const T& value() const { return sum_; }

 private:
  T sum_{};
  T carry_{};
};

/// Worker count: SPINCAT_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
/// write results into preallocated slots, so output does not depend on the
/// degree of parallelism. If any call throws, the exception from the lowest
/// failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace spincat
