#pragma once

#include <cstddef>
#include <functional>

namespace levyreflect {

/// Runs body(i) for i in [0, n) on `workers` threads. Each index is visited
/// exactly once; the first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace levyreflect
