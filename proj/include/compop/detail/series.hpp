#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "compop/errors.hpp"

namespace compop::detail {

inline constexpr double kSeriesRelTol = 1e-16;
inline constexpr std::size_t kSeriesCap = 1'000'000;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct SeriesSum {
  double value = 0.0;
  std::size_t terms = 0;
};

/// Sums term(0) + term(1) + ... until the geometric tail certificate holds.
///
/// `term(k)` is called with k = 0, 1, 2, ... in order and returns the k-th
/// term, or std::nullopt once the series has terminated exactly (all later
/// terms are zero). `ratio_bound(k)` must return q with
/// |term(j+1)| <= q |term(j)| for every j >= k; the loop stops after term k
/// when q < 1 and |term(k)| q / (1 - q) <= rel_tol * |partial sum|.
template <class Term, class RatioBound>
SeriesSum sum_series(Term&& term, RatioBound&& ratio_bound, const char* name,
                     double rel_tol = kSeriesRelTol, std::size_t cap = kSeriesCap) {
  CompensatedSum acc;
  for (std::size_t k = 0; k < cap; ++k) {
    const std::optional<double> tk = term(k);
    if (!tk) return {acc.value(), k};
    acc.add(*tk);
    if (!std::isfinite(*tk)) {
      throw convergence_error(std::string(name) + ": non-finite term", acc.value(), k + 1);
    }
    const double q = ratio_bound(k);
    if (q < 1.0) {
      const double tail = std::abs(*tk) * q / (1.0 - q);
      if (tail <= rel_tol * std::abs(acc.value())) return {acc.value(), k + 1};
    }
  }
  throw convergence_error(std::string(name) + ": term cap reached before convergence",
                          acc.value(), cap);
}

}  // namespace compop::detail
