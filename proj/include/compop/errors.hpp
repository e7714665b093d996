#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compop {

/// Input outside the mathematical domain of an operation (x <= 0 for
/// log-gamma, |a| >= 1 for a ball point, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Precondition on the arguments violated (mismatched sizes, |alpha| != m,
/// a point that is not a fixed point, ...).
class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Denominator <z, C> + d vanished at the evaluation point.
class singularity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation has no meaningful answer for this input (e.g. fixed points of
/// the identity map).
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact multi-index sum refused because the term count is too large.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series hit its term cap before the truncation certificate held.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double partial_sum, std::size_t terms)
      : std::runtime_error(what), partial_sum_(partial_sum), terms_(terms) {}

  double partial_sum() const noexcept { return partial_sum_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  std::size_t terms_;
};

}  // namespace compop
