#pragma once

// Gamma ratios, shifted factorials, generalized binomials and the Gauss
// hypergeometric series on [0, 1). Everything here is pure and reentrant.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "compop/detail/series.hpp"
#include "compop/errors.hpp"

namespace compop {

namespace detail {

inline bool is_integer(double x) noexcept { return std::isfinite(x) && x == std::nearbyint(x); }

inline bool is_nonpositive_integer(double x) noexcept { return is_integer(x) && x <= 0.0; }

// Integer gaps up to this size are evaluated as explicit products.
inline constexpr double kMaxProductGap = 64.0;

}  // namespace detail

/// ln Γ(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw domain_error("log_gamma: argument must be positive and finite");
  }
  return boost::math::lgamma(x);
}

/// Γ(x) / Γ(y) for x, y > 0. Small integer gaps use an exact product so that
/// ratios like Γ(t+n)/Γ(t+n+k) stay accurate for n in the millions.
inline double gamma_ratio(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw domain_error("gamma_ratio: arguments must be positive and finite");
  }
  const double gap = x - y;
  if (detail::is_integer(gap) && std::abs(gap) <= detail::kMaxProductGap) {
    // Γ(y+j)/Γ(y) = y (y+1) ... (y+j-1)
    const int j = static_cast<int>(std::abs(gap));
    const double lo = gap >= 0 ? y : x;
    double prod = 1.0;
    for (int i = 0; i < j; ++i) prod *= lo + i;
    return gap >= 0 ? prod : 1.0 / prod;
  }
  return std::exp(log_gamma(x) - log_gamma(y));
}

/// Shifted factorial (c)_k = c (c+1) ... (c+k-1), (c)_0 = 1.
inline double pochhammer(double c, unsigned k) noexcept {
  double prod = 1.0;
  for (unsigned i = 0; i < k; ++i) prod *= c + i;
  return prod;
}

/// Generalized binomial c (c-1) ... (c-k+1) / k!.
inline double real_binomial(double c, unsigned k) noexcept {
  // Multiply before dividing: for integer c every intermediate is the exact
  // integer C(c, i+1) (i+1), so the division is exact too.
  double prod = 1.0;
  for (unsigned i = 0; i < k; ++i) {
    prod = prod * (c - i) / (i + 1);
  }
  return prod;
}

struct HypParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double x = 0.0;
};

/// ₂F₁(a, b; c; x) for x in [0, 1) by direct summation.
///
/// Terminating series (a or b a non-positive integer) are summed exactly.
/// Otherwise summation stops once the geometric tail bound drops below
/// 1e-16 (1 + |sum|); convergence_error after 10^6 terms.
inline double gauss_2f1_unit(const HypParams& p) {
  if (!(p.x >= 0.0 && p.x < 1.0)) throw domain_error("gauss_2f1_unit: x must lie in [0, 1)");
  if (detail::is_nonpositive_integer(p.c)) {
    throw domain_error("gauss_2f1_unit: c must not be a non-positive integer");
  }
  std::optional<unsigned> degree;
  for (double e : {p.a, p.b}) {
    if (detail::is_nonpositive_integer(e)) {
      const auto d = static_cast<unsigned>(-e);
      degree = degree ? std::min(*degree, d) : d;
    }
  }

  if (degree) {
    detail::CompensatedSum acc;
    double term = 1.0;
    for (unsigned k = 0; k <= *degree; ++k) {
      acc.add(term);
      term *= (p.a + k) * (p.b + k) / ((p.c + k) * (k + 1.0)) * p.x;
    }
    return acc.value();
  }

  const double abs_a = std::abs(p.a);
  const double abs_b = std::abs(p.b);
  const double abs_c = std::abs(p.c);
  // For j > |c|: |(a+j)(b+j)/((c+j)(j+1))| <= (j+|a|)(j+|b|)/((j-|c|) j),
  // and the right side decreases in j.
  auto ratio_bound = [&](double j) {
    if (j < 1.0 || j <= abs_c) return std::numeric_limits<double>::infinity();
    return p.x * (j + abs_a) * (j + abs_b) / ((j - abs_c) * j);
  };

  detail::CompensatedSum acc;
  double term = 1.0;
  for (std::size_t k = 0; k < detail::kSeriesCap; ++k) {
    const double j = static_cast<double>(k);
    acc.add(term);
    if (!std::isfinite(term)) {
      throw convergence_error("gauss_2f1_unit: non-finite term", acc.value(), k + 1);
    }
    const double scale = detail::kSeriesRelTol * (1.0 + std::abs(acc.value()));
    const double q = ratio_bound(j);
    if (q < 1.0 && std::abs(term) <= scale && std::abs(term) * q / (1.0 - q) <= scale) {
      return acc.value();
    }
    term *= (p.a + j) * (p.b + j) / ((p.c + j) * (j + 1.0)) * p.x;
  }
  throw convergence_error("gauss_2f1_unit: term cap reached before convergence", acc.value(),
                          detail::kSeriesCap);
}

}  // namespace compop
