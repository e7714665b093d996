#pragma once

// Quadratic forms along the normalized sequence
//     e_n = sqrt(Γ(t+n)/(Γ(t) n!)) <z, a/|a|>^n
// for an automorphism with φ^{-1}(0) = a, r = |a|:
//
//   forward  ‖C_φ e_n‖²    = (1-r²)^t  Σ_k ((t)_k/k!)²  r^{2k} R(t,n,k)
//   adjoint  <T_f e_n,e_n> = (1-r²)^-t Σ_k binom(t,k)² r^{2k} R(t,n,k)
//
// with R(t,n,k) = Γ(t+n)Γ(n+k+1) / (Γ(n+1)Γ(t+n+k)) -> 1. The disk and ball
// cases differ only through t, so one implementation serves all spaces.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include "compop/detail/series.hpp"
#include "compop/errors.hpp"
#include "compop/maps.hpp"
#include "compop/spaces.hpp"
#include "compop/special_fn.hpp"

namespace compop {

namespace detail {

inline void check_t_r(double t, double r, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) throw domain_error(std::string(who) + ": need t > 0");
  if (!(r >= 0.0 && r < 1.0)) throw domain_error(std::string(who) + ": need 0 <= r < 1");
}

// Ratio R(t,n,k+1)/R(t,n,k) = (n+k+1)/(t+n+k).
inline double ratio_step(double t, double n, double k) { return (n + k + 1.0) / (t + n + k); }

// max(1, x) for factors that decrease in k once above 1.
inline double at_least_one(double x) { return std::max(1.0, x); }

}  // namespace detail

/// R(t,n,k) = Π_{j<k} (n+1+j)/(t+n+j).
inline double ratio_factor(double t, unsigned long n, unsigned k) {
  if (!(t > 0.0)) throw domain_error("ratio_factor: need t > 0");
  const double nn = static_cast<double>(n);
  double prod = 1.0;
  for (unsigned j = 0; j < k; ++j) prod *= (nn + 1.0 + j) / (t + nn + j);
  return prod;
}

/// ‖C_φ e_n‖² for finite n.
inline double forward_norm_sq(double t, double r, unsigned long n) {
  detail::check_t_r(t, r, "forward_norm_sq");
  const double x = r * r;
  const double nn = static_cast<double>(n);
  double coeff = 1.0;  // ((t)_k / k!)² x^k
  double R = 1.0;
  auto term = [&](std::size_t k) -> std::optional<double> {
    if (k > 0) {
      const double j = static_cast<double>(k - 1);
      const double c = (t + j) / (j + 1.0);
      coeff *= c * c * x;
      R *= detail::ratio_step(t, nn, j);
    }
    return coeff * R;
  };
  auto bound = [&](std::size_t k) {
    const double j = static_cast<double>(k);
    const double c = (t + j) / (j + 1.0);
    return x * detail::at_least_one(c * c) * detail::at_least_one(detail::ratio_step(t, nn, j));
  };
  const auto s = detail::sum_series(term, bound, "forward_norm_sq");
  return std::pow(1.0 - x, t) * s.value;
}

/// <T_f e_n, e_n> = ‖C_φ* e_n‖² + o(1). Finite sum when t is an integer.
inline double adjoint_form(double t, double r, unsigned long n) {
  detail::check_t_r(t, r, "adjoint_form");
  const double x = r * r;
  const double nn = static_cast<double>(n);
  double coeff = 1.0;  // binom(t,k)² x^k
  double R = 1.0;
  auto term = [&](std::size_t k) -> std::optional<double> {
    if (k > 0) {
      const double j = static_cast<double>(k - 1);
      const double c = (t - j) / (j + 1.0);
      coeff *= c * c * x;
      R *= detail::ratio_step(t, nn, j);
    }
    if (coeff == 0.0) return std::nullopt;
    return coeff * R;
  };
  auto bound = [&](std::size_t k) {
    const double j = static_cast<double>(k);
    const double c = (t - j) / (j + 1.0);
    const double cc = j < t ? detail::at_least_one(c * c) : 1.0;
    return x * cc * detail::at_least_one(detail::ratio_step(t, nn, j));
  };
  const auto s = detail::sum_series(term, bound, "adjoint_form");
  return s.value / std::pow(1.0 - x, t);
}

/// lim ‖C_φ e_n‖² = (1-r²)^{1-t} F(1-t, 1-t; 1; r²)   (Euler-transformed form).
inline double forward_limit(double t, double r) {
  detail::check_t_r(t, r, "forward_limit");
  const double x = r * r;
  return std::pow(1.0 - x, 1.0 - t) * gauss_2f1_unit({1.0 - t, 1.0 - t, 1.0, x});
}

/// lim ‖C_φ e_n‖² = (1-r²)^t F(t, t; 1; r²)   (untransformed series).
inline double forward_limit_direct(double t, double r) {
  detail::check_t_r(t, r, "forward_limit_direct");
  const double x = r * r;
  return std::pow(1.0 - x, t) * gauss_2f1_unit({t, t, 1.0, x});
}

/// lim <T_f e_n, e_n> = (1-r²)^{-t} Σ_k binom(t,k)² r^{2k}.
inline double adjoint_limit(double t, double r) {
  detail::check_t_r(t, r, "adjoint_limit");
  const double x = r * r;
  double coeff = 1.0;
  auto term = [&](std::size_t k) -> std::optional<double> {
    if (k > 0) {
      const double j = static_cast<double>(k - 1);
      const double c = (t - j) / (j + 1.0);
      coeff *= c * c * x;
    }
    if (coeff == 0.0) return std::nullopt;
    return coeff;
  };
  auto bound = [&](std::size_t k) {
    const double j = static_cast<double>(k);
    const double c = (t - j) / (j + 1.0);
    return x * (j < t ? detail::at_least_one(c * c) : 1.0);
  };
  const auto s = detail::sum_series(term, bound, "adjoint_limit");
  return s.value / std::pow(1.0 - x, t);
}

/// lim (<T_f e_n, e_n> - ‖C_φ e_n‖²)
///   = (1-r²)^{-t} [2t r² + Σ_{k>=2} ((t-1)(t-2)...(t-k+1)/k!)² 2kt r^{2k}]
///   = (1-r²)^{-t} 2t Σ_{k>=1} binom(t-1,k-1)² r^{2k} / k.
inline double gap_limit(double t, double r) {
  detail::check_t_r(t, r, "gap_limit");
  const double x = r * r;
  if (x == 0.0) return 0.0;
  double coeff = x;  // binom(t-1,k-1)² x^k, from k = 1
  auto term = [&](std::size_t i) -> std::optional<double> {
    const double k = static_cast<double>(i + 1);
    if (i > 0) {
      const double c = (t - k + 1.0) / (k - 1.0);  // binom(t-1,k-1)/binom(t-1,k-2)
      coeff *= c * c * x;
    }
    if (coeff == 0.0) return std::nullopt;
    return coeff / k;
  };
  auto bound = [&](std::size_t i) {
    const double k = static_cast<double>(i + 1);
    const double c = (t - k) / k;
    return x * (k < t ? detail::at_least_one(c * c) : 1.0);
  };
  const auto s = detail::sum_series(term, bound, "gap_limit");
  return 2.0 * t * s.value / std::pow(1.0 - x, t);
}

// Per-space wrappers: the space enters only through t.
inline double forward_limit(const SpaceSpec& space, double r) { return forward_limit(exponent_t(space), r); }
inline double adjoint_limit(const SpaceSpec& space, double r) { return adjoint_limit(exponent_t(space), r); }
inline double gap_limit(const SpaceSpec& space, double r) { return gap_limit(exponent_t(space), r); }
inline double forward_norm_sq(const SpaceSpec& space, double r, unsigned long n) {
  return forward_norm_sq(exponent_t(space), r, n);
}
inline double adjoint_form(const SpaceSpec& space, double r, unsigned long n) {
  return adjoint_form(exponent_t(space), r, n);
}

struct SequenceReport {
  double t = 0.0;
  double r = 0.0;
  unsigned long n = 0;
  double forward = 0.0;
  double adjoint = 0.0;
  double gap = 0.0;
  double forward_limit = 0.0;
  double adjoint_limit = 0.0;
  double gap_limit = 0.0;
};

inline SequenceReport sequence_report(double t, double r, unsigned long n) {
  SequenceReport rep;
  rep.t = t;
  rep.r = r;
  rep.n = n;
  rep.forward = forward_norm_sq(t, r, n);
  rep.adjoint = adjoint_form(t, r, n);
  rep.gap = rep.adjoint - rep.forward;
  rep.forward_limit = compop::forward_limit(t, r);
  rep.adjoint_limit = compop::adjoint_limit(t, r);
  rep.gap_limit = compop::gap_limit(t, r);
  return rep;
}

/// Pointwise kernel lower bound for ‖[C_φ*, C_φ] k_p‖:
///   ((1-|p|²)/(1-|φ(p)|²))^t - |g(p)|² ‖h‖²_∞ ((1-|p|²)/(1-|σ(p)|²))^t
/// with ‖h‖_∞ = (|C| + |d|)^t.
inline double kernel_gap_lower(const LinearFractionalMap& phi, const SpaceSpec& space, const CVector& p) {
  if (phi.dim() != space.dim() || static_cast<std::size_t>(p.size()) != phi.dim()) {
    throw argument_error("kernel_gap_lower: dimension mismatch");
  }
  const double p2 = p.squaredNorm();
  if (!(p2 < 1.0)) throw domain_error("kernel_gap_lower: need |p| < 1");
  const CowenSymbols cs = adjoint_map(phi, space);
  const double phi2 = evaluate(phi, p).squaredNorm();
  const double sig2 = evaluate(cs.sigma, p).squaredNorm();
  if (!(phi2 < 1.0)) throw domain_error("kernel_gap_lower: need |phi(p)| < 1");
  if (!(sig2 < 1.0)) throw domain_error("kernel_gap_lower: need |sigma(p)| < 1");
  const double t = cs.t;
  const double g2 = std::pow(std::abs(inner(p, cs.g_vector) + cs.g_scalar), -2.0 * t);
  const double h_sup = cs.h_sup();
  const double first = std::pow((1.0 - p2) / (1.0 - phi2), t);
  const double second = g2 * h_sup * h_sup * std::pow((1.0 - p2) / (1.0 - sig2), t);
  return first - second;
}

}  // namespace compop
