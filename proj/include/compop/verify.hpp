#pragma once

// Identity suites: each compares two independent computations of the same
// quantity and records every mismatch.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "compop/multiindex.hpp"
#include "compop/oracle.hpp"
#include "compop/sequences.hpp"
#include "compop/spaces.hpp"
#include "compop/special_fn.hpp"

namespace compop {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }

  void check_rel(double got, double want, double tol, const std::string& what) {
    const double err = std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
    std::ostringstream os;
    os.precision(17);
    os << what << ": got " << got << ", want " << want << ", rel err " << err;
    check(err <= tol, os.str());
  }
};

/// (1-x)^t F(t,t;1;x) = (1-x)^{1-t} F(1-t,1-t;1;x).
inline SuiteResult verify_euler_transform() {
  SuiteResult res{"euler transform", 0, {}};
  for (double t : {1.5, 2.0, 3.0, 4.7}) {
    for (int i = 1; i <= 18; ++i) {
      const double x = 0.05 * i;
      const double direct = std::pow(1.0 - x, t) * gauss_2f1_unit({t, t, 1.0, x});
      const double euler = std::pow(1.0 - x, 1.0 - t) * gauss_2f1_unit({1.0 - t, 1.0 - t, 1.0, x});
      res.check_rel(euler, direct, 1e-12, "t=" + std::to_string(t) + " x=" + std::to_string(x));
    }
  }
  return res;
}

/// (m+k)!/m! = Σ a_i M_{k-i}(m), exactly.
inline SuiteResult verify_falling_decomposition() {
  SuiteResult res{"falling-factorial decomposition", 0, {}};
  for (unsigned k = 1; k <= 12; ++k) {
    const auto dec = falling_decomposition(k);
    res.check(dec.coeffs.front() == 1, "a_0 = 1 for k=" + std::to_string(k));
    res.check(dec.coeffs.back() == factorial(k), "a_k = k! for k=" + std::to_string(k));
    for (unsigned m = 0; m <= 20; ++m) {
      const BigInt lhs = factorial(m + k) / factorial(m);
      res.check(dec.evaluate(m) == lhs, "k=" + std::to_string(k) + " m=" + std::to_string(m));
    }
  }
  const auto k2 = falling_decomposition(2);
  res.check(k2.coeffs == std::vector<BigInt>{1, 4, 2}, "k=2 coefficients are [1,4,2]");
  return res;
}

namespace detail {

// ∫_{B_n} |w^β|² dv_w in polar form: normalizing constant of dv_w times
// 2n∫ρ^{2n-1+2|β|}(1-ρ²)^w dρ times the sphere moment.
inline double radial_ball_moment(std::size_t n, double w, const MultiIndex& beta) {
  const double nd = static_cast<double>(n);
  const double b = beta.order();
  const double norm_const = std::exp(log_gamma(nd + w + 1.0) - log_gamma(nd + 1.0) - log_gamma(w + 1.0));
  const double radial = nd * boost::math::beta(nd + b, w + 1.0);
  const BigRational sphere(factorial(static_cast<unsigned>(n) - 1) * beta.factorial(),
                           factorial(static_cast<unsigned>(n) - 1 + beta.order()));
  return norm_const * radial * sphere.convert_to<double>();
}

}  // namespace detail

/// Integrals of |w^β|², w in the first k coordinates, over B_N (or ∂B_N)
/// against the slice measure on B_k; the exponent t must be unchanged.
inline SuiteResult verify_slice_integration() {
  SuiteResult res{"slice integration", 0, {}};
  for (std::size_t N = 2; N <= 3; ++N) {
    std::vector<SpaceSpec> spaces{SpaceSpec::hardy(N)};
    for (double s : {-0.5, 0.0, 1.0}) spaces.push_back(SpaceSpec::bergman(N, s));
    for (const auto& sp : spaces) {
      for (std::size_t k = 1; k < N; ++k) {
        const SpaceSpec reduced = slice_weight(sp, k);
        std::ostringstream tag;
        tag << sp << " k=" << k;
        res.check(exponent_t(sp) == exponent_t(reduced), tag.str() + " exponent preserved");
        for (unsigned order = 0; order <= 6; ++order) {
          for (const auto& beta : enumerate(k, order)) {
            const MultiIndex full = beta.resized(N);
            const double ambient = monomial_norm_sq(sp, full);
            const double slice_closed = monomial_norm_sq(reduced, beta);
            const double slice_radial = detail::radial_ball_moment(k, reduced.weight(), beta);
            std::ostringstream b;
            b << tag.str() << " beta=" << beta;
            res.check_rel(slice_closed, ambient, 1e-12, b.str() + " closed");
            res.check_rel(slice_radial, ambient, 1e-12, b.str() + " radial");
            if (!sp.is_hardy()) {
              const double ambient_radial = detail::radial_ball_moment(N, sp.weight(), full);
              res.check_rel(ambient_radial, ambient, 1e-12, b.str() + " ambient radial");
            }
          }
        }
      }
    }
  }
  return res;
}

/// Multi-index brute force against the closed-form sequences.
inline SuiteResult verify_oracle_equivalence() {
  SuiteResult res{"oracle equivalence", 0, {}};
  std::mt19937_64 gen(20240101);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (double t : {2.0, 3.5}) {
    const SpaceSpec sp = t == 2.0 ? SpaceSpec::hardy(2) : SpaceSpec::bergman(2, t - 3.0);
    for (double r : {0.3, 0.6}) {
      // Generic direction so no monomial coefficient vanishes.
      const double th = angle(gen);
      CVector a(2);
      a << std::polar(r * std::cos(0.7), th), std::polar(r * std::sin(0.7), angle(gen));
      for (unsigned m = 0; m <= 6; ++m) {
        const std::string tag = "t=" + std::to_string(t) + " r=" + std::to_string(r) + " m=" + std::to_string(m);
        res.check_rel(toeplitz_form_exact(sp, a, m), adjoint_form(t, r, m), 1e-12, tag + " adjoint");
        if (sp.is_hardy()) {
          res.check_rel(hardy_forward_norm_exact(2, a, m), forward_norm_sq(t, r, m), 1e-10, tag + " forward");
        }
      }
    }
  }
  return res;
}

inline std::vector<SuiteResult> run_all_suites() {
  return {verify_euler_transform(), verify_falling_decomposition(), verify_slice_integration(),
          verify_oracle_equivalence()};
}

}  // namespace compop
