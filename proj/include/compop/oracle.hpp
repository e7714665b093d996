#pragma once

// Brute-force validators that never touch the closed forms in sequences.hpp:
// exact multi-index expansions of sphere integrals and Toeplitz quadratic
// forms, and seeded Monte-Carlo quadrature on the sphere and ball.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "compop/detail/series.hpp"
#include "compop/errors.hpp"
#include "compop/maps.hpp"
#include "compop/multiindex.hpp"
#include "compop/spaces.hpp"
#include "compop/special_fn.hpp"

namespace compop {

enum class OracleMethod { ExactSum, MonteCarlo };

struct OracleResult {
  double value = 0.0;
  /// (N-1)!(m+k)!/(N-1+m+k)! |a|^{2k} for sphere integrals, NaN otherwise.
  double bound = std::numeric_limits<double>::quiet_NaN();
  std::size_t n_terms = 0;
  OracleMethod method = OracleMethod::ExactSum;
};

/// Largest product of multi-index counts an exact sum will accept.
inline constexpr double kOracleTermGuard = 1e8;

namespace detail {

// z^α for a complex vector.
inline Complex monomial(const CVector& z, const MultiIndex& alpha) {
  Complex r = 1.0;
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    for (unsigned e = 0; e < alpha[i]; ++e) r *= z(static_cast<Eigen::Index>(i));
  }
  return r;
}

// Expansion of <z, v>^m = Σ_{|α|=m} (m!/α!) conj(v)^α z^α, listed in
// graded-lex order.
struct PowerExpansion {
  std::vector<MultiIndex> indices;
  std::vector<Complex> coeffs;  // (m!/α!) conj(v)^α
};

inline PowerExpansion power_expansion(const CVector& v, unsigned m) {
  PowerExpansion e;
  e.indices = enumerate(static_cast<std::size_t>(v.size()), m);
  const CVector vc = v.conjugate();
  e.coeffs.reserve(e.indices.size());
  for (const auto& alpha : e.indices) {
    e.coeffs.push_back(multinomial(m, alpha).convert_to<double>() * monomial(vc, alpha));
  }
  return e;
}

inline void check_guard(std::size_t N, unsigned k, unsigned m, const char* who) {
  const double cm = binomial(m + static_cast<unsigned>(N) - 1, static_cast<unsigned>(N) - 1).convert_to<double>();
  const double ck = binomial(k + static_cast<unsigned>(N) - 1, static_cast<unsigned>(N) - 1).convert_to<double>();
  if (cm * cm * ck * ck > kOracleTermGuard) {
    throw guard_error(std::string(who) + ": multi-index sum too large");
  }
}

}  // namespace detail

/// (N-1)! (m+k)! / (N-1+m+k)! · |a|^{2k}
inline double appendix_bound(std::size_t N, unsigned k, unsigned m, double a_norm) {
  if (N == 0) throw argument_error("appendix_bound: N must be positive");
  const auto n = static_cast<unsigned>(N);
  const BigRational c(factorial(n - 1) * factorial(m + k), factorial(n - 1 + m + k));
  return c.convert_to<double>() * std::pow(a_norm, 2.0 * k);
}

/// ∫_{∂B_N} |<ζ,a>^k <ζ,η>^m|² dσ(ζ) as the exact finite sum over
/// (γ, δ) with |γ|=|δ|=k and (α, β) with |α|=|β|=m, β = γ+α-δ, of
///   (k!/γ!)(k!/δ!)(m!/α!)(m!/β!) conj(a)^γ a^δ conj(η)^α η^β
///     · (N-1)!(γ+α)!/(N-1+m+k)!
inline OracleResult sphere_inner_product_exact(std::size_t N, unsigned k, unsigned m, const CVector& a,
                                               const CVector& eta) {
  if (N == 0 || static_cast<std::size_t>(a.size()) != N || static_cast<std::size_t>(eta.size()) != N) {
    throw argument_error("sphere_inner_product_exact: dimension mismatch");
  }
  if (std::abs(eta.norm() - 1.0) > 1e-12) throw argument_error("sphere_inner_product_exact: |eta| must be 1");
  detail::check_guard(N, k, m, "sphere_inner_product_exact");

  const auto ka = detail::power_expansion(a, k);    // <ζ,a>^k
  const auto me = detail::power_expansion(eta, m);  // <ζ,η>^m
  std::map<MultiIndex, double> measure;             // ∫|ζ^μ|² dσ keyed by μ = γ+α

  std::complex<double> acc = 0.0;
  std::size_t terms = 0;
  for (std::size_t gi = 0; gi < ka.indices.size(); ++gi) {
    for (std::size_t ai = 0; ai < me.indices.size(); ++ai) {
      const MultiIndex mu = ka.indices[gi] + me.indices[ai];
      auto it = measure.find(mu);
      if (it == measure.end()) it = measure.emplace(mu, sphere_monomial_integral(N, mu)).first;
      const Complex left = ka.coeffs[gi] * me.coeffs[ai];
      for (std::size_t di = 0; di < ka.indices.size(); ++di) {
        const MultiIndex& delta = ka.indices[di];
        if (!delta.componentwise_leq(mu)) continue;
        const MultiIndex beta = mu - delta;
        // β is in the graded-lex list of order m; locate it by search.
        const auto bi = std::lower_bound(me.indices.begin(), me.indices.end(), beta,
                                         [](const MultiIndex& x, const MultiIndex& y) { return x > y; });
        const Complex right = ka.coeffs[di] * me.coeffs[static_cast<std::size_t>(bi - me.indices.begin())];
        acc += left * std::conj(right) * it->second;
        ++terms;
      }
    }
  }
  if (std::abs(acc.imag()) > 1e-12 * std::max(1.0, std::abs(acc.real()))) {
    throw argument_error("sphere_inner_product_exact: imaginary residue too large");
  }
  return {acc.real(), appendix_bound(N, k, m, a.norm()), terms, OracleMethod::ExactSum};
}

/// ‖<z, u>^m‖² in `space` by monomial expansion.
inline double power_norm_sq(const SpaceSpec& space, const CVector& u, unsigned m) {
  const auto e = detail::power_expansion(u, m);
  double s = 0.0;
  for (std::size_t i = 0; i < e.indices.size(); ++i) s += std::norm(e.coeffs[i]) * monomial_norm_sq(space, e.indices[i]);
  return s;
}

/// <T_f e_m, e_m> with f(z) = (|1-<z,a>|²/(1-|a|²))^t and
/// e_m = <z, a/|a|>^m / ‖<z, a/|a|>^m‖, by expanding
///   f = (1-|a|²)^{-t} Σ_{k,l} binom(t,k) binom(t,l) (-1)^{k+l} <z,a>^k conj(<z,a>)^l
/// into monomials and applying the co-analytic projection term by term.
/// The (k, l) blocks with k != l vanish: P(...) is then homogeneous of degree
/// m + k - l and orthogonal to e_m. The k-sum stops once the geometric tail
/// estimate from successive blocks falls below 1e-16 of the total.
inline double toeplitz_form_exact(const SpaceSpec& space, const CVector& a, unsigned m) {
  const std::size_t N = space.dim();
  if (static_cast<std::size_t>(a.size()) != N) throw argument_error("toeplitz_form_exact: dimension mismatch");
  const double r = a.norm();
  if (!(r > 0.0 && r < 1.0)) throw domain_error("toeplitz_form_exact: need 0 < |a| < 1");
  const double t = exponent_t(space);
  const CVector u = a / r;
  const auto em = detail::power_expansion(u, m);  // <z,u>^m
  const double cm2 = 1.0 / power_norm_sq(space, u, m);

  // Block k: Σ_{γ,δ,α} (k!/γ!)(k!/δ!)(m!/α!) conj(a)^γ a^δ conj(u)^α
  //            · P(z̄^δ z^{γ+α}) paired with <z,u>^m.
  auto block = [&](unsigned k) {
    detail::check_guard(N, k, m, "toeplitz_form_exact");
    const auto ka = detail::power_expansion(a, k);
    Complex acc = 0.0;
    for (std::size_t gi = 0; gi < ka.indices.size(); ++gi) {
      for (std::size_t ai = 0; ai < em.indices.size(); ++ai) {
        const MultiIndex top = ka.indices[gi] + em.indices[ai];
        const Complex left = ka.coeffs[gi] * em.coeffs[ai];
        for (std::size_t di = 0; di < ka.indices.size(); ++di) {
          const MultiIndex& bottom = ka.indices[di];
          const double pc = projection_coeff(space, top, bottom);
          if (pc == 0.0) continue;
          const MultiIndex beta = top - bottom;
          const auto bi = std::lower_bound(em.indices.begin(), em.indices.end(), beta,
                                           [](const MultiIndex& x, const MultiIndex& y) { return x > y; });
          const Complex target = em.coeffs[static_cast<std::size_t>(bi - em.indices.begin())];
          // conj(<z,a>)^k contributes conj of the coefficient of z^δ.
          acc += left * std::conj(ka.coeffs[di]) * pc * std::conj(target) * monomial_norm_sq(space, beta);
        }
      }
    }
    return acc.real();
  };

  detail::CompensatedSum sum;
  double prev = 0.0;
  const bool finite = detail::is_integer(t);
  for (unsigned k = 0;; ++k) {
    if (k > 100000) throw convergence_error("toeplitz_form_exact: no convergence", sum.value(), k);
    const double bk = real_binomial(t, k);
    if (finite && bk == 0.0) break;
    const double v = bk * bk * block(k);
    sum.add(v);
    if (!finite && k > t + 1.0 && prev != 0.0) {
      const double q = std::abs(v / prev);
      if (q < 1.0 && std::abs(v) * q / (1.0 - q) <= detail::kSeriesRelTol * std::abs(sum.value())) break;
    }
    prev = v;
  }
  return cm2 * sum.value() / std::pow(1.0 - r * r, t);
}

/// Aggregates the forward norm ‖C_{φ_a} e_m‖² on H²(B_N) from exact sphere
/// integrals: (1-|a|²)^N C_m² Σ_k ((N)_k/k!)² ∫|<ζ,a>^k <ζ,a/|a|>^m|² dσ.
inline double hardy_forward_norm_exact(std::size_t N, const CVector& a, unsigned m) {
  const double r = a.norm();
  if (!(r > 0.0 && r < 1.0)) throw domain_error("hardy_forward_norm_exact: need 0 < |a| < 1");
  const CVector u = a / r;
  const SpaceSpec hardy = SpaceSpec::hardy(N);
  const double cm2 = 1.0 / power_norm_sq(hardy, u, m);
  const double Nd = static_cast<double>(N);
  detail::CompensatedSum sum;
  double coeff = 1.0;  // (N)_k / k!
  double prev = 0.0;
  for (unsigned k = 0;; ++k) {
    if (k > 0) coeff *= (Nd + k - 1.0) / k;
    const double v = coeff * coeff * sphere_inner_product_exact(N, k, m, a, u).value;
    sum.add(v);
    if (k > 1 && prev != 0.0) {
      const double q = std::abs(v / prev);
      if (q < 1.0 && std::abs(v) * q / (1.0 - q) <= detail::kSeriesRelTol * std::abs(sum.value())) break;
    }
    if (k > 10000) throw convergence_error("hardy_forward_norm_exact: no convergence", sum.value(), k);
    prev = v;
  }
  return std::pow(1.0 - r * r, Nd) * cm2 * sum.value();
}

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
};

namespace detail {

// Welford accumulation of mean and standard error.
class RunningMoments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  MonteCarloEstimate result() const {
    const double var = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    return {mean_, std::sqrt(var / static_cast<double>(n_)), n_};
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace detail

using SphereIntegrand = std::function<double(const CVector&)>;

/// Mean of `integrand` over `samples` uniform points of ∂B_N (normalized
/// complex Gaussians from a mt19937_64 seeded with `seed`).
inline MonteCarloEstimate monte_carlo_sphere(std::size_t N, const SphereIntegrand& integrand, std::size_t samples,
                                             std::uint64_t seed) {
  if (samples < 1000) throw argument_error("monte_carlo_sphere: need at least 1000 samples");
  if (N == 0) throw argument_error("monte_carlo_sphere: N must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(N);
  CVector z(n);
  detail::RunningMoments mom;
  for (std::size_t s = 0; s < samples; ++s) {
    double nz = 0.0;
    do {
      for (Eigen::Index i = 0; i < n; ++i) z(i) = Complex(normal(gen), normal(gen));
      nz = z.norm();
    } while (nz == 0.0);
    mom.add(integrand(z / nz));
  }
  return mom.result();
}

/// Mean of `integrand` against dv_s on B_N: |z|² ~ Beta(N, s+1) with a
/// uniform direction, which is exactly the law of dv_s.
inline MonteCarloEstimate monte_carlo_ball(std::size_t N, double s, const SphereIntegrand& integrand,
                                           std::size_t samples, std::uint64_t seed) {
  if (samples < 1000) throw argument_error("monte_carlo_ball: need at least 1000 samples");
  if (N == 0 || !(s > -1.0)) throw argument_error("monte_carlo_ball: need N >= 1 and s > -1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::gamma_distribution<double> ga(static_cast<double>(N), 1.0);
  std::gamma_distribution<double> gb(s + 1.0, 1.0);
  const auto n = static_cast<Eigen::Index>(N);
  CVector z(n);
  detail::RunningMoments mom;
  for (std::size_t i = 0; i < samples; ++i) {
    double nz = 0.0;
    do {
      for (Eigen::Index j = 0; j < n; ++j) z(j) = Complex(normal(gen), normal(gen));
      nz = z.norm();
    } while (nz == 0.0);
    const double x = ga(gen);
    const double y = gb(gen);
    const double rho = std::sqrt(x / (x + y));
    mom.add(integrand(z * (rho / nz)));
  }
  return mom.result();
}

}  // namespace compop
