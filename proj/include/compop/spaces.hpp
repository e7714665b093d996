#pragma once

// Hardy space H²(B_N) and weighted Bergman spaces A²_s(B_N): the kernel
// exponent t, monomial norms, Toeplitz co-analytic projections P(z̄^δ z^γ),
// and the slice-integration weight change B_N -> B_k.

#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>

#include "compop/errors.hpp"
#include "compop/multiindex.hpp"
#include "compop/special_fn.hpp"

namespace compop {

enum class SpaceKind { Hardy, Bergman };

class SpaceSpec {
 public:
  static SpaceSpec hardy(std::size_t N) { return SpaceSpec(N, SpaceKind::Hardy, 0.0); }

  static SpaceSpec bergman(std::size_t N, double s) {
    if (!(s > -1.0) || !std::isfinite(s)) throw domain_error("SpaceSpec: Bergman weight must satisfy s > -1");
    return SpaceSpec(N, SpaceKind::Bergman, s);
  }

  std::size_t dim() const noexcept { return N_; }
  SpaceKind kind() const noexcept { return kind_; }
  /// Bergman weight s; 0 for Hardy.
  double weight() const noexcept { return s_; }

  bool is_hardy() const noexcept { return kind_ == SpaceKind::Hardy; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

  friend std::ostream& operator<<(std::ostream& os, const SpaceSpec& sp) {
    if (sp.is_hardy()) return os << "Hardy(N=" << sp.N_ << ")";
    return os << "Bergman(N=" << sp.N_ << ", s=" << sp.s_ << ")";
  }

 private:
  SpaceSpec(std::size_t N, SpaceKind kind, double s) : N_(N), kind_(kind), s_(s) {
    if (N == 0) throw domain_error("SpaceSpec: dimension must be positive");
  }

  std::size_t N_;
  SpaceKind kind_;
  double s_;
};

/// t = N on H²(B_N), t = N + s + 1 on A²_s(B_N).
inline double exponent_t(const SpaceSpec& space) noexcept {
  const double N = static_cast<double>(space.dim());
  return space.is_hardy() ? N : N + space.weight() + 1.0;
}

/// ∫_{∂B_N} |ζ^α|² dσ = (N-1)! α! / (N-1+|α|)!, exact until the final division.
inline double sphere_monomial_integral(std::size_t N, const MultiIndex& alpha) {
  if (alpha.dim() != N) throw argument_error("sphere_monomial_integral: dimension mismatch");
  const auto n = static_cast<unsigned>(N);
  const BigRational v(factorial(n - 1) * alpha.factorial(), factorial(n - 1 + alpha.order()));
  return v.convert_to<double>();
}

/// ‖z^α‖² in the given space.
///   Hardy:   (N-1)! α! / (N-1+|α|)!
///   Bergman: α! Γ(N+s+1) / Γ(N+s+1+|α|)
inline double monomial_norm_sq(const SpaceSpec& space, const MultiIndex& alpha) {
  if (alpha.dim() != space.dim()) throw argument_error("monomial_norm_sq: dimension mismatch");
  if (space.is_hardy()) return sphere_monomial_integral(space.dim(), alpha);
  const double t = exponent_t(space);
  return alpha.factorial().convert_to<double>() * gamma_ratio(t, t + alpha.order());
}

/// The scalar c with P(z̄^bottom z^top) = c z^(top - bottom) when
/// bottom <= top componentwise, and 0 otherwise:
///   c = Γ(t + |top| - |bottom|) / Γ(t + |top|) · top! / (top - bottom)!
/// (factorial ratio for Hardy, where t = N).
inline double projection_coeff(const SpaceSpec& space, const MultiIndex& top, const MultiIndex& bottom) {
  if (top.dim() != space.dim() || bottom.dim() != space.dim()) {
    throw argument_error("projection_coeff: dimension mismatch");
  }
  if (!bottom.componentwise_leq(top)) return 0.0;
  const MultiIndex diff = top - bottom;
  const BigInt falling = top.factorial() / diff.factorial();
  if (space.is_hardy()) {
    const auto n = static_cast<unsigned>(space.dim());
    const BigRational v(falling * factorial(n + diff.order() - 1), factorial(n + top.order() - 1));
    return v.convert_to<double>();
  }
  const double t = exponent_t(space);
  return falling.convert_to<double>() * gamma_ratio(t + diff.order(), t + top.order());
}

/// Space on B_k that integrates functions of (z_1..z_k) the same way:
/// Hardy on B_N -> Bergman(N-k-1) on B_k; Bergman(s) -> Bergman(N-k+s).
/// The exponent t is unchanged.
inline SpaceSpec slice_weight(const SpaceSpec& space, std::size_t k) {
  const std::size_t N = space.dim();
  if (k < 1 || k >= N) throw argument_error("slice_weight: need 1 <= k < N");
  const double shift = static_cast<double>(N - k);
  if (space.is_hardy()) return SpaceSpec::bergman(k, shift - 1.0);
  return SpaceSpec::bergman(k, shift + space.weight());
}

}  // namespace compop
