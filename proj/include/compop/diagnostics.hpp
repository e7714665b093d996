#pragma once

// Verdicts on essential normality of C_φ assembled from the other modules.
// Each verdict certifies a sufficient condition; Inconclusive is a real
// outcome, not a failure.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "compop/errors.hpp"
#include "compop/maps.hpp"
#include "compop/sequences.hpp"
#include "compop/spaces.hpp"

namespace compop {

enum class VerdictStatus { EssentiallyNormal, NotEssentiallyNormal, Inconclusive };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::EssentiallyNormal: return "EssentiallyNormal";
    case VerdictStatus::NotEssentiallyNormal: return "NotEssentiallyNormal";
    case VerdictStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Smallest gap or bound allowed to back a NotEssentiallyNormal verdict.
inline constexpr double kMinWitnessGap = 1e-9;
/// Kernel-bound threshold at the outermost radius.
inline constexpr double kKernelBoundThreshold = 1e-6;
/// |σ(rζ)| must stay below this on every sampled radius.
inline constexpr double kSigmaInteriorLimit = 1.0 - 1e-6;

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::string witness;
  /// Limit gap (automorphism and slice verdicts) or kernel bound (scan).
  std::optional<double> gap;
  std::vector<HypothesisCheck> hypotheses;
  std::optional<std::size_t> slice_k;
  std::optional<SpaceSpec> reduced_space;

  bool all_hypotheses_pass() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.passed; });
  }
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Downgrades to Inconclusive when the witness is too small to mean anything.
inline Verdict not_normal(Verdict v, double gap) {
  v.gap = gap;
  v.status = gap > kMinWitnessGap ? VerdictStatus::NotEssentiallyNormal : VerdictStatus::Inconclusive;
  return v;
}

}  // namespace detail

/// Verdict for C_{φ_a}, φ_a the involution exchanging a and 0.
inline Verdict automorphism_verdict(const SpaceSpec& space, const CVector& a) {
  if (static_cast<std::size_t>(a.size()) != space.dim()) throw argument_error("automorphism_verdict: dimension mismatch");
  const double r = a.norm();
  if (!(r < 1.0)) throw domain_error("automorphism_verdict: need |a| < 1");
  Verdict v;
  v.hypotheses.push_back({"automorphism zero preimage inside the ball", true, "|a| = " + detail::fmt(r)});
  if (r == 0.0) {
    v.status = VerdictStatus::EssentiallyNormal;
    v.witness = "phi(0) = 0: phi is unitary, C_phi is unitary and hence normal";
    v.gap = 0.0;
    return v;
  }
  const double t = exponent_t(space);
  const double gap = gap_limit(t, r);
  v.witness = "e_m = C_m <z, a/|a|>^m, m -> infinity; gap_limit(t=" + detail::fmt(t) + ", r=" + detail::fmt(r) +
              ") = " + detail::fmt(gap);
  return detail::not_normal(std::move(v), gap);
}

/// Looks for a slice B_k mapped to itself by a non-rotation automorphism.
inline Verdict slice_verdict(const LinearFractionalMap& phi, const SpaceSpec& space) {
  if (phi.dim() != space.dim()) throw argument_error("slice_verdict: dimension mismatch");
  const std::size_t N = phi.dim();
  Verdict v;
  v.witness = "no slice restriction is a non-rotation automorphism";
  for (std::size_t k = 1; k < N; ++k) {
    const auto sr = slice_restriction_check(phi, k);
    if (!sr) {
      v.hypotheses.push_back({"block structure k=" + std::to_string(k), false, "phi does not preserve B_k"});
      continue;
    }
    v.hypotheses.push_back({"block structure k=" + std::to_string(k), true, ""});
    if (!sr->is_nonrotation_automorphism) {
      v.hypotheses.push_back({"non-rotation automorphism k=" + std::to_string(k), false,
                              sr->is_automorphism ? "restriction is a rotation" : "restriction is not an automorphism"});
      continue;
    }
    v.hypotheses.push_back({"non-rotation automorphism k=" + std::to_string(k), true, ""});
    const SpaceSpec reduced = slice_weight(space, k);
    Verdict inner = automorphism_verdict(reduced, *sr->zero_preimage);
    inner.hypotheses.insert(inner.hypotheses.begin(), v.hypotheses.begin(), v.hypotheses.end());
    inner.slice_k = k;
    inner.reduced_space = reduced;
    std::ostringstream os;
    os << "f_m = e_m(z_1..z_k) on slice k=" << k << ", reduced space " << reduced << "; " << inner.witness;
    inner.witness = os.str();
    return inner;
  }
  v.status = VerdictStatus::Inconclusive;
  return v;
}

struct KernelScan {
  Verdict verdict;
  /// (r, kernel_gap_lower(φ, space, rζ)) for each radius, in input order.
  std::vector<std::pair<double, double>> table;
  /// ‖φ^n‖∞ for n = 1..; stops at the first n < 1 - 1e-6 or at 20.
  std::vector<double> iterate_sup_norms;
  std::optional<unsigned> first_contracting_iterate;
};

/// r = 1 - 10^-j, j = 1..6.
inline std::vector<double> default_radii() {
  std::vector<double> r;
  double eps = 1.0;
  for (int j = 1; j <= 6; ++j) {
    eps /= 10.0;
    r.push_back(1.0 - eps);
  }
  return r;
}

inline constexpr unsigned kMaxIterates = 20;

/// Kernel lower bound along p = rζ plus the hypotheses it relies on: one
/// interior fixed point z₀, dim L_U(φ, z₀) = 0, ‖φ‖∞ = 1, and σ(rζ)
/// staying inside the ball.
inline KernelScan kernel_bound_scan(const LinearFractionalMap& phi, const SpaceSpec& space, const CVector& zeta,
                                    std::vector<double> radii = default_radii()) {
  if (phi.dim() != space.dim() || static_cast<std::size_t>(zeta.size()) != phi.dim()) {
    throw argument_error("kernel_bound_scan: dimension mismatch");
  }
  if (std::abs(zeta.norm() - 1.0) > 1e-12) throw argument_error("kernel_bound_scan: |zeta| must be 1");
  if (radii.empty()) throw argument_error("kernel_bound_scan: no radii");
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw argument_error("kernel_bound_scan: radii must lie in (0, 1)");
  }

  KernelScan scan;
  auto& hyp = scan.verdict.hypotheses;

  std::optional<CVector> z0;
  try {
    const auto fps = interior_fixed_points(phi);
    hyp.push_back({"unique interior fixed point", fps.size() == 1, std::to_string(fps.size()) + " found"});
    if (fps.size() == 1) z0 = fps.front();
  } catch (const degenerate_error& e) {
    hyp.push_back({"unique interior fixed point", false, e.what()});
  }

  if (z0) {
    const unsigned p = unitary_space_dim(phi, *z0);
    hyp.push_back({"dim L_U = 0", p == 0, "dim L_U = " + std::to_string(p)});
  } else {
    hyp.push_back({"dim L_U = 0", false, "no unique fixed point"});
  }

  const SupNorm sn = sup_norm(phi);
  hyp.push_back({"sup norm attains 1", sn.attains_one, "sup |phi| = " + detail::fmt(sn.value)});

  const CowenSymbols cs = adjoint_map(phi, space);
  double sigma_max = 0.0;
  bool sigma_ok = true;
  for (double r : radii) {
    const CVector p = r * zeta;
    try {
      sigma_max = std::max(sigma_max, evaluate(cs.sigma, p).norm());
    } catch (const singularity_error&) {
      sigma_ok = false;
    }
  }
  sigma_ok = sigma_ok && sigma_max <= kSigmaInteriorLimit;
  hyp.push_back({"sigma(r zeta) bounded away from the sphere", sigma_ok, "max |sigma| = " + detail::fmt(sigma_max)});

  // Iterate sup norms: diagnostic only.
  LinearFractionalMap it = phi;
  for (unsigned n = 1; n <= kMaxIterates; ++n) {
    if (n > 1) it = compose(phi, it);
    const double v = n == 1 ? sn.value : sup_norm(it).value;
    scan.iterate_sup_norms.push_back(v);
    if (v < 1.0 - kAttainsOneTol) {
      scan.first_contracting_iterate = n;
      break;
    }
  }

  std::sort(radii.begin(), radii.end());
  bool table_ok = true;
  for (double r : radii) {
    try {
      scan.table.emplace_back(r, kernel_gap_lower(phi, space, r * zeta));
    } catch (const std::exception& e) {
      table_ok = false;
      hyp.push_back({"kernel bound defined at r=" + detail::fmt(r), false, e.what()});
      break;
    }
  }

  Verdict& v = scan.verdict;
  if (!table_ok || !v.all_hypotheses_pass()) {
    v.status = VerdictStatus::Inconclusive;
    for (const auto& h : hyp) {
      if (!h.passed) {
        v.witness = "hypothesis failed: " + h.name;
        break;
      }
    }
    return scan;
  }
  const auto [r_last, bound] = scan.table.back();
  v.witness = "kernel lower bound along r*zeta; bound at r=" + detail::fmt(r_last) + " is " + detail::fmt(bound);
  if (bound > kKernelBoundThreshold) {
    v = detail::not_normal(std::move(v), bound);
  } else {
    v.gap = bound;
    v.status = VerdictStatus::Inconclusive;
  }
  return scan;
}

}  // namespace compop
