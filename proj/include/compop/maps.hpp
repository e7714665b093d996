#pragma once

// Linear fractional maps φ(z) = (Az + B)/(<z, C> + d) of the unit ball B_N.
//
// A map is stored through (A, B, C, d) and is identified with its associated
// (N+1)×(N+1) matrix
//
//     M_φ = [ A   B ]
//           [ C*  d ]
//
// which is only defined up to a non-zero scalar. Composition is the matrix
// product, so maps are compared projectively (see projective_distance).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/math/distributions/normal.hpp>

#include "compop/errors.hpp"
#include "compop/spaces.hpp"

namespace compop {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Clustering tolerance for eigenvectors / fixed points.
inline constexpr double kFixedPointTol = 1e-10;
/// ||λ| - 1| below this counts as a unit-circle eigenvalue.
inline constexpr double kUnitCircleTol = 1e-8;
/// Block-pattern tolerance for the slice restriction test.
inline constexpr double kBlockTol = 1e-12;
/// Boundary-modulus tolerance for the automorphism test on a slice.
inline constexpr double kAutomorphismTol = 1e-10;
/// sup norm at least 1 - this counts as attaining 1.
inline constexpr double kAttainsOneTol = 1e-6;

/// <z, w> = Σ z_i conj(w_i)
inline Complex inner(const CVector& z, const CVector& w) { return w.dot(z); }

class LinearFractionalMap {
 public:
  LinearFractionalMap(CMatrix A, CVector B, CVector C, Complex d)
      : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), d_(d) {
    const auto n = A_.rows();
    if (n == 0 || A_.cols() != n || B_.size() != n || C_.size() != n) {
      throw argument_error("LinearFractionalMap: inconsistent block sizes");
    }
    if (d_ == Complex(0.0)) throw domain_error("LinearFractionalMap: d must be non-zero");
  }

  static LinearFractionalMap identity(std::size_t N) {
    const auto n = static_cast<Eigen::Index>(N);
    return {CMatrix::Identity(n, n), CVector::Zero(n), CVector::Zero(n), 1.0};
  }

  /// z -> U z
  static LinearFractionalMap unitary(const CMatrix& U) {
    return {U, CVector::Zero(U.rows()), CVector::Zero(U.rows()), 1.0};
  }

  /// Reads the blocks back off an associated matrix.
  static LinearFractionalMap from_matrix(const CMatrix& M) {
    const auto n = M.rows() - 1;
    if (n < 1 || M.cols() != M.rows()) throw argument_error("from_matrix: need a square (N+1)x(N+1) matrix");
    return {M.topLeftCorner(n, n), M.topRightCorner(n, 1), M.bottomLeftCorner(1, n).adjoint(), M(n, n)};
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(A_.rows()); }
  const CMatrix& A() const noexcept { return A_; }
  const CVector& B() const noexcept { return B_; }
  const CVector& C() const noexcept { return C_; }
  Complex d() const noexcept { return d_; }

  CMatrix associated_matrix() const {
    const auto n = A_.rows();
    CMatrix M(n + 1, n + 1);
    M.topLeftCorner(n, n) = A_;
    M.topRightCorner(n, 1) = B_;
    M.bottomLeftCorner(1, n) = C_.adjoint();
    M(n, n) = d_;
    return M;
  }

  /// <z, C> + d
  Complex denominator(const CVector& z) const { return inner(z, C_) + d_; }

  /// |C| < |d|: the denominator cannot vanish on the closed ball.
  bool denominator_nonvanishing() const { return C_.norm() < std::abs(d_); }

 private:
  CMatrix A_;
  CVector B_;
  CVector C_;
  Complex d_;
};

/// Scale-invariant distance between associated matrices:
/// min_λ ‖M₁ - λM₂‖_F / ‖M₁‖_F.
inline double projective_distance(const CMatrix& M1, const CMatrix& M2) {
  const double n1 = M1.norm();
  const double n2sq = M2.squaredNorm();
  if (n1 == 0.0 || n2sq == 0.0) return (n1 == 0.0 && n2sq == 0.0) ? 0.0 : 1.0;
  // least-squares scalar λ = <M1, M2> / ‖M2‖²
  const Complex lambda = (M2.adjoint() * M1).trace() / n2sq;
  return (M1 - lambda * M2).norm() / n1;
}

inline double projective_distance(const LinearFractionalMap& f, const LinearFractionalMap& g) {
  if (f.dim() != g.dim()) throw argument_error("projective_distance: dimension mismatch");
  return projective_distance(f.associated_matrix(), g.associated_matrix());
}

inline CVector evaluate(const LinearFractionalMap& phi, const CVector& z) {
  if (static_cast<std::size_t>(z.size()) != phi.dim()) throw argument_error("evaluate: dimension mismatch");
  const Complex den = phi.denominator(z);
  if (den == Complex(0.0)) throw singularity_error("evaluate: denominator vanishes");
  return (phi.A() * z + phi.B()) / den;
}

/// The involutive automorphism φ_a interchanging a and 0:
/// φ_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z, a>), s_a = sqrt(1 - |a|²),
/// P_a = a a*/|a|², Q_a = I - P_a; φ_0(z) = -z.
inline LinearFractionalMap involution(const CVector& a) {
  const auto n = a.size();
  if (n == 0) throw argument_error("involution: empty point");
  const double r2 = a.squaredNorm();
  if (!(r2 < 1.0)) throw domain_error("involution: need |a| < 1");
  const CMatrix I = CMatrix::Identity(n, n);
  if (r2 == 0.0) return {-I, CVector::Zero(n), CVector::Zero(n), 1.0};
  const double sa = std::sqrt(1.0 - r2);
  const CMatrix P = a * a.adjoint() / r2;
  CMatrix A = -P - sa * (I - P);
  return {std::move(A), a, -a, 1.0};
}

/// Cowen data for C_φ* = T_g C_σ T_h*:
///   σ(z) = (A* z - C)/(<z, -B> + conj(d))
///   g(z) = (<z, -B> + conj(d))^(-t),  h(z) = (<z, C> + d)^t.
struct CowenSymbols {
  LinearFractionalMap sigma;
  CVector g_vector;  // -B
  Complex g_scalar;  // conj(d)
  CVector h_vector;  // C
  Complex h_scalar;  // d
  double t;

  Complex g(const CVector& z) const { return std::pow(inner(z, g_vector) + g_scalar, -t); }
  Complex h(const CVector& z) const { return std::pow(inner(z, h_vector) + h_scalar, t); }
  /// sup over the closed ball of |h| = (|C| + |d|)^t.
  double h_sup() const { return std::pow(h_vector.norm() + std::abs(h_scalar), t); }
};

inline CowenSymbols adjoint_map(const LinearFractionalMap& phi, const SpaceSpec& space) {
  if (phi.dim() != space.dim()) throw argument_error("adjoint_map: dimension mismatch");
  LinearFractionalMap sigma(phi.A().adjoint(), -phi.C(), -phi.B(), std::conj(phi.d()));
  return {std::move(sigma), -phi.B(), std::conj(phi.d()), phi.C(), phi.d(), exponent_t(space)};
}

/// φ ∘ ψ from the product of associated matrices; no rescaling.
inline LinearFractionalMap compose(const LinearFractionalMap& phi, const LinearFractionalMap& psi) {
  if (phi.dim() != psi.dim()) throw argument_error("compose: dimension mismatch");
  return LinearFractionalMap::from_matrix(phi.associated_matrix() * psi.associated_matrix());
}

/// φ^n, n >= 1.
inline LinearFractionalMap iterate(const LinearFractionalMap& phi, unsigned n) {
  if (n == 0) return LinearFractionalMap::identity(phi.dim());
  LinearFractionalMap r = phi;
  for (unsigned i = 1; i < n; ++i) r = compose(phi, r);
  return r;
}

/// dφ_z = A/(<z,C>+d) - (Az+B) C*/(<z,C>+d)²
inline CMatrix jacobian(const LinearFractionalMap& phi, const CVector& z) {
  if (static_cast<std::size_t>(z.size()) != phi.dim()) throw argument_error("jacobian: dimension mismatch");
  const Complex den = phi.denominator(z);
  if (den == Complex(0.0)) throw singularity_error("jacobian: denominator vanishes");
  const CVector num = phi.A() * z + phi.B();
  return phi.A() / den - num * phi.C().adjoint() / (den * den);
}

/// True when the associated matrix is a scalar multiple of the identity.
inline bool is_identity_map(const LinearFractionalMap& phi, double tol = 1e-12) {
  const auto n = static_cast<Eigen::Index>(phi.dim()) + 1;
  return projective_distance(phi.associated_matrix(), CMatrix::Identity(n, n)) < tol;
}

namespace detail {

// Newton steps on φ(z) - z; stops when the residual no longer improves.
inline CVector polish_fixed_point(const LinearFractionalMap& phi, CVector z) {
  const auto n = z.size();
  double res = (evaluate(phi, z) - z).norm();
  for (int it = 0; it < 8 && res > 0.0; ++it) {
    const CMatrix J = jacobian(phi, z) - CMatrix::Identity(n, n);
    Eigen::FullPivLU<CMatrix> lu(J);
    if (!lu.isInvertible()) break;
    const CVector cand = z - lu.solve(evaluate(phi, z) - z);
    const double cres = (evaluate(phi, cand) - cand).norm();
    if (!(cres < res)) break;
    z = cand;
    res = cres;
  }
  return z;
}

}  // namespace detail

/// Fixed points of φ inside B_N (|z| < 1 - 1e-10), from eigenvectors (v; w)
/// of the associated matrix with w != 0, deduplicated to 1e-10.
inline std::vector<CVector> interior_fixed_points(const LinearFractionalMap& phi) {
  if (is_identity_map(phi)) throw degenerate_error("interior_fixed_points: identity map fixes every point");
  const CMatrix M = phi.associated_matrix();
  const auto n = static_cast<Eigen::Index>(phi.dim());
  Eigen::ComplexEigenSolver<CMatrix> es(M);
  if (es.info() != Eigen::Success) throw degenerate_error("interior_fixed_points: eigensolver failed");

  std::vector<CVector> out;
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    const CVector v = es.eigenvectors().col(j);
    const Complex w = v(n);
    if (std::abs(w) <= kFixedPointTol * v.norm()) continue;
    CVector z = v.head(n) / w;
    if (!(z.norm() < 1.0 - kFixedPointTol)) continue;
    if (std::abs(phi.denominator(z)) == 0.0) continue;
    z = detail::polish_fixed_point(phi, z);
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const CVector& p) { return (p - z).norm() < kFixedPointTol; });
    if (!dup) out.push_back(z);
  }
  return out;
}

/// dim L_U(φ, z₀): algebraic multiplicity of the eigenvalues of dφ_{z₀} on
/// the unit circle.
inline unsigned unitary_space_dim(const LinearFractionalMap& phi, const CVector& z0) {
  if ((evaluate(phi, z0) - z0).norm() > 1e-8) throw argument_error("unitary_space_dim: z0 is not a fixed point");
  Eigen::ComplexEigenSolver<CMatrix> es(jacobian(phi, z0), /*computeEigenvectors=*/false);
  unsigned count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(std::abs(es.eigenvalues()(i)) - 1.0) < kUnitCircleTol) ++count;
  }
  return count;
}

namespace detail {

// i-th prime, for Halton bases.
inline unsigned nth_prime(std::size_t i) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (i >= std::size(primes)) throw argument_error("quasi-random grid: dimension too large");
  return primes[i];
}

inline double radical_inverse(std::uint64_t index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

// Deterministic quasi-uniform points on ∂B_N. N = 1 gets an equispaced
// circle through ζ = 1; higher N maps a Halton sequence through the normal
// quantile and normalizes.
inline std::vector<CVector> sphere_grid(std::size_t N, std::size_t count) {
  std::vector<CVector> pts;
  pts.reserve(count);
  const auto n = static_cast<Eigen::Index>(N);
  if (N == 1) {
    for (std::size_t j = 0; j < count; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
      pts.emplace_back(CVector::Constant(1, std::polar(1.0, th)));
    }
    return pts;
  }
  // Coordinate axes first so that maxima on them are hit exactly.
  for (Eigen::Index i = 0; i < n && pts.size() < count; ++i) {
    CVector e = CVector::Zero(n);
    e(i) = 1.0;
    pts.push_back(e);
    pts.push_back(-e);
  }
  const boost::math::normal_distribution<double> normal;
  for (std::uint64_t idx = 1; pts.size() < count; ++idx) {
    CVector z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u = radical_inverse(idx, nth_prime(2 * i));
      const double v = radical_inverse(idx, nth_prime(2 * i + 1));
      z(i) = Complex(boost::math::quantile(normal, u == 0.0 ? 0.5 : u),
                     boost::math::quantile(normal, v == 0.0 ? 0.5 : v));
    }
    const double nz = z.norm();
    if (nz > 0.0) pts.push_back(z / nz);
  }
  return pts;
}

inline std::vector<CVector> random_sphere_points(std::size_t N, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<CVector> pts;
  pts.reserve(count);
  const auto n = static_cast<Eigen::Index>(N);
  while (pts.size() < count) {
    CVector z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = Complex(normal(gen), normal(gen));
    const double nz = z.norm();
    if (nz > 0.0) pts.push_back(z / nz);
  }
  return pts;
}

}  // namespace detail

struct SupNorm {
  double value = 0.0;
  CVector argmax;
  bool attains_one = false;
};

/// Heuristic ‖φ‖_∞: best of a quasi-uniform boundary grid, refined by a
/// pattern search on the sphere from the best few grid points.
inline SupNorm sup_norm(const LinearFractionalMap& phi, std::size_t grid_density = 4096) {
  const std::size_t N = phi.dim();
  const auto n = static_cast<Eigen::Index>(N);
  auto modulus = [&](const CVector& z) {
    const Complex den = phi.denominator(z);
    if (den == Complex(0.0)) return std::numeric_limits<double>::infinity();
    return ((phi.A() * z + phi.B()) / den).norm();
  };

  std::vector<std::pair<double, CVector>> scored;
  for (auto& z : detail::sphere_grid(N, std::max<std::size_t>(grid_density, 8))) {
    scored.emplace_back(modulus(z), std::move(z));
  }
  const std::size_t seeds = std::min<std::size_t>(8, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(seeds), scored.end(),
                    [](const auto& x, const auto& y) { return x.first > y.first; });

  SupNorm best{scored.front().first, scored.front().second, false};
  const double start_step = 2.0 * std::numbers::pi / std::sqrt(static_cast<double>(grid_density));
  for (std::size_t sidx = 0; sidx < seeds; ++sidx) {
    auto [val, z] = scored[sidx];
    for (double step = start_step; step > 1e-13; step *= 0.5) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (Eigen::Index i = 0; i < n; ++i) {
          for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
            CVector cand = z;
            cand(i) += step * dir;
            cand /= cand.norm();
            const double cv = modulus(cand);
            if (cv > val) {
              val = cv;
              z = std::move(cand);
              improved = true;
            }
          }
        }
      }
    }
    if (val > best.value) best = {val, z, false};
  }
  best.attains_one = best.value >= 1.0 - kAttainsOneTol;
  return best;
}

/// True when |φ(ζ)| <= 1 + 1e-12 at `samples` seeded boundary points and
/// |C| < |d|.
inline bool self_map_check(const LinearFractionalMap& phi, std::size_t samples = 2000, std::uint64_t seed = 1) {
  if (!phi.denominator_nonvanishing()) return false;
  for (const auto& z : detail::random_sphere_points(phi.dim(), samples, seed)) {
    if (evaluate(phi, z).norm() > 1.0 + 1e-12) return false;
  }
  return true;
}

struct SliceRestriction {
  std::size_t k;
  /// φ̃(w) = (A₁w + B₁)/(<w, C₁> + d) on B_k.
  LinearFractionalMap reduced;
  /// φ̃ maps ∂B_k onto ∂B_k (tested on a boundary sample).
  bool is_automorphism;
  /// φ̃^{-1}(0) when φ̃ is an automorphism.
  std::optional<CVector> zero_preimage;
  bool is_nonrotation_automorphism;
};

/// Detects the block pattern of a map sending B_k to itself:
/// A = diag(A₁, A₂), B = (B₁, 0), C = (C₁, 0) after scaling d to 1.
inline std::optional<SliceRestriction> slice_restriction_check(const LinearFractionalMap& phi, std::size_t k) {
  const std::size_t N = phi.dim();
  if (k < 1 || k >= N) throw argument_error("slice_restriction_check: need 1 <= k < N");
  const auto kk = static_cast<Eigen::Index>(k);
  const auto rest = static_cast<Eigen::Index>(N - k);
  const Complex d = phi.d();
  const CMatrix A = phi.A() / d;
  const CVector B = phi.B() / d;
  const CVector C = phi.C() / std::conj(d);  // <z, C>/d = <z, C/conj(d)>

  const double off = std::max(A.bottomLeftCorner(rest, kk).cwiseAbs().maxCoeff(),
                              A.topRightCorner(kk, rest).cwiseAbs().maxCoeff());
  const double tail = std::max(B.tail(rest).cwiseAbs().maxCoeff(), C.tail(rest).cwiseAbs().maxCoeff());
  if (off > kBlockTol || tail > kBlockTol) return std::nullopt;

  LinearFractionalMap reduced(phi.A().topLeftCorner(kk, kk), phi.B().head(kk), phi.C().head(kk), d);

  bool automorphism = true;
  for (const auto& w : detail::random_sphere_points(k, 256, 0x5eedULL)) {
    const Complex den = reduced.denominator(w);
    if (den == Complex(0.0) || std::abs(evaluate(reduced, w).norm() - 1.0) > kAutomorphismTol) {
      automorphism = false;
      break;
    }
  }

  std::optional<CVector> zero;
  bool nonrotation = false;
  if (automorphism) {
    Eigen::FullPivLU<CMatrix> lu(reduced.A());
    if (lu.isInvertible()) {
      CVector a = lu.solve(-reduced.B());
      if (a.norm() < 1.0) {
        nonrotation = a.norm() > kBlockTol;
        zero = std::move(a);
      }
    }
  }
  return SliceRestriction{k, std::move(reduced), automorphism, std::move(zero), automorphism && nonrotation};
}

}  // namespace compop
