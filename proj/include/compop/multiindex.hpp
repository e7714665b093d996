#pragma once

// Multi-indices, exact combinatorics, and the falling-factorial decomposition
// (m+k)!/m! = sum_i a_i M_{k-i}(m).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "compop/errors.hpp"

namespace compop {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// n! as an exact integer.
inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Falling factorial M_j(m) = m (m-1) ... (m-j+1), M_0 = 1.
inline BigInt falling_factorial(const BigInt& m, unsigned j) {
  BigInt r = 1;
  for (unsigned i = 0; i < j; ++i) r *= (m - i);
  return r;
}

/// Tuple (α_1, ..., α_N) of non-negative integers.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : parts_(dim, 0) {}
  MultiIndex(std::initializer_list<unsigned> parts) : parts_(parts) {}
  explicit MultiIndex(std::vector<unsigned> parts) : parts_(std::move(parts)) {}

  std::size_t dim() const noexcept { return parts_.size(); }
  const std::vector<unsigned>& parts() const noexcept { return parts_; }

  unsigned operator[](std::size_t i) const { return parts_.at(i); }
  unsigned& operator[](std::size_t i) { return parts_.at(i); }

  /// |α|
  unsigned order() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

  /// α! = α_1! ... α_N!
  BigInt factorial() const {
    BigInt r = 1;
    for (unsigned p : parts_) r *= compop::factorial(p);
    return r;
  }

  /// Componentwise partial order β <= α.
  bool componentwise_leq(const MultiIndex& other) const {
    check_dim(other);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] > other.parts_[i]) return false;
    }
    return true;
  }

  MultiIndex operator+(const MultiIndex& other) const {
    check_dim(other);
    MultiIndex r(*this);
    for (std::size_t i = 0; i < parts_.size(); ++i) r.parts_[i] += other.parts_[i];
    return r;
  }

  /// α - β, defined only when β <= α.
  MultiIndex operator-(const MultiIndex& other) const {
    if (!other.componentwise_leq(*this)) {
      throw argument_error("MultiIndex: difference requires componentwise <=");
    }
    MultiIndex r(*this);
    for (std::size_t i = 0; i < parts_.size(); ++i) r.parts_[i] -= other.parts_[i];
    return r;
  }

  /// Padded with zeros (or truncated) to `dim` components.
  MultiIndex resized(std::size_t dim) const {
    MultiIndex r(*this);
    r.parts_.resize(dim, 0);
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.parts_ <=> b.parts_; }

  friend std::ostream& operator<<(std::ostream& os, const MultiIndex& a) {
    os << '(';
    for (std::size_t i = 0; i < a.parts_.size(); ++i) os << (i ? "," : "") << a.parts_[i];
    return os << ')';
  }

 private:
  void check_dim(const MultiIndex& other) const {
    if (other.dim() != dim()) throw argument_error("MultiIndex: dimension mismatch");
  }

  std::vector<unsigned> parts_;
};

/// All α in N components with |α| = m, first coordinate largest first:
/// (m,0,..), (m-1,1,0,..), (m-1,0,1,..), ..., (0,..,0,m).
inline std::vector<MultiIndex> enumerate(std::size_t N, unsigned m) {
  if (N == 0) throw argument_error("enumerate: dimension must be positive");
  std::vector<MultiIndex> out;
  MultiIndex cur(N);
  // Fill position i with every value from `remaining` down to 0; the last
  // position takes whatever is left.
  auto rec = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i + 1 == N) {
      cur[i] = remaining;
      out.push_back(cur);
      return;
    }
    for (unsigned v = remaining + 1; v-- > 0;) {
      cur[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  rec(rec, 0, m);
  return out;
}

/// Binomial coefficient C(n, k) as an exact integer.
inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// m! / α! for |α| = m.
inline BigInt multinomial(unsigned m, const MultiIndex& alpha) {
  if (alpha.order() != m) throw argument_error("multinomial: |alpha| must equal m");
  return factorial(m) / alpha.factorial();
}

/// Coefficients a_0 = 1, a_1, ..., a_k with (m+k)!/m! = sum_i a_i M_{k-i}(m).
struct FallingDecomposition {
  unsigned k = 0;
  std::vector<BigInt> coeffs;

  /// sum_i a_i M_{k-i}(m)
  BigInt evaluate(const BigInt& m) const {
    BigInt r = 0;
    for (unsigned i = 0; i <= k; ++i) r += coeffs[i] * falling_factorial(m, k - i);
    return r;
  }
};

/// Builds the coefficients from k = 1 ([1, 1]) with the step
/// a'_i = a_i + (2k - i + 2) a_{i-1}, a'_{k+1} = (k+1) a_k.
inline FallingDecomposition falling_decomposition(unsigned k) {
  if (k == 0) throw argument_error("falling_decomposition: k must be positive");
  std::vector<BigInt> a{1, 1};
  for (unsigned cur = 1; cur < k; ++cur) {
    std::vector<BigInt> next(cur + 2);
    next[0] = 1;
    for (unsigned i = 1; i <= cur; ++i) next[i] = a[i] + BigInt(2 * cur - i + 2) * a[i - 1];
    next[cur + 1] = BigInt(cur + 1) * a[cur];
    a = std::move(next);
  }
  return {k, std::move(a)};
}

}  // namespace compop
