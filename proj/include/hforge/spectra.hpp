#pragma once

// Characteristic polynomials of scaled matrices, the y = 1/x - x reduction
// of reciprocal spectral equations, root extraction, and spectrum-based
// unitary equivalence.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "hforge/core.hpp"

namespace hforge {

/// Univariate polynomial, coefficients in ascending degree.
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<Complex> ascending);
  ComplexPolynomial(std::initializer_list<Complex> ascending);

  /// Build from coefficients listed highest degree first, as equations are
  /// usually written.
  static ComplexPolynomial from_descending(std::span<const Complex> descending);
  /// prod (x - r)
  static ComplexPolynomial from_roots(std::span<const Complex> roots);

  /// Degree after dropping exactly-zero leading coefficients; -1 for zero.
  int degree() const;
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex coeff(std::size_t power) const { return power < coeffs_.size() ? coeffs_[power] : Complex{}; }
  Complex leading() const;
  double max_abs_coeff() const;

  Complex operator()(Complex x) const;
  ComplexPolynomial derivative() const;
  ComplexPolynomial monic() const;
  /// Removes leading coefficients whose modulus is <= tol * max|c|.
  ComplexPolynomial trimmed(double tol) const;

  friend ComplexPolynomial operator*(const ComplexPolynomial& p, const ComplexPolynomial& q);
  friend ComplexPolynomial operator+(const ComplexPolynomial& p, const ComplexPolynomial& q);
  friend ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p);

 private:
  std::vector<Complex> coeffs_;
};

/// max_j |p_j - q_j| over the union of coefficient ranges.
double coeff_distance(const ComplexPolynomial& p, const ComplexPolynomial& q);

/// Unordered multiset of complex values.
class SpectrumMultiset {
 public:
  SpectrumMultiset() = default;
  explicit SpectrumMultiset(std::vector<Complex> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const& { return values_; }
  std::vector<Complex> values() && { return std::move(values_); }

  /// True iff a bijection exists pairing every value with one of `other`
  /// at distance <= tol. Greedy nearest-pair first, bipartite matching as
  /// fallback when greedy pairing gets stuck.
  bool matches(const SpectrumMultiset& other, double tol) const;

  /// Every element of `needles` (with multiplicity) is matched to a distinct
  /// element of this multiset within tol.
  bool contains(std::span<const Complex> needles, double tol) const;

  /// Lexicographic by (Re, Im) after rounding to the grid `tol`.
  SpectrumMultiset sorted(double tol) const;

  Complex product() const;

 private:
  std::vector<Complex> values_;
};

struct RootOptions {
  int max_iterations = 500;
  /// Root residual bound relative to max|c|.
  double tol = 1e-9;
};

/// All complex roots (Aberth-Ehrlich iteration with Newton polishing and
/// multiple-root cluster averaging). Throws RootFindingFailure if the
/// iteration budget runs out before |p(r)| <= tol * max|c| for every root.
SpectrumMultiset poly_roots(const ComplexPolynomial& p, const RootOptions& opts = {});

/// det(x I - M / sqrt(m)), Faddeev-LeVerrier trace recursion.
ComplexPolynomial char_poly(const ComplexMatrix& m);

/// det(x I - M / sqrt(m)) rebuilt from the eigenvalues; independent route
/// used to cross-check char_poly.
ComplexPolynomial char_poly_from_spectrum(const ComplexMatrix& m);

/// True iff p has even degree 2k and c_{2k-j} = (-1)^{k-j} c_j for all j
/// (within tol * max|c|), which is exactly the condition p(x) = x^k q(1/x - x).
bool is_reciprocal(const ComplexPolynomial& p, double tol = 1e-9);

/// Monic q of degree k with x^k q(1/x - x) = p(x) / p(0). Throws
/// NotReciprocal unless is_reciprocal(p, tol).
ComplexPolynomial reduce_reciprocal(const ComplexPolynomial& p, double tol = 1e-9);

/// Each y gives the two solutions of x^2 + y x - 1 = 0.
std::vector<Complex> lift_roots(std::span<const Complex> yroots);

/// Eigenvalues of M / sqrt(m).
SpectrumMultiset spectrum(const ComplexMatrix& m);

bool is_normal(const ComplexMatrix& m, double tol);

/// Equality of spectra of the scaled matrices. Throws InvalidDimensions on
/// size mismatch and NotNormal if either input fails the normality check.
bool unitary_equivalent(const ComplexMatrix& m1, const ComplexMatrix& m2, const ToleranceConfig& tol = {});

}  // namespace hforge
