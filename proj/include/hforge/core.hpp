#pragma once

// Dense complex matrices, the block-circulant inverse-orthogonal
// construction, and Hadamard verification.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hforge/error.hpp"

namespace hforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Bounds used by every numeric predicate in the library.
struct ToleranceConfig {
  double entry = 1e-10;  ///< entrywise residual bound
  double root = 1e-9;    ///< polynomial-root bound
  double spec = 1e-8;    ///< spectrum matching bound

  /// Throws InvalidParameter unless all three bounds are finite and > 0.
  void validate() const;
};

enum class Family { M4, H4, H4A, H42, H43, H44, H45, BF, M6, M6S, D61, D62, M8, D8A, Custom };

/// Ordered parameters of a family. Every value is nonzero; a value flagged
/// on_torus must be unimodular within the supplied tolerance.
struct ParamVector {
  Family family = Family::Custom;
  std::vector<Complex> values;
  std::vector<bool> on_torus;

  static ParamVector torus(Family family, std::vector<Complex> values);
  void validate(double tol) const;
};

Complex phase(double theta);
bool is_unimodular(Complex z, double tol);
bool all_finite(const ComplexMatrix& m);

/// Row i is first_row cyclically shifted right by i places.
ComplexMatrix circulant(std::span<const Complex> first_row);

/// [[a, b], [-b, a]]
ComplexMatrix negacirculant2(Complex a, Complex b);

/// result(i, j) = 1 / m(j, i)
ComplexMatrix entrywise_inv_transpose(const ComplexMatrix& m);

/// [[A, B], [inv_t(B), -inv_t(A)]] where inv_t is entrywise_inv_transpose.
ComplexMatrix assemble_sylvester(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |(M * inv_t(M))(i, j) - n * delta_ij|
double orthogonality_residual(const ComplexMatrix& m);

bool is_hadamard(const ComplexMatrix& m, const ToleranceConfig& tol = {});

/// Rows are divided by their first entry, then columns by the first-row
/// entry. The first row and column of the result are exactly 1.
ComplexMatrix dephase(const ComplexMatrix& m);

/// 0-based permutation: row i of P * M is row perm[i] of M.
using Permutation = std::vector<std::size_t>;

ComplexMatrix permute_rows(const ComplexMatrix& m, const Permutation& perm);
ComplexMatrix permute_cols(const ComplexMatrix& m, const Permutation& perm);

/// Standard equivalence certificate: h1 == D1 * P1 * h2 * P2 * D2 where
/// P1 acts on rows and P2 on columns.
struct EquivalenceCertificate {
  std::vector<Complex> left_phases;
  std::vector<Complex> right_phases;
  Permutation row_perm;
  Permutation col_perm;
};

bool check_equivalence_certificate(const ComplexMatrix& h1, const ComplexMatrix& h2,
                                   const EquivalenceCertificate& cert,
                                   const ToleranceConfig& tol = {});

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace hforge
