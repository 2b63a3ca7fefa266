#pragma once

// Named constructors for the parametric and numeric matrices of orders 4, 6,
// 8 and 12, and the doubling construction.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hforge/core.hpp"
#include "hforge/spectra.hpp"

namespace hforge {

struct FamilyDescriptor {
  std::string name;
  int order = 0;
  std::vector<std::string> free_params;
  bool constraints_satisfied = false;  ///< true when every torus point gives a Hadamard matrix
};

FamilyDescriptor describe(Family family);
std::string_view family_name(Family family);
/// Case-insensitive; throws InvalidParameter for unknown names.
Family family_from_name(std::string_view name);

// ---- order 4 ---------------------------------------------------------------

/// [[a,b,c,d],[-b,a,-d,c],[1/c,-1/d,-1/a,1/b],[1/d,1/c,-1/b,-1/a]]
ComplexMatrix m4(Complex a, Complex b, Complex c, Complex d);

/// m4 with a = bd/c.
ComplexMatrix h4(Complex b, Complex c, Complex d);
ComplexMatrix h4a(Complex q);
SpectrumMultiset h4a_spectrum_closed(Complex q);

/// m4(a, b, b/a, 1): the representative of the c = bd/a, d = ac/b,
/// c = -ad/b, d = -bc/a branches.
ComplexMatrix h42(Complex a, Complex b);
/// b = ac/d
ComplexMatrix h43(Complex a, Complex c, Complex d);
/// a = -bc/d
ComplexMatrix h44(Complex b, Complex c, Complex d);
/// b = -ad/c
ComplexMatrix h45(Complex a, Complex c, Complex d);

/// Characteristic polynomials (monic, ascending) of the scaled order-4
/// matrices in closed form.
ComplexPolynomial h4_spectral_equation(Complex b, Complex c, Complex d);
ComplexPolynomial h42_spectral_equation(Complex a, Complex b);
ComplexPolynomial h43_spectral_equation(Complex a, Complex c, Complex d);
ComplexPolynomial h44_spectral_equation(Complex b, Complex c, Complex d);
ComplexPolynomial h45_spectral_equation(Complex a, Complex c, Complex d);

/// The four eigenvalues x1..x4 of h4(b,c,d)/2 from the closed-form roots.
SpectrumMultiset h4_spectrum_closed(Complex b, Complex c, Complex d);

// ---- order 6 ---------------------------------------------------------------

/// Circulant of (1, i/d, -1/d, -i, -d, id).
ComplexMatrix bf(Complex d);
/// Roots of d^4 - 2d^3 - 2d + 1: d1, d2 unimodular, d3, d4 real.
std::array<Complex, 4> bf_quartic_roots();
ComplexMatrix bf_dephased(Complex d);

ComplexMatrix d6();
ComplexMatrix d61();

/// assemble_sylvester(circulant(a,b,c), circulant(d,e,f))
ComplexMatrix m6(Complex a, Complex b, Complex c, Complex d, Complex e, Complex f);
ComplexMatrix m6_standard(Complex a, Complex b, Complex c, Complex d, Complex e, Complex f);

/// m6 on the b = -cd/e locus with the nested-radical a and f entries.
/// Throws SingularBranch if neither sign of the inner radical gives a
/// Hadamard matrix.
ComplexMatrix d61_family(Complex c, Complex d, Complex e, const ToleranceConfig& tol = {});
ComplexMatrix d62_family(Complex c, Complex d, Complex e, const ToleranceConfig& tol = {});

/// The (a, f) pair of d61_family; d62_family uses (-a, -f).
std::pair<Complex, Complex> d61_af(Complex c, Complex d, Complex e, bool flip_inner = false);

/// Order-6 solution on a chosen branch pair: a from the reduced condition,
/// f from the first constraint with that a. Branch signs are +1 / -1.
struct M6Solution {
  std::array<Complex, 6> params;
  ComplexMatrix matrix;
};
M6Solution m6_branch(Complex b, Complex c, Complex d, Complex e, int a_sign, int f_sign,
                     const ToleranceConfig& tol = {});

// ---- order 8 and doubling --------------------------------------------------

ComplexMatrix m8(std::span<const Complex, 8> params);

/// [[A, D B], [A, -D B]]. A and B must be Hadamard of the same order and
/// every D entry unimodular; otherwise InvalidParameter / InvalidDimensions.
ComplexMatrix double_matrix(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const Complex> diag = {},
                            const ToleranceConfig& tol = {});

ComplexMatrix a4(Complex b, Complex c, Complex d);
/// m4(f, g, h, fh/g)
ComplexMatrix b4(Complex f, Complex g, Complex h);
ComplexMatrix d8a(Complex b, Complex c, Complex d, Complex f, Complex g, Complex h);
ComplexMatrix d81();

ComplexMatrix a6();
ComplexMatrix b6();

}  // namespace hforge
