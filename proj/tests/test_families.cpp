#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hforge/constraints.hpp"
#include "hforge/families.hpp"

using namespace hforge;

namespace {

std::mt19937_64 rng(11);
const double kPi = 3.141592653589793;
const double kS2 = std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);

Complex rand_phase() { return phase(std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng)); }

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an hforge::Error");
  return ErrorKind::InvalidParameter;
}

bool same_poly(const ComplexPolynomial& p, const ComplexPolynomial& q, double tol) { return coeff_distance(p, q) <= tol; }

}  // namespace

TEST_CASE("descriptors and names") {
  for (Family f : {Family::M4, Family::H4, Family::H4A, Family::H42, Family::H43, Family::H44, Family::H45, Family::BF,
                   Family::M6, Family::M6S, Family::D61, Family::D62, Family::M8, Family::D8A}) {
    const FamilyDescriptor d = describe(f);
    CHECK(family_from_name(d.name) == f);
    CHECK(family_name(f) == d.name);
  }
  CHECK(describe(Family::H4).order == 4);
  CHECK(describe(Family::H4).free_params.size() == 3);
  CHECK(describe(Family::H4).constraints_satisfied);
  CHECK_FALSE(describe(Family::M6).constraints_satisfied);
  CHECK(describe(Family::D8A).order == 8);
  CHECK(describe(Family::D8A).free_params.size() == 6);
  CHECK(family_from_name("H4") == Family::H4);
  CHECK(kind_of([] { family_from_name("h7"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("m4 layout") {
  const Complex a = rand_phase(), b = rand_phase(), c = rand_phase(), d = rand_phase();
  const ComplexMatrix m = m4(a, b, c, d);
  CHECK(m(0, 0) == a);
  CHECK(m(1, 0) == -b);
  CHECK(m(2, 0) == 1.0 / c);
  CHECK(m(3, 3) == -1.0 / a);
  CHECK(max_abs_diff(m.bottomLeftCorner(2, 2), entrywise_inv_transpose(m.topRightCorner(2, 2))) < 1e-15);
}

TEST_CASE("h4 family") {
  for (int k = 0; k < 50; ++k) CHECK(is_hadamard(h4(rand_phase(), rand_phase(), rand_phase())));

  const SpectrumMultiset sp = spectrum(h4(1.0, kI, -kI));
  const SpectrumMultiset want({-(kI + kS3) / 2.0, -(kI - kS3) / 2.0, (kI + kS3) / 2.0, (kI - kS3) / 2.0});
  CHECK(sp.matches(want, 1e-9));

  // 2x^4 + 2i sqrt2 x^3 - 3x^2 - 2i sqrt2 x + 2, made monic
  const ComplexPolynomial printed =
      ComplexPolynomial{2.0, -2.0 * kI * kS2, -3.0, 2.0 * kI * kS2, 2.0}.monic();
  CHECK(same_poly(char_poly(h4(1.0, kI, phase(kPi / 4))), printed, 1e-9));

  for (int k = 0; k < 50; ++k) {
    const Complex b = rand_phase(), c = rand_phase(), d = rand_phase();
    const ComplexMatrix m = h4(b, c, d);
    CHECK(same_poly(char_poly(m), h4_spectral_equation(b, c, d), 1e-9));
    CHECK(h4_spectrum_closed(b, c, d).matches(spectrum(m), 1e-8));
  }
}

TEST_CASE("h4a") {
  for (int k = 0; k < 20; ++k) {
    const Complex q = rand_phase();
    CHECK(is_hadamard(h4a(q)));
    CHECK(h4a_spectrum_closed(q).matches(spectrum(h4a(q)), 1e-8));
  }
  CHECK(h4a_spectrum_closed(-1.0).matches(SpectrumMultiset({-1.0, -1.0, 1.0, 1.0}), 1e-12));
  const SpectrumMultiset at_one({-1.0, 1.0, -(1.0 + kI * kS3) / 2.0, (-1.0 + kI * kS3) / 2.0});
  CHECK(h4a_spectrum_closed(1.0).matches(at_one, 1e-12));
}

TEST_CASE("order-4 variants") {
  CHECK(same_poly(h42_spectral_equation(1.0, 1.0), ComplexPolynomial{1.0, 0.0, -1.0, 0.0, 1.0}, 1e-15));
  CHECK(same_poly(char_poly(h42(1.0, 1.0)), ComplexPolynomial{1.0, 0.0, -1.0, 0.0, 1.0}, 1e-12));

  for (int k = 0; k < 50; ++k) {
    const Complex a = rand_phase(), b = rand_phase(), c = rand_phase(), d = rand_phase();
    CHECK(is_hadamard(h42(a, b)));
    CHECK(is_hadamard(h43(a, c, d)));
    CHECK(is_hadamard(h44(b, c, d)));
    CHECK(is_hadamard(h45(a, c, d)));
    CHECK(same_poly(char_poly(h42(a, b)), h42_spectral_equation(a, b), 1e-9));
    CHECK(same_poly(char_poly(h43(a, c, d)), h43_spectral_equation(a, c, d), 1e-9));
    CHECK(same_poly(char_poly(h44(b, c, d)), h44_spectral_equation(b, c, d), 1e-9));
    CHECK(same_poly(char_poly(h45(a, c, d)), h45_spectral_equation(a, c, d), 1e-9));

    // descending coefficient of x^3 is +(b^2c^2 - d^2)/(bcd)
    const ComplexPolynomial p44 = h44_spectral_equation(b, c, d);
    CHECK(std::abs(p44.coeff(3) - (b * b * c * c - d * d) / (b * c * d)) < 1e-12);

    // the two families coincide on d = abc
    CHECK(spectrum(h42(a, b)).matches(spectrum(h43(a, c, a * b * c)), 1e-8));
  }
}

TEST_CASE("bf") {
  const auto roots = bf_quartic_roots();
  CHECK(std::abs(std::abs(roots[0]) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(roots[1]) - 1.0) < 1e-12);
  CHECK(std::abs(roots[2].imag()) < 1e-15);
  CHECK(std::abs(roots[3].imag()) < 1e-15);
  for (const Complex& d : roots) {
    CHECK(std::abs(d * d * d * d - 2.0 * d * d * d - 2.0 * d + 1.0) < 1e-12);
  }
  const Complex d1 = roots[0];
  CHECK(is_hadamard(bf(d1)));
  CHECK(is_hadamard(bf_dephased(d1)));
  CHECK_FALSE(is_hadamard(bf(roots[2])));

  const double s6 = std::sqrt(6.0);  // spectra are of M / sqrt(6)
  const ComplexPolynomial bf_poly{1.0, -s6, 3.0, -2.0 * kS2, 3.0, -s6, 1.0};
  CHECK(same_poly(char_poly(bf(d1)), bf_poly, 1e-9));
  CHECK(spectrum(bf_dephased(d1)).matches(SpectrumMultiset({-1.0, -1.0, -1.0, 1.0, 1.0, 1.0}), 1e-8));
  // the dephased form is the same matrix up to row and column phases
  CHECK(max_abs_diff(dephase(bf(d1)), dephase(bf_dephased(d1))) < 1e-9);
}

TEST_CASE("d6 and d61") {
  CHECK(is_hadamard(d6()));
  CHECK(is_hadamard(d61()));
  CHECK(max_abs_diff(d6(), d6().adjoint()) == 0.0);
  CHECK(spectrum(d6()).matches(SpectrumMultiset({-1.0, -1.0, -1.0, 1.0, 1.0, 1.0}), 1e-9));
  const double s = std::sqrt(3.0);
  const SpectrumMultiset want({-1.0, -1.0, 1.0, 1.0, (kI - kS2) / s, -(kI + kS2) / s});
  CHECK(spectrum(d61()).matches(want, 1e-9));
}

TEST_CASE("m6 and its standard form") {
  CHECK_FALSE(is_hadamard(m6(1, 1, 1, 1, 1, 1)));
  for (int k = 0; k < 20; ++k) {
    const Complex a = rand_phase(), b = rand_phase(), c = rand_phase(), d = rand_phase(), e = rand_phase(), f = rand_phase();
    const ComplexMatrix m = m6(a, b, c, d, e, f);
    CHECK(max_abs_diff(m.topLeftCorner(3, 3), circulant(std::array<Complex, 3>{a, b, c})) == 0.0);
    CHECK(max_abs_diff(m.bottomLeftCorner(3, 3), entrywise_inv_transpose(circulant(std::array<Complex, 3>{d, e, f}))) < 1e-15);
    CHECK(max_abs_diff(dephase(m), m6_standard(a, b, c, d, e, f)) < 1e-12);
  }
}

TEST_CASE("m6 branches at the printed point") {
  const Complex b = 1.0, c = kI, d = phase(kPi / 4), e = -1.0;
  for (int as : {1, -1}) {
    for (int fs : {1, -1}) {
      const M6Solution s = m6_branch(b, c, d, e, as, fs);
      CHECK(is_hadamard(s.matrix));
      CHECK(c6_residuals(s.params).max_abs() < 1e-10);
      const std::array<Complex, 5> abcde{s.params[0], b, c, d, e};
      const auto [fp, fm] = c6_solve_f(abcde);
      CHECK(std::abs(s.params[5] - (fs > 0 ? fp.value : fm.value)) < 1e-12);
    }
  }
  // be = cd is singular for the a quadratic
  CHECK(kind_of([] { m6_branch(1.0, 1.0, 1.0, 1.0, 1, 1); }) == ErrorKind::SingularBranch);
}

TEST_CASE("standard form spectrum on b = -cd/e") {
  // every (a, f) branch pair gives the same polynomial
  const double r = 2.0 * std::sqrt(2.0 / 3.0);
  const ComplexPolynomial standard_poly{-1.0, -r, -5.0 / 3.0, 0.0, 5.0 / 3.0, r, 1.0};
  for (int k = 0; k < 20; ++k) {
    const Complex c = rand_phase(), d = rand_phase(), e = rand_phase();
    for (int as : {1, -1}) {
      for (int fs : {1, -1}) {
        const M6Solution s = m6_branch(-c * d / e, c, d, e, as, fs);
        CHECK(is_hadamard(s.matrix));
        const auto& p = s.params;
        CHECK(same_poly(char_poly(m6_standard(p[0], p[1], p[2], p[3], p[4], p[5])), standard_poly, 1e-7));
      }
    }
  }
}

TEST_CASE("d61 and d62 families") {
  int tested = 0;
  for (int k = 0; k < 50; ++k) {
    const Complex c = rand_phase(), d = rand_phase(), e = rand_phase();
    if (std::abs(c * c * d - e) < 1e-3 || std::abs(c * d + e) < 1e-3) continue;
    ComplexMatrix m1, m2;
    try {
      m1 = d61_family(c, d, e);
      m2 = d62_family(c, d, e);
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::SingularBranch);
      continue;
    }
    ++tested;
    CHECK(is_hadamard(m1));
    CHECK(is_hadamard(m2));
    const ComplexPolynomial r1 = reduce_reciprocal(char_poly(m1));
    const ComplexPolynomial r2 = reduce_reciprocal(char_poly(m2));
    REQUIRE(r1.degree() == 3);
    REQUIRE(r2.degree() == 3);
    CHECK(std::abs(r1.coeff(2) + r2.coeff(2)) < 1e-8);
    CHECK(std::abs(r1.coeff(1) - r2.coeff(1)) < 1e-8);
    if (std::abs(r1.coeff(2)) > 1e-6) CHECK_FALSE(unitary_equivalent(m1, m2));
  }
  CHECK(tested > 25);
}

TEST_CASE("m8") {
  std::array<Complex, 8> p{};
  for (Complex& z : p) z = rand_phase();
  const ComplexMatrix m = m8(p);
  CHECK(m.rows() == 8);
  CHECK(max_abs_diff(m.bottomLeftCorner(4, 4), entrywise_inv_transpose(m.topRightCorner(4, 4))) < 1e-15);
  CHECK(max_abs_diff(m.bottomRightCorner(4, 4), -entrywise_inv_transpose(m.topLeftCorner(4, 4))) < 1e-15);
  std::array<Complex, 8> ones{1, 1, 1, 1, 1, 1, 1, 1};
  CHECK_FALSE(is_hadamard(m8(ones)));
}

TEST_CASE("doubling") {
  ComplexMatrix h2(2, 2);
  h2 << 1.0, 1.0, 1.0, -1.0;
  const ComplexMatrix h = double_matrix(h2, h2);
  CHECK(h.rows() == 4);
  CHECK(is_hadamard(h));

  for (int k = 0; k < 20; ++k) {
    const Complex b = rand_phase(), c = rand_phase(), d = rand_phase();
    const Complex f = rand_phase(), g = rand_phase(), hh = rand_phase();
    const ComplexMatrix m = d8a(b, c, d, f, g, hh);
    CHECK(is_hadamard(m));
    CHECK(max_abs_diff(m, double_matrix(a4(b, c, d), b4(f, g, hh))) < 1e-15);
    const std::array<Complex, 4> diag{rand_phase(), rand_phase(), rand_phase(), rand_phase()};
    CHECK(is_hadamard(double_matrix(a4(b, c, d), b4(f, g, hh), diag)));
  }
  CHECK(max_abs_diff(d81(), d8a(1.0, kI, -kI, phase(kPi / 4), phase(-kPi / 4), -1.0)) < 1e-12);
  CHECK(is_hadamard(d81()));
  const ComplexMatrix h12 = double_matrix(a6(), b6());
  CHECK(h12.rows() == 12);
  CHECK(is_hadamard(h12));

  CHECK(kind_of([&] { double_matrix(h2, d6()); }) == ErrorKind::InvalidDimensions);
  CHECK(kind_of([&] { double_matrix(h2, ComplexMatrix::Ones(2, 2)); }) == ErrorKind::InvalidParameter);
  const std::array<Complex, 2> bad{1.0, 2.0};
  CHECK(kind_of([&] { double_matrix(h2, h2, bad); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("d81 spectrum") {
  const ComplexPolynomial cp = char_poly(d81());
  REQUIRE(is_reciprocal(cp));
  const SpectrumMultiset y = poly_roots(reduce_reciprocal(cp));
  const SpectrumMultiset want({-kI * kS2, kI * (2.0 + kS2) / 2.0, kI * (kS2 + std::sqrt(10.0)) / 4.0,
                               kI * (kS2 - std::sqrt(10.0)) / 4.0});
  CHECK(y.matches(want, 1e-8));
  const SpectrumMultiset x = spectrum(d81());
  const std::array<Complex, 2> needles{(kI + 1.0) / kS2, (kI - 1.0) / kS2};
  CHECK(x.contains(needles, 1e-8));
}
