#include "hforge/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hforge/constraints.hpp"

namespace hforge {

namespace {

ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const Complex& z : row) m(i, j++) = z;
    ++i;
  }
  return m;
}

void require_nonzero(std::initializer_list<Complex> values, const char* what) {
  for (const Complex& z : values) {
    if (z == Complex{} || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::InvalidParameter, std::string(what) + ": parameters must be nonzero and finite");
    }
  }
}

// Ascending coefficients of x^4 - s x^3 + q x^2 + s x + 1.
ComplexPolynomial palindromic_quartic(Complex s, Complex q) { return ComplexPolynomial{1.0, s, q, -s, 1.0}; }

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

FamilyDescriptor describe(Family family) {
  switch (family) {
    case Family::M4: return {"m4", 4, {"a", "b", "c", "d"}, false};
    case Family::H4: return {"h4", 4, {"b", "c", "d"}, true};
    case Family::H4A: return {"h4a", 4, {"q"}, true};
    case Family::H42: return {"h42", 4, {"a", "b"}, true};
    case Family::H43: return {"h43", 4, {"a", "c", "d"}, true};
    case Family::H44: return {"h44", 4, {"b", "c", "d"}, true};
    case Family::H45: return {"h45", 4, {"a", "c", "d"}, true};
    case Family::BF: return {"bf", 6, {"d"}, false};
    case Family::M6: return {"m6", 6, {"a", "b", "c", "d", "e", "f"}, false};
    case Family::M6S: return {"m6s", 6, {"a", "b", "c", "d", "e", "f"}, false};
    case Family::D61: return {"d61-family", 6, {"c", "d", "e"}, true};
    case Family::D62: return {"d62-family", 6, {"c", "d", "e"}, true};
    case Family::M8: return {"m8", 8, {"a", "b", "c", "d", "e", "f", "g", "h"}, false};
    case Family::D8A: return {"d8a", 8, {"b", "c", "d", "f", "g", "h"}, true};
    case Family::Custom: break;
  }
  return {"custom", 0, {}, false};
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::M4: return "m4";
    case Family::H4: return "h4";
    case Family::H4A: return "h4a";
    case Family::H42: return "h42";
    case Family::H43: return "h43";
    case Family::H44: return "h44";
    case Family::H45: return "h45";
    case Family::BF: return "bf";
    case Family::M6: return "m6";
    case Family::M6S: return "m6s";
    case Family::D61: return "d61-family";
    case Family::D62: return "d62-family";
    case Family::M8: return "m8";
    case Family::D8A: return "d8a";
    case Family::Custom: break;
  }
  return "custom";
}

Family family_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  for (Family f : {Family::M4, Family::H4, Family::H4A, Family::H42, Family::H43, Family::H44, Family::H45, Family::BF,
                   Family::M6, Family::M6S, Family::D61, Family::D62, Family::M8, Family::D8A, Family::Custom}) {
    if (family_name(f) == lower) return f;
  }
  throw Error(ErrorKind::InvalidParameter, "unknown family '" + std::string(name) + "'");
}

// ---- order 4 ---------------------------------------------------------------

ComplexMatrix m4(Complex a, Complex b, Complex c, Complex d) {
  require_nonzero({a, b, c, d}, "m4");
  return from_rows({{a, b, c, d},
                    {-b, a, -d, c},
                    {1.0 / c, -1.0 / d, -1.0 / a, 1.0 / b},
                    {1.0 / d, 1.0 / c, -1.0 / b, -1.0 / a}});
}

ComplexMatrix h4(Complex b, Complex c, Complex d) {
  require_nonzero({b, c, d}, "h4");
  return m4(b * d / c, b, c, d);
}

ComplexMatrix h4a(Complex q) {
  require_nonzero({q}, "h4a");
  return from_rows({{1.0, 1.0, 1.0, 1.0}, {1.0, -q, q, -1.0}, {1.0, -1.0, -1.0, 1.0}, {1.0, q, -q, -1.0}});
}

SpectrumMultiset h4a_spectrum_closed(Complex q) {
  const Complex root = std::sqrt(1.0 - 14.0 * q + q * q);
  return SpectrumMultiset({-1.0, 1.0, -(1.0 + q + root) / 4.0, -(1.0 + q - root) / 4.0});
}

ComplexMatrix h42(Complex a, Complex b) {
  require_nonzero({a, b}, "h42");
  return m4(a, b, b / a, 1.0);
}

ComplexMatrix h43(Complex a, Complex c, Complex d) {
  require_nonzero({a, c, d}, "h43");
  return m4(a, a * c / d, c, d);
}

ComplexMatrix h44(Complex b, Complex c, Complex d) {
  require_nonzero({b, c, d}, "h44");
  return m4(-b * c / d, b, c, d);
}

ComplexMatrix h45(Complex a, Complex c, Complex d) {
  require_nonzero({a, c, d}, "h45");
  return m4(a, -a * d / c, c, d);
}

ComplexPolynomial h4_spectral_equation(Complex b, Complex c, Complex d) {
  require_nonzero({b, c, d}, "h4_spectral_equation");
  const Complex bcd = b * c * d;
  const Complex s = (b * b * d * d - c * c) / bcd;
  const Complex q = ((c * c + d * d) * (c * c + b * b * b * b * d * d) - 8.0 * bcd * bcd) / (4.0 * bcd * bcd);
  return palindromic_quartic(s, q);
}

ComplexPolynomial h42_spectral_equation(Complex a, Complex b) {
  require_nonzero({a, b}, "h42_spectral_equation");
  const Complex s = (a * a - 1.0) / a;
  const Complex ab2 = a * a * b * b;
  const Complex q = ((a * a + b * b) * (1.0 + ab2) - 8.0 * ab2) / (4.0 * ab2);
  return palindromic_quartic(s, q);
}

ComplexPolynomial h43_spectral_equation(Complex a, Complex c, Complex d) {
  require_nonzero({a, c, d}, "h43_spectral_equation");
  const Complex s = (a * a - 1.0) / a;
  const Complex acd2 = a * a * c * c * d * d;
  const Complex q = ((c * c + d * d) * (a * a * a * a * c * c + d * d) - 8.0 * acd2) / (4.0 * acd2);
  return palindromic_quartic(s, q);
}

ComplexPolynomial h44_spectral_equation(Complex b, Complex c, Complex d) {
  require_nonzero({b, c, d}, "h44_spectral_equation");
  const Complex bcd = b * c * d;
  const Complex s = -(b * b * c * c - d * d) / bcd;
  const Complex q = ((c * c + d * d) * (b * b * b * b * c * c + d * d) - 8.0 * bcd * bcd) / (4.0 * bcd * bcd);
  return palindromic_quartic(s, q);
}

ComplexPolynomial h45_spectral_equation(Complex a, Complex c, Complex d) {
  require_nonzero({a, c, d}, "h45_spectral_equation");
  const Complex s = (a * a - 1.0) / a;
  const Complex acd2 = a * a * c * c * d * d;
  const Complex q = ((c * c + d * d) * (c * c + a * a * a * a * d * d) - 8.0 * acd2) / (4.0 * acd2);
  return palindromic_quartic(s, q);
}

SpectrumMultiset h4_spectrum_closed(Complex b, Complex c, Complex d) {
  require_nonzero({b, c, d}, "h4_spectrum_closed");
  const Complex bcd = b * c * d;
  const Complex s = b * b * d * d - c * c;
  const Complex r = std::sqrt(-(1.0 + b * b) * (1.0 + b * b) * c * c * d * d);
  std::vector<Complex> x;
  for (const Complex t : {s - r, s + r}) {
    const Complex w = std::sqrt(16.0 * bcd * bcd + t * t);
    x.push_back((t + w) / (4.0 * bcd));
    x.push_back((t - w) / (4.0 * bcd));
  }
  return SpectrumMultiset(std::move(x));
}

// ---- order 6 ---------------------------------------------------------------

ComplexMatrix bf(Complex d) {
  require_nonzero({d}, "bf");
  const std::array<Complex, 6> row{1.0, kI / d, -1.0 / d, -kI, -d, kI * d};
  return circulant(row);
}

std::array<Complex, 4> bf_quartic_roots() {
  const double s3 = std::sqrt(3.0);
  const double w = kSqrt2 * std::pow(3.0, 0.25);
  return {Complex{(1.0 - s3) / 2.0, w / 2.0}, Complex{(1.0 - s3) / 2.0, -w / 2.0}, Complex{(1.0 + w + s3) / 2.0, 0.0},
          Complex{(1.0 - w + s3) / 2.0, 0.0}};
}

ComplexMatrix bf_dephased(Complex d) {
  require_nonzero({d}, "bf_dephased");
  const Complex d2 = d * d, d3 = d2 * d;
  return from_rows({{1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
                    {1.0, -1.0, -1.0 / d, -1.0 / d2, 1.0 / d2, 1.0 / d},
                    {1.0, -d, 1.0, 1.0 / d2, -1.0 / d3, 1.0 / d2},
                    {1.0, -d2, d2, -1.0, 1.0 / d2, -1.0 / d2},
                    {1.0, d2, -d3, d2, 1.0, -1.0 / d},
                    {1.0, d, d2, -d2, -d, -1.0}});
}

ComplexMatrix d6() {
  const Complex i = kI;
  return from_rows({{1, 1, 1, 1, 1, 1},
                    {1, -1, i, i, -i, -i},
                    {1, -i, -1, 1, -1, i},
                    {1, -i, 1, -1, i, -1},
                    {1, i, -1, -i, 1, -1},
                    {1, i, -i, -1, -1, 1}});
}

ComplexMatrix d61() {
  const Complex i = kI;
  return from_rows({{1, 1, 1, 1, 1, 1},
                    {1, -1, 1, -1, i, -i},
                    {1, 1, -1, i, -1, -i},
                    {1, -i, -1, -1, 1, i},
                    {1, -1, -i, 1, -1, i},
                    {1, i, i, -i, -i, -1}});
}

ComplexMatrix m6(Complex a, Complex b, Complex c, Complex d, Complex e, Complex f) {
  require_nonzero({a, b, c, d, e, f}, "m6");
  const std::array<Complex, 3> ra{a, b, c}, rb{d, e, f};
  return assemble_sylvester(circulant(ra), circulant(rb));
}

ComplexMatrix m6_standard(Complex a, Complex b, Complex c, Complex d, Complex e, Complex f) {
  require_nonzero({a, b, c, d, e, f}, "m6_standard");
  return from_rows({{1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
                    {1.0, a * a / (b * c), a * b / (c * c), a * f / (c * d), a * d / (c * e), a * e / (c * f)},
                    {1.0, a * c / (b * b), a * a / (b * c), a * e / (b * d), a * f / (b * e), a * d / (b * f)},
                    {1.0, a * d / (b * f), a * d / (c * e), -1.0, -a * d / (c * e), -a * d / (b * f)},
                    {1.0, a * e / (b * d), a * e / (c * f), -a * e / (b * d), -1.0, -a * e / (c * f)},
                    {1.0, a * f / (b * e), a * f / (c * d), -a * f / (c * d), -a * f / (b * e), -1.0}});
}

std::pair<Complex, Complex> d61_af(Complex c, Complex d, Complex e, bool flip_inner) {
  require_nonzero({c, d, e}, "d61_af");
  const Complex s = std::sqrt(c * c * c * c * d * d * d * d * d * e);
  Complex t = std::sqrt(-(c * c * c * c * c * c * d * d * d * d * d * d) / (e * e));
  if (flip_inner) t = -t;
  return {-s / (c * d * d * e), e * e * t / (c * s)};
}

namespace {

ComplexMatrix d6x_family(Complex c, Complex d, Complex e, double sign, const ToleranceConfig& tol, const char* what) {
  for (bool flip : {false, true}) {
    const auto [a, f] = d61_af(c, d, e, flip);
    ComplexMatrix m = m6(sign * a, -c * d / e, c, d, e, sign * f);
    if (is_hadamard(m, tol)) return m;
  }
  throw Error(ErrorKind::SingularBranch, std::string(what) + ": no radical branch gives a Hadamard matrix");
}

}  // namespace

ComplexMatrix d61_family(Complex c, Complex d, Complex e, const ToleranceConfig& tol) {
  return d6x_family(c, d, e, 1.0, tol, "d61_family");
}

ComplexMatrix d62_family(Complex c, Complex d, Complex e, const ToleranceConfig& tol) {
  return d6x_family(c, d, e, -1.0, tol, "d62_family");
}

M6Solution m6_branch(Complex b, Complex c, Complex d, Complex e, int a_sign, int f_sign, const ToleranceConfig& tol) {
  const std::array<Complex, 5> rest{Complex{1.0}, b, c, d, e};
  const auto [ap, am] = c6_solve_quadratic(Param::a, rest, tol);
  const Complex a = (a_sign >= 0 ? ap : am).value;
  const std::array<Complex, 5> abcde{a, b, c, d, e};
  const auto [fp, fm] = c6_solve_f(abcde);
  const Complex f = (f_sign >= 0 ? fp : fm).value;
  return M6Solution{{a, b, c, d, e, f}, m6(a, b, c, d, e, f)};
}

// ---- order 8 and doubling --------------------------------------------------

ComplexMatrix m8(std::span<const Complex, 8> p) {
  return assemble_sylvester(circulant(p.first<4>()), circulant(p.last<4>()));
}

ComplexMatrix double_matrix(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const Complex> diag,
                            const ToleranceConfig& tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorKind::InvalidDimensions, "double_matrix: A and B must be square of the same order");
  }
  if (!is_hadamard(a, tol) || !is_hadamard(b, tol)) {
    throw Error(ErrorKind::InvalidParameter, "double_matrix: inputs must be Hadamard");
  }
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd dv = Eigen::VectorXcd::Ones(n);
  if (!diag.empty()) {
    if (static_cast<Eigen::Index>(diag.size()) != n) {
      throw Error(ErrorKind::InvalidDimensions, "double_matrix: diagonal length must equal the order");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!is_unimodular(diag[static_cast<std::size_t>(k)], tol.entry)) {
        throw Error(ErrorKind::InvalidParameter, "double_matrix: diagonal entries must be unimodular");
      }
      dv(k) = diag[static_cast<std::size_t>(k)];
    }
  }
  const ComplexMatrix db = dv.asDiagonal() * b;
  ComplexMatrix out(2 * n, 2 * n);
  out << a, db, a, -db;
  return out;
}

ComplexMatrix a4(Complex b, Complex c, Complex d) { return h4(b, c, d); }

ComplexMatrix b4(Complex f, Complex g, Complex h) {
  require_nonzero({f, g, h}, "b4");
  return m4(f, g, h, f * h / g);
}

ComplexMatrix d8a(Complex b, Complex c, Complex d, Complex f, Complex g, Complex h) {
  const ComplexMatrix a = a4(b, c, d);
  const ComplexMatrix bb = b4(f, g, h);
  const Eigen::Index n = a.rows();
  ComplexMatrix out(2 * n, 2 * n);
  out << a, bb, a, -bb;
  return out;
}

ComplexMatrix d81() {
  const Complex i = kI;
  const Complex p = Complex{1.0, 1.0} / kSqrt2;
  const Complex q = Complex{1.0, -1.0} / kSqrt2;
  return from_rows({{-1, 1, i, -i, p, q, -1, -i},
                    {-1, -1, i, i, -q, p, i, -1},
                    {-i, -i, 1, 1, -1, -i, -q, p},
                    {i, -i, -1, 1, i, -1, -p, -q},
                    {-1, 1, i, -i, -p, -q, 1, i},
                    {-1, -1, i, i, q, -p, -i, 1},
                    {-i, -i, 1, 1, 1, i, q, -p},
                    {i, -i, -1, 1, -i, 1, p, q}});
}

ComplexMatrix a6() {
  const Complex i = kI;
  const Complex p = Complex{1.0, 1.0} / kSqrt2;
  const Complex q = Complex{1.0, -1.0} / kSqrt2;
  return from_rows({{-q, 1, i, -i, -1, q},
                    {i, -q, 1, q, -i, -1},
                    {1, i, -q, -1, q, -i},
                    {i, p, -1, p, i, -1},
                    {-1, i, p, -1, p, i},
                    {p, -1, i, i, -1, p}});
}

ComplexMatrix b6() {
  const Complex i = kI;
  const Complex p = Complex{1.0, 1.0} / kSqrt2;
  const Complex q = Complex{1.0, -1.0} / kSqrt2;
  const Complex root = std::sqrt(Complex{1.0, 1.0});
  const double f4 = std::pow(2.0, 0.25);
  const Complex r = root / f4;
  const Complex u = f4 / root;
  const Complex v = std::pow(Complex{1.0, 1.0}, 1.5) / std::pow(2.0, 0.75);
  return from_rows({{1, p, i * r, u, q, -1},
                    {i * r, 1, p, -1, u, q},
                    {p, i * r, 1, q, -1, u},
                    {r, -1, p, -1, v, -q},
                    {p, r, -1, -q, -1, v},
                    {-1, p, r, v, -q, -1}});
}

}  // namespace hforge
