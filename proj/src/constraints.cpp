#include "hforge/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "param_polynomial.hpp"

namespace hforge {

namespace {

using detail::ParamPolynomial;

const ParamPolynomial& con6_first() {
  static const ParamPolynomial p = ParamPolynomial::parse("abcd2e + a2bdef + b2cdef + ac2def + abce2f + abcdf2");
  return p;
}
const ParamPolynomial& con6_second() {
  static const ParamPolynomial p = ParamPolynomial::parse("abcde2 + abcd2f + ab2def + a2cdef + bc2def + abcef2");
  return p;
}
const ParamPolynomial& con6_reduced() {
  static const ParamPolynomial p =
      ParamPolynomial::parse("-abcd3 - ab2d2e - a2cd2e - bc2d2e + a2bde2 + b2cde2 + ac2de2 + abce3");
  return p;
}
const ParamPolynomial& con8(int k) {
  static const std::array<ParamPolynomial, 3> p{
      ParamPolynomial::parse("abcde2fg + a2bcefgh + b2cdefgh + ac2defgh + abd2efgh + abcdf2gh + abcdeg2h + abcdefh2"),
      ParamPolynomial::parse("abcdef2g + abcde2fh + ab2cefgh + a2bdefgh + bc2defgh + acd2efgh + abcdfg2h + abcdegh2"),
      ParamPolynomial::parse("abcdefg2 + abcdef2h + abcde2gh + abc2efgh + ab2defgh + a2cdefgh + bcd2efgh + abcdfgh2"),
  };
  return p[static_cast<std::size_t>(k)];
}
const ParamPolynomial& con8_reduced() {
  static const ParamPolynomial p = ParamPolynomial::parse(
      "a2bcefg2 + b2cdefg2 + ac2defg2 + abd2efg2 + abcdf2g2 + abcdeg3"
      " - abcde2f2 - abcde3g - abc2e2fg - ab2de2fg - a2cde2fg - bcd2e2fg");
  return p;
}

void require_nonzero(std::span<const Complex> values, const char* what, std::optional<std::size_t> skip = {}) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (skip && *skip == i) continue;
    if (values[i] == Complex{} || !std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw Error(ErrorKind::InvalidParameter,
                  std::string(what) + ": parameter " + param_name(static_cast<Param>(i)) + " must be nonzero and finite");
    }
  }
}

double coefficient_scale(const ComplexPolynomial& p) { return std::max(p.max_abs_coeff(), 1e-300); }

std::pair<SolutionBranch, SolutionBranch> quadratic_branches(Param unknown, const ComplexPolynomial& p,
                                                             double tol, ErrorKind on_degenerate, const char* what) {
  if (p.coefficients().size() < 3 || std::abs(p.coeff(2)) <= tol * coefficient_scale(p)) {
    throw Error(on_degenerate, std::string(what) + ": leading coefficient vanishes");
  }
  Complex disc;
  const auto [plus, minus] = quadratic_roots(p.coeff(2), p.coeff(1), p.coeff(0), &disc);
  return {SolutionBranch{unknown, "+", plus, disc}, SolutionBranch{unknown, "-", minus, disc}};
}

}  // namespace

char param_name(Param p) { return static_cast<char>('a' + static_cast<int>(p)); }

Param param_from_char(char c) {
  if (c < 'a' || c > 'h') throw Error(ErrorKind::InvalidParameter, std::string("unknown parameter '") + c + "'");
  return static_cast<Param>(c - 'a');
}

double ConstraintResidual::max_abs() const {
  double m = 0.0;
  for (const Complex& v : values) m = std::max(m, std::abs(v));
  return m;
}

std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c, Complex* discriminant) {
  if (a == Complex{}) throw Error(ErrorKind::DegenerateQuadratic, "quadratic_roots: zero leading coefficient");
  const Complex disc = b * b - 4.0 * a * c;
  if (discriminant) *discriminant = disc;
  const Complex s = std::sqrt(disc);
  return {(-b + s) / (2.0 * a), (-b - s) / (2.0 * a)};
}

// ---- order 4 ---------------------------------------------------------------

Complex c4_residual(Complex a, Complex b, Complex c, Complex d) { return (b * c + a * d) * (a * c - b * d); }

std::vector<SolutionBranch> c4_branches(Param unknown, std::span<const Complex, 4> abcd) {
  const auto idx = static_cast<std::size_t>(unknown);
  if (idx > 3) throw Error(ErrorKind::InvalidParameter, "c4_branches: unknown must be one of a, b, c, d");
  require_nonzero(abcd, "c4_branches", idx);
  const Complex a = abcd[0], b = abcd[1], c = abcd[2], d = abcd[3];
  Complex first, second;
  switch (unknown) {
    case Param::a: first = b * d / c; second = -b * c / d; break;
    case Param::b: first = a * c / d; second = -a * d / c; break;
    case Param::c: first = b * d / a; second = -a * d / b; break;
    default: first = a * c / b; second = -b * c / a; break;
  }
  return {SolutionBranch{unknown, "ac=bd", first, Complex{}}, SolutionBranch{unknown, "bc=-ad", second, Complex{}}};
}

// ---- order 6 ---------------------------------------------------------------

ConstraintResidual c6_residuals(std::span<const Complex, 6> abcdef) {
  return ConstraintResidual{6, {con6_first().evaluate(abcdef), con6_second().evaluate(abcdef)}};
}

std::pair<SolutionBranch, SolutionBranch> c6_solve_f(std::span<const Complex, 5> abcde) {
  require_nonzero(abcde, "c6_solve_f");
  std::array<Complex, 6> full{};
  std::copy(abcde.begin(), abcde.end(), full.begin());
  return quadratic_branches(Param::f, con6_first().in(Param::f, full), 0.0, ErrorKind::DegenerateQuadratic,
                            "c6_solve_f");
}

Complex c6_reduced_residual(std::span<const Complex, 5> abcde) { return con6_reduced().evaluate(abcde); }

std::pair<SolutionBranch, SolutionBranch> c6_solve_quadratic(Param unknown, std::span<const Complex, 5> abcde,
                                                             const ToleranceConfig& tol) {
  if (unknown != Param::a && unknown != Param::b && unknown != Param::c) {
    throw Error(ErrorKind::InvalidParameter, "c6_solve_quadratic: unknown must be a, b or c");
  }
  require_nonzero(abcde, "c6_solve_quadratic", static_cast<std::size_t>(unknown));
  return quadratic_branches(unknown, con6_reduced().in(unknown, abcde), tol.entry, ErrorKind::SingularBranch,
                            "c6_solve_quadratic");
}

std::vector<SolutionBranch> c6_solve_cubic(Param unknown, std::span<const Complex, 5> abcde,
                                           const ToleranceConfig& tol) {
  if (unknown != Param::d && unknown != Param::e) {
    throw Error(ErrorKind::InvalidParameter, "c6_solve_cubic: unknown must be d or e");
  }
  require_nonzero(abcde, "c6_solve_cubic", static_cast<std::size_t>(unknown));
  const ComplexPolynomial p = con6_reduced().in(unknown, abcde);
  if (p.coefficients().size() < 4 || std::abs(p.coeff(3)) <= tol.entry * coefficient_scale(p)) {
    throw Error(ErrorKind::DegenerateCubic, "c6_solve_cubic: leading coefficient vanishes");
  }
  std::vector<Complex> roots = poly_roots(p, RootOptions{500, tol.root}).values();
  std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
    return std::pair{x.real(), x.imag()} < std::pair{y.real(), y.imag()};
  });
  std::vector<SolutionBranch> out;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    out.push_back(SolutionBranch{unknown, std::to_string(k + 1), roots[k], Complex{}});
  }
  return out;
}

Complex hu_residual(Complex b, Complex c, Complex d, Complex e) {
  return (b * e + c * d) * (b * d * d - c * e * e);
}

// ---- order 8 ---------------------------------------------------------------

ConstraintResidual c8_residuals(std::span<const Complex, 8> params) {
  return ConstraintResidual{8, {con8(0).evaluate(params), con8(1).evaluate(params), con8(2).evaluate(params)}};
}

std::pair<SolutionBranch, SolutionBranch> c8_solve_h(std::span<const Complex, 7> abcdefg, const ToleranceConfig& tol) {
  require_nonzero(abcdefg, "c8_solve_h");
  std::array<Complex, 8> full{};
  std::copy(abcdefg.begin(), abcdefg.end(), full.begin());
  return quadratic_branches(Param::h, con8(0).in(Param::h, full), tol.entry, ErrorKind::DegenerateQuadratic,
                            "c8_solve_h");
}

Complex c8_reduced_residual(std::span<const Complex, 7> abcdefg) { return con8_reduced().evaluate(abcdefg); }

namespace {

struct RestartOutcome {
  bool converged = false;
  std::array<Complex, 8> params{};
};

// Constraint values divided by the product of all parameters: these are
// exactly the off-diagonal Gram entries of M8 * inv_t(M8).
RestartOutcome newton_restart(const std::array<std::optional<Complex>, 8>& fixed, const std::vector<std::size_t>& unknown,
                              std::uint64_t seed, int restart, const NumericSolveOptions& opts) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  RestartOutcome out;
  auto& x = out.params;
  for (std::size_t i = 0; i < 8; ++i) x[i] = fixed[i] ? *fixed[i] : phase(angle(rng));

  static const std::array<std::array<ParamPolynomial, 8>, 3> partials = [] {
    std::array<std::array<ParamPolynomial, 8>, 3> d;
    for (int k = 0; k < 3; ++k) {
      for (int v = 0; v < 8; ++v) d[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] = con8(k).partial(static_cast<Param>(v));
    }
    return d;
  }();

  const auto n_unknown = static_cast<Eigen::Index>(unknown.size());
  Eigen::VectorXcd residual(3);
  Eigen::MatrixXcd jac(3, n_unknown);
  for (int it = 0; it < opts.max_iterations; ++it) {
    Complex prod{1.0};
    for (const Complex& z : x) prod *= z;
    for (int k = 0; k < 3; ++k) residual(k) = con8(k).evaluate(x) / prod;
    if (residual.cwiseAbs().maxCoeff() <= opts.tol) {
      out.converged = true;
      return out;
    }
    for (int k = 0; k < 3; ++k) {
      for (Eigen::Index u = 0; u < n_unknown; ++u) {
        const std::size_t v = unknown[static_cast<std::size_t>(u)];
        jac(k, u) = partials[static_cast<std::size_t>(k)][v].evaluate(x) / prod - residual(k) / x[v];
      }
    }
    Eigen::VectorXcd step = (n_unknown == 3) ? Eigen::VectorXcd(jac.fullPivLu().solve(-residual))
                                             : Eigen::VectorXcd(jac.colPivHouseholderQr().solve(-residual));
    if (!step.allFinite()) return out;
    for (Eigen::Index u = 0; u < n_unknown; ++u) x[unknown[static_cast<std::size_t>(u)]] += step(u);
    for (std::size_t v : unknown) {
      const double r = std::abs(x[v]);
      if (!(r > 1e-8 && r < 1e8)) return out;
    }
  }
  return out;
}

}  // namespace

NumericSolveResult c8_numeric_solve(std::span<const std::optional<Complex>, 8> fixed, std::uint64_t seed,
                                    const NumericSolveOptions& opts) {
  std::array<std::optional<Complex>, 8> fx;
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < 8; ++i) {
    fx[i] = fixed[i];
    if (!fixed[i]) {
      unknown.push_back(i);
    } else if (!is_unimodular(*fixed[i], 1e-9)) {
      throw Error(ErrorKind::InvalidParameter, "c8_numeric_solve: fixed parameters must lie on the torus");
    }
  }
  if (unknown.size() > 3) throw Error(ErrorKind::InvalidParameter, "c8_numeric_solve: at least five parameters must be fixed");
  if (opts.restarts < 1 || opts.max_iterations < 1) throw Error(ErrorKind::InvalidParameter, "c8_numeric_solve: empty budget");

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
  if (unknown.empty()) {
    // Nothing to solve for: a single verification of the fixed point.
    outcomes.resize(1);
    NumericSolveOptions once = opts;
    once.max_iterations = 1;
    outcomes[0] = newton_restart(fx, unknown, seed, 0, once);
  } else {
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(opts.restarts)));
    auto run = [&](unsigned w) {
      for (std::size_t k = w; k < outcomes.size(); k += workers) {
        outcomes[k] = newton_restart(fx, unknown, seed, static_cast<int>(k), opts);
      }
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
  }

  NumericSolveResult result;
  for (const RestartOutcome& o : outcomes) {
    if (!o.converged) {
      ++result.failed_restarts;
      continue;
    }
    ++result.converged_restarts;
    if (opts.torus_only &&
        !std::all_of(o.params.begin(), o.params.end(), [](const Complex& z) { return is_unimodular(z, 1e-9); })) {
      continue;
    }
    const bool duplicate = std::any_of(result.solutions.begin(), result.solutions.end(), [&](const ParamVector& s) {
      for (std::size_t i = 0; i < 8; ++i) {
        if (std::abs(s.values[i] - o.params[i]) > 1e-6) return false;
      }
      return true;
    });
    if (duplicate) continue;
    ParamVector pv;
    pv.family = Family::M8;
    pv.values.assign(o.params.begin(), o.params.end());
    for (const Complex& z : o.params) pv.on_torus.push_back(is_unimodular(z, 1e-9));
    result.solutions.push_back(std::move(pv));
  }
  return result;
}

}  // namespace hforge
