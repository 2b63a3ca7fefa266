#pragma once

// Orthogonality constraints of the block-circulant families at orders 4, 6
// and 8, together with their closed-form and numeric solution branches.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hforge/core.hpp"
#include "hforge/spectra.hpp"

namespace hforge {

/// Family parameter names; the numeric value doubles as the index into the
/// ordered parameter list (a, b, c, ...).
enum class Param : int { a = 0, b, c, d, e, f, g, h };

char param_name(Param p);
/// Throws InvalidParameter for anything outside 'a'..'h'.
Param param_from_char(char c);

struct ConstraintResidual {
  int order = 0;
  std::vector<Complex> values;

  double max_abs() const;
};

struct SolutionBranch {
  Param solved = Param::a;
  std::string label;  ///< "+"/"-" for quadratics, "1".."3" for cubics
  Complex value;
  Complex discriminant;
};

/// Roots of A t^2 + B t + C = 0 as (+, -) with the principal square root of
/// the discriminant. A must be nonzero.
std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c, Complex* discriminant = nullptr);

// ---- order 4 ---------------------------------------------------------------

/// (b c + a d)(a c - b d)
Complex c4_residual(Complex a, Complex b, Complex c, Complex d);

/// Both closed-form solutions for `unknown`; the entry of `abcd` at the
/// unknown's position is ignored. Labels are "ac=bd" and "bc=-ad" after the
/// factor that vanishes.
std::vector<SolutionBranch> c4_branches(Param unknown, std::span<const Complex, 4> abcd);

// ---- order 6 ---------------------------------------------------------------

/// The two constraints of M6; both vanish iff M6 is inverse orthogonal.
ConstraintResidual c6_residuals(std::span<const Complex, 6> abcdef);

/// First constraint solved as a quadratic in f; (f+, f-).
std::pair<SolutionBranch, SolutionBranch> c6_solve_f(std::span<const Complex, 5> abcde);

/// Condition on (a..e) left once f is eliminated between the two
/// constraints.
Complex c6_reduced_residual(std::span<const Complex, 5> abcde);

/// c6_reduced_residual solved for one of a, b, c (quadratic in each). The
/// entry of `abcde` at `unknown` is ignored. Throws SingularBranch when the
/// leading coefficient vanishes (be = cd for unknown a).
std::pair<SolutionBranch, SolutionBranch> c6_solve_quadratic(Param unknown, std::span<const Complex, 5> abcde,
                                                             const ToleranceConfig& tol = {});

/// c6_reduced_residual solved for d or e (cubic in each). Roots ordered by
/// (Re, Im). Throws DegenerateCubic if the leading coefficient vanishes.
std::vector<SolutionBranch> c6_solve_cubic(Param unknown, std::span<const Complex, 5> abcde,
                                           const ToleranceConfig& tol = {});

/// (b e + c d)(b d^2 - c e^2); vanishing of either factor gives the
/// three-parameter families.
Complex hu_residual(Complex b, Complex c, Complex d, Complex e);

// ---- order 8 ---------------------------------------------------------------

ConstraintResidual c8_residuals(std::span<const Complex, 8> params);

/// First order-8 constraint solved as a quadratic in h; (h+, h-).
std::pair<SolutionBranch, SolutionBranch> c8_solve_h(std::span<const Complex, 7> abcdefg,
                                                     const ToleranceConfig& tol = {});

/// Square-root-free condition obtained from substituting h+- into the third
/// constraint.
Complex c8_reduced_residual(std::span<const Complex, 7> abcdefg);

struct NumericSolveOptions {
  int restarts = 64;
  int max_iterations = 200;
  double tol = 1e-10;       ///< bound on every normalized constraint residual
  bool torus_only = false;  ///< keep only unimodular solutions
  unsigned workers = 1;
};

struct NumericSolveResult {
  std::vector<ParamVector> solutions;  ///< full (a..h), in restart order
  int converged_restarts = 0;
  int failed_restarts = 0;

  bool no_convergence() const { return solutions.empty(); }
};

/// Newton search over the unfixed order-8 parameters. At least five entries
/// of `fixed` must be set and unimodular. Restart k starts from a torus point
/// drawn from a stream seeded by (seed, k), so the result depends only on
/// the inputs.
NumericSolveResult c8_numeric_solve(std::span<const std::optional<Complex>, 8> fixed, std::uint64_t seed,
                                    const NumericSolveOptions& opts = {});

}  // namespace hforge
