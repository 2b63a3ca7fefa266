#pragma once

// Sparse multivariate polynomial over the family parameters a..h, written
// as in "abcd2e + a2bdef - ..." (letter, optional exponent digit).

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "hforge/constraints.hpp"

namespace hforge::detail {

class ParamPolynomial {
 public:
  static constexpr int kVars = 8;

  struct Term {
    double coeff = 1.0;
    std::array<int, kVars> power{};
  };

  static ParamPolynomial parse(std::string_view text);

  Complex evaluate(std::span<const Complex> values) const;
  /// Univariate polynomial in `var` with the other parameters substituted.
  ComplexPolynomial in(Param var, std::span<const Complex> values) const;
  ParamPolynomial partial(Param var) const;

  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

}  // namespace hforge::detail
