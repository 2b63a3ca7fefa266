#include "param_polynomial.hpp"

#include <cctype>
#include <string>

namespace hforge::detail {

ParamPolynomial ParamPolynomial::parse(std::string_view text) {
  ParamPolynomial poly;
  double sign = 1.0;
  Term current;
  bool open = false;
  auto close = [&] {
    if (open) {
      current.coeff *= sign;
      poly.terms_.push_back(current);
    }
    current = Term{};
    open = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == ' ') continue;
    if (ch == '+' || ch == '-') {
      close();
      sign = (ch == '-') ? -1.0 : 1.0;
      continue;
    }
    if (ch >= 'a' && ch <= 'h') {
      open = true;
      int exponent = 1;
      if (i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        exponent = text[++i] - '0';
      }
      current.power[static_cast<std::size_t>(ch - 'a')] += exponent;
      continue;
    }
    throw Error(ErrorKind::InvalidParameter, std::string("ParamPolynomial: unexpected character '") + ch + "'");
  }
  close();
  return poly;
}

namespace {

Complex ipow(Complex z, int n) {
  Complex r{1.0};
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

}  // namespace

Complex ParamPolynomial::evaluate(std::span<const Complex> values) const {
  Complex acc{};
  for (const Term& t : terms_) {
    Complex mono{t.coeff};
    for (std::size_t v = 0; v < kVars; ++v) {
      if (t.power[v] == 0) continue;
      if (v >= values.size()) throw Error(ErrorKind::InvalidParameter, "ParamPolynomial: missing parameter");
      mono *= ipow(values[v], t.power[v]);
    }
    acc += mono;
  }
  return acc;
}

ComplexPolynomial ParamPolynomial::in(Param var, std::span<const Complex> values) const {
  const auto vi = static_cast<std::size_t>(var);
  std::vector<Complex> coeffs;
  for (const Term& t : terms_) {
    Complex mono{t.coeff};
    for (std::size_t v = 0; v < kVars; ++v) {
      if (v == vi || t.power[v] == 0) continue;
      if (v >= values.size()) throw Error(ErrorKind::InvalidParameter, "ParamPolynomial: missing parameter");
      mono *= ipow(values[v], t.power[v]);
    }
    const auto k = static_cast<std::size_t>(t.power[vi]);
    if (coeffs.size() <= k) coeffs.resize(k + 1, Complex{});
    coeffs[k] += mono;
  }
  return ComplexPolynomial(std::move(coeffs));
}

ParamPolynomial ParamPolynomial::partial(Param var) const {
  const auto vi = static_cast<std::size_t>(var);
  ParamPolynomial d;
  for (const Term& t : terms_) {
    if (t.power[vi] == 0) continue;
    Term dt = t;
    dt.coeff *= t.power[vi];
    dt.power[vi] -= 1;
    d.terms_.push_back(dt);
  }
  return d;
}

}  // namespace hforge::detail
