#include "hforge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace hforge {

// ---- ComplexPolynomial ---------------------------------------------------

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> ascending) : coeffs_(std::move(ascending)) {}

ComplexPolynomial::ComplexPolynomial(std::initializer_list<Complex> ascending) : coeffs_(ascending) {}

ComplexPolynomial ComplexPolynomial::from_descending(std::span<const Complex> descending) {
  return ComplexPolynomial(std::vector<Complex>(descending.rbegin(), descending.rend()));
}

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{Complex{1.0}};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return ComplexPolynomial(std::move(c));
}

int ComplexPolynomial::degree() const {
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] != Complex{}) return static_cast<int>(k);
  }
  return -1;
}

Complex ComplexPolynomial::leading() const {
  const int d = degree();
  return d < 0 ? Complex{} : coeffs_[static_cast<std::size_t>(d)];
}

double ComplexPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex ComplexPolynomial::operator()(Complex x) const {
  Complex acc{};
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return ComplexPolynomial{};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::monic() const {
  const Complex lead = leading();
  if (lead == Complex{}) throw Error(ErrorKind::InvalidParameter, "monic: zero polynomial");
  std::vector<Complex> c(coeffs_.begin(), coeffs_.begin() + degree() + 1);
  for (Complex& z : c) z /= lead;
  c.back() = Complex{1.0};
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::trimmed(double tol) const {
  const double cut = tol * max_abs_coeff();
  std::size_t n = coeffs_.size();
  while (n > 0 && std::abs(coeffs_[n - 1]) <= cut) --n;
  return ComplexPolynomial(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

ComplexPolynomial operator*(const ComplexPolynomial& p, const ComplexPolynomial& q) {
  if (p.coeffs_.empty() || q.coeffs_.empty()) return ComplexPolynomial{};
  std::vector<Complex> c(p.coeffs_.size() + q.coeffs_.size() - 1, Complex{});
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
  }
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator+(const ComplexPolynomial& p, const ComplexPolynomial& q) {
  std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()), Complex{});
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) c[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) c[i] += q.coeffs_[i];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator*(Complex s, const ComplexPolynomial& p) {
  std::vector<Complex> c = p.coeffs_;
  for (Complex& z : c) z *= s;
  return ComplexPolynomial(std::move(c));
}

double coeff_distance(const ComplexPolynomial& p, const ComplexPolynomial& q) {
  const std::size_t n = std::max(p.coefficients().size(), q.coefficients().size());
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(p.coeff(k) - q.coeff(k)));
  return d;
}

// ---- SpectrumMultiset ----------------------------------------------------

namespace {

// Kuhn's augmenting-path matching on the graph |a_i - b_j| <= tol. True iff
// every element of `a` gets a distinct partner in `b`.
bool threshold_matching(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() > b.size()) return false;
  std::vector<std::vector<std::size_t>> adj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (std::abs(a[i] - b[j]) <= tol) adj[i].push_back(j);
    }
    if (adj[i].empty()) return false;
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> owner(b.size(), kNone);
  std::vector<char> visited;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (owner[j] == kNone || self(self, owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    visited.assign(b.size(), 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

}  // namespace

bool SpectrumMultiset::matches(const SpectrumMultiset& other, double tol) const {
  if (values_.size() != other.values_.size()) return false;
  std::vector<bool> used(other.values_.size(), false);
  bool greedy_ok = true;
  for (const Complex& v : values_) {
    std::size_t best = used.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < other.values_.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(v - other.values_[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == used.size() || best_d > tol) {
      greedy_ok = false;
      break;
    }
    used[best] = true;
  }
  return greedy_ok || threshold_matching(values_, other.values_, tol);
}

bool SpectrumMultiset::contains(std::span<const Complex> needles, double tol) const {
  return threshold_matching(std::vector<Complex>(needles.begin(), needles.end()), values_, tol);
}

SpectrumMultiset SpectrumMultiset::sorted(double tol) const {
  auto key = [tol](const Complex& z) {
    return std::pair{std::round(z.real() / tol), std::round(z.imag() / tol)};
  };
  std::vector<Complex> v = values_;
  std::stable_sort(v.begin(), v.end(), [&](const Complex& x, const Complex& y) { return key(x) < key(y); });
  return SpectrumMultiset(std::move(v));
}

Complex SpectrumMultiset::product() const {
  Complex p{1.0};
  for (const Complex& z : values_) p *= z;
  return p;
}

// ---- poly_roots ----------------------------------------------------------

namespace {

double abs_poly_at(const std::vector<Complex>& c, double r) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * r + std::abs(c[k]);
  return acc;
}

// Aberth-Ehrlich simultaneous iteration on a polynomial with nonzero
// constant and leading coefficients.
std::vector<Complex> aberth(const ComplexPolynomial& p, int max_iterations, bool& converged) {
  const int n = p.degree();
  const ComplexPolynomial dp = p.derivative();
  const auto& c = p.coefficients();
  const double radius = std::pow(std::abs(c[0] / c[static_cast<std::size_t>(n)]), 1.0 / n);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.25) / n + 0.4);
  }
  std::vector<bool> done(z.size(), false);
  converged = false;
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const Complex pv = p(z[i]);
      const double bound = 4.0 * std::numeric_limits<double>::epsilon() * abs_poly_at(c, std::abs(z[i]));
      if (std::abs(pv) <= bound) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const Complex ratio = pv / dp(z[i]);
      Complex sum{};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(z[i])) done[i] = true;
    }
    if (all_done) {
      converged = true;
      break;
    }
  }
  if (!converged) converged = std::all_of(done.begin(), done.end(), [](bool b) { return b; });
  return z;
}

// A multiple root of multiplicity m comes out of the iteration as a cluster
// of m points scattered at distance ~eps^(1/m). The cluster is replaced by a
// simple root of p^(m-1) near its centroid when p^(j) vanishes there for all
// j < m.
void average_clusters(const ComplexPolynomial& p, std::vector<Complex>& roots) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(roots[i] - roots[j]) <= 1e-3 * std::max(1.0, std::abs(roots[i]))) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[find(i)].push_back(i);
  for (const auto& cl : clusters) {
    if (cl.size() < 2) continue;
    const std::size_t m = cl.size();
    Complex centre{};
    for (std::size_t i : cl) centre += roots[i];
    centre /= static_cast<double>(m);
    std::vector<ComplexPolynomial> ders{p};
    for (std::size_t j = 1; j < m; ++j) ders.push_back(ders.back().derivative());
    const ComplexPolynomial& top = ders.back();
    const ComplexPolynomial dtop = top.derivative();
    Complex mu = centre;
    for (int it = 0; it < 50; ++it) {
      const Complex d = dtop(mu);
      if (d == Complex{}) break;
      const Complex step = top(mu) / d;
      mu -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(mu))) break;
    }
    bool is_multiple = std::abs(mu - centre) <= 1e-3 * std::max(1.0, std::abs(centre));
    for (std::size_t j = 0; j + 1 < m && is_multiple; ++j) {
      const double scale = abs_poly_at(ders[j].coefficients(), std::abs(mu));
      is_multiple = std::abs(ders[j](mu)) <= 1e-6 * scale;
    }
    if (!is_multiple) continue;
    for (std::size_t i : cl) roots[i] = mu;
  }
}

}  // namespace

SpectrumMultiset poly_roots(const ComplexPolynomial& p_in, const RootOptions& opts) {
  const int deg = p_in.degree();
  if (deg < 1) throw Error(ErrorKind::InvalidParameter, "poly_roots: degree must be at least 1");
  for (const Complex& c : p_in.coefficients()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::InvalidParameter, "poly_roots: non-finite coefficient");
    }
  }
  const auto& all = p_in.coefficients();
  std::size_t zeros = 0;
  while (all[zeros] == Complex{}) ++zeros;
  std::vector<Complex> roots(zeros, Complex{});
  const ComplexPolynomial p(std::vector<Complex>(all.begin() + static_cast<std::ptrdiff_t>(zeros),
                                                 all.begin() + deg + 1));
  if (p.degree() == 1) {
    roots.push_back(-p.coeff(0) / p.coeff(1));
  } else if (p.degree() > 1) {
    bool converged = false;
    std::vector<Complex> z = aberth(p, opts.max_iterations, converged);
    // Newton polish; keep a step only if it lowers the residual.
    const ComplexPolynomial dp = p.derivative();
    for (Complex& r : z) {
      for (int it = 0; it < 3; ++it) {
        const Complex d = dp(r);
        if (d == Complex{}) break;
        const Complex cand = r - p(r) / d;
        if (std::abs(p(cand)) < std::abs(p(r))) r = cand;
        else break;
      }
    }
    average_clusters(p, z);
    roots.insert(roots.end(), z.begin(), z.end());
  }
  const double scale = p_in.max_abs_coeff();
  for (const Complex& r : roots) {
    const double backward = std::max(scale, abs_poly_at(all, std::abs(r)));
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || std::abs(p_in(r)) > opts.tol * backward) {
      throw Error(ErrorKind::RootFindingFailure, "poly_roots: residual above tolerance after iteration budget");
    }
  }
  return SpectrumMultiset(std::move(roots));
}

// ---- characteristic polynomials ------------------------------------------

ComplexPolynomial char_poly(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorKind::InvalidDimensions, "char_poly: square matrix required");
  const Eigen::Index n = m.rows();
  const ComplexMatrix a = m / std::sqrt(static_cast<double>(n));
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{});
  c[static_cast<std::size_t>(n)] = Complex{1.0};
  ComplexMatrix mk = ComplexMatrix::Zero(n, n);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
    c[static_cast<std::size_t>(n - k)] = -(a * mk).trace() / static_cast<double>(k);
  }
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial char_poly_from_spectrum(const ComplexMatrix& m) {
  const SpectrumMultiset s = spectrum(m);
  return ComplexPolynomial::from_roots(s.values());
}

// ---- reciprocal reduction -------------------------------------------------

bool is_reciprocal(const ComplexPolynomial& p, double tol) {
  const int deg = p.degree();
  if (deg < 2 || deg % 2 != 0) return false;
  const int k = deg / 2;
  const double bound = tol * p.max_abs_coeff();
  for (int j = 0; j <= deg; ++j) {
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    if (std::abs(p.coeff(static_cast<std::size_t>(deg - j)) - sign * p.coeff(static_cast<std::size_t>(j))) > bound) {
      return false;
    }
  }
  return true;
}

ComplexPolynomial reduce_reciprocal(const ComplexPolynomial& p, double tol) {
  if (!is_reciprocal(p, tol)) throw Error(ErrorKind::NotReciprocal, "polynomial is not reducible by y = 1/x - x");
  const int k = p.degree() / 2;
  // z_i(y) = x^{-i} + (-1)^i x^i satisfies z_0 = 2, z_1 = y,
  // z_{i+1} = y z_i + z_{i-1}; then x^{-k} p(x) = c_k + sum_i c_{k-i} z_i.
  const ComplexPolynomial y{Complex{0.0}, Complex{1.0}};
  ComplexPolynomial z_prev{Complex{2.0}};
  ComplexPolynomial z_cur = y;
  ComplexPolynomial q{p.coeff(static_cast<std::size_t>(k))};
  for (int i = 1; i <= k; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const Complex ci = 0.5 * (p.coeff(static_cast<std::size_t>(k - i)) + sign * p.coeff(static_cast<std::size_t>(k + i)));
    q = q + ci * z_cur;
    ComplexPolynomial z_next = y * z_cur + z_prev;
    z_prev = std::move(z_cur);
    z_cur = std::move(z_next);
  }
  const ComplexPolynomial monic_q = q.monic();
  // Identity check on 2k+1 points off the unit circle.
  const Complex c0 = q.leading();
  const double scale = p.max_abs_coeff();
  for (int s = 0; s <= 2 * k; ++s) {
    const Complex x = std::polar(1.15, 0.3 + 2.0 * std::numbers::pi * s / (2 * k + 1));
    const Complex lhs = std::pow(x, k) * monic_q(1.0 / x - x) * c0;
    if (std::abs(lhs - p(x)) > 1e3 * tol * scale * std::pow(2.5, 2 * k)) {
      throw Error(ErrorKind::NotReciprocal, "reduction identity check failed");
    }
  }
  return monic_q;
}

std::vector<Complex> lift_roots(std::span<const Complex> yroots) {
  std::vector<Complex> xs;
  xs.reserve(2 * yroots.size());
  for (const Complex& y : yroots) {
    const Complex s = std::sqrt(y * y + 4.0);
    // The roots multiply to -1; take the larger-modulus one directly.
    const Complex big = (std::abs(-y + s) >= std::abs(-y - s)) ? (-y + s) / 2.0 : (-y - s) / 2.0;
    xs.push_back(big);
    xs.push_back(-1.0 / big);
  }
  return xs;
}

// ---- spectra ---------------------------------------------------------------

SpectrumMultiset spectrum(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorKind::InvalidDimensions, "spectrum: square matrix required");
  const ComplexMatrix a = m / std::sqrt(static_cast<double>(m.rows()));
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::RootFindingFailure, "eigenvalue iteration failed");
  const auto& ev = solver.eigenvalues();
  return SpectrumMultiset(std::vector<Complex>(ev.data(), ev.data() + ev.size()));
}

bool is_normal(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const ComplexMatrix a = m / std::sqrt(static_cast<double>(m.rows()));
  const ComplexMatrix ah = a.adjoint();
  return (a * ah - ah * a).cwiseAbs().maxCoeff() <= tol;
}

bool unitary_equivalent(const ComplexMatrix& m1, const ComplexMatrix& m2, const ToleranceConfig& tol) {
  if (m1.rows() != m1.cols() || m2.rows() != m2.cols() || m1.rows() != m2.rows()) {
    throw Error(ErrorKind::InvalidDimensions, "unitary_equivalent: dimensions differ");
  }
  if (!is_normal(m1, tol.spec) || !is_normal(m2, tol.spec)) {
    throw Error(ErrorKind::NotNormal, "unitary_equivalent: input is not normal");
  }
  return spectrum(m1).matches(spectrum(m2), tol.spec);
}

}  // namespace hforge
