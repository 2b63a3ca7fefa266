#include "hforge/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hforge {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidDimensions: return "InvalidDimensions";
    case ErrorKind::SingularBranch: return "SingularBranch";
    case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorKind::DegenerateCubic: return "DegenerateCubic";
    case ErrorKind::NotReciprocal: return "NotReciprocal";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::NotNormal: return "NotNormal";
  }
  return "Unknown";
}

void ToleranceConfig::validate() const {
  for (double t : {entry, root, spec}) {
    if (!std::isfinite(t) || t <= 0.0) {
      throw Error(ErrorKind::InvalidParameter, "tolerances must be finite and positive");
    }
  }
}

ParamVector ParamVector::torus(Family family, std::vector<Complex> values) {
  ParamVector pv;
  pv.family = family;
  pv.on_torus.assign(values.size(), true);
  pv.values = std::move(values);
  return pv;
}

void ParamVector::validate(double tol) const {
  if (on_torus.size() != values.size()) {
    throw Error(ErrorKind::InvalidParameter, "torus flags do not match parameter count");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Complex z = values[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || z == Complex{}) {
      throw Error(ErrorKind::InvalidParameter, "parameter " + std::to_string(i) + " is zero or not finite");
    }
    if (on_torus[i] && !is_unimodular(z, tol)) {
      throw Error(ErrorKind::InvalidParameter, "parameter " + std::to_string(i) + " is not unimodular");
    }
  }
}

Complex phase(double theta) { return std::polar(1.0, theta); }

bool is_unimodular(Complex z, double tol) { return std::abs(std::abs(z) - 1.0) <= tol; }

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

namespace {

void require_nonzero(const ComplexMatrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == Complex{}) {
        throw Error(ErrorKind::InvalidParameter,
                    std::string(what) + ": zero entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::InvalidDimensions, std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

ComplexMatrix circulant(std::span<const Complex> first_row) {
  const auto k = static_cast<Eigen::Index>(first_row.size());
  if (k == 0) throw Error(ErrorKind::InvalidParameter, "circulant: empty first row");
  for (const Complex& z : first_row) {
    if (z == Complex{}) throw Error(ErrorKind::InvalidParameter, "circulant: zero entry");
  }
  ComplexMatrix m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      m(i, j) = first_row[static_cast<std::size_t>(((j - i) % k + k) % k)];
    }
  }
  return m;
}

ComplexMatrix negacirculant2(Complex a, Complex b) {
  if (a == Complex{} || b == Complex{}) {
    throw Error(ErrorKind::InvalidParameter, "negacirculant2: zero entry");
  }
  ComplexMatrix m(2, 2);
  m << a, b, -b, a;
  return m;
}

ComplexMatrix entrywise_inv_transpose(const ComplexMatrix& m) {
  require_nonzero(m, "entrywise_inv_transpose");
  ComplexMatrix r(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = 1.0 / m(j, i);
  }
  return r;
}

ComplexMatrix assemble_sylvester(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "assemble_sylvester");
  require_square(b, "assemble_sylvester");
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::InvalidDimensions, "assemble_sylvester: blocks differ in size");
  }
  const Eigen::Index n = a.rows();
  ComplexMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a;
  m.topRightCorner(n, n) = b;
  m.bottomLeftCorner(n, n) = entrywise_inv_transpose(b);
  m.bottomRightCorner(n, n) = -entrywise_inv_transpose(a);
  return m;
}

double orthogonality_residual(const ComplexMatrix& m) {
  require_square(m, "orthogonality_residual");
  const ComplexMatrix gram = m * entrywise_inv_transpose(m);
  const auto n = static_cast<double>(m.rows());
  return (gram - n * ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

bool is_hadamard(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols() || m.rows() == 0 || !all_finite(m)) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_unimodular(m(i, j), tol.entry)) return false;
    }
  }
  return orthogonality_residual(m) <= tol.entry * static_cast<double>(m.rows());
}

ComplexMatrix dephase(const ComplexMatrix& m) {
  require_square(m, "dephase");
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    if (m(k, 0) == Complex{} || m(0, k) == Complex{}) {
      throw Error(ErrorKind::InvalidParameter, "dephase: zero in first row or column");
    }
  }
  const Complex one{1.0, 0.0};
  ComplexMatrix r = m;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    const Complex pivot = r(i, 0);
    if (pivot == one) continue;
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) /= pivot;
    r(i, 0) = one;
  }
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    const Complex pivot = r(0, j);
    if (pivot == one) continue;
    if (pivot == Complex{}) throw Error(ErrorKind::InvalidParameter, "dephase: zero in first row after row scaling");
    for (Eigen::Index i = 0; i < r.rows(); ++i) r(i, j) /= pivot;
    r(0, j) = one;
  }
  return r;
}

namespace {

void require_permutation(const Permutation& p, std::size_t n) {
  if (p.size() != n) throw Error(ErrorKind::InvalidDimensions, "permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t v : p) {
    if (v >= n || seen[v]) throw Error(ErrorKind::InvalidParameter, "not a permutation");
    seen[v] = true;
  }
}

}  // namespace

ComplexMatrix permute_rows(const ComplexMatrix& m, const Permutation& perm) {
  require_permutation(perm, static_cast<std::size_t>(m.rows()));
  ComplexMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) r.row(i) = m.row(static_cast<Eigen::Index>(perm[i]));
  return r;
}

ComplexMatrix permute_cols(const ComplexMatrix& m, const Permutation& perm) {
  require_permutation(perm, static_cast<std::size_t>(m.cols()));
  ComplexMatrix r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) r.col(j) = m.col(static_cast<Eigen::Index>(perm[j]));
  return r;
}

bool check_equivalence_certificate(const ComplexMatrix& h1, const ComplexMatrix& h2,
                                   const EquivalenceCertificate& cert, const ToleranceConfig& tol) {
  const auto n = static_cast<std::size_t>(h1.rows());
  if (h1.rows() != h1.cols() || h2.rows() != h2.cols() || h1.rows() != h2.rows() ||
      cert.left_phases.size() != n || cert.right_phases.size() != n) {
    throw Error(ErrorKind::InvalidDimensions, "equivalence certificate: dimensions disagree");
  }
  for (const auto* phases : {&cert.left_phases, &cert.right_phases}) {
    for (const Complex& z : *phases) {
      if (!is_unimodular(z, tol.entry)) {
        throw Error(ErrorKind::InvalidParameter, "equivalence certificate: diagonal entry is not a phase");
      }
    }
  }
  ComplexMatrix x = permute_cols(permute_rows(h2, cert.row_perm), cert.col_perm);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      x(i, j) *= cert.left_phases[static_cast<std::size_t>(i)] * cert.right_phases[static_cast<std::size_t>(j)];
    }
  }
  return max_abs_diff(h1, x) <= tol.entry;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::InvalidDimensions, "max_abs_diff: shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace hforge
