#include "kerrqnd/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kerrqnd/error.hpp"

namespace kerrqnd {

double dot(const Quad2& a, const Quad2& b) { return a.c * b.c + a.s * b.s; }

bool Mat2::is_finite() const {
  return std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) && std::isfinite(m22);
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Mat2 operator*(double k, const Mat2& m) { return {k * m.m11, k * m.m12, k * m.m21, k * m.m22}; }

Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

Quad2 operator*(const Mat2& m, const Quad2& v) {
  return {m.m11 * v.c + m.m12 * v.s, m.m21 * v.c + m.m22 * v.s};
}

double quadratic_form(const Mat2& m, const Quad2& v) {
  return v.c * (m.m11 * v.c + m.m12 * v.s) + v.s * (m.m21 * v.c + m.m22 * v.s);
}

GaussianMode GaussianMode::coherent(double alpha) {
  return {{std::sqrt(2.0) * alpha, 0.0}, Mat2::diagonal(0.5, 0.5)};
}

void GaussianMode::validate() const {
  auto fail = [](const std::string& what) { throw InvalidArgument("GaussianMode: " + what); };
  if (!std::isfinite(mean.c) || !std::isfinite(mean.s)) fail("non-finite mean");
  if (!cov.is_finite()) fail("non-finite covariance");
  if (std::abs(cov.m12 - cov.m21) > 1e-12 * std::max(1.0, std::abs(cov.m12))) {
    fail("covariance is not symmetric");
  }
  // Eigenvalues of the symmetric part.
  const double half_tr = 0.5 * cov.trace();
  const double disc = std::sqrt(0.25 * (cov.m11 - cov.m22) * (cov.m11 - cov.m22) + cov.m12 * cov.m12);
  if (half_tr - disc < -1e-12) fail("covariance is not positive semidefinite");
  if (cov.det() < 0.25 - 1e-9) {
    std::ostringstream os;
    os << "det(cov) = " << cov.det() << " violates the uncertainty bound 1/4";
    fail(os.str());
  }
}

Mat2 squeeze_matrix(const SqueezeOp& op) {
  const double ch = std::cosh(op.r);
  const double sh = std::sinh(op.r);
  const double c2 = std::cos(2.0 * op.theta);
  const double s2 = std::sin(2.0 * op.theta);
  return {ch + sh * c2, sh * s2, sh * s2, ch - sh * c2};
}

Mat2 spm_matrix(double n_p, double gamma_s) { return {1.0, 0.0, 2.0 * n_p * gamma_s, 1.0}; }

Quad2 homodyne_vector(double zeta) { return {std::cos(zeta), std::sin(zeta)}; }

GaussianMode propagate(const GaussianMode& state, const Mat2& m) {
  if (!m.is_finite()) throw InvalidArgument("propagate: non-finite matrix entry");
  GaussianMode out;
  out.mean = m * state.mean;
  out.cov = m * state.cov * m.transposed();
  const double off = 0.5 * (out.cov.m12 + out.cov.m21);
  out.cov.m12 = off;
  out.cov.m21 = off;
  return out;
}

double apply_loss_quadrature(double variance, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InvalidArgument("apply_loss_quadrature: eta must lie in (0, 1]");
  }
  if (!(variance >= 0.0)) throw InvalidArgument("apply_loss_quadrature: negative variance");
  return eta * variance + (1.0 - eta) * 0.5;
}

double db_to_factor(double db) { return std::pow(10.0, db / 10.0); }

double factor_to_db(double factor) {
  if (!(factor > 0.0)) throw InvalidArgument("factor_to_db: factor must be positive");
  return 10.0 * std::log10(factor);
}

double db_to_squeeze(double db) { return db * std::log(10.0) / 20.0; }

double squeeze_to_db(double r) { return factor_to_db(std::exp(2.0 * r)); }

}  // namespace kerrqnd
