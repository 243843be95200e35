#pragma once

// Single-mode Gaussian primitives in the quadrature convention where the
// vacuum variance of each quadrature is 1/2.

namespace kerrqnd {

/// Cosine/sine quadrature pair.
struct Quad2 {
  double c = 0.0;
  double s = 0.0;

  friend bool operator==(const Quad2&, const Quad2&) = default;
};

double dot(const Quad2& a, const Quad2& b);

struct Mat2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diagonal(double a, double b) { return {a, 0.0, 0.0, b}; }

  double det() const { return m11 * m22 - m12 * m21; }
  double trace() const { return m11 + m22; }
  Mat2 transposed() const { return {m11, m21, m12, m22}; }
  bool is_finite() const;

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(double k, const Mat2& m);
Mat2 operator+(const Mat2& a, const Mat2& b);
Quad2 operator*(const Mat2& m, const Quad2& v);

/// Quadratic form v^T m v.
double quadratic_form(const Mat2& m, const Quad2& v);

/// Squeeze factor (nepers) and angle (radians). The angle enters only as 2*theta,
/// so it is meaningful mod pi. Also used for the output parametric amplifier.
struct SqueezeOp {
  double r = 0.0;
  double theta = 0.0;
};

/// Mean quadratures plus covariance matrix.
struct GaussianMode {
  Quad2 mean;
  Mat2 cov;

  static GaussianMode vacuum() { return {{}, Mat2::diagonal(0.5, 0.5)}; }

  /// Coherent state of real amplitude alpha (N = alpha^2), mean (sqrt(2)*alpha, 0).
  static GaussianMode coherent(double alpha);

  /// Throws InvalidArgument unless cov is symmetric, PSD and obeys det(cov) >= 1/4.
  void validate() const;
};

Mat2 squeeze_matrix(const SqueezeOp& op);

/// Linearized self-phase-modulation map [[1, 0], [2 n_p gamma_s, 1]].
Mat2 spm_matrix(double n_p, double gamma_s);

/// (cos zeta, sin zeta)
Quad2 homodyne_vector(double zeta);

/// mean -> m*mean, cov -> m*cov*m^T, followed by symmetrization.
/// Throws InvalidArgument for non-finite matrix entries.
GaussianMode propagate(const GaussianMode& state, const Mat2& m);

/// Lossy beamsplitter of power transmissivity eta acting on one quadrature
/// variance: eta*variance + (1-eta)/2. eta must lie in (0, 1].
double apply_loss_quadrature(double variance, double eta);

/// 10^(db/10). For squeezing this is e^{2r}.
double db_to_factor(double db);
/// Throws InvalidArgument for factor <= 0.
double factor_to_db(double factor);

/// Squeeze factor r such that e^{2r} corresponds to `db` decibels.
double db_to_squeeze(double db);
double squeeze_to_db(double r);

}  // namespace kerrqnd
