#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace specflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Error with a stable machine-readable kind tag ("spectral point",
/// "dimension mismatch", ...) in addition to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Largest singular value, computed from the Hermitian square.
double operator_norm(const Matrix& m);

/// Dense complex square matrix kept exactly Hermitian: inputs within
/// 1e-12 * scale of their conjugate transpose are symmetrized on
/// construction, anything further off is rejected.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

  /// max(1, ||T||_2); the reference scale for relative tolerances.
  double scale() const;

 private:
  Matrix matrix_;
  mutable double scale_ = -1.0;
};

bool operator==(const HermitianOperator& a, const HermitianOperator& b);

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

/// Eigenvalues ascending; eigenvectors orthonormal, column j paired with
/// eigenvalue j.
struct EigenDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

EigenDecomposition eigh(const HermitianOperator& op);

/// Eigenvalue counts relative to a signed zero tolerance.
int count_in_window(const RealVector& eigenvalues, double lo, double hi);
int count_negative(const RealVector& eigenvalues, double eps0);
int count_nonnegative(const RealVector& eigenvalues, double eps0);

/// (T - z)^{-1}. Throws "spectral point" if z is within tolerance of an
/// eigenvalue of T.
Matrix resolvent(const HermitianOperator& op, Complex z);

/// Truncated series sum_{k<terms} (z - z0)^k R(z0)^{k+1} with
/// R = (T - .)^{-1}. Requires |z - z0| < ||R(z0)||^{-1}.
Matrix resolvent_series(const HermitianOperator& op, Complex z0, Complex z,
                        int terms);

/// kappa(T) = (T - i)(T + i)^{-1}; unitary, 1 never an eigenvalue.
UnitaryMatrix cayley(const HermitianOperator& op);

/// T = i(I + U)(I - U)^{-1}; throws "not in Cayley range" when 1 is in
/// the spectrum of U within tolerance.
HermitianOperator inverse_cayley(const UnitaryMatrix& u);

double gap_distance(const HermitianOperator& a, const HermitianOperator& b);
double delta_distance(const HermitianOperator& a, const HermitianOperator& b);

/// F(T) = T (I + T^2)^{-1/2}; all eigenvalues land in (-1, 1).
HermitianOperator riesz_map(const HermitianOperator& op);
double riesz_distance(const HermitianOperator& a, const HermitianOperator& b);

/// Plain operator-norm distance ||T1 - T2||_2.
double norm_distance(const HermitianOperator& a, const HermitianOperator& b);

}  // namespace specflow
