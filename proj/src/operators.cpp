#include "specflow/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace specflow {

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Matrix sq = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sq, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

HermitianOperator::HermitianOperator(Matrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error("invalid input", "Hermitian operator must be square and nonempty");
  }
  if (!matrix_.allFinite()) {
    throw Error("invalid input", "Hermitian operator has non-finite entries");
  }
  double scale = std::max(1.0, max_abs(matrix_));
  double defect = max_abs(matrix_ - matrix_.adjoint());
  if (defect > 1e-12 * scale) {
    throw Error("invalid input",
                "matrix is not Hermitian within tolerance (defect " +
                    std::to_string(defect) + ")");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
}

double HermitianOperator::scale() const {
  if (scale_ < 0.0) scale_ = std::max(1.0, operator_norm(matrix_));
  return scale_;
}

bool operator==(const HermitianOperator& a, const HermitianOperator& b) {
  return a.dim() == b.dim() && a.matrix() == b.matrix();
}

UnitaryMatrix::UnitaryMatrix(Matrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error("invalid input", "unitary matrix must be square and nonempty");
  }
  Matrix defect = matrix_ * matrix_.adjoint() - Matrix::Identity(matrix_.rows(), matrix_.cols());
  if (max_abs(defect) > 1e-12 * static_cast<double>(matrix_.rows())) {
    throw Error("invalid input", "matrix is not unitary within tolerance");
  }
}

EigenDecomposition eigh(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix());
  if (es.info() != Eigen::Success) {
    throw Error("eigensolver non-convergence",
                "dim " + std::to_string(op.dim()));
  }
  return EigenDecomposition{es.eigenvalues(), es.eigenvectors()};
}

int count_in_window(const RealVector& eigenvalues, double lo, double hi) {
  int n = 0;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] >= lo && eigenvalues[i] <= hi) ++n;
  }
  return n;
}

int count_negative(const RealVector& eigenvalues, double eps0) {
  int n = 0;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] < -eps0) ++n;
  }
  return n;
}

int count_nonnegative(const RealVector& eigenvalues, double eps0) {
  return static_cast<int>(eigenvalues.size()) - count_negative(eigenvalues, eps0);
}

Matrix resolvent(const HermitianOperator& op, Complex z) {
  EigenDecomposition ed = eigh(op);
  double nearest = std::numeric_limits<double>::infinity();
  double nearest_mu = 0.0;
  for (int i = 0; i < ed.eigenvalues.size(); ++i) {
    double d = std::abs(Complex(ed.eigenvalues[i], 0.0) - z);
    if (d < nearest) {
      nearest = d;
      nearest_mu = ed.eigenvalues[i];
    }
  }
  double tol = 1e-12 * op.scale();
  if (nearest <= tol) {
    throw Error("spectral point",
                "z is within tolerance of eigenvalue " + std::to_string(nearest_mu));
  }
  const int n = op.dim();
  Vector inv(n);
  for (int i = 0; i < n; ++i) inv[i] = 1.0 / (Complex(ed.eigenvalues[i], 0.0) - z);
  return ed.eigenvectors * inv.asDiagonal() * ed.eigenvectors.adjoint();
}

Matrix resolvent_series(const HermitianOperator& op, Complex z0, Complex z,
                        int terms) {
  if (terms < 1) throw Error("invalid input", "terms must be >= 1");
  Matrix r0 = resolvent(op, z0);
  double radius = 1.0 / operator_norm(r0);
  double dist = std::abs(z - z0);
  if (dist >= radius) {
    throw Error("radius exceeded",
                "|z - z0| = " + std::to_string(dist) +
                    " not below convergence radius " + std::to_string(radius));
  }
  Complex step = z - z0;
  Matrix power = r0;  // R(z0)^{k+1} at k = 0
  Complex coeff = 1.0;
  Matrix sum = power;
  for (int k = 1; k < terms; ++k) {
    power = power * r0;
    coeff *= step;
    sum += coeff * power;
  }
  return sum;
}

UnitaryMatrix cayley(const HermitianOperator& op) {
  const Complex i_unit(0.0, 1.0);
  Matrix inv_shift = resolvent(op, -i_unit);  // (T + i)^{-1}
  Matrix product = (op.matrix() - i_unit * Matrix::Identity(op.dim(), op.dim())) * inv_shift;
  Matrix via_identity =
      Matrix::Identity(op.dim(), op.dim()) - 2.0 * i_unit * inv_shift;
  if (max_abs(product - via_identity) > 1e-12 * op.scale()) {
    throw Error("invalid input", "Cayley transform forms disagree");
  }
  return UnitaryMatrix(product);
}

HermitianOperator inverse_cayley(const UnitaryMatrix& u) {
  const int n = u.dim();
  const Complex i_unit(0.0, 1.0);
  Matrix one_minus = Matrix::Identity(n, n) - u.matrix();
  Eigen::JacobiSVD<Matrix> svd(one_minus, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= 1e-10) {
    throw Error("not in Cayley range",
                "1 is in the spectrum of U within tolerance (sigma_min " +
                    std::to_string(smin) + ")");
  }
  Matrix t = i_unit * (Matrix::Identity(n, n) + u.matrix()) * one_minus.inverse();
  // imaginary round-off from the inversion is below the Hermiticity tolerance
  return HermitianOperator(0.5 * (t + t.adjoint().eval()));
}

double gap_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch", "gap_distance");
  return operator_norm(cayley(a).matrix() - cayley(b).matrix());
}

double delta_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch", "delta_distance");
  const Complex i_unit(0.0, 1.0);
  return operator_norm(resolvent(a, -i_unit) - resolvent(b, -i_unit));
}

HermitianOperator riesz_map(const HermitianOperator& op) {
  EigenDecomposition ed = eigh(op);
  const int n = op.dim();
  Vector mapped(n);
  for (int i = 0; i < n; ++i) {
    double mu = ed.eigenvalues[i];
    mapped[i] = mu / std::sqrt(1.0 + mu * mu);
  }
  Matrix f = ed.eigenvectors * mapped.asDiagonal() * ed.eigenvectors.adjoint();
  return HermitianOperator(0.5 * (f + f.adjoint().eval()));
}

double riesz_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch", "riesz_distance");
  return operator_norm(riesz_map(a).matrix() - riesz_map(b).matrix());
}

double norm_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch", "norm_distance");
  return operator_norm(a.matrix() - b.matrix());
}

}  // namespace specflow
