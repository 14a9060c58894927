#include "specflow/gallery.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace specflow {
namespace gallery {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Deterministic standard normal; avoids the implementation-defined
// std::normal_distribution.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double phi = kTwoPi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  Complex complex_normal() {
    double re = (*this)();
    double im = (*this)();
    return Complex(re, im) / std::sqrt(2.0);
  }

 private:
  double uniform() {
    // in (0, 1]
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
  }
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

Matrix random_hermitian_matrix(int dim, Gaussian& g) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = g.complex_normal();
  }
  return 0.5 * (m + m.adjoint().eval());
}

}  // namespace

HermitianOperator twisted_fourier(int K, double lambda) {
  if (K < 1) throw Error("invalid input", "twisted_fourier requires K >= 1");
  int dim = 2 * K + 1;
  Matrix m = Matrix::Zero(dim, dim);
  for (int k = -K; k <= K; ++k) {
    m(k + K, k + K) = Complex(kTwoPi * k + lambda, 0.0);
  }
  return HermitianOperator(std::move(m));
}

OperatorPath twisted_fourier_path(int K, double t0, double t1) {
  int dim = 2 * K + 1;
  Matrix eye = Matrix::Identity(dim, dim);
  return OperatorPath(
      t0, t1, dim, [K](double t) { return twisted_fourier(K, t); },
      [eye](double) { return HermitianOperator(eye); });
}

HermitianOperator twisted_fd(int n, double lambda) {
  if (n < 8) throw Error("invalid input", "twisted_fd requires n >= 8");
  double h = 1.0 / n;
  Complex up(0.0, 1.0 / (2.0 * h));
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    m(j, j + 1) = up;
    m(j + 1, j) = -up;
  }
  m(n - 1, 0) = up * std::polar(1.0, -lambda);
  m(0, n - 1) = -up * std::polar(1.0, lambda);
  return HermitianOperator(std::move(m));
}

OperatorPath twisted_fd_path(int n, double t0, double t1) {
  auto deriv = [n](double t) {
    // only the wrap entries depend on lambda
    double h = 1.0 / n;
    Complex up(0.0, 1.0 / (2.0 * h));
    Matrix m = Matrix::Zero(n, n);
    m(n - 1, 0) = up * Complex(0.0, -1.0) * std::polar(1.0, -t);
    m(0, n - 1) = -up * Complex(0.0, 1.0) * std::polar(1.0, t);
    return HermitianOperator(std::move(m));
  };
  return OperatorPath(t0, t1, n, [n](double t) { return twisted_fd(n, t); },
                      std::move(deriv));
}

HermitianOperator normalization_operator(int n_side, double lambda) {
  if (n_side < 1) throw Error("invalid input", "normalization requires n_side >= 1");
  int dim = 2 * n_side + 1;
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < n_side; ++i) m(i, i) = Complex(1.0, 0.0);
  m(n_side, n_side) = Complex(lambda, 0.0);
  for (int i = n_side + 1; i < dim; ++i) m(i, i) = Complex(-1.0, 0.0);
  return HermitianOperator(std::move(m));
}

OperatorPath normalization_path(int n_side, double t0, double t1) {
  int dim = 2 * n_side + 1;
  Matrix dot = Matrix::Zero(dim, dim);
  dot(n_side, n_side) = Complex(1.0, 0.0);
  return OperatorPath(
      t0, t1, dim,
      [n_side](double t) { return normalization_operator(n_side, t); },
      [dot](double) { return HermitianOperator(dot); });
}

OperatorPath linear_pencil(const HermitianOperator& a0,
                           const HermitianOperator& a1) {
  if (a0.dim() != a1.dim()) throw Error("dimension mismatch", "linear_pencil");
  Matrix m0 = a0.matrix(), m1 = a1.matrix();
  Matrix diff = m1 - m0;
  return OperatorPath(
      0.0, 1.0, a0.dim(),
      [m0, m1](double t) { return HermitianOperator((1.0 - t) * m0 + t * m1); },
      [diff](double) { return HermitianOperator(diff); });
}

OperatorPath random_smooth(int dim, std::uint64_t seed, int knots) {
  if (dim < 1) throw Error("invalid input", "random_smooth requires dim >= 1");
  if (knots < 2) throw Error("invalid input", "random_smooth requires knots >= 2");
  Gaussian g(seed);
  Matrix base = random_hermitian_matrix(dim, g);
  std::vector<Matrix> cos_coeff, sin_coeff;
  for (int j = 1; j <= knots; ++j) {
    // decaying amplitudes keep the path tame while the derivative stays O(1)
    double amp = 1.0 / j;
    cos_coeff.push_back(amp * random_hermitian_matrix(dim, g));
    sin_coeff.push_back(amp * random_hermitian_matrix(dim, g));
  }
  // half-integer frequencies so the endpoints are genuinely different
  auto eval = [base, cos_coeff, sin_coeff](double t) {
    Matrix m = base;
    for (size_t j = 0; j < cos_coeff.size(); ++j) {
      double w = std::numbers::pi * static_cast<double>(j + 1);
      m += std::cos(w * t) * cos_coeff[j] + std::sin(w * t) * sin_coeff[j];
    }
    return HermitianOperator(std::move(m));
  };
  auto deriv = [dim, cos_coeff, sin_coeff](double t) {
    Matrix m = Matrix::Zero(dim, dim);
    for (size_t j = 0; j < cos_coeff.size(); ++j) {
      double w = std::numbers::pi * static_cast<double>(j + 1);
      m += -w * std::sin(w * t) * cos_coeff[j] + w * std::cos(w * t) * sin_coeff[j];
    }
    return HermitianOperator(std::move(m));
  };
  return OperatorPath(0.0, 1.0, dim, std::move(eval), std::move(deriv));
}

HermitianOperator random_hermitian(int dim, std::uint64_t seed) {
  Gaussian g(seed);
  return HermitianOperator(random_hermitian_matrix(dim, g));
}

}  // namespace gallery
}  // namespace specflow
