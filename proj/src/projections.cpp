#include "specflow/projections.hpp"

#include <cmath>
#include <numbers>

namespace specflow {

namespace {

constexpr int kNodeCap = 1 << 14;

void require_clear_of_contour(const HermitianOperator& op,
                              const ContourDescriptor& c) {
  double margin = 1e-6 * op.scale();
  EigenDecomposition ed = eigh(op);
  for (int i = 0; i < ed.eigenvalues.size(); ++i) {
    double dist = std::abs(std::abs(Complex(ed.eigenvalues[i], 0.0) - c.center) -
                           c.radius);
    if (dist < margin) {
      throw Error("contour near spectrum",
                  "eigenvalue " + std::to_string(ed.eigenvalues[i]) +
                      " within safety margin of the circle");
    }
  }
}

// One trapezoidal pass with n nodes: (r / n) sum_j e^{i theta_j} (lambda_j - T)^{-1}.
Matrix contour_quadrature(const HermitianOperator& op,
                          const ContourDescriptor& c, int n) {
  Matrix acc = Matrix::Zero(op.dim(), op.dim());
  for (int j = 0; j < n; ++j) {
    double theta = 2.0 * std::numbers::pi * j / n;
    Complex phase = std::polar(1.0, theta);
    Complex lambda = c.center + c.radius * phase;
    // (lambda - T)^{-1} = -(T - lambda)^{-1}
    acc -= phase * resolvent(op, lambda);
  }
  return (c.radius / n) * acc;
}

}  // namespace

SpectralProjection::SpectralProjection(Matrix m, double window_lo,
                                       double window_hi)
    : matrix_(std::move(m)), window_lo_(window_lo), window_hi_(window_hi) {
  if (matrix_.rows() != matrix_.cols()) {
    throw Error("invalid input", "projection must be square");
  }
  if (max_abs(matrix_ * matrix_ - matrix_) > 1e-10 * std::max(1.0, max_abs(matrix_))) {
    throw Error("invalid input", "projection is not idempotent within tolerance");
  }
  if (max_abs(matrix_ - matrix_.adjoint()) > 1e-10) {
    throw Error("invalid input", "projection is not selfadjoint within tolerance");
  }
  double tr = matrix_.trace().real();
  double rounded = std::round(tr);
  if (std::abs(tr - rounded) > 1e-8) {
    throw Error("invalid input",
                "projection trace " + std::to_string(tr) + " is not near an integer");
  }
  rank_ = static_cast<int>(rounded);
}

SpectralProjection eigen_projection(const HermitianOperator& op, double a,
                                    double b) {
  if (!(a < b)) throw Error("invalid input", "window requires a < b");
  EigenDecomposition ed = eigh(op);
  double endpoint_tol = 1e-9 * op.scale();
  for (int i = 0; i < ed.eigenvalues.size(); ++i) {
    double mu = ed.eigenvalues[i];
    if (std::abs(mu - a) < endpoint_tol || std::abs(mu - b) < endpoint_tol) {
      throw Error("endpoint in spectrum",
                  "eigenvalue " + std::to_string(mu) + " at a window endpoint");
    }
  }
  Matrix p = Matrix::Zero(op.dim(), op.dim());
  for (int i = 0; i < ed.eigenvalues.size(); ++i) {
    if (ed.eigenvalues[i] >= a && ed.eigenvalues[i] <= b) {
      p += ed.eigenvectors.col(i) * ed.eigenvectors.col(i).adjoint();
    }
  }
  p = 0.5 * (p + p.adjoint().eval());
  return SpectralProjection(std::move(p), a, b);
}

SpectralProjection contour_projection(const HermitianOperator& op,
                                      const ContourDescriptor& c) {
  if (c.radius <= 0.0) throw Error("invalid input", "contour radius must be positive");
  if (c.nodes < 8) throw Error("invalid input", "contour needs at least 8 nodes");
  if (std::abs(c.center.imag()) > 1e-12 * op.scale()) {
    throw Error("invalid input", "spectral-window contours are centered on the real axis");
  }
  require_clear_of_contour(op, c);

  Matrix prev = contour_quadrature(op, c, c.nodes);
  double last_delta = std::numeric_limits<double>::infinity();
  for (int n = 2 * c.nodes; n <= kNodeCap; n *= 2) {
    Matrix next = contour_quadrature(op, c, n);
    last_delta = max_abs(next - prev);
    prev = std::move(next);
    if (last_delta <= 1e-12 * op.scale()) break;
    if (n == kNodeCap && last_delta > 1e-10 * op.scale()) {
      throw Error("quadrature stagnation",
                  "node cap reached; last two iterates differ by " +
                      std::to_string(last_delta));
    }
  }
  Matrix p = 0.5 * (prev + prev.adjoint().eval());
  double a = c.center.real() - c.radius;
  double b = c.center.real() + c.radius;
  return SpectralProjection(std::move(p), a, b);
}

RankStabilityVerdict projection_rank_stability(const SpectralProjection& p,
                                               const SpectralProjection& q) {
  if (p.dim() != q.dim()) throw Error("dimension mismatch", "projection_rank_stability");
  RankStabilityVerdict v;
  v.distance = operator_norm(p.matrix() - q.matrix());
  v.rank_p = p.rank();
  v.rank_q = q.rank();
  v.implication_holds = !(v.distance < 1.0 - 1e-10) || v.rank_p == v.rank_q;
  return v;
}

ContinuityReport projection_continuity_bound(const HermitianOperator& t,
                                             const HermitianOperator& s,
                                             const ContourDescriptor& c) {
  SpectralProjection pt = contour_projection(t, c);
  SpectralProjection ps = contour_projection(s, c);
  ContinuityReport rep;
  rep.lhs = operator_norm(pt.matrix() - ps.matrix());
  int n = std::max(c.nodes, 64);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double theta = 2.0 * std::numbers::pi * j / n;
    Complex lambda = c.center + c.radius * std::polar(1.0, theta);
    worst = std::max(worst, operator_norm(resolvent(t, lambda) - resolvent(s, lambda)));
  }
  double contour_length = 2.0 * std::numbers::pi * c.radius;
  rep.rhs = contour_length / (2.0 * std::numbers::pi) * worst;
  rep.bound_holds = rep.lhs <= rep.rhs + 1e-8 * std::max(t.scale(), s.scale());
  return rep;
}

}  // namespace specflow
