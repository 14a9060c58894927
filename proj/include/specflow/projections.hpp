#pragma once

#include "specflow/operators.hpp"

namespace specflow {

/// Circle in the complex plane used as integration contour; `nodes` is the
/// initial trapezoidal node count (doubled adaptively, capped at 2^14).
struct ContourDescriptor {
  Complex center;
  double radius = 0.0;
  int nodes = 16;
};

class SpectralProjection {
 public:
  SpectralProjection(Matrix m, double window_lo, double window_hi);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  int rank() const { return rank_; }
  double window_lo() const { return window_lo_; }
  double window_hi() const { return window_hi_; }

 private:
  Matrix matrix_;
  int rank_ = 0;
  double window_lo_ = 0.0, window_hi_ = 0.0;
};

/// chi_{[a,b]}(T) as the sum of eigenprojections over eigenvalues in [a, b].
/// Window endpoints must stay clear of the spectrum.
SpectralProjection eigen_projection(const HermitianOperator& op, double a,
                                    double b);

/// Riesz projection (1/2 pi i) * contour integral of (lambda - T)^{-1},
/// trapezoidal rule on the circle with node doubling.
SpectralProjection contour_projection(const HermitianOperator& op,
                                      const ContourDescriptor& c);

struct RankStabilityVerdict {
  double distance = 0.0;
  int rank_p = 0;
  int rank_q = 0;
  bool implication_holds = false;  // ||P-Q|| < 1 implies equal ranks
};

RankStabilityVerdict projection_rank_stability(const SpectralProjection& p,
                                               const SpectralProjection& q);

struct ContinuityReport {
  double lhs = 0.0;  // ||P_Gamma(T) - P_Gamma(S)||
  double rhs = 0.0;  // (1/2 pi) |Gamma| max_Gamma ||R_T - R_S||
  bool bound_holds = false;
};

ContinuityReport projection_continuity_bound(const HermitianOperator& t,
                                             const HermitianOperator& s,
                                             const ContourDescriptor& c);

}  // namespace specflow
