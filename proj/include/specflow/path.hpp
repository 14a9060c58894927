#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "specflow/operators.hpp"

namespace specflow {

/// A map t -> HermitianOperator of fixed dimension on a compact interval,
/// with an optional analytic pathwise derivative. Sampled paths use linear
/// interpolation between knots (declared, never implicit, in descriptors).
class OperatorPath {
 public:
  using Evaluator = std::function<HermitianOperator(double)>;

  OperatorPath(double t0, double t1, int dim, Evaluator evaluator,
               Evaluator derivative = nullptr);

  static OperatorPath from_samples(
      std::vector<std::pair<double, HermitianOperator>> samples);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double length() const { return t1_ - t0_; }
  int dim() const { return dim_; }
  bool has_derivative() const { return static_cast<bool>(derivative_); }

  HermitianOperator at(double t) const;

  /// Analytic derivative when present, otherwise second-order finite
  /// difference with step 1e-5 * (t1 - t0) (one-sided at the boundary).
  HermitianOperator derivative_at(double t) const;

 private:
  double t0_, t1_;
  int dim_;
  Evaluator evaluator_;
  Evaluator derivative_;
};

/// Joins p1 and p2 at p1's end; operators there must agree to 1e-10.
OperatorPath concatenate(const OperatorPath& p1, const OperatorPath& p2);

OperatorPath reverse(const OperatorPath& p);

OperatorPath constant_path(const HermitianOperator& op, double t0 = 0.0,
                           double t1 = 1.0);

/// Restriction of p to [a, b] (subset of its parameter interval).
OperatorPath restrict(const OperatorPath& p, double a, double b);

/// Shifted path t -> A(t) + delta * I.
OperatorPath shift(const OperatorPath& p, double delta);

}  // namespace specflow
