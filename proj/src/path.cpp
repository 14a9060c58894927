#include "specflow/path.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace specflow {

OperatorPath::OperatorPath(double t0, double t1, int dim, Evaluator evaluator,
                           Evaluator derivative)
    : t0_(t0), t1_(t1), dim_(dim), evaluator_(std::move(evaluator)),
      derivative_(std::move(derivative)) {
  if (!(t0_ < t1_)) throw Error("invalid input", "path requires t0 < t1");
  if (dim_ < 1) throw Error("invalid input", "path dimension must be positive");
  if (!evaluator_) throw Error("invalid input", "path needs an evaluator");
}

OperatorPath OperatorPath::from_samples(
    std::vector<std::pair<double, HermitianOperator>> samples) {
  if (samples.size() < 2) {
    throw Error("invalid input", "sampled path needs at least two knots");
  }
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  int dim = samples.front().second.dim();
  for (const auto& [t, op] : samples) {
    if (op.dim() != dim) throw Error("dimension mismatch", "path samples");
  }
  double t0 = samples.front().first;
  double t1 = samples.back().first;
  auto knots = std::make_shared<std::vector<std::pair<double, HermitianOperator>>>(
      std::move(samples));
  auto eval = [knots](double t) {
    const auto& ks = *knots;
    auto it = std::lower_bound(
        ks.begin(), ks.end(), t,
        [](const auto& k, double v) { return k.first < v; });
    if (it == ks.begin()) return it->second;
    if (it == ks.end()) return ks.back().second;
    const auto& [tr, right] = *it;
    const auto& [tl, left] = *(it - 1);
    if (tr == tl) return right;
    double w = (t - tl) / (tr - tl);
    return HermitianOperator((1.0 - w) * left.matrix() + w * right.matrix());
  };
  return OperatorPath(t0, t1, dim, std::move(eval));
}

HermitianOperator OperatorPath::at(double t) const {
  HermitianOperator op = evaluator_(std::clamp(t, t0_, t1_));
  if (op.dim() != dim_) throw Error("dimension mismatch", "path evaluation");
  return op;
}

HermitianOperator OperatorPath::derivative_at(double t) const {
  t = std::clamp(t, t0_, t1_);
  if (derivative_) return derivative_(t);
  double h = 1e-5 * length();
  if (t - h >= t0_ && t + h <= t1_) {
    return HermitianOperator((at(t + h).matrix() - at(t - h).matrix()) / (2.0 * h));
  }
  if (t + 2.0 * h <= t1_) {  // one-sided second order at the left boundary
    return HermitianOperator(
        (-3.0 * at(t).matrix() + 4.0 * at(t + h).matrix() - at(t + 2.0 * h).matrix()) /
        (2.0 * h));
  }
  if (t - 2.0 * h >= t0_) {
    return HermitianOperator(
        (3.0 * at(t).matrix() - 4.0 * at(t - h).matrix() + at(t - 2.0 * h).matrix()) /
        (2.0 * h));
  }
  throw Error("derivative unavailable", "interval too short for finite differences");
}

OperatorPath concatenate(const OperatorPath& p1, const OperatorPath& p2) {
  if (p1.dim() != p2.dim()) throw Error("dimension mismatch", "concatenate");
  HermitianOperator joint_a = p1.at(p1.t1());
  HermitianOperator joint_b = p2.at(p2.t0());
  if (max_abs(joint_a.matrix() - joint_b.matrix()) > 1e-10) {
    throw Error("endpoint mismatch",
                "p1 end and p2 start differ beyond tolerance");
  }
  // traversed over [0, 2]: first leg affinely on [0, 1], second on [1, 2]
  auto map1 = [p1](double s) { return p1.t0() + s * p1.length(); };
  auto map2 = [p2](double s) { return p2.t0() + (s - 1.0) * p2.length(); };
  auto eval = [p1, p2, map1, map2](double s) {
    return s <= 1.0 ? p1.at(map1(s)) : p2.at(map2(s));
  };
  OperatorPath::Evaluator deriv = nullptr;
  if (p1.has_derivative() && p2.has_derivative()) {
    deriv = [p1, p2, map1, map2](double s) {
      if (s <= 1.0) {
        return HermitianOperator(p1.derivative_at(map1(s)).matrix() * p1.length());
      }
      return HermitianOperator(p2.derivative_at(map2(s)).matrix() * p2.length());
    };
  }
  return OperatorPath(0.0, 2.0, p1.dim(), std::move(eval), std::move(deriv));
}

OperatorPath reverse(const OperatorPath& p) {
  double t0 = p.t0(), t1 = p.t1();
  auto eval = [p, t0, t1](double t) { return p.at(t0 + t1 - t); };
  OperatorPath::Evaluator deriv = nullptr;
  if (p.has_derivative()) {
    deriv = [p, t0, t1](double t) {
      return HermitianOperator(-p.derivative_at(t0 + t1 - t).matrix());
    };
  }
  return OperatorPath(t0, t1, p.dim(), std::move(eval), std::move(deriv));
}

OperatorPath constant_path(const HermitianOperator& op, double t0, double t1) {
  Matrix zero = Matrix::Zero(op.dim(), op.dim());
  return OperatorPath(
      t0, t1, op.dim(), [op](double) { return op; },
      [zero](double) { return HermitianOperator(zero); });
}

OperatorPath restrict(const OperatorPath& p, double a, double b) {
  if (!(p.t0() <= a && a < b && b <= p.t1())) {
    throw Error("invalid input", "restriction interval outside path domain");
  }
  OperatorPath::Evaluator deriv = nullptr;
  if (p.has_derivative()) {
    deriv = [p](double t) { return p.derivative_at(t); };
  }
  return OperatorPath(a, b, p.dim(), [p](double t) { return p.at(t); },
                      std::move(deriv));
}

OperatorPath shift(const OperatorPath& p, double delta) {
  int n = p.dim();
  auto eval = [p, delta, n](double t) {
    return HermitianOperator(p.at(t).matrix() +
                             delta * Matrix::Identity(n, n));
  };
  OperatorPath::Evaluator deriv = nullptr;
  if (p.has_derivative()) {
    deriv = [p](double t) { return p.derivative_at(t); };
  }
  return OperatorPath(p.t0(), p.t1(), n, std::move(eval), std::move(deriv));
}

}  // namespace specflow
