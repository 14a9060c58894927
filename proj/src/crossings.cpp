#include "specflow/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace specflow {

namespace {

struct Probe {
  double nearest = 0.0;  // signed eigenvalue of smallest magnitude
  double min_abs = 0.0;
  double kernel_tol = 0.0;
};

class Scanner {
 public:
  Scanner(const OperatorPath& path, const CrossingOptions& opts)
      : path_(path), opts_(opts) {}

  const EigenDecomposition& eig(double t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, eigh(path_.at(t))).first;
    return it->second;
  }

  Probe probe(double t) {
    const auto& ev = eig(t).eigenvalues;
    int best = 0;
    for (int i = 1; i < ev.size(); ++i) {
      // on magnitude ties keep the larger eigenvalue
      if (std::abs(ev[i]) <= std::abs(ev[best])) best = i;
    }
    double norm = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
    return Probe{ev[best], std::abs(ev[best]),
                 opts_.kernel_tol_rel * std::max(1.0, norm)};
  }

 private:
  const OperatorPath& path_;
  const CrossingOptions& opts_;
  std::map<double, EigenDecomposition> cache_;
};

double bisect_sign_change(Scanner& sc, double l, double r, double tol) {
  double fl = sc.probe(l).nearest;
  while (r - l > tol) {
    double m = 0.5 * (l + r);
    double fm = sc.probe(m).nearest;
    if ((fl < 0.0) == (fm < 0.0)) {
      l = m;
      fl = fm;
    } else {
      r = m;
    }
  }
  return 0.5 * (l + r);
}

double golden_minimize(Scanner& sc, double l, double r, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = l, b = r;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = sc.probe(x1).min_abs;
  double f2 = sc.probe(x2).min_abs;
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = sc.probe(x1).min_abs;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = sc.probe(x2).min_abs;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Crossing crossing_form(const OperatorPath& path, double t,
                       const Matrix& kernel_basis, const CrossingOptions& opts) {
  if (kernel_basis.cols() < 1) {
    throw Error("invalid input", "empty kernel basis");
  }
  Matrix gram = kernel_basis.adjoint() * kernel_basis;
  if (max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) > 1e-10) {
    throw Error("invalid input", "kernel basis is not orthonormal");
  }
  HermitianOperator dot = path.derivative_at(t);
  Matrix form = kernel_basis.adjoint() * dot.matrix() * kernel_basis;
  form = 0.5 * (form + form.adjoint().eval());
  EigenDecomposition fd = eigh(HermitianOperator(form));
  double thr = opts.form_tol_rel * std::max(1.0, operator_norm(dot.matrix()));
  Crossing c;
  c.t = t;
  c.kernel_basis = kernel_basis;
  c.form = form;
  for (int i = 0; i < fd.eigenvalues.size(); ++i) {
    double g = fd.eigenvalues[i];
    if (std::abs(g) <= thr) ++c.inertia.null;
    else if (g > 0.0) ++c.inertia.positive;
    else ++c.inertia.negative;
  }
  return c;
}

std::vector<Crossing> find_crossings(const OperatorPath& path,
                                     const CrossingOptions& opts) {
  Scanner sc(path, opts);
  const double len = path.length();
  const double abs_tol = opts.param_tol_rel * len;
  const int n = std::max(16, opts.scan_samples);

  std::vector<double> ts(n + 1);
  std::vector<Probe> probes(n + 1);
  for (int i = 0; i <= n; ++i) {
    ts[i] = path.t0() + len * i / n;
    probes[i] = sc.probe(ts[i]);
  }

  std::vector<double> instants;
  if (probes.front().min_abs <= probes.front().kernel_tol) instants.push_back(ts.front());
  if (probes.back().min_abs <= probes.back().kernel_tol) instants.push_back(ts.back());

  for (int i = 0; i + 1 <= n; ++i) {
    bool l_kernel = probes[i].min_abs <= probes[i].kernel_tol;
    bool r_kernel = probes[i + 1].min_abs <= probes[i + 1].kernel_tol;
    if (l_kernel || r_kernel) continue;  // handled as grid-point crossings below
    if ((probes[i].nearest < 0.0) == (probes[i + 1].nearest < 0.0)) continue;
    // the sign of `nearest` flips on near-ties of +-mu pairs too; a real
    // crossing needs the small eigenvalue to be within reach of zero given
    // how far eigenvalues actually move across this step
    const auto& lo = sc.eig(ts[i]).eigenvalues;
    const auto& hi = sc.eig(ts[i + 1]).eigenvalues;
    double movement = 0.0;
    for (int j = 0; j < lo.size(); ++j) {
      movement = std::max(movement, std::abs(hi[j] - lo[j]));
    }
    double reach = 4.0 * movement + probes[i].kernel_tol;
    if (std::min(probes[i].min_abs, probes[i + 1].min_abs) > reach) continue;
    instants.push_back(bisect_sign_change(sc, ts[i], ts[i + 1], abs_tol));
  }
  // interior grid points already below kernel tolerance
  for (int i = 1; i < n; ++i) {
    if (probes[i].min_abs <= probes[i].kernel_tol) instants.push_back(ts[i]);
  }
  // tangential dips: local minima of |nearest| without a sign change
  for (int i = 1; i < n; ++i) {
    if (probes[i].min_abs <= probes[i].kernel_tol) continue;
    if (probes[i].min_abs > probes[i - 1].min_abs ||
        probes[i].min_abs > probes[i + 1].min_abs) continue;
    if ((probes[i - 1].nearest < 0.0) != (probes[i + 1].nearest < 0.0)) continue;
    double movement = std::max(std::abs(probes[i].nearest - probes[i - 1].nearest),
                               std::abs(probes[i + 1].nearest - probes[i].nearest));
    if (probes[i].min_abs > std::max(1e4 * probes[i].kernel_tol, movement)) continue;
    double t_min = golden_minimize(sc, ts[i - 1], ts[i + 1], abs_tol);
    if (sc.probe(t_min).min_abs <= sc.probe(t_min).kernel_tol) {
      instants.push_back(t_min);
    }
  }

  std::sort(instants.begin(), instants.end());
  std::vector<double> merged;
  for (double t : instants) {
    if (!merged.empty() && t - merged.back() <= 2.0 * abs_tol) continue;
    merged.push_back(t);
  }
  for (size_t i = 0; i + 1 < merged.size(); ++i) {
    if (merged[i + 1] - merged[i] < 100.0 * abs_tol) {
      throw Error("crossing cluster",
                  "crossings at t = " + std::to_string(merged[i]) + " and t = " +
                      std::to_string(merged[i + 1]) +
                      " are unresolvably close; consider regularize()");
    }
  }

  std::vector<Crossing> crossings;
  for (double t : merged) {
    const EigenDecomposition& ed = sc.eig(t);
    double tol = sc.probe(t).kernel_tol;
    std::vector<int> cols;
    for (int i = 0; i < ed.eigenvalues.size(); ++i) {
      if (std::abs(ed.eigenvalues[i]) <= tol) cols.push_back(i);
    }
    if (cols.empty()) continue;
    Matrix basis(ed.eigenvectors.rows(), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) basis.col(j) = ed.eigenvectors.col(cols[j]);
    crossings.push_back(crossing_form(path, t, basis, opts));
  }
  return crossings;
}

RegularityReport regularity_report(const OperatorPath& path,
                                   const CrossingOptions& opts) {
  RegularityReport rep;
  rep.crossings = find_crossings(path, opts);
  rep.min_form_eigenvalue_magnitude = std::numeric_limits<double>::infinity();
  for (const Crossing& c : rep.crossings) {
    rep.all_regular = rep.all_regular && c.regular();
    EigenDecomposition fd = eigh(HermitianOperator(c.form));
    rep.min_form_eigenvalue_magnitude = std::min(
        rep.min_form_eigenvalue_magnitude, fd.eigenvalues.cwiseAbs().minCoeff());
  }
  if (rep.crossings.empty()) rep.min_form_eigenvalue_magnitude = 0.0;
  return rep;
}

SflResult sfl_crossings(const OperatorPath& path, const CrossingOptions& opts) {
  std::vector<Crossing> crossings = find_crossings(path, opts);
  const double boundary_tol = 1e-9 * path.length();
  int value = 0;
  for (const Crossing& c : crossings) {
    if (!c.regular()) {
      throw Error("irregular crossing",
                  "degenerate crossing form at t = " + std::to_string(c.t) +
                      "; consider regularize()");
    }
    if (c.t - path.t0() <= boundary_tol) {
      value -= c.inertia.negative;
    } else if (path.t1() - c.t <= boundary_tol) {
      value += c.inertia.positive;
    } else {
      value += c.inertia.signature();
    }
  }
  SflResult res;
  res.value = value;
  res.method = FlowMethod::crossing;
  res.epsilon0 = 0.0;
  return res;
}

Regularization regularize(const OperatorPath& path, int scan,
                          const CrossingOptions& opts) {
  if (scan < 1) throw Error("invalid input", "scan budget must be positive");
  EigenDecomposition start = eigh(path.at(path.t0()));
  EigenDecomposition end = eigh(path.at(path.t1()));
  double endpoint_margin = std::min(start.eigenvalues.cwiseAbs().minCoeff(),
                                    end.eigenvalues.cwiseAbs().minCoeff());
  double eps = std::max(1e-4, 0.5 * endpoint_margin);

  std::vector<double> deltas{0.0};
  int half = std::max(1, scan / 2);
  for (int j = 1; j <= half; ++j) {
    double d = eps * j / (half + 1);
    deltas.push_back(d);
    deltas.push_back(-d);
  }

  for (double delta : deltas) {
    OperatorPath shifted = shift(path, delta);
    try {
      EigenDecomposition s0 = eigh(shifted.at(shifted.t0()));
      EigenDecomposition s1 = eigh(shifted.at(shifted.t1()));
      double tol0 = opts.kernel_tol_rel *
                    std::max(1.0, s0.eigenvalues.cwiseAbs().maxCoeff());
      double tol1 = opts.kernel_tol_rel *
                    std::max(1.0, s1.eigenvalues.cwiseAbs().maxCoeff());
      if (s0.eigenvalues.cwiseAbs().minCoeff() <= tol0 ||
          s1.eigenvalues.cwiseAbs().minCoeff() <= tol1) {
        continue;
      }
      RegularityReport rep = regularity_report(shifted, opts);
      if (rep.all_regular) return Regularization{delta, std::move(shifted)};
    } catch (const Error&) {
      continue;  // cluster or detection failure at this delta
    }
  }
  throw Error("regularization failed",
              "no admissible delta in (-" + std::to_string(eps) + ", " +
                  std::to_string(eps) + ") within scan budget");
}

}  // namespace specflow
