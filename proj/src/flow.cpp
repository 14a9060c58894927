#include "specflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace specflow {

namespace {

/// Per-call cache of eigendecompositions along the path.
class PathCache {
 public:
  explicit PathCache(const OperatorPath& path) : path_(path) {}

  const EigenDecomposition& eig(double t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) {
      it = cache_.emplace(t, eigh(path_.at(t))).first;
    }
    return it->second;
  }

  double norm(double t) {
    const auto& ev = eig(t).eigenvalues;
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  }

  double eps0(double t, const FlowOptions& opts) {
    return opts.epsilon0_rel * std::max(1.0, norm(t));
  }

  const OperatorPath& path() const { return path_; }

 private:
  const OperatorPath& path_;
  std::map<double, EigenDecomposition> cache_;
};

void check_gap_continuity(const OperatorPath& path, const FlowOptions& opts) {
  struct Rec {
    const OperatorPath& p;
    double budget;
    void check(double l, double r, int depth) const {
      if (gap_distance(p.at(l), p.at(r)) <= budget) return;
      if (depth >= 10) {
        throw Error("not demonstrably continuous",
                    "adjacent-sample gap distance above budget near t = " +
                        std::to_string(0.5 * (l + r)));
      }
      double m = 0.5 * (l + r);
      check(l, m, depth + 1);
      check(m, r, depth + 1);
    }
  } rec{path, opts.continuity_budget};
  int n = std::max(2, opts.initial_samples);
  for (int i = 0; i + 1 < n; ++i) {
    double l = path.t0() + path.length() * i / (n - 1);
    double r = path.t0() + path.length() * (i + 1) / (n - 1);
    rec.check(l, r, 0);
  }
}

struct Piece {
  double l = 0.0, r = 0.0;
  double a = 0.0;
  int rank = 0;
  double min_dist = 0.0;
};

std::vector<double> linspace(double l, double r, int n) {
  std::vector<double> ts(n);
  for (int i = 0; i < n; ++i) ts[i] = l + (r - l) * i / (n - 1);
  ts.back() = r;
  return ts;
}

// A window radius is admissible for a set of spectra when no eigenvalue comes
// near +-a at any sample, the rank of chi_{[-a,a]} is constant, and no
// sorted-eigenvalue segment between adjacent samples straddles +-a.
struct RadiusChoice {
  double a = 0.0;
  int rank = 0;
  double min_dist = 0.0;
  bool found = false;
};

RadiusChoice choose_radius(const std::vector<const EigenDecomposition*>& eigs) {
  std::vector<double> abs_values;
  for (const auto* ed : eigs) {
    for (int i = 0; i < ed->eigenvalues.size(); ++i) {
      abs_values.push_back(std::abs(ed->eigenvalues[i]));
    }
  }
  std::sort(abs_values.begin(), abs_values.end());
  double spread = abs_values.back() - abs_values.front();

  // candidate edges: midpoints of gaps in the absolute spectrum, widest first,
  // plus an outer edge beyond the largest magnitude
  struct Candidate {
    double a;
    double half_gap;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({abs_values.back() + std::max(1.0, spread),
                        std::max(1.0, spread)});
  for (size_t i = 0; i + 1 < abs_values.size(); ++i) {
    double w = abs_values[i + 1] - abs_values[i];
    if (w > 0.0) candidates.push_back({abs_values[i] + 0.5 * w, 0.5 * w});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) {
                     return x.half_gap > y.half_gap;
                   });

  for (const auto& cand : candidates) {
    double a = cand.a;
    if (a <= 0.0) continue;
    double min_dist = std::numeric_limits<double>::infinity();
    bool ok = true;
    int rank = -1;
    for (const auto* ed : eigs) {
      int count = 0;
      for (int i = 0; i < ed->eigenvalues.size(); ++i) {
        double mu = ed->eigenvalues[i];
        min_dist = std::min(min_dist, std::abs(std::abs(mu) - a));
        if (mu >= -a && mu <= a) ++count;
      }
      if (rank < 0) rank = count;
      if (count != rank) { ok = false; break; }
    }
    if (!ok || min_dist <= 0.0) continue;
    // segment check between adjacent samples
    for (size_t s = 0; ok && s + 1 < eigs.size(); ++s) {
      const auto& lo = eigs[s]->eigenvalues;
      const auto& hi = eigs[s + 1]->eigenvalues;
      for (int i = 0; ok && i < lo.size(); ++i) {
        double m0 = std::min(lo[i], hi[i]), m1 = std::max(lo[i], hi[i]);
        if ((m0 <= a && a <= m1) || (m0 <= -a && -a <= m1)) ok = false;
      }
    }
    if (ok) return RadiusChoice{a, rank, min_dist, true};
  }
  return {};
}

void build_partition(PathCache& cache, double l, double r, int depth,
                     const FlowOptions& opts, std::vector<Piece>& out) {
  int m = std::max(3, opts.subinterval_samples);
  std::vector<double> ts = linspace(l, r, m);
  std::vector<const EigenDecomposition*> eigs;
  eigs.reserve(ts.size());
  for (double t : ts) eigs.push_back(&cache.eig(t));
  RadiusChoice choice = choose_radius(eigs);
  if (choice.found) {
    out.push_back({l, r, choice.a, choice.rank, choice.min_dist});
    return;
  }
  if (depth >= opts.max_depth) {
    throw Error("partition failure",
                "no admissible window on [" + std::to_string(l) + ", " +
                    std::to_string(r) + "] at max refinement depth");
  }
  double mid = 0.5 * (l + r);
  build_partition(cache, l, mid, depth + 1, opts, out);
  build_partition(cache, mid, r, depth + 1, opts, out);
}

int window_count(const EigenDecomposition& ed, double eps0, double a) {
  return count_in_window(ed.eigenvalues, -eps0, a);
}

}  // namespace

std::string to_string(FlowMethod m) {
  switch (m) {
    case FlowMethod::partition: return "partition";
    case FlowMethod::tracking: return "tracking";
    case FlowMethod::morse: return "morse";
    case FlowMethod::crossing: return "crossing";
  }
  return "?";
}

double epsilon0_for(const HermitianOperator& op, const FlowOptions& opts) {
  return opts.epsilon0_rel * op.scale();
}

SflResult sfl_partition(const OperatorPath& path, const FlowOptions& opts) {
  check_gap_continuity(path, opts);
  PathCache cache(path);
  std::vector<Piece> pieces;
  build_partition(cache, path.t0(), path.t1(), 0, opts, pieces);

  PartitionCertificate cert;
  cert.margin = std::numeric_limits<double>::infinity();
  int value = 0;
  cert.instants.push_back(pieces.front().l);
  for (const Piece& p : pieces) {
    cert.instants.push_back(p.r);
    cert.radii.push_back(p.a);
    cert.window_ranks.push_back(p.rank);
    cert.margin = std::min(cert.margin, 0.5 * p.min_dist);
    value += window_count(cache.eig(p.r), cache.eps0(p.r, opts), p.a) -
             window_count(cache.eig(p.l), cache.eps0(p.l, opts), p.a);
  }
  if (!verify_certificate(path, cert, 4, opts)) {
    throw Error("certificate invalid",
                "partition certificate failed 4x-grid re-verification");
  }
  SflResult res;
  res.value = value;
  res.method = FlowMethod::partition;
  res.certificate = std::move(cert);
  res.epsilon0 = opts.epsilon0_rel;
  return res;
}

bool verify_certificate(const OperatorPath& path,
                        const PartitionCertificate& cert, int grid_factor,
                        const FlowOptions& opts) {
  if (cert.instants.size() != cert.radii.size() + 1 ||
      cert.radii.size() != cert.window_ranks.size() || cert.radii.empty()) {
    return false;
  }
  PathCache cache(path);
  int per_piece = grid_factor * std::max(2, opts.subinterval_samples - 1) + 1;
  for (size_t i = 0; i < cert.radii.size(); ++i) {
    double l = cert.instants[i], r = cert.instants[i + 1];
    double a = cert.radii[i];
    for (double t : linspace(l, r, per_piece)) {
      const auto& ev = cache.eig(t).eigenvalues;
      int count = 0;
      for (int j = 0; j < ev.size(); ++j) {
        if (std::abs(std::abs(ev[j]) - a) < cert.margin) return false;
        if (ev[j] >= -a && ev[j] <= a) ++count;
      }
      if (count != cert.window_ranks[i]) return false;
    }
  }
  return true;
}

namespace {

void tracking_step(PathCache& cache, double l, double r, int depth,
                   const FlowOptions& opts, int& value) {
  const auto& lo = cache.eig(l).eigenvalues;
  const auto& hi = cache.eig(r).eigenvalues;
  double eps0 = std::max(cache.eps0(l, opts), cache.eps0(r, opts));
  double movement = 0.0;
  for (int i = 0; i < lo.size(); ++i) {
    movement = std::max(movement, std::abs(hi[i] - lo[i]));
  }
  bool hazard = false;
  for (int i = 0; i < lo.size(); ++i) {
    if (std::abs(lo[i]) <= movement + eps0 || std::abs(hi[i]) <= movement + eps0) {
      hazard = true;
      break;
    }
  }
  if (hazard) {
    // spacing between the near-zero cluster and the rest of the spectrum; the
    // step may not move eigenvalues further than half of it. Eigenvalues that
    // cross together stay correctly counted by sorted pairing, so the gap
    // inside the cluster does not constrain the step.
    double local_gap = std::numeric_limits<double>::infinity();
    for (const auto* ev : {&lo, &hi}) {
      for (int i = 0; i < ev->size(); ++i) {
        if (std::abs((*ev)[i]) <= movement + eps0) continue;
        local_gap = std::min(local_gap, std::abs((*ev)[i]) - movement);
      }
    }
    if (!std::isfinite(local_gap)) local_gap = 2.0 * movement;
    bool controlled = movement <= std::max(0.5 * local_gap, 8.0 * eps0);
    if (!controlled) {
      if (depth >= opts.max_depth) {
        throw Error("tracking ambiguity",
                    "step-size control unsatisfied near t = " +
                        std::to_string(0.5 * (l + r)));
      }
      double mid = 0.5 * (l + r);
      tracking_step(cache, l, mid, depth + 1, opts, value);
      tracking_step(cache, mid, r, depth + 1, opts, value);
      return;
    }
  }
  value += count_nonnegative(hi, eps0) - count_nonnegative(lo, eps0);
}

}  // namespace

SflResult sfl_tracking(const OperatorPath& path, const FlowOptions& opts) {
  PathCache cache(path);
  int n = std::max(2, opts.initial_samples);
  int value = 0;
  for (int i = 0; i + 1 < n; ++i) {
    double l = path.t0() + path.length() * i / (n - 1);
    double r = path.t0() + path.length() * (i + 1) / (n - 1);
    tracking_step(cache, l, r, 0, opts, value);
  }
  SflResult res;
  res.value = value;
  res.method = FlowMethod::tracking;
  res.epsilon0 = opts.epsilon0_rel;
  return res;
}

SflResult sfl_morse_oracle(const OperatorPath& path, const FlowOptions& opts) {
  EigenDecomposition start = eigh(path.at(path.t0()));
  EigenDecomposition end = eigh(path.at(path.t1()));
  double eps_start = opts.epsilon0_rel *
                     std::max(1.0, start.eigenvalues.cwiseAbs().maxCoeff());
  double eps_end = opts.epsilon0_rel *
                   std::max(1.0, end.eigenvalues.cwiseAbs().maxCoeff());
  double min_start = start.eigenvalues.cwiseAbs().minCoeff();
  double min_end = end.eigenvalues.cwiseAbs().minCoeff();
  if (min_start <= eps_start || min_end <= eps_end) {
    throw Error("degenerate endpoint",
                "Morse oracle requires invertible endpoints (min |mu| = " +
                    std::to_string(std::min(min_start, min_end)) + ")");
  }
  Inertia is{count_nonnegative(start.eigenvalues, eps_start),
             count_negative(start.eigenvalues, eps_start), 0};
  Inertia ie{count_nonnegative(end.eigenvalues, eps_end),
             count_negative(end.eigenvalues, eps_end), 0};
  SflResult res;
  res.value = is.negative - ie.negative;
  res.method = FlowMethod::morse;
  res.endpoint_inertias = std::make_pair(is, ie);
  res.epsilon0 = opts.epsilon0_rel;
  return res;
}

HomotopyVerdict homotopy_invariance_check(const TwoParameterFamily& h,
                                          double t0, double t1, int s_grid,
                                          const FlowOptions& opts) {
  if (s_grid < 2) throw Error("invalid input", "homotopy check needs >= 2 s samples");
  int dim = h(0.0, t0).dim();
  HomotopyVerdict verdict;
  for (int i = 0; i < s_grid; ++i) {
    double s = static_cast<double>(i) / (s_grid - 1);
    OperatorPath slice(t0, t1, dim, [h, s](double t) { return h(s, t); });
    for (double t : {t0, t1}) {
      EigenDecomposition ed = eigh(slice.at(t));
      double eps = opts.epsilon0_rel *
                   std::max(1.0, ed.eigenvalues.cwiseAbs().maxCoeff());
      if (ed.eigenvalues.cwiseAbs().minCoeff() <= eps) {
        throw Error("boundary degenerate",
                    "h(s, t) not invertible at s = " + std::to_string(s));
      }
    }
    verdict.values.push_back(sfl_tracking(slice, opts).value);
  }
  verdict.pass = std::all_of(verdict.values.begin(), verdict.values.end(),
                             [&](int v) { return v == verdict.values.front(); });
  return verdict;
}

}  // namespace specflow
