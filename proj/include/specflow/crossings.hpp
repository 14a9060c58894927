#pragma once

#include "specflow/flow.hpp"
#include "specflow/path.hpp"

namespace specflow {

struct CrossingOptions {
  int scan_samples = 512;      // coarse grid for kernel detection
  double param_tol_rel = 1e-10;  // bisection tolerance, relative to interval
  double kernel_tol_rel = 1e-8;  // |mu| <= tol * max(1, ||A||) marks kernel
  double form_tol_rel = 1e-8;    // degeneracy threshold for the crossing form
};

/// Instant with nontrivial kernel, an orthonormal kernel basis, the crossing
/// form V* dA/dt V in that basis, and its inertia.
struct Crossing {
  double t = 0.0;
  Matrix kernel_basis;
  Matrix form;
  Inertia inertia;
  bool regular() const { return inertia.null == 0; }
};

struct RegularityReport {
  std::vector<Crossing> crossings;
  bool all_regular = true;
  double min_form_eigenvalue_magnitude = 0.0;
};

std::vector<Crossing> find_crossings(const OperatorPath& path,
                                     const CrossingOptions& opts = {});

RegularityReport regularity_report(const OperatorPath& path,
                                   const CrossingOptions& opts = {});

/// Crossing form at t for a given orthonormal kernel basis.
Crossing crossing_form(const OperatorPath& path, double t,
                       const Matrix& kernel_basis,
                       const CrossingOptions& opts = {});

/// Spectral flow from regular crossings:
/// -m^-(start form) + sum of interior signatures + m^+(end form).
SflResult sfl_crossings(const OperatorPath& path,
                        const CrossingOptions& opts = {});

struct Regularization {
  double delta = 0.0;
  OperatorPath path;
};

/// Scans delta over a symmetric grid in (-eps, eps) and returns the smallest
/// |delta| whose shifted path A + delta I has only regular crossings and
/// invertible endpoints.
Regularization regularize(const OperatorPath& path, int scan = 41,
                          const CrossingOptions& opts = {});

}  // namespace specflow
