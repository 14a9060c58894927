#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specflow/path.hpp"

namespace specflow {

struct FlowOptions {
  int initial_samples = 33;       // coarse grid for continuity / tracking
  int subinterval_samples = 9;    // construction samples per partition piece
  int max_depth = 20;             // bisection depth cap
  double epsilon0_rel = 1e-9;     // zero-classification tolerance, relative
  double continuity_budget = 0.5; // max adjacent-sample gap distance
};

/// Instants and window radii witnessing one evaluation of the partition
/// formula; checkable after the fact on any finer grid.
struct PartitionCertificate {
  std::vector<double> instants;     // lambda_0 <= ... <= lambda_n
  std::vector<double> radii;        // a_1 ... a_n
  std::vector<int> window_ranks;    // rank chi_{[-a_i, a_i]} per piece
  double margin = 0.0;              // guaranteed clearance of +-a_i from spectra
};

enum class FlowMethod { partition, tracking, morse, crossing };

std::string to_string(FlowMethod m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int null = 0;
  int signature() const { return positive - negative; }
};

struct SflResult {
  int value = 0;
  FlowMethod method = FlowMethod::partition;
  std::optional<PartitionCertificate> certificate;
  std::optional<std::pair<Inertia, Inertia>> endpoint_inertias;
  double epsilon0 = 0.0;
};

/// Partition evaluation of the spectral flow: telescoped rank differences of
/// the [0, a_i] windows over an adaptively constructed partition. The
/// returned certificate has been re-verified on a 4x finer grid.
SflResult sfl_partition(const OperatorPath& path, const FlowOptions& opts = {});

/// Eigenvalue-curve tracking with sorted pairing and step-size control.
SflResult sfl_tracking(const OperatorPath& path, const FlowOptions& opts = {});

/// m^-(A(t0)) - m^-(A(t1)); requires invertible endpoints.
SflResult sfl_morse_oracle(const OperatorPath& path, const FlowOptions& opts = {});

/// Checks a certificate against the path on a grid `grid_factor` times finer
/// than the certificate's own subdivision.
bool verify_certificate(const OperatorPath& path,
                        const PartitionCertificate& cert, int grid_factor = 4,
                        const FlowOptions& opts = {});

struct HomotopyVerdict {
  bool pass = false;
  std::vector<int> values;  // sfl(h(s, .)) per sampled s
};

using TwoParameterFamily =
    std::function<HermitianOperator(double s, double t)>;

/// Constancy of sfl(h(s, .)) over an s-grid; h(s, t0) and h(s, t1) must be
/// invertible for every sampled s.
HomotopyVerdict homotopy_invariance_check(const TwoParameterFamily& h,
                                          double t0, double t1, int s_grid,
                                          const FlowOptions& opts = {});

/// Zero-classification tolerance at one instant.
double epsilon0_for(const HermitianOperator& op, const FlowOptions& opts);

}  // namespace specflow
