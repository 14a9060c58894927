// Acceptance gate: ten criteria, one line of output each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "specflow/crossings.hpp"
#include "specflow/flow.hpp"
#include "specflow/gallery.hpp"
#include "specflow/operators.hpp"
#include "specflow/path.hpp"
#include "specflow/projections.hpp"

using namespace specflow;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Criterion {
  std::string label;
  std::function<bool(std::string&)> body;
};

bool endpoints_invertible(const OperatorPath& p) {
  for (double t : {p.t0(), p.t1()}) {
    HermitianOperator a = p.at(t);
    if (eigh(a).eigenvalues.cwiseAbs().minCoeff() <= 1e-9 * a.scale()) return false;
  }
  return true;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool criterion_worked_example(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  for (int K = 1; K <= 8; ++K) {
    OperatorPath p = gallery::twisted_fourier_path(K, -kPi, kPi);
    int a = sfl_partition(p).value;
    int b = sfl_tracking(p).value;
    int c = sfl_crossings(p).value;
    if (a != 1 || b != 1 || c != 1) {
      detail = "K=" + std::to_string(K) + " gave (" + std::to_string(a) + ", " +
               std::to_string(b) + ", " + std::to_string(c) + "), expected all 1";
      return false;
    }
  }
  double elapsed = seconds_since(start);
  detail = "all K in 1..8 flow by 1 in " + std::to_string(elapsed) + " s";
  return elapsed < 5.0;
}

bool criterion_discretized(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  const int n = 200;
  OperatorPath p = gallery::twisted_fd_path(n, -kPi, kPi);

  int part = sfl_partition(p).value;
  int track = sfl_tracking(p).value;
  int cross = sfl_crossings(p).value;
  int morse = sfl_morse_oracle(p).value;
  bool values_ok = part == 1 && track == 1 && cross == 1 && morse == 1;

  // eigenvalue nearest zero vs lambda across the loop
  double worst_track = 0.0;
  for (int i = 0; i <= 16; ++i) {
    double lambda = -kPi + kTwoPi * i / 16.0;
    RealVector ev = eigh(gallery::twisted_fd(n, lambda)).eigenvalues;
    int best = 0;
    for (int j = 1; j < ev.size(); ++j) {
      if (std::abs(ev[j]) < std::abs(ev[best])) best = j;
    }
    worst_track = std::max(worst_track, std::abs(ev[best] - lambda));
  }
  bool tracks_ok = worst_track <= 1e-3 * kTwoPi;

  // convergence order over the grid ladder
  std::vector<double> lh, le;
  for (int grid : {50, 100, 200, 400}) {
    RealVector ev = eigh(gallery::twisted_fd(grid, 0.3)).eigenvalues;
    double best = 1e9;
    for (int j = 0; j < ev.size(); ++j) {
      best = std::min(best, std::abs(ev[j] - (kTwoPi + 0.3)));
    }
    lh.push_back(std::log(1.0 / grid));
    le.push_back(std::log(best));
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < lh.size(); ++i) {
    mx += lh[i] / lh.size();
    my += le[i] / le.size();
  }
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < lh.size(); ++i) {
    num += (lh[i] - mx) * (le[i] - my);
    den += (lh[i] - mx) * (lh[i] - mx);
  }
  double slope = num / den;
  bool order_ok = std::abs(slope - 2.0) <= 0.2;

  double elapsed = seconds_since(start);
  detail = "methods (" + std::to_string(part) + ", " + std::to_string(track) +
           ", " + std::to_string(cross) + ", " + std::to_string(morse) +
           ") vs expected 1; nearest-zero deviation " + std::to_string(worst_track) +
           " vs budget " + std::to_string(1e-3 * kTwoPi) + "; order " +
           std::to_string(slope) + "; " + std::to_string(elapsed) + " s";
  return values_ok && tracks_ok && order_ok && elapsed < 60.0;
}

bool criterion_normalization(std::string& detail) {
  for (int n_side : {1, 3, 10}) {
    OperatorPath p = gallery::normalization_path(n_side);
    int a = sfl_partition(p).value;
    int b = sfl_tracking(p).value;
    int c = sfl_crossings(p).value;
    if (a != 1 || b != 1 || c != 1) {
      detail = "n_side=" + std::to_string(n_side) + " gave (" + std::to_string(a) +
               ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
      return false;
    }
  }
  detail = "flow 1 for n_side in {1, 3, 10} by all methods";
  return true;
}

bool criterion_closed_path(std::string& detail) {
  int loop = sfl_partition(gallery::twisted_fourier_path(5, -kPi, kPi)).value;
  int flat = sfl_partition(constant_path(gallery::twisted_fourier(5, 0.5))).value;
  detail = "closed loop flows by " + std::to_string(loop) +
           ", constant path by " + std::to_string(flat);
  return loop != 0 && flat == 0;
}

bool criterion_method_equivalence(std::string& detail) {
  int done = 0;
  std::uint64_t seed = 0;
  while (done < 100) {
    ++seed;
    int dim = 2 + static_cast<int>(seed % 7);
    OperatorPath p = gallery::random_smooth(dim, seed, 3);
    if (!endpoints_invertible(p)) continue;
    int a = sfl_partition(p).value;
    int b = sfl_tracking(p).value;
    int c = sfl_morse_oracle(p).value;
    if (a != b || a != c) {
      detail = "disagreement (" + std::to_string(a) + ", " + std::to_string(b) +
               ", " + std::to_string(c) + ") at seed " + std::to_string(seed);
      return false;
    }
    Regularization reg = regularize(p);
    if (sfl_crossings(reg.path).value != a) {
      detail = "crossing formula disagrees after regularize at seed " +
               std::to_string(seed);
      return false;
    }
    ++done;
  }
  detail = "partition = tracking = morse = crossing on 100 seeded paths";
  return true;
}

bool criterion_property_suite(std::string& detail) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    int dim = 2 + static_cast<int>(seed % 5);
    OperatorPath p = gallery::random_smooth(dim, 10000 + seed, 3);
    OperatorPath left = restrict(p, 0.0, 0.5);
    OperatorPath right = restrict(p, 0.5, 1.0);
    int whole = sfl_tracking(p).value;
    if (sfl_tracking(left).value + sfl_tracking(right).value != whole) {
      detail = "additivity failed at seed " + std::to_string(seed);
      return false;
    }
    if (sfl_tracking(concatenate(left, right)).value != whole) {
      detail = "concatenation failed at seed " + std::to_string(seed);
      return false;
    }
    if (sfl_tracking(reverse(p)).value != -whole) {
      detail = "antisymmetry failed at seed " + std::to_string(seed);
      return false;
    }
    double bound = 0.0;
    for (int k = 0; k <= 16; ++k) {
      double t = k / 16.0;
      bound = std::max(bound, eigh(p.at(t)).eigenvalues.cwiseAbs().maxCoeff());
    }
    if (sfl_tracking(shift(p, bound + 1.0)).value != 0) {
      detail = "invertible path flowed at seed " + std::to_string(seed);
      return false;
    }
  }

  // three homotopy families over the twisted loop
  OperatorPath base = gallery::twisted_fourier_path(2, -kPi, kPi);
  HomotopyVerdict constant_s = homotopy_invariance_check(
      [&](double, double t) { return base.at(t); }, -kPi, kPi, 5);
  HermitianOperator bump = gallery::random_hermitian(5, 616);
  HomotopyVerdict perturbed = homotopy_invariance_check(
      [&](double s, double t) {
        double w = std::sin(kPi * (t + kPi) / kTwoPi);
        return HermitianOperator(base.at(t).matrix() + (0.2 * s * w) * bump.matrix());
      },
      -kPi, kPi, 5);
  EigenDecomposition gen = eigh(gallery::random_hermitian(5, 949));
  HomotopyVerdict conjugated = homotopy_invariance_check(
      [&](double s, double t) {
        Vector phases(5);
        for (int i = 0; i < 5; ++i) {
          phases[i] = std::polar(1.0, s * gen.eigenvalues[i]);
        }
        Matrix u = gen.eigenvectors * phases.asDiagonal() * gen.eigenvectors.adjoint();
        Matrix m = u.adjoint() * base.at(t).matrix() * u;
        return HermitianOperator(0.5 * (m + m.adjoint().eval()));
      },
      -kPi, kPi, 5);
  if (!constant_s.pass || !perturbed.pass || !conjugated.pass) {
    detail = "a homotopy family changed its flow";
    return false;
  }
  detail = "additivity, antisymmetry, invertible => 0, and three homotopy families hold";
  return true;
}

bool criterion_cayley_identities(std::string& detail) {
  const Complex i_unit(0.0, 1.0);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    int dim = 2 + static_cast<int>(seed % 15);
    HermitianOperator t = gallery::random_hermitian(dim, 20000 + seed);
    HermitianOperator s = gallery::random_hermitian(dim, 30000 + seed);
    double dg = gap_distance(t, s);
    if (std::abs(dg - 2.0 * delta_distance(t, s)) > 1e-12 * std::max(1.0, dg)) {
      detail = "gap identity failed at seed " + std::to_string(seed);
      return false;
    }
    UnitaryMatrix u = cayley(t);
    if (max_abs(inverse_cayley(u).matrix() - t.matrix()) > 1e-10) {
      detail = "round trip failed at seed " + std::to_string(seed);
      return false;
    }
    Matrix defect = u.matrix() * u.matrix().adjoint() - Matrix::Identity(dim, dim);
    if (max_abs(defect) > 1e-12 * dim) {
      detail = "unitarity failed at seed " + std::to_string(seed);
      return false;
    }
    RealVector mu = eigh(t).eigenvalues;
    Eigen::ComplexEigenSolver<Matrix> ces(u.matrix());
    for (int i = 0; i < dim; ++i) {
      Complex expected = (Complex(mu[i]) - i_unit) / (Complex(mu[i]) + i_unit);
      double best = 1e9;
      for (int j = 0; j < dim; ++j) {
        best = std::min(best, std::abs(ces.eigenvalues()[j] - expected));
      }
      if (best > 1e-10) {
        detail = "spectral mapping failed at seed " + std::to_string(seed);
        return false;
      }
    }
  }
  detail = "d_G = 2 delta, round trip, unitarity, spectral mapping on 100 matrices";
  return true;
}

bool criterion_resolvent_facts(std::string& detail) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    int dim = 2 + static_cast<int>(seed % 10);
    HermitianOperator t = gallery::random_hermitian(dim, 40000 + seed);
    double beta = 0.2 + 0.03 * (seed % 10);
    Complex z(0.1 * static_cast<double>(seed % 7) - 0.3, beta);
    if (operator_norm(resolvent(t, z)) > 1.0 / beta + 1e-12) {
      detail = "norm bound failed at seed " + std::to_string(seed);
      return false;
    }
    Complex z0(0.0, 3.0);
    double radius = 1.0 / operator_norm(resolvent(t, z0));
    Complex zs = z0 + Complex(0.3 * radius, 0.0);
    if (max_abs(resolvent_series(t, z0, zs, 60) - resolvent(t, zs)) > 1e-8) {
      detail = "series convergence failed at seed " + std::to_string(seed);
      return false;
    }
  }
  detail = "norm bound and series convergence on 100 pairs";
  return true;
}

bool criterion_projections(std::string& detail) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    int dim = 4 + static_cast<int>(seed % 5);
    HermitianOperator t = gallery::random_hermitian(dim, 50000 + seed);
    RealVector mu = eigh(t).eigenvalues;
    int cut = dim / 2;
    if (mu[cut] - mu[cut - 1] < 0.2) continue;  // needs a workable gap
    double b = 0.5 * (mu[cut - 1] + mu[cut]);
    double a = mu[0] - 1.0;
    SpectralProjection pe = eigen_projection(t, a, b);
    ContourDescriptor c1{Complex(0.5 * (a + b), 0.0), 0.5 * (b - a), 16};
    SpectralProjection pc = contour_projection(t, c1);
    if (max_abs(pe.matrix() - pc.matrix()) > 1e-8 || pe.rank() != pc.rank()) {
      detail = "contour vs eigen failed at seed " + std::to_string(seed);
      return false;
    }
    // second admissible contour for the same spectral window
    double margin = 0.25 * std::min(mu[cut] - b, b - mu[cut - 1]);
    ContourDescriptor c2{Complex(0.5 * (a + b) - margin, 0.0),
                         0.5 * (b - a) + 0.5 * margin, 16};
    SpectralProjection pc2 = contour_projection(t, c2);
    if (max_abs(pc.matrix() - pc2.matrix()) > 1e-8) {
      detail = "contour independence failed at seed " + std::to_string(seed);
      return false;
    }
    HermitianOperator s = HermitianOperator(
        t.matrix() + 0.002 * gallery::random_hermitian(dim, 60000 + seed).matrix());
    ContinuityReport rep = projection_continuity_bound(t, s, c1);
    if (!rep.bound_holds) {
      detail = "continuity bound failed at seed " + std::to_string(seed);
      return false;
    }
    RankStabilityVerdict v =
        projection_rank_stability(pe, eigen_projection(s, a, b));
    if (!v.implication_holds) {
      detail = "rank stability failed at seed " + std::to_string(seed);
      return false;
    }
  }
  detail = "contour = eigen, contour independence, continuity, rank stability hold";
  return true;
}

bool criterion_certificates(std::string& detail) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    int dim = 2 + static_cast<int>(seed % 5);
    OperatorPath p = gallery::random_smooth(dim, 70000 + seed, 3);
    SflResult first = sfl_partition(p);
    if (!first.certificate || !verify_certificate(p, *first.certificate, 4)) {
      detail = "certificate failed re-verification at seed " + std::to_string(seed);
      return false;
    }
    FlowOptions alt;
    alt.initial_samples = 65;
    alt.subinterval_samples = 13;
    SflResult second = sfl_partition(p, alt);
    if (first.value != second.value) {
      detail = "independent certificates disagree at seed " + std::to_string(seed);
      return false;
    }
  }
  detail = "all certificates re-verify on 4x grids; independent constructions agree";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 worked example: twisted loop flows by 1 for K=1..8", criterion_worked_example},
      {"2 discretized loop: values, eigenvalue tracking, order 2", criterion_discretized},
      {"3 normalization path flows by 1 for all widths", criterion_normalization},
      {"4 closed-path nontriviality", criterion_closed_path},
      {"5 method equivalence on 100 seeded paths", criterion_method_equivalence},
      {"6 flow property suite and homotopy families", criterion_property_suite},
      {"7 Cayley and gap-metric identities", criterion_cayley_identities},
      {"8 resolvent bound and Neumann series", criterion_resolvent_facts},
      {"9 projection machinery", criterion_projections},
      {"10 certificate soundness", criterion_certificates},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s criterion %s — %s\n", ok ? "PASS" : "FAIL", c.label.c_str(),
                detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
