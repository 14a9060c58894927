#include "specflow/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "specflow/crossings.hpp"
#include "specflow/flow.hpp"
#include "specflow/gallery.hpp"
#include "specflow/operators.hpp"
#include "specflow/projections.hpp"

namespace specflow {
namespace verify {

namespace {

using gallery::random_hermitian;
using gallery::random_smooth;

class Suite {
 public:
  explicit Suite(const VerifyConfig& cfg) : cfg_(cfg) {}

  void check(const std::string& group, const std::string& name,
             const std::function<bool(std::string&)>& body) {
    if (!cfg_.group.empty() && cfg_.group != group) return;
    CheckResult r{group, name, false, ""};
    try {
      std::string detail;
      r.pass = body(detail);
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    results_.push_back(std::move(r));
  }

  std::uint64_t seed(int i) const { return cfg_.seed * 1000003ULL + i; }
  int corpus() const { return cfg_.corpus; }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const VerifyConfig& cfg_;
  std::vector<CheckResult> results_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void hermitian_checks(Suite& s) {
  s.check("hermitian", "cayley_round_trip", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 15);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      HermitianOperator back = inverse_cayley(cayley(t));
      worst = std::max(worst, max_abs(back.matrix() - t.matrix()));
    }
    d = "max entrywise defect " + fmt(worst);
    return worst <= 1e-10;
  });
  s.check("hermitian", "cayley_unitarity", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 15);
      UnitaryMatrix u = cayley(random_hermitian(dim, s.seed(i)));
      Matrix defect = u.matrix() * u.matrix().adjoint() -
                      Matrix::Identity(dim, dim);
      worst = std::max(worst, max_abs(defect));
    }
    d = "max unitarity defect " + fmt(worst);
    return worst <= 1e-12 * 16;
  });
  s.check("hermitian", "cayley_spectral_mapping", [&](std::string& d) {
    const Complex i_unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 15);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      EigenDecomposition ed = eigh(t);
      Eigen::ComplexEigenSolver<Matrix> ces(cayley(t).matrix());
      std::vector<Complex> expected, got;
      for (int k = 0; k < dim; ++k) {
        Complex mu(ed.eigenvalues[k], 0.0);
        expected.push_back((mu - i_unit) / (mu + i_unit));
        got.push_back(ces.eigenvalues()[k]);
      }
      // set-wise match: greedy nearest pairing
      for (const Complex& e : expected) {
        double best = std::numeric_limits<double>::infinity();
        size_t best_idx = 0;
        for (size_t k = 0; k < got.size(); ++k) {
          double dist = std::abs(got[k] - e);
          if (dist < best) { best = dist; best_idx = k; }
        }
        worst = std::max(worst, best);
        got.erase(got.begin() + best_idx);
      }
    }
    d = "max set-wise mismatch " + fmt(worst);
    return worst <= 1e-10;
  });
  s.check("hermitian", "cayley_factorization_identity", [&](std::string& d) {
    // lambda - T = (lambda + i)(kappa(lambda) - kappa(T))(I - kappa(T))^{-1}
    const Complex i_unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 10);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      double lambda = 3.0 + 0.1 * (s.seed(i) % 7);  // real, away from spectrum tails
      EigenDecomposition ed = eigh(t);
      bool clear = true;
      for (int k = 0; k < dim; ++k) {
        if (std::abs(ed.eigenvalues[k] - lambda) < 1e-3) clear = false;
      }
      if (!clear) continue;
      Matrix kt = cayley(t).matrix();
      Complex klambda = (Complex(lambda) - i_unit) / (Complex(lambda) + i_unit);
      Matrix lhs = Complex(lambda) * Matrix::Identity(dim, dim) - t.matrix();
      Matrix rhs = (Complex(lambda) + i_unit) *
                   (klambda * Matrix::Identity(dim, dim) - kt) *
                   (Matrix::Identity(dim, dim) - kt).inverse();
      worst = std::max(worst, max_abs(lhs - rhs));
    }
    d = "max identity defect " + fmt(worst);
    return worst <= 1e-9;
  });
  s.check("hermitian", "metric_identity_gap_eq_2delta", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 15);
      HermitianOperator a = random_hermitian(dim, s.seed(i));
      HermitianOperator b = random_hermitian(dim, s.seed(i) + 7919);
      double dg = gap_distance(a, b);
      double delta = delta_distance(a, b);
      double rel = std::abs(dg - 2.0 * delta) / std::max(1.0, dg);
      worst = std::max(worst, rel);
    }
    d = "max relative defect " + fmt(worst);
    return worst <= 1e-12;
  });
  s.check("hermitian", "riesz_map_spectral", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 8);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      EigenDecomposition et = eigh(t);
      EigenDecomposition ef = eigh(riesz_map(t));
      for (int k = 0; k < dim; ++k) {
        double mu = et.eigenvalues[k];
        worst = std::max(worst,
                         std::abs(ef.eigenvalues[k] - mu / std::sqrt(1.0 + mu * mu)));
      }
    }
    d = "max eigenvalue defect " + fmt(worst);
    return worst <= 1e-10;
  });
  s.check("hermitian", "riesz_triangle_inequality", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 6);
      HermitianOperator a = random_hermitian(dim, s.seed(i));
      HermitianOperator b = random_hermitian(dim, s.seed(i) + 11);
      HermitianOperator c = random_hermitian(dim, s.seed(i) + 23);
      if (riesz_distance(a, c) >
          riesz_distance(a, b) + riesz_distance(b, c) + 1e-12) {
        d = "violated at seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    return true;
  });
}

void resolvent_checks(Suite& s) {
  s.check("resolvent", "selfadjoint_norm_bound", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 15);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      double alpha = 0.3 * static_cast<double>(s.seed(i) % 5) - 0.6;
      double beta = 0.25 + 0.1 * static_cast<double>(s.seed(i) % 4);
      // ||(lambda - T)^{-1}|| = ||(T - lambda)^{-1}||
      double norm = operator_norm(resolvent(t, Complex(alpha, beta)));
      worst = std::max(worst, norm - 1.0 / std::abs(beta));
    }
    d = "max bound excess " + fmt(worst);
    return worst <= 1e-12;
  });
  s.check("resolvent", "multiply_back_identity", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 10);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      Complex z(0.0, 2.0);
      Matrix prod = (t.matrix() - z * Matrix::Identity(dim, dim)) * resolvent(t, z);
      worst = std::max(worst, max_abs(prod - Matrix::Identity(dim, dim)));
    }
    d = "max identity defect " + fmt(worst);
    return worst <= 1e-10;
  });
  s.check("resolvent", "neumann_series_convergence", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 6);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      Complex z0(0.0, 3.0);
      double radius = 1.0 / operator_norm(resolvent(t, z0));
      Complex z = z0 + Complex(0.3 * radius, 0.0);
      Matrix series = resolvent_series(t, z0, z, 60);
      worst = std::max(worst, max_abs(series - resolvent(t, z)));
    }
    d = "max series defect at 60 terms " + fmt(worst);
    return worst <= 1e-8;
  });
}

void projection_checks(Suite& s) {
  s.check("projection", "contour_matches_eigenprojection", [&](std::string& d) {
    double worst = 0.0;
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 3 + static_cast<int>(s.seed(i) % 6);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      EigenDecomposition ed = eigh(t);
      // window around the lower half of the spectrum, cut in a gap
      int cut = dim / 2;
      double gap_lo = ed.eigenvalues[cut - 1];
      double gap_hi = ed.eigenvalues[cut];
      if (gap_hi - gap_lo < 1e-3) continue;
      double b = 0.5 * (gap_lo + gap_hi);
      double a = ed.eigenvalues[0] - 1.0;
      SpectralProjection pe = eigen_projection(t, a, b);
      ContourDescriptor c{Complex(0.5 * (a + b), 0.0), 0.5 * (b - a), 16};
      SpectralProjection pc = contour_projection(t, c);
      worst = std::max(worst, max_abs(pe.matrix() - pc.matrix()));
      if (pe.rank() != pc.rank()) {
        d = "rank mismatch at seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    d = "max entrywise distance " + fmt(worst);
    return worst <= 1e-8;
  });
  s.check("projection", "rank_additivity_disjoint_windows", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 4 + static_cast<int>(s.seed(i) % 5);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      EigenDecomposition ed = eigh(t);
      double lo = ed.eigenvalues[0] - 1.0;
      double hi = ed.eigenvalues[dim - 1] + 1.0;
      int cut = dim / 2;
      if (ed.eigenvalues[cut] - ed.eigenvalues[cut - 1] < 1e-3) continue;
      double mid = 0.5 * (ed.eigenvalues[cut - 1] + ed.eigenvalues[cut]);
      SpectralProjection p = eigen_projection(t, lo, mid);
      SpectralProjection q = eigen_projection(t, mid, hi);
      SpectralProjection u = eigen_projection(t, lo, hi);
      if (p.rank() + q.rank() != u.rank()) { d = "rank additivity failed"; return false; }
      if (max_abs(p.matrix() * q.matrix() - q.matrix() * p.matrix()) > 1e-9) {
        d = "projections do not commute";
        return false;
      }
      if (max_abs(p.matrix() + q.matrix() - u.matrix()) > 1e-9) {
        d = "window union mismatch";
        return false;
      }
    }
    return true;
  });
  s.check("projection", "rank_stability_implication", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 3 + static_cast<int>(s.seed(i) % 5);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      HermitianOperator u = HermitianOperator(
          t.matrix() + 0.01 * random_hermitian(dim, s.seed(i) + 3).matrix());
      EigenDecomposition ed = eigh(t);
      int cut = dim / 2;
      if (ed.eigenvalues[cut] - ed.eigenvalues[cut - 1] < 0.2) continue;
      double mid = 0.5 * (ed.eigenvalues[cut - 1] + ed.eigenvalues[cut]);
      double lo = ed.eigenvalues[0] - 1.0;
      RankStabilityVerdict v = projection_rank_stability(
          eigen_projection(t, lo, mid), eigen_projection(u, lo, mid));
      if (!v.implication_holds) {
        d = "implication failed at seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    return true;
  });
  s.check("projection", "continuity_bound", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 3 + static_cast<int>(s.seed(i) % 5);
      HermitianOperator t = random_hermitian(dim, s.seed(i));
      HermitianOperator u = HermitianOperator(
          t.matrix() + 0.005 * random_hermitian(dim, s.seed(i) + 5).matrix());
      EigenDecomposition ed = eigh(t);
      int cut = dim / 2;
      if (ed.eigenvalues[cut] - ed.eigenvalues[cut - 1] < 0.2) continue;
      double mid = 0.5 * (ed.eigenvalues[cut - 1] + ed.eigenvalues[cut]);
      double lo = ed.eigenvalues[0] - 1.0;
      ContourDescriptor c{Complex(0.5 * (lo + mid), 0.0), 0.5 * (mid - lo), 16};
      ContinuityReport rep = projection_continuity_bound(t, u, c);
      if (!rep.bound_holds) {
        d = "bound violated: lhs " + fmt(rep.lhs) + " rhs " + fmt(rep.rhs);
        return false;
      }
    }
    return true;
  });
}

void specflow_checks(Suite& s) {
  s.check("specflow", "method_agreement_random_paths", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 7);
      OperatorPath p = random_smooth(dim, s.seed(i), 3);
      int a = sfl_partition(p).value;
      int b = sfl_tracking(p).value;
      if (a != b) {
        d = "partition " + std::to_string(a) + " vs tracking " + std::to_string(b);
        return false;
      }
      try {
        int c = sfl_morse_oracle(p).value;
        if (a != c) {
          d = "partition " + std::to_string(a) + " vs morse " + std::to_string(c);
          return false;
        }
      } catch (const Error&) {
        // degenerate endpoint: the oracle declines, nothing to compare
      }
    }
    return true;
  });
  s.check("specflow", "concatenation_additive", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 5);
      OperatorPath p = random_smooth(dim, s.seed(i), 3);
      double mid = 0.5 * (p.t0() + p.t1());
      OperatorPath left = restrict(p, p.t0(), mid);
      OperatorPath right = restrict(p, mid, p.t1());
      int joined = sfl_tracking(concatenate(left, right)).value;
      int parts = sfl_tracking(left).value + sfl_tracking(right).value;
      int whole = sfl_tracking(p).value;
      if (joined != parts || joined != whole) {
        d = "additivity broken at seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    return true;
  });
  s.check("specflow", "reversal_antisymmetric", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 5);
      OperatorPath p = random_smooth(dim, s.seed(i), 3);
      if (sfl_tracking(reverse(p)).value != -sfl_tracking(p).value) {
        d = "antisymmetry broken at seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    return true;
  });
  s.check("specflow", "invertible_path_is_flat", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 5);
      OperatorPath p = random_smooth(dim, s.seed(i), 3);
      // push the whole path above zero: now invertible everywhere
      double bound = 0.0;
      for (int k = 0; k <= 16; ++k) {
        double t = p.t0() + p.length() * k / 16.0;
        bound = std::max(bound, eigh(p.at(t)).eigenvalues.cwiseAbs().maxCoeff());
      }
      OperatorPath lifted = shift(p, bound + 1.0);
      if (sfl_partition(lifted).value != 0) {
        d = "nonzero flow on invertible path, seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    return true;
  });
  s.check("specflow", "certificate_reverifies", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 5);
      OperatorPath p = random_smooth(dim, s.seed(i), 3);
      SflResult r = sfl_partition(p);
      if (!r.certificate || !verify_certificate(p, *r.certificate, 4)) {
        d = "certificate failed at seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    return true;
  });
}

void crossing_checks(Suite& s) {
  s.check("crossing", "derivative_consistency", [&](std::string& d) {
    // analytic vs central-difference derivative, O(h^2) ratio test
    double worst_ratio = 0.0;
    for (int i = 0; i < 5; ++i) {
      OperatorPath p = random_smooth(4, s.seed(i), 3);
      double t = 0.3 + 0.1 * i;
      Matrix analytic = p.derivative_at(t).matrix();
      auto fd = [&](double h) {
        return ((p.at(t + h).matrix() - p.at(t - h).matrix()) / (2.0 * h)).eval();
      };
      double e1 = max_abs(fd(1e-3) - analytic);
      double e2 = max_abs(fd(5e-4) - analytic);
      if (e1 < 1e-12) continue;
      worst_ratio = std::max(worst_ratio, e2 / e1);  // expect ~ 0.25
    }
    d = "worst halving ratio " + fmt(worst_ratio);
    return worst_ratio < 0.35;
  });
  s.check("crossing", "crossing_formula_matches_partition", [&](std::string& d) {
    for (int i = 0; i < s.corpus(); ++i) {
      int dim = 2 + static_cast<int>(s.seed(i) % 5);
      OperatorPath p = random_smooth(dim, s.seed(i), 3);
      Regularization reg = regularize(p);
      int via_crossings = sfl_crossings(reg.path).value;
      int via_partition = sfl_partition(reg.path).value;
      if (via_crossings != via_partition) {
        d = "crossing " + std::to_string(via_crossings) + " vs partition " +
            std::to_string(via_partition) + " at seed " + std::to_string(s.seed(i));
        return false;
      }
    }
    return true;
  });
  s.check("crossing", "inertia_basis_invariance", [&](std::string& d) {
    // rank-2 kernel with known form eigenvalues {1, 2}
    HermitianOperator u0 = random_hermitian(4, s.seed(0));
    EigenDecomposition ed = eigh(u0);
    Matrix u = ed.eigenvectors;
    auto eval = [u](double t) {
      Vector diag(4);
      diag << Complex(t), Complex(2.0 * t), Complex(1.0), Complex(2.0);
      Matrix m = u * diag.asDiagonal() * u.adjoint();
      return HermitianOperator(0.5 * (m + m.adjoint().eval()));
    };
    OperatorPath p(-0.5, 0.5, 4, eval);
    std::vector<Crossing> cs = find_crossings(p);
    if (cs.size() != 1 || cs.front().kernel_basis.cols() != 2) {
      d = "expected one rank-2 crossing";
      return false;
    }
    EigenDecomposition fd0 = eigh(HermitianOperator(cs.front().form));
    if (std::abs(fd0.eigenvalues[0] - 1.0) > 1e-6 ||
        std::abs(fd0.eigenvalues[1] - 2.0) > 1e-6) {
      d = "form eigenvalues off: " + fmt(fd0.eigenvalues[0]) + ", " +
          fmt(fd0.eigenvalues[1]);
      return false;
    }
    // re-base the kernel with a random unitary; inertia must not move
    Matrix q = eigh(random_hermitian(2, s.seed(1))).eigenvectors;
    Crossing rebased = crossing_form(p, cs.front().t, cs.front().kernel_basis * q);
    if (rebased.inertia.positive != cs.front().inertia.positive ||
        rebased.inertia.negative != cs.front().inertia.negative ||
        rebased.inertia.null != cs.front().inertia.null) {
      d = "inertia changed under kernel re-basing";
      return false;
    }
    return true;
  });
  s.check("crossing", "endpoint_convention_coherence", [&](std::string& d) {
    // the three 1x1 families must agree between methods
    struct Case { double a0, a1; int expected; };
    for (const Case& c : {Case{-0.5, 0.5, 1}, Case{0.0, 1.0, 0}, Case{0.0, -1.0, -1}}) {
      Matrix m0(1, 1), m1(1, 1);
      m0(0, 0) = Complex(c.a0);
      m1(0, 0) = Complex(c.a1);
      OperatorPath p = gallery::linear_pencil(HermitianOperator(m0),
                                              HermitianOperator(m1));
      int via_part = sfl_partition(p).value;
      int via_cross = sfl_crossings(p).value;
      if (via_part != c.expected || via_cross != c.expected) {
        d = "family (" + fmt(c.a0) + " -> " + fmt(c.a1) + "): partition " +
            std::to_string(via_part) + ", crossing " + std::to_string(via_cross) +
            ", expected " + std::to_string(c.expected);
        return false;
      }
    }
    return true;
  });
}

void gallery_checks(Suite& s) {
  s.check("gallery", "twisted_fourier_loop_k_independent", [&](std::string& d) {
    for (int K = 1; K <= 8; ++K) {
      OperatorPath p = gallery::twisted_fourier_path(K, -std::numbers::pi,
                                                     std::numbers::pi);
      int a = sfl_partition(p).value;
      int b = sfl_tracking(p).value;
      int c = sfl_crossings(p).value;
      if (a != 1 || b != 1 || c != 1) {
        d = "K=" + std::to_string(K) + ": partition " + std::to_string(a) +
            ", tracking " + std::to_string(b) + ", crossing " + std::to_string(c);
        return false;
      }
    }
    return true;
  });
  s.check("gallery", "normalization_path_flow_one", [&](std::string& d) {
    for (int n_side : {1, 3, 10}) {
      OperatorPath p = gallery::normalization_path(n_side);
      if (sfl_partition(p).value != 1 || sfl_tracking(p).value != 1 ||
          sfl_crossings(p).value != 1) {
        d = "n_side=" + std::to_string(n_side);
        return false;
      }
    }
    return true;
  });
  s.check("gallery", "twisted_fd_convergence_order_two", [&](std::string& d) {
    // eigenvalue nearest 2*pi at lambda = 0.3, over a ladder of grids
    double lambda = 0.3;
    double target = 2.0 * std::numbers::pi + lambda;
    std::vector<double> log_h, log_err;
    for (int n : {50, 100, 200, 400}) {
      EigenDecomposition ed = eigh(gallery::twisted_fd(n, lambda));
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < ed.eigenvalues.size(); ++i) {
        best = std::min(best, std::abs(ed.eigenvalues[i] - target));
      }
      log_h.push_back(std::log(1.0 / n));
      log_err.push_back(std::log(best));
    }
    // least-squares slope
    double mx = 0, my = 0;
    for (size_t i = 0; i < log_h.size(); ++i) { mx += log_h[i]; my += log_err[i]; }
    mx /= log_h.size();
    my /= log_err.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < log_h.size(); ++i) {
      num += (log_h[i] - mx) * (log_err[i] - my);
      den += (log_h[i] - mx) * (log_h[i] - mx);
    }
    double slope = num / den;
    d = "measured order " + fmt(slope);
    return std::abs(slope - 2.0) <= 0.2;
  });
  s.check("gallery", "random_smooth_deterministic", [&](std::string& d) {
    OperatorPath p1 = random_smooth(5, s.seed(0), 4);
    OperatorPath p2 = random_smooth(5, s.seed(0), 4);
    for (double t : {0.0, 0.25, 0.7, 1.0}) {
      if (p1.at(t).matrix() != p2.at(t).matrix()) {
        d = "bits differ at t=" + fmt(t);
        return false;
      }
    }
    return true;
  });
}

void negative_control(Suite& s) {
  // deliberate red: a non-Hermitian matrix is pushed through the pipeline,
  // and this check must show up as a failure either way
  s.check("hermitian", "hermiticity_enforced", [&](std::string& d) {
    Matrix bad(2, 2);
    bad << Complex(0.0), Complex(1.0), Complex(0.5), Complex(0.0);
    try {
      HermitianOperator t(bad);
      (void)t;
      d = "injected non-Hermitian matrix was accepted";
    } catch (const Error& e) {
      d = std::string("injected non-Hermitian matrix rejected: ") + e.what();
    }
    return false;
  });
}

}  // namespace

std::vector<CheckResult> run(const VerifyConfig& cfg) {
  Suite s(cfg);
  hermitian_checks(s);
  resolvent_checks(s);
  projection_checks(s);
  specflow_checks(s);
  crossing_checks(s);
  gallery_checks(s);
  if (cfg.inject_hermiticity_violation) negative_control(s);
  return s.take();
}

}  // namespace verify
}  // namespace specflow
