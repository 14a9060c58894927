#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specflow/flow.hpp"
#include "specflow/gallery.hpp"
#include "specflow/path.hpp"

using namespace specflow;

namespace {

constexpr double kPi = std::numbers::pi;

OperatorPath scalar_path(double t0, double t1,
                         std::function<double(double)> f,
                         std::function<double(double)> df = nullptr) {
  OperatorPath::Evaluator deriv = nullptr;
  if (df) {
    deriv = [df](double t) {
      Matrix m(1, 1);
      m(0, 0) = Complex(df(t));
      return HermitianOperator(std::move(m));
    };
  }
  return OperatorPath(
      t0, t1, 1,
      [f](double t) {
        Matrix m(1, 1);
        m(0, 0) = Complex(f(t));
        return HermitianOperator(std::move(m));
      },
      std::move(deriv));
}

HermitianOperator diag1(double x) {
  Matrix m(1, 1);
  m(0, 0) = Complex(x);
  return HermitianOperator(std::move(m));
}

}  // namespace

TEST_CASE("path construction and evaluation basics") {
  OperatorPath p = scalar_path(0.0, 1.0, [](double t) { return t; });
  CHECK(p.length() == doctest::Approx(1.0));
  CHECK(p.at(0.5).matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(p.at(2.0).matrix()(0, 0).real() == doctest::Approx(1.0));  // clamped
  CHECK_THROWS_AS(OperatorPath(1.0, 0.0, 1, [](double) { return diag1(0.0); }),
                  Error);
}

TEST_CASE("finite-difference derivative is second order") {
  OperatorPath p = scalar_path(0.0, 1.0, [](double t) { return std::sin(3.0 * t); });
  double t = 0.4;
  double got = p.derivative_at(t).matrix()(0, 0).real();
  CHECK(got == doctest::Approx(3.0 * std::cos(3.0 * t)).epsilon(1e-8));
  // one-sided fallback at the boundary
  double at0 = p.derivative_at(0.0).matrix()(0, 0).real();
  CHECK(at0 == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("sampled paths interpolate linearly between knots") {
  std::vector<std::pair<double, HermitianOperator>> knots;
  knots.emplace_back(0.0, diag1(-1.0));
  knots.emplace_back(1.0, diag1(1.0));
  OperatorPath p = OperatorPath::from_samples(std::move(knots));
  CHECK(p.at(0.25).matrix()(0, 0).real() == doctest::Approx(-0.5));
  CHECK(sfl_tracking(p).value == 1);
}

TEST_CASE("concatenate requires a matching joint") {
  OperatorPath up = scalar_path(0.0, 1.0, [](double t) { return t - 0.5; });
  OperatorPath down = scalar_path(0.0, 1.0, [](double t) { return 0.5 - t; });
  CHECK_THROWS_WITH_AS(concatenate(up, up), doctest::Contains("endpoint mismatch"),
                       Error);
  OperatorPath round = concatenate(up, down);
  CHECK(round.at(0.5).matrix()(0, 0).real() == doctest::Approx(0.0));
  CHECK(round.at(1.5).matrix()(0, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("concatenation with a constant tail keeps the flow") {
  OperatorPath p = gallery::random_smooth(3, 77, 3);
  OperatorPath tail = constant_path(p.at(p.t1()));
  CHECK(sfl_tracking(concatenate(p, tail)).value == sfl_tracking(p).value);
}

TEST_CASE("split and re-concatenate preserves the flow") {
  for (int s = 0; s < 10; ++s) {
    OperatorPath p = gallery::random_smooth(4, 1000 + s, 3);
    OperatorPath left = restrict(p, 0.0, 0.4);
    OperatorPath right = restrict(p, 0.4, 1.0);
    CHECK(sfl_tracking(concatenate(left, right)).value == sfl_tracking(p).value);
    CHECK(sfl_tracking(left).value + sfl_tracking(right).value ==
          sfl_tracking(p).value);
  }
}

TEST_CASE("reverse flips the flow sign") {
  HermitianOperator c = gallery::random_hermitian(3, 5);
  CHECK(sfl_tracking(reverse(constant_path(c))).value == 0);
  OperatorPath loop = gallery::twisted_fourier_path(5, -kPi, kPi);
  CHECK(sfl_partition(reverse(loop)).value == -1);
  for (int s = 0; s < 10; ++s) {
    OperatorPath p = gallery::random_smooth(4, 2000 + s, 3);
    CHECK(sfl_tracking(reverse(p)).value == -sfl_tracking(p).value);
  }
}

TEST_CASE("partition flow on the spec'd scalar families") {
  CHECK(sfl_partition(constant_path(gallery::random_hermitian(4, 9))).value == 0);
  CHECK(sfl_partition(gallery::twisted_fourier_path(5, -kPi, kPi)).value == 1);
  CHECK(sfl_partition(scalar_path(0.0, 1.0, [](double t) { return t - 0.5; })).value == 1);
  // kernel at the start counts as already nonnegative
  CHECK(sfl_partition(scalar_path(0.0, 1.0, [](double t) { return t; })).value == 0);
  CHECK(sfl_partition(scalar_path(0.0, 1.0, [](double t) { return -t; })).value == -1);
}

TEST_CASE("tracking agrees on the same families") {
  CHECK(sfl_tracking(gallery::twisted_fourier_path(5, -kPi, kPi)).value == 1);
  CHECK(sfl_tracking(gallery::normalization_path(1)).value == 1);
  CHECK(sfl_tracking(scalar_path(0.0, 1.0, [](double t) { return t; })).value == 0);
  CHECK(sfl_tracking(scalar_path(0.0, 1.0, [](double t) { return -t; })).value == -1);
}

TEST_CASE("morse oracle values and endpoint guard") {
  OperatorPath pencil = gallery::linear_pencil(diag1(-1.0), diag1(1.0));
  SflResult r = sfl_morse_oracle(pencil);
  CHECK(r.value == 1);
  REQUIRE(r.endpoint_inertias.has_value());
  CHECK(r.endpoint_inertias->first.negative == 1);
  CHECK(r.endpoint_inertias->second.negative == 0);

  OperatorPath flat = constant_path(gallery::random_hermitian(5, 21));
  CHECK(sfl_morse_oracle(flat).value == 0);

  OperatorPath degenerate = scalar_path(0.0, 1.0, [](double t) { return t; });
  CHECK_THROWS_WITH_AS(sfl_morse_oracle(degenerate),
                       doctest::Contains("degenerate endpoint"), Error);
}

TEST_CASE("three-method agreement on random linear pencils") {
  for (int s = 0; s < 25; ++s) {
    OperatorPath p = gallery::linear_pencil(gallery::random_hermitian(8, 3000 + s),
                                            gallery::random_hermitian(8, 4000 + s));
    int part = sfl_partition(p).value;
    CHECK(part == sfl_tracking(p).value);
    try {
      CHECK(part == sfl_morse_oracle(p).value);
    } catch (const Error&) {
      // endpoint kernel: the oracle declines by contract
    }
  }
}

TEST_CASE("partition certificates re-verify on finer grids") {
  for (int s = 0; s < 10; ++s) {
    OperatorPath p = gallery::random_smooth(4, 5000 + s, 3);
    SflResult r = sfl_partition(p);
    REQUIRE(r.certificate.has_value());
    CHECK(verify_certificate(p, *r.certificate, 4));
    CHECK(verify_certificate(p, *r.certificate, 8));
  }
}

TEST_CASE("independent partition constructions agree in value") {
  for (int s = 0; s < 10; ++s) {
    OperatorPath p = gallery::random_smooth(4, 6000 + s, 3);
    FlowOptions coarse;
    FlowOptions fine;
    fine.initial_samples = 65;
    fine.subinterval_samples = 17;
    SflResult a = sfl_partition(p, coarse);
    SflResult b = sfl_partition(p, fine);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("tampered certificates are rejected") {
  OperatorPath p = gallery::random_smooth(4, 8080, 3);
  SflResult r = sfl_partition(p);
  PartitionCertificate bad = *r.certificate;
  bad.window_ranks[0] += 1;
  CHECK_FALSE(verify_certificate(p, bad, 4));
}

TEST_CASE("invertible paths have zero flow") {
  for (int s = 0; s < 10; ++s) {
    OperatorPath p = gallery::random_smooth(4, 9000 + s, 3);
    double bound = 0.0;
    for (int k = 0; k <= 16; ++k) {
      double t = p.t0() + p.length() * k / 16.0;
      bound = std::max(bound, eigh(p.at(t)).eigenvalues.cwiseAbs().maxCoeff());
    }
    CHECK(sfl_partition(shift(p, bound + 1.0)).value == 0);
    CHECK(sfl_tracking(shift(p, -bound - 1.0)).value == 0);
  }
}

TEST_CASE("homotopy invariance over three families") {
  // constant in s
  OperatorPath base = gallery::twisted_fourier_path(2, -kPi, kPi);
  HomotopyVerdict flat = homotopy_invariance_check(
      [&](double, double t) { return base.at(t); }, -kPi, kPi, 5);
  CHECK(flat.pass);
  CHECK(flat.values.front() == 1);

  // perturbation vanishing at the endpoints
  HermitianOperator bump = gallery::random_hermitian(5, 616);
  HomotopyVerdict pert = homotopy_invariance_check(
      [&](double s, double t) {
        double w = std::sin(kPi * (t + kPi) / (2.0 * kPi));
        return HermitianOperator(base.at(t).matrix() +
                                 (0.2 * s * w) * bump.matrix());
      },
      -kPi, kPi, 5);
  CHECK(pert.pass);

  // rotating unitary conjugation: U(s) = exp(i s H) for a fixed Hermitian H
  EigenDecomposition ed = eigh(gallery::random_hermitian(5, 949));
  HomotopyVerdict conj = homotopy_invariance_check(
      [&](double s, double t) {
        Vector phases(5);
        for (int i = 0; i < 5; ++i) phases[i] = std::polar(1.0, s * ed.eigenvalues[i]);
        Matrix u = ed.eigenvectors * phases.asDiagonal() * ed.eigenvectors.adjoint();
        Matrix m = u.adjoint() * base.at(t).matrix() * u;
        return HermitianOperator(0.5 * (m + m.adjoint().eval()));
      },
      -kPi, kPi, 5);
  CHECK(conj.pass);

  // degenerate boundary is refused
  OperatorPath zero_start = scalar_path(0.0, 1.0, [](double t) { return t; });
  CHECK_THROWS_WITH_AS(homotopy_invariance_check(
                           [&](double, double t) { return zero_start.at(t); },
                           0.0, 1.0, 3),
                       doctest::Contains("boundary degenerate"), Error);
}

TEST_CASE("continuity screen refuses sampled jumps") {
  std::vector<std::pair<double, HermitianOperator>> knots;
  knots.emplace_back(0.0, diag1(-1.0));
  knots.emplace_back(0.5, diag1(1.0));
  knots.emplace_back(0.5 + 1e-13, diag1(-1.0));
  knots.emplace_back(1.0, diag1(1.0));
  OperatorPath jumpy = OperatorPath::from_samples(std::move(knots));
  CHECK_THROWS_WITH_AS(sfl_partition(jumpy),
                       doctest::Contains("not demonstrably continuous"), Error);
}
