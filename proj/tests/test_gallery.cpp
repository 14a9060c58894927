#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "specflow/crossings.hpp"
#include "specflow/flow.hpp"
#include "specflow/gallery.hpp"

using namespace specflow;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("twisted fourier family is the shifted-diagonal operator") {
  HermitianOperator a = gallery::twisted_fourier(1, 0.0);
  CHECK(a.dim() == 3);
  CHECK(a.matrix()(0, 0).real() == doctest::Approx(-kTwoPi));
  CHECK(a.matrix()(1, 1).real() == doctest::Approx(0.0));
  CHECK(a.matrix()(2, 2).real() == doctest::Approx(kTwoPi));

  EigenDecomposition ed = eigh(gallery::twisted_fourier(2, kPi / 4.0));
  for (int k = -2; k <= 2; ++k) {
    CHECK(ed.eigenvalues[k + 2] == doctest::Approx(kTwoPi * k + kPi / 4.0));
  }
  CHECK_THROWS_AS(gallery::twisted_fourier(0, 0.0), Error);
}

TEST_CASE("twisted fourier loop flows by one for every truncation order") {
  for (int K = 1; K <= 8; ++K) {
    OperatorPath p = gallery::twisted_fourier_path(K, -kPi, kPi);
    CHECK(sfl_partition(p).value == 1);
    CHECK(sfl_tracking(p).value == 1);
    CHECK(sfl_crossings(p).value == 1);
  }
}

TEST_CASE("twisted finite-difference operator is Hermitian with the expected spectrum") {
  HermitianOperator a = gallery::twisted_fd(200, 0.0);
  CHECK(a.dim() == 200);
  EigenDecomposition ed = eigh(a);
  double nearest0 = ed.eigenvalues.cwiseAbs().minCoeff();
  CHECK(nearest0 <= 1e-10);
  // eigenvalues nearest +-2*pi within relative 1e-3
  double best_pos = 1e9, best_neg = 1e9;
  for (int i = 0; i < 200; ++i) {
    best_pos = std::min(best_pos, std::abs(ed.eigenvalues[i] - kTwoPi));
    best_neg = std::min(best_neg, std::abs(ed.eigenvalues[i] + kTwoPi));
  }
  CHECK(best_pos <= 1e-3 * kTwoPi);
  CHECK(best_neg <= 1e-3 * kTwoPi);
  CHECK_THROWS_AS(gallery::twisted_fd(4, 0.0), Error);
}

TEST_CASE("twisted fd eigenvalue nearest zero lands near lambda") {
  EigenDecomposition ed = eigh(gallery::twisted_fd(200, kPi / 2.0));
  double best = 1e9;
  for (int i = 0; i < 200; ++i) {
    if (std::abs(ed.eigenvalues[i]) < std::abs(best)) best = ed.eigenvalues[i];
  }
  // the doubler branch contributes a near-tie of opposite sign; compare by
  // magnitude only
  CHECK(std::abs(std::abs(best) - kPi / 2.0) <= 1e-3 * kTwoPi);
}

TEST_CASE("twisted fd low-lying eigenvalues converge at order two") {
  double lambda = 0.3;
  double target = kTwoPi + lambda;
  std::vector<double> log_h, log_err;
  for (int n : {50, 100, 200, 400}) {
    EigenDecomposition ed = eigh(gallery::twisted_fd(n, lambda));
    double best = 1e9;
    for (int i = 0; i < ed.eigenvalues.size(); ++i) {
      best = std::min(best, std::abs(ed.eigenvalues[i] - target));
    }
    log_h.push_back(std::log(1.0 / n));
    log_err.push_back(std::log(best));
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < log_h.size(); ++i) {
    mx += log_h[i] / log_h.size();
    my += log_err[i] / log_err.size();
  }
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < log_h.size(); ++i) {
    num += (log_h[i] - mx) * (log_err[i] - my);
    den += (log_h[i] - mx) * (log_h[i] - mx);
  }
  CHECK(num / den == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("normalization operator spectrum and multiplicities") {
  HermitianOperator l = gallery::normalization_operator(1, 0.0);
  EigenDecomposition ed = eigh(l);
  CHECK(ed.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(ed.eigenvalues[1] == doctest::Approx(0.0));
  CHECK(ed.eigenvalues[2] == doctest::Approx(1.0));

  // at lambda = 1 the +1 side has multiplicity n_side + 1
  EigenDecomposition at1 = eigh(gallery::normalization_operator(3, 1.0));
  int mult = 0;
  for (int i = 0; i < 7; ++i) {
    if (std::abs(at1.eigenvalues[i] - 1.0) <= 1e-12) ++mult;
  }
  CHECK(mult == 4);
}

TEST_CASE("normalization path flows by one for every n_side") {
  for (int n_side : {1, 3, 10}) {
    OperatorPath p = gallery::normalization_path(n_side);
    CHECK(sfl_partition(p).value == 1);
    CHECK(sfl_tracking(p).value == 1);
    CHECK(sfl_crossings(p).value == 1);
  }
}

TEST_CASE("linear pencils") {
  HermitianOperator a = gallery::random_hermitian(4, 3);
  OperatorPath flat = gallery::linear_pencil(a, a);
  CHECK(sfl_tracking(flat).value == 0);

  Matrix m0(1, 1), m1(1, 1);
  m0(0, 0) = Complex(-1.0);
  m1(0, 0) = Complex(1.0);
  OperatorPath up = gallery::linear_pencil(HermitianOperator(m0), HermitianOperator(m1));
  CHECK(sfl_morse_oracle(up).value == 1);

  for (int s = 0; s < 15; ++s) {
    OperatorPath p = gallery::linear_pencil(gallery::random_hermitian(5, 100 + s),
                                            gallery::random_hermitian(5, 200 + s));
    EigenDecomposition e0 = eigh(p.at(0.0));
    EigenDecomposition e1 = eigh(p.at(1.0));
    int expected = count_negative(e0.eigenvalues, 0.0) -
                   count_negative(e1.eigenvalues, 0.0);
    CHECK(sfl_morse_oracle(p).value == expected);
  }
}

TEST_CASE("random smooth paths are bit-deterministic with honest derivatives") {
  OperatorPath p1 = gallery::random_smooth(5, 99, 4);
  OperatorPath p2 = gallery::random_smooth(5, 99, 4);
  for (double t : {0.0, 0.3, 0.75, 1.0}) {
    CHECK(p1.at(t).matrix() == p2.at(t).matrix());
  }
  OperatorPath other = gallery::random_smooth(5, 100, 4);
  CHECK(max_abs(p1.at(0.5).matrix() - other.at(0.5).matrix()) > 1e-8);

  // analytic derivative vs central difference: O(h^2) halving ratio
  double t = 0.4;
  Matrix analytic = p1.derivative_at(t).matrix();
  auto fd = [&](double h) {
    return ((p1.at(t + h).matrix() - p1.at(t - h).matrix()) / (2.0 * h)).eval();
  };
  double e1 = max_abs(fd(1e-3) - analytic);
  double e2 = max_abs(fd(5e-4) - analytic);
  CHECK(e2 / e1 == doctest::Approx(0.25).epsilon(0.1));
}

TEST_CASE("endpoints of random smooth paths genuinely differ") {
  for (int s = 0; s < 10; ++s) {
    OperatorPath p = gallery::random_smooth(4, 400 + s, 3);
    CHECK(max_abs(p.at(0.0).matrix() - p.at(1.0).matrix()) > 1e-6);
  }
}
