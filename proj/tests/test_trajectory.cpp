#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qrad/trajectory.hpp"

using qrad::GaussianPulse;
using qrad::TabulatedTrajectory;
using qrad::WindowedSine;

TEST_CASE("gaussian pulse values, derivatives and Fourier transform") {
  const double a = 0.7, tau = 1.3;
  GaussianPulse g(a, tau);
  CHECK(g.value(0.0) == Catch::Approx(a));
  CHECK(g.value(tau) == Catch::Approx(a * std::exp(-1.0)));

  // Finite-difference check of the analytic derivatives.
  const double t = 0.4, h = 1e-5;
  for (int order = 1; order <= 4; ++order) {
    const double fd = (g.derivative(t + h, order - 1) -
                       g.derivative(t - h, order - 1)) /
                      (2.0 * h);
    CHECK(g.derivative(t, order) == Catch::Approx(fd).epsilon(1e-7));
  }

  // Fourier transform a tau sqrt(pi) exp(-w^2 tau^2 / 4).
  const double w = 1.7;
  CHECK(g.fourier(w).real() ==
        Catch::Approx(a * tau * std::sqrt(M_PI) *
                      std::exp(-w * w * tau * tau / 4.0))
            .epsilon(1e-12));
  CHECK(g.fourier(w).imag() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("gaussian moment integrals match the closed form and Parseval") {
  const double a = 1.1, tau = 0.9;
  GaussianPulse g(a, tau);
  // int (g^(n))^2 dt = (2n-1)!! sqrt(2 pi) a^2 / (2 tau^{2n-1}).
  double dfact = 1.0;
  for (int n = 1; n <= 4; ++n) {
    dfact *= 2 * n - 1;
    const double expect =
        dfact * std::sqrt(2.0 * M_PI) * a * a / (2.0 * std::pow(tau, 2 * n - 1));
    CHECK(g.squared_derivative_integral(n) ==
          Catch::Approx(expect).epsilon(1e-10));
    // Parseval route through the Fourier transform (base-class default).
    CHECK(g.Trajectory::squared_derivative_integral(n) ==
          Catch::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("windowed sine is odd and matches finite differences") {
  const double a = 0.5, w0 = 3.0, tau = 2.0;
  WindowedSine s(a, w0, tau);
  CHECK(s.value(0.7) == Catch::Approx(-s.value(-0.7)).epsilon(1e-14));
  const double t = 0.3, h = 1e-5;
  CHECK(s.derivative(t, 1) ==
        Catch::Approx((s.value(t + h) - s.value(t - h)) / (2.0 * h))
            .epsilon(1e-7));
  CHECK(s.derivative(t, 2) ==
        Catch::Approx((s.derivative(t + h, 1) - s.derivative(t - h, 1)) /
                      (2.0 * h))
            .epsilon(1e-7));
  // Spectrum peaks near the carrier.
  CHECK(std::abs(s.fourier(w0)) > std::abs(s.fourier(0.2 * w0)));
  CHECK(std::abs(s.fourier(w0)) > std::abs(s.fourier(3.0 * w0)));
}

TEST_CASE("fourier transforms obey conjugate symmetry for real signals") {
  GaussianPulse g(1.0, 1.0);
  WindowedSine s(1.0, 4.0, 1.5);
  for (double w : {0.3, 1.1, 2.9}) {
    CHECK(g.fourier(-w) == std::conj(g.fourier(w)));
    CHECK(std::abs(s.fourier(-w) - std::conj(s.fourier(w))) <= 1e-14);
  }
}

TEST_CASE("tabulated trajectory reproduces the analytic pulse") {
  GaussianPulse g(1.0, 1.0);
  const double t0 = -12.0, dt = 0.01;
  const int count = 2401;
  std::vector<double> samples(count);
  for (int i = 0; i < count; ++i) samples[i] = g.value(t0 + i * dt);
  TabulatedTrajectory tab(t0, dt, samples);

  CHECK(tab.value(0.37) == Catch::Approx(g.value(0.37)).epsilon(1e-6));
  CHECK(tab.derivative(0.37, 1) ==
        Catch::Approx(g.derivative(0.37, 1)).epsilon(1e-4));
  for (double w : {0.5, 1.0, 2.0}) {
    CHECK(tab.fourier(w).real() ==
          Catch::Approx(g.fourier(w).real()).margin(1e-4));
    CHECK(std::abs(tab.fourier(-w) - std::conj(tab.fourier(w))) <= 1e-12);
  }
}

TEST_CASE("tabulated trajectory rejects non-decayed samples") {
  std::vector<double> samples(101, 1.0);  // constant: no decay at the ends
  CHECK_THROWS_AS(TabulatedTrajectory(-5.0, 0.1, samples),
                  std::invalid_argument);
}

TEST_CASE("bandwidth rule k_max = 10 / tau") {
  GaussianPulse g(1.0, 0.5);
  CHECK(g.bandwidth() == Catch::Approx(20.0));
  CHECK(g.char_time() == Catch::Approx(0.5));
}
