#include <catch_amalgamated.hpp>

#include <cmath>

#include "qrad/mirror.hpp"
#include "qrad/trajectory.hpp"

using qrad::GaussianPulse;
using qrad::Temperature;
namespace mirror = qrad::mirror;

TEST_CASE("coupling matrix element: antisymmetry and diagonal guard") {
  GaussianPulse g(1.0, 1.0);
  const double t = 0.3, k = 1.2, kp = 0.7;
  CHECK(mirror::coupling_matrix_element(g, t, k, kp) ==
        Catch::Approx(-mirror::coupling_matrix_element(g, t, kp, k))
            .epsilon(1e-13));
  CHECK_THROWS_AS(mirror::coupling_matrix_element(g, t, k, k),
                  std::domain_error);
}

TEST_CASE("coupling matrix element value at a pinned point") {
  // M_kk'(t) = etadot(t) (2/pi) k k' / (k^2 - k'^2)
  GaussianPulse g(1.0, 1.0);
  const double t = 0.5, k = 2.0, kp = 1.0;
  const double expect =
      g.derivative(t, 1) * (2.0 / M_PI) * k * kp / (k * k - kp * kp);
  CHECK(mirror::coupling_matrix_element(g, t, k, kp) ==
        Catch::Approx(expect).epsilon(1e-14));
  // Gaussian at t=0.5, tau=1: etadot = -2 t e^{-t^2} = -e^{-0.25},
  // prefactor (2/pi) 2/3 = 4/(3 pi): pinned value -4 e^{-1/4} / (3 pi).
  CHECK(mirror::coupling_matrix_element(g, t, k, kp) ==
        Catch::Approx(-4.0 * std::exp(-0.25) / (3.0 * M_PI))
            .epsilon(1e-14));
}

TEST_CASE("simplified S and U agree with the sqrt(kk') closed form and "
          "stay finite on the diagonal") {
  GaussianPulse g(0.8, 1.2);
  const double k = 1.1, kp = 0.6;
  const auto s = mirror::smatrix(g, k, kp);
  CHECK(s.real() == Catch::Approx(std::sqrt(k * kp) *
                                  g.fourier(k + kp).real() / M_PI)
                        .epsilon(1e-13));
  // The apparent pole of |M| at k' -> k is removable: compare U at
  // k' = k (1 +- 1e-6) against the value on the diagonal.
  const auto u0 = mirror::umatrix(g, k, k);
  const auto up = mirror::umatrix(g, k, k * (1.0 + 1e-6));
  const auto um = mirror::umatrix(g, k, k * (1.0 - 1e-6));
  CHECK(std::abs(up - u0) <= 1e-5 * std::abs(u0));
  CHECK(std::abs(um - u0) <= 1e-5 * std::abs(u0));
}

TEST_CASE("wavenumber grid respects the bandwidth rule") {
  GaussianPulse g(1.0, 0.5);
  const auto grid = mirror::WavenumberGrid::log_spaced(g, 400);
  CHECK(grid.k_max == Catch::Approx(20.0));
  CHECK(grid.nodes.size() >= 400);
  CHECK(grid.nodes.front() < grid.nodes.back());
  const auto coarse = mirror::WavenumberGrid::log_spaced(g, 50);
  CHECK_THROWS_AS(coarse.validate(g), std::invalid_argument);
}

TEST_CASE("closed-form energy and the Gaussian moments") {
  const double a = 1.0, tau = 1.0;
  GaussianPulse g(a, tau);
  const auto e0 = mirror::energy_closed(g, Temperature::zero());
  // E_vac = (1/12 pi) int etaddot^2 = (1/12 pi) 3 sqrt(2 pi)/2.
  CHECK(e0.vacuum ==
        Catch::Approx(std::sqrt(2.0 * M_PI) / (8.0 * M_PI)).epsilon(1e-12));
  CHECK(e0.thermal == 0.0);

  // E_T / E_vac = (4 pi^2 / 3) (T tau)^2.
  const double t = 0.35;
  const auto et = mirror::energy_closed(g, Temperature::from_temperature(t));
  CHECK(et.thermal / et.vacuum ==
        Catch::Approx(4.0 * M_PI * M_PI / 3.0 * t * t * tau * tau)
            .epsilon(1e-12));
}

TEST_CASE("quadrature energy matches the closed form") {
  GaussianPulse g(1.0, 1.0);
  const auto grid = mirror::WavenumberGrid::log_spaced(g, 400);
  for (double t : {0.0, 0.5}) {
    const auto temp =
        t == 0.0 ? Temperature::zero() : Temperature::from_temperature(t);
    const auto quad = mirror::energy_quadrature(g, temp, grid);
    const auto closed = mirror::energy_closed(g, temp);
    CHECK(quad.total() == Catch::Approx(closed.total()).epsilon(1e-2));
  }
}

TEST_CASE("vacuum energy scaling under time dilation") {
  // eta(t/s) radiates s^{-3} times the vacuum energy of eta(t).
  const double s = 1.7;
  GaussianPulse g1(1.0, 1.0), gs(1.0, s);
  const auto e1 = mirror::energy_closed(g1, Temperature::zero());
  const auto es = mirror::energy_closed(gs, Temperature::zero());
  CHECK(es.vacuum == Catch::Approx(e1.vacuum / std::pow(s, 3)).epsilon(1e-12));
}

TEST_CASE("spectrum: thermal part vanishes at T = 0 and the split is exact") {
  GaussianPulse g(1.0, 1.0);
  const auto grid = mirror::WavenumberGrid::log_spaced(g, 400);
  const auto p0 = mirror::spectrum_point(g, Temperature::zero(), 1.0,
                                         grid.k_max);
  CHECK(p0.thermal == 0.0);
  CHECK(p0.vacuum > 0.0);

  const auto pt = mirror::spectrum_point(
      g, Temperature::from_temperature(0.3), 1.0, grid.k_max);
  CHECK(pt.vacuum == Catch::Approx(p0.vacuum).epsilon(1e-9));
  CHECK(pt.total() == Catch::Approx(pt.vacuum + pt.thermal).epsilon(1e-14));
  CHECK(pt.thermal > 0.0);
}
