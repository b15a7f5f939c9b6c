#include <catch_amalgamated.hpp>

#include <cmath>
#include <memory>

#include "qrad/dielectric.hpp"
#include "qrad/trajectory.hpp"

using qrad::GaussianPulse;
using qrad::Temperature;
namespace dielectric = qrad::dielectric;

namespace {

dielectric::SmallRProfile gaussian_profile(double theta0, double eps_inf) {
  return {std::make_shared<GaussianPulse>(1.0, 1.0), theta0, eps_inf};
}

}  // namespace

TEST_CASE("small-R profile validation") {
  CHECK_THROWS_AS(gaussian_profile(1e-3, 0.5).validate(),
                  std::invalid_argument);
  CHECK_NOTHROW(gaussian_profile(1e-3, 1.0).validate());
}

TEST_CASE("small-R closed-form vacuum energy for a Gaussian drive") {
  // E = (eps/2pi)^3 theta0^2/105 int Vquad^2, with int (V'''')^2 =
  // 105 sqrt(2 pi) / 2 for a unit Gaussian.
  const auto prof = gaussian_profile(1e-3, 2.0);
  const auto e = dielectric::smallR_energy(prof, Temperature::zero());
  const double expect = std::pow(2.0 / (2.0 * M_PI), 3) * 1e-6 / 105.0 *
                        105.0 * std::sqrt(2.0 * M_PI) / 2.0;
  CHECK(e.vacuum == Catch::Approx(expect).epsilon(1e-10));
  CHECK(e.thermal == 0.0);
}

TEST_CASE("small-R energy scales with theta0^2 and eps_inf^3") {
  const auto e1 = dielectric::smallR_energy(gaussian_profile(1e-3, 1.0),
                                            Temperature::zero());
  const auto e2 = dielectric::smallR_energy(gaussian_profile(2e-3, 1.0),
                                            Temperature::zero());
  CHECK(e2.vacuum == Catch::Approx(4.0 * e1.vacuum).epsilon(1e-12));
  const auto e3 = dielectric::smallR_energy(gaussian_profile(1e-3, 2.0),
                                            Temperature::zero());
  CHECK(e3.vacuum == Catch::Approx(8.0 * e1.vacuum).epsilon(1e-12));
}

TEST_CASE("small-R thermal/vacuum ratio is (4 pi^4 / 15)(T tau)^4") {
  const auto prof = gaussian_profile(1e-3, 1.77);
  for (double t : {0.1, 0.45}) {
    const auto e =
        dielectric::smallR_energy(prof, Temperature::from_temperature(t));
    CHECK(e.thermal / e.vacuum ==
          Catch::Approx(4.0 * std::pow(M_PI, 4) / 15.0 * std::pow(t, 4))
              .epsilon(1e-6));
  }
}

TEST_CASE("small-R quadrature oracle reproduces the closed form") {
  for (double eps_inf : {1.0, 1.77}) {
    const auto prof = gaussian_profile(1e-3, eps_inf);
    const double closed =
        dielectric::smallR_energy(prof, Temperature::zero()).vacuum;
    CHECK(dielectric::smallR_vacuum_oracle(prof) ==
          Catch::Approx(closed).epsilon(1e-2));
  }
}

TEST_CASE("small-R spectral density is non-negative and band-limited") {
  const auto prof = gaussian_profile(1e-3, 1.5);
  const auto temp = Temperature::from_temperature(0.3);
  const auto [lo_vac, lo_th] = dielectric::smallR_spectral_density(prof, 0.5, temp);
  CHECK(lo_vac >= 0.0);
  CHECK(lo_th >= 0.0);
  const auto [hi_vac, hi_th] = dielectric::smallR_spectral_density(
      prof, 3.0 * prof.volume->bandwidth(), temp);
  CHECK(hi_vac <= 1e-12 * lo_vac);
}

TEST_CASE("large-R spectrum and exact thermal factorization") {
  dielectric::LargeRModulation mod{1e-3, 1.0, 200.0, 2.0};
  const double w = 0.5;
  const auto p0 = dielectric::largeR_delta_n(mod, Temperature::zero(), w);
  CHECK(p0.vacuum ==
        Catch::Approx(w * w * std::norm(mod.time_fourier(2.0 * w)))
            .epsilon(1e-12));
  CHECK(p0.thermal == 0.0);

  const auto temp = Temperature::from_beta(2.0);
  const auto pt = dielectric::largeR_delta_n(mod, temp, w);
  CHECK((pt.vacuum + pt.thermal) / p0.vacuum ==
        Catch::Approx(qrad::thermal_factor(w, temp)).epsilon(1e-14));

  // theta ~ sin(2 w_d t) creates pairs with omega + omega' = 2 w_d, so
  // the yield peaks at omega = w_d.
  const auto on = dielectric::largeR_delta_n(mod, temp, mod.omega_drive);
  const auto off =
      dielectric::largeR_delta_n(mod, temp, 0.8 * mod.omega_drive);
  CHECK(on.vacuum > off.vacuum);
}

TEST_CASE("photon mode dispersion omega = |k| / sqrt(eps_inf)") {
  dielectric::PhotonMode m{{3.0, 0.0, 4.0}, 0};
  CHECK(m.omega(4.0) == Catch::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("pair correlations: back-to-back enhancement, isotropic floor") {
  dielectric::LargeRModulation mod{1e-2, 1.0, 40.0, 2.0};
  const double w = 1.0;  // resonant pair: w + w = 2 omega_drive
  const double k = w * std::sqrt(2.0);
  dielectric::PhotonMode j{{k, 0.0, 0.0}, 0};
  dielectric::PhotonMode back{{-k, 0.0, 0.0}, 0};
  dielectric::PhotonMode side{{0.0, k, 0.0}, 0};
  dielectric::PhotonMode other_pol{{-k, 0.0, 0.0}, 1};

  const auto temp = Temperature::from_beta(2.0);
  const auto c_back = dielectric::pair_correlation(mod, temp, j, back);
  CHECK(c_back.coupled);
  CHECK(c_back.back_to_back > 0.0);

  // Nonantiparallel momenta or orthogonal polarizations do not pair.
  CHECK_FALSE(dielectric::pair_correlation(mod, temp, j, side).coupled);
  CHECK_FALSE(dielectric::pair_correlation(mod, temp, j, other_pol).coupled);
  CHECK(dielectric::pair_correlation(mod, temp, j, side).back_to_back == 0.0);

  // The isotropic part is the negative thermal cross term.
  const auto nj = qrad::bose_occupation(j.omega(mod.eps_inf), temp);
  const auto pt = dielectric::largeR_delta_n(mod, temp, j.omega(mod.eps_inf));
  const double dn = pt.vacuum + pt.thermal;
  CHECK(c_back.isotropic ==
        Catch::Approx(-2.0 * nj * dn).epsilon(1e-12));
}
