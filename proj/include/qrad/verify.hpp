#ifndef QRAD_VERIFY_HPP
#define QRAD_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrad/cavity.hpp"
#include "qrad/dielectric.hpp"
#include "qrad/fock.hpp"
#include "qrad/frw.hpp"
#include "qrad/mirror.hpp"
#include "qrad/response.hpp"
#include "qrad/thermal.hpp"
#include "qrad/trajectory.hpp"
#include "qrad/units.hpp"

// Self-verification: every release criterion is a named check with a
// pinned tolerance and a measured value.  Checks are grouped in suites
// (mirror, cavity, dielectric, frw, response, special).

namespace qrad::verify {

struct Check {
  int criterion = 0;       // release criterion this check belongs to
  std::string suite;
  std::string name;
  double tolerance = 0.0;  // pass iff measured <= tolerance
  double measured = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

// Pinned regression constant: thermal factor of the fundamental mode of
// a 1 cm cubic cavity at 290 K (recorded once, never recomputed from
// scratch in the check).
inline constexpr double kCubeThermalFactor290K = 465.48381020881658;

namespace detail {

inline void add(std::vector<Check>& out, int criterion,
                const std::string& suite, const std::string& name,
                double tolerance, double measured, double seconds) {
  out.push_back({criterion, suite, name, tolerance, measured,
                 measured <= tolerance && std::isfinite(measured), seconds});
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// --- mirror ----------------------------------------------------------

inline void mirror_checks(std::vector<Check>& out) {
  const GaussianPulse traj(1.0, 1.0);
  const auto grid = mirror::WavenumberGrid::log_spaced(traj, 400);

  // Criterion 1: quadrature against the closed form at T tau in
  // {0, 0.1, 1}, each within 1% and under 30 s.
  double worst = 0.0, worst_time = 0.0;
  for (double t : {0.0, 0.1, 1.0}) {
    const auto temp =
        t == 0.0 ? Temperature::zero() : Temperature::from_temperature(t);
    mirror::RadiatedEnergy quad, closed;
    const double secs = timed([&] {
      quad = mirror::energy_quadrature(traj, temp, grid);
      closed = mirror::energy_closed(traj, temp);
    });
    worst = std::max(worst, rel_diff(quad.total(), closed.total()));
    worst_time = std::max(worst_time, secs);
  }
  add(out, 1, "mirror", "mirror_oracle_equivalence", 1e-2, worst, worst_time);
  add(out, 1, "mirror", "mirror_oracle_runtime_s", 30.0, worst_time,
      worst_time);

  // Criterion 2: thermal part scales as T^2 with the exact coefficient
  // (4 pi^2 / 3) (T tau)^2, measured from the quadrature evaluator.
  double exponent_err = 0.0, ratio_err = 0.0;
  const double secs = timed([&] {
    const auto e0 = mirror::energy_quadrature(traj, Temperature::zero(), grid);
    const auto e1 = mirror::energy_quadrature(
        traj, Temperature::from_temperature(0.1), grid);
    const auto e2 = mirror::energy_quadrature(
        traj, Temperature::from_temperature(1.0), grid);
    const double slope =
        std::log((e2.total() - e0.total()) / (e1.total() - e0.total())) /
        std::log(10.0);
    exponent_err = std::abs(slope - 2.0);
    const double expect = 4.0 * M_PI * M_PI / 3.0;  // (T tau)^2 = 1
    ratio_err = rel_diff(e2.thermal / e2.vacuum, expect);
  });
  add(out, 2, "mirror", "mirror_thermal_exponent", 0.01, exponent_err, secs);
  add(out, 2, "mirror", "mirror_thermal_ratio", 1e-2, ratio_err, secs);
}

// --- cavity ----------------------------------------------------------

inline void cavity_checks(std::vector<Check>& out) {
  // Criterion 3: Mathieu-oracle growth rate of ln |beta|^2 equals
  // omega eps within 5% in the exponential-growth window, with
  // unitarity maintained to 1e-8 throughout [1000, 4000].
  const double w = 1.0, eps = 1e-3;
  double rate_err = 0.0, unit_defect = 0.0;
  const double secs3 = timed([&] {
    // Sample the full window for unitarity; measure the slope at the
    // top of the window where sinh^2 has reached its exponential
    // asymptote (d ln sinh^2(Xi) / dT_s = w eps coth(Xi) -> w eps).
    std::vector<double> wts = {1000.0, 2000.0, 3000.0, 3960.0, 4000.0};
    std::vector<double> lnb(wts.size()), t_end(wts.size());
    for (std::size_t i = 0; i < wts.size(); ++i) {
      cavity::VibrationProfile p{eps, w, wts[i] / w};
      // The oracle snaps the end time to the nearest drive-phase zero;
      // use the same snapped duration in the slope denominator.
      t_end[i] = M_PI / (2.0 * w) *
                 std::max(1.0, std::round(p.duration * 2.0 * w / M_PI));
      const auto pair = cavity::mathieu_oracle(p);
      lnb[i] = std::log(std::norm(pair.beta));
      unit_defect = std::max(unit_defect, pair.unitarity_defect());
    }
    const double slope = (lnb[4] - lnb[3]) / (t_end[4] - t_end[3]);
    rate_err = std::abs(slope - w * eps) / (w * eps);
  });
  add(out, 3, "cavity", "cavity_mathieu_growth_rate", 0.05, rate_err, secs3);
  add(out, 3, "cavity", "cavity_mathieu_unitarity", 1e-8, unit_defect, secs3);
  add(out, 3, "cavity", "cavity_mathieu_runtime_s", 10.0, secs3, secs3);

  // Criterion 5: magnitude of the thermal factor for a 1 cm cube at
  // 290 K, pinned as a regression constant.
  double regression = 0.0, magnitude = 0.0;
  const double secs5 = timed([&] {
    const double edge = units::length_from_cm(1.0);
    cavity::BoxGeometry geom{{edge, edge, edge}};
    const double w1 = geom.frequency(1, 1, 1);
    const auto temp = Temperature::from_temperature(
        units::kelvin_to_angular_frequency(290.0));
    const double factor = thermal_factor(w1, temp);
    regression = rel_diff(factor, kCubeThermalFactor290K);
    magnitude = (factor >= 1e2 && factor <= 1e3) ? 0.0 : 1.0;
  });
  add(out, 5, "cavity", "cavity_thermal_factor_magnitude", 0.5, magnitude,
      secs5);
  add(out, 5, "cavity", "cavity_thermal_factor_regression", 1e-9, regression,
      secs5);

  // Criterion 10: the spatial integral of the energy-density map equals
  // omega_1 dN_1 within 1e-4 (64^3 midpoint grid).
  double consistency = 0.0;
  const double secs10 = timed([&] {
    cavity::BoxGeometry geom{{1.0, 1.0, 1.0}};
    const double w1 = geom.frequency(1, 1, 1);
    cavity::VibrationProfile profile{1e-3, w1, 1000.0 / w1};
    for (double t : {0.0, 2.0 * w1}) {
      const auto temp =
          t == 0.0 ? Temperature::zero() : Temperature::from_temperature(t);
      const auto maps = cavity::local_field_changes(profile, temp, geom, 64);
      const double integral = cavity::integrate_t00(maps, geom);
      const double xi = profile.squeezing_parameter();
      const double dn1 =
          std::sinh(xi) * std::sinh(xi) * thermal_factor(w1, temp);
      consistency = std::max(consistency, rel_diff(integral, w1 * dn1));
    }
  });
  add(out, 10, "cavity", "cavity_local_global_t00", 1e-4, consistency, secs10);
}

// --- dielectric ------------------------------------------------------

inline void dielectric_checks(std::vector<Check>& out) {
  // Criterion 8: the 2-D quadrature oracle reproduces the closed-form
  // vacuum energy within 1%, and the thermal/vacuum ratio is the
  // analytic (4 pi^4 / 15) (T tau)^4 within 1e-6.
  double oracle_err = 0.0;
  const double secs_a = timed([&] {
    for (double eps_inf : {1.0, 1.77}) {
      dielectric::SmallRProfile prof{
          std::make_shared<GaussianPulse>(1.0, 1.0), 1e-3, eps_inf};
      const double closed =
          dielectric::smallR_energy(prof, Temperature::zero()).vacuum;
      const double oracle = dielectric::smallR_vacuum_oracle(prof);
      oracle_err = std::max(oracle_err, rel_diff(closed, oracle));
    }
  });
  add(out, 8, "dielectric", "dielectric_smallR_oracle", 1e-2, oracle_err,
      secs_a);

  double ratio_err = 0.0;
  const double secs_b = timed([&] {
    dielectric::SmallRProfile prof{std::make_shared<GaussianPulse>(1.0, 1.0),
                                   1e-3, 1.77};
    const double t = 0.3;  // T tau = 0.3
    const auto e = dielectric::smallR_energy(
        prof, Temperature::from_temperature(t));
    const double expect =
        4.0 * std::pow(M_PI, 4) / 15.0 * std::pow(t, 4);
    ratio_err = rel_diff(e.thermal / e.vacuum, expect);
  });
  add(out, 8, "dielectric", "dielectric_thermal_ratio", 1e-6, ratio_err,
      secs_b);
}

// --- frw -------------------------------------------------------------

inline void frw_checks(std::vector<Check>& out) {
  // Criterion 9: sudden limit and adiabatic suppression of |beta|^2.
  double sudden_err = 0.0;
  const double secs_a = timed([&] {
    // Omega ratios; nu_out/nu_in reaches 25, so tau_r must be sudden
    // on the out-scale as well (tau_r nu_in = 0.002 <= 0.05).
    for (double ratio : {1.2, 2.0, 5.0}) {
      const frw::TanhRamp ramp(1.0, ratio, 0.002);  // nu_in = 1
      const auto pair = frw::mode_bogoliubov(ramp, 1.0);
      const double expect = frw::sudden_beta_sq(ramp, 1.0);
      sudden_err = std::max(sudden_err,
                            std::abs(pair.beta_sq() - expect) / expect);
    }
  });
  add(out, 9, "frw", "frw_sudden_limit", 0.02, sudden_err, secs_a);

  double adiabatic = 0.0;
  const double secs_b = timed([&] {
    const frw::TanhRamp ramp(1.0, std::sqrt(2.0), 25.0);  // tau_r nu_in = 25
    adiabatic = frw::mode_bogoliubov(ramp, 1.0).beta_sq();
  });
  add(out, 9, "frw", "frw_adiabatic_suppression", 1e-6, adiabatic, secs_b);
}

// --- response core and oracle ----------------------------------------

inline void response_checks(std::vector<Check>& out) {
  // Criterion 6: sum_I dN_I vanishes for pure hopping (S = 0),
  // 100 random Hermitian draws up to dimension 50.
  double worst6 = 0.0;
  const double secs6 = timed([&] {
    std::mt19937 rng(20260826);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> dims(2, 50);
    for (int draw = 0; draw < 100; ++draw) {
      const int d = dims(rng);
      Eigen::MatrixXcd u(d, d);
      for (int j = 0; j < d; ++j)
        for (int k = 0; k <= j; ++k) {
          const std::complex<double> z(unif(rng), j == k ? 0.0 : unif(rng));
          u(j, k) = z;
          u(k, j) = std::conj(z);
        }
      Eigen::VectorXd occ(d);
      for (int j = 0; j < d; ++j) occ(j) = 0.5 * (unif(rng) + 1.0);
      PerturbationMatrices mat{Eigen::MatrixXcd::Zero(d, d), u};
      const auto dn = delta_n(mat, occ);
      const double sum = dn.total.sum();
      const double scale = std::max(1.0, dn.total.cwiseAbs().sum());
      worst6 = std::max(worst6, std::abs(sum) / scale);
    }
  });
  add(out, 6, "response", "response_number_conservation", 1e-14, worst6,
      secs6);

  // Criterion 7: lambda-scaling fit of the exact two-mode oracle agrees
  // with the quadratic response within 0.5%; entropy drift <= 1e-10.
  double fit_err = 0.0, entropy_drift = 0.0;
  const double secs7 = timed([&] {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const Eigen::VectorXd omegas = (Eigen::VectorXd(2) << 1.0, 1.3).finished();
    const auto temp = Temperature::from_beta(1.0);
    Eigen::VectorXd occ(2);
    for (int i = 0; i < 2; ++i)
      occ(i) = bose_occupation(omegas(i), temp);
    for (int draw = 0; draw < 3; ++draw) {
      Eigen::MatrixXcd s(2, 2), u(2, 2);
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k <= j; ++k) {
          s(j, k) = std::complex<double>(unif(rng), unif(rng));
          s(k, j) = s(j, k);
          const std::complex<double> z(unif(rng), j == k ? 0.0 : unif(rng));
          u(j, k) = z;
          u(k, j) = std::conj(z);
        }
      PerturbationMatrices mat{s, u};
      const auto expected = delta_n(mat, occ);
      FockTruncation cut{22, 2};
      for (int mode = 0; mode < 2; ++mode) {
        const double coeff = quadratic_coefficient([&](double lambda) {
          PerturbationMatrices scaled{lambda * mat.S, lambda * mat.U};
          const auto r = fock_brute_force(scaled, occ, cut);
          entropy_drift = std::max(
              entropy_drift, std::abs(r.entropy_final - r.entropy_initial));
          return r.final_n(mode) - r.initial_n(mode);
        });
        fit_err = std::max(fit_err,
                           rel_diff(coeff, expected.total(mode)));
      }
    }
  });
  add(out, 7, "response", "fock_quadratic_agreement", 5e-3, fit_err, secs7);
  add(out, 7, "response", "fock_entropy_drift", 1e-10, entropy_drift, secs7);

  // Criterion 4: exact thermal factorization dN^T / dN^0 = 1 + 2n for
  // every diagonal scenario, both at the formula level and on the
  // single-mode Fock oracle (n_max = 40, beta = 1, omega = 1).
  double worst4 = 0.0;
  const double secs4 = timed([&] {
    const double omega = 1.0;
    const auto temp = Temperature::from_beta(1.0);
    const double factor = thermal_factor(omega, temp);

    // Formula level: cavity squeezing, large-R dielectric, FRW all put
    // dN^T = dN^0 (1 + 2n) by construction of the diagonal response.
    {
      cavity::VibrationProfile p{1e-3, omega, 200.0};
      const double r = cavity::rwa_photon_number(p, temp).delta_n1 /
                       cavity::rwa_photon_number(p, Temperature::zero()).delta_n1;
      worst4 = std::max(worst4, rel_diff(r, factor));
    }
    {
      dielectric::LargeRModulation mod{1e-3, 1.0, 50.0, 2.0};
      const auto pt = dielectric::largeR_delta_n(mod, temp, omega / 2.0);
      const auto p0 =
          dielectric::largeR_delta_n(mod, Temperature::zero(), omega / 2.0);
      worst4 = std::max(
          worst4, rel_diff((pt.vacuum + pt.thermal) / p0.vacuum,
                           thermal_factor(omega / 2.0, temp)));
    }
    {
      const frw::TanhRamp ramp(1.0, 1.5, 0.2);
      const auto spec = frw::thermal_spectrum(ramp, {omega}, temp);
      worst4 =
          std::max(worst4, rel_diff(spec[0].delta_n_thermal / spec[0].beta_sq,
                                    factor));
    }
    // Oracle level: one squeezed mode evolved exactly in a truncated
    // Fock space; the ratio holds at all orders, so no lambda fit.
    {
      PerturbationMatrices mat{
          Eigen::MatrixXcd::Constant(1, 1, std::complex<double>(0.05, 0.0)),
          Eigen::MatrixXcd::Zero(1, 1)};
      FockTruncation cut{40, 1};
      const Eigen::VectorXd vac = Eigen::VectorXd::Zero(1);
      const Eigen::VectorXd th =
          Eigen::VectorXd::Constant(1, bose_occupation(omega, temp));
      const auto r0 = fock_brute_force(mat, vac, cut);
      const auto rt = fock_brute_force(mat, th, cut);
      const double ratio = (rt.final_n(0) - rt.initial_n(0)) /
                           (r0.final_n(0) - r0.initial_n(0));
      worst4 = std::max(worst4, rel_diff(ratio, factor));
    }
  });
  add(out, 4, "response", "thermal_factorization_exact", 1e-12, worst4,
      secs4);
}

// --- special functions -------------------------------------------------

inline void special_checks(std::vector<Check>& out) {
  // Criterion 11: the Hurwitz-zeta summation reproduces zeta(2) and
  // zeta(4) at coincidence (delta_t = 0, beta = 1).
  double worst = 0.0;
  const double secs = timed([&] {
    const auto temp = Temperature::from_beta(1.0);
    const double z2 = hurwitz_sum(1, 0.0, temp).real();  // 1! zeta(2)
    const double z4 = hurwitz_sum(3, 0.0, temp).real() / 6.0;  // /3!
    worst = std::max(rel_diff(z2, M_PI * M_PI / 6.0),
                     rel_diff(z4, std::pow(M_PI, 4) / 90.0));
  });
  add(out, 11, "special", "hurwitz_zeta_values", 1e-10, worst, secs);
}

}  // namespace detail

inline std::vector<Check> run(const std::string& suite = "all") {
  std::vector<Check> out;
  const bool all = suite == "all";
  if (all || suite == "mirror") detail::mirror_checks(out);
  if (all || suite == "cavity") detail::cavity_checks(out);
  if (all || suite == "dielectric") detail::dielectric_checks(out);
  if (all || suite == "frw") detail::frw_checks(out);
  if (all || suite == "response") detail::response_checks(out);
  if (all || suite == "special") detail::special_checks(out);
  if (out.empty())
    throw std::invalid_argument(
        "unknown suite '" + suite +
        "' (all | mirror | cavity | dielectric | frw | response | special)");
  return out;
}

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

inline std::string to_text(const std::vector<Check>& checks) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  for (const auto& c : checks)
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.suite << "/" << c.name
       << "  measured=" << c.measured << "  tolerance=" << c.tolerance
       << "  (" << c.seconds << " s)\n";
  return os.str();
}

inline std::string to_json(const std::vector<Check>& checks) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "{\n  \"checks\": [\n";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    os << "    {\"criterion\": " << c.criterion << ", \"suite\": \""
       << c.suite << "\", \"name\": \"" << c.name
       << "\", \"tolerance\": " << c.tolerance
       << ", \"measured\": " << c.measured << ", \"pass\": "
       << (c.pass ? "true" : "false") << ", \"seconds\": " << c.seconds
       << "}" << (i + 1 < checks.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"all_pass\": " << (all_pass(checks) ? "true" : "false")
     << "\n}\n";
  return os.str();
}

}  // namespace qrad::verify

#endif  // QRAD_VERIFY_HPP
