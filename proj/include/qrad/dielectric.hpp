#ifndef QRAD_DIELECTRIC_HPP
#define QRAD_DIELECTRIC_HPP

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qrad/fock.hpp"
#include "qrad/response.hpp"
#include "qrad/thermal.hpp"
#include "qrad/trajectory.hpp"

// Dynamical dielectric medium with vanishing velocity field: photon
// pair creation from a localized bubble (small-R expansion) with a
// 2-D quadrature oracle, and the homogeneous-modulation (large-R)
// squeezing limit with back-to-back correlations.

namespace qrad::dielectric {

inline constexpr double zeta4 = M_PI * M_PI * M_PI * M_PI / 90.0;

// Localized disturbance: bubble volume profile V(t) with deviation
// scale theta0 = (1/eps(t) - 1/eps_inf)/2 inside an asymptotic
// permittivity eps_inf.  Photons propagate with omega = |k|/sqrt(eps_inf).
struct SmallRProfile {
  std::shared_ptr<const Trajectory> volume;  // V(t)
  double theta0 = 1e-3;
  double eps_inf = 1.0;

  void validate() const {
    if (!volume) throw std::invalid_argument("SmallRProfile: missing V(t)");
    if (!(eps_inf >= 1.0))
      throw std::invalid_argument("SmallRProfile: eps_inf must be >= 1");
  }
};

struct RadiatedEnergy {
  double vacuum = 0.0;
  double thermal = 0.0;
  double total() const { return vacuum + thermal; }
};

// E = (eps_inf/2pi)^3 theta0^2/105 [ int Vdddd^2 + zeta(4) 840 T^4 int Vdd^2 ].
inline RadiatedEnergy smallR_energy(const SmallRProfile& profile,
                                    const Temperature& temp) {
  profile.validate();
  const double pref = std::pow(profile.eps_inf / (2.0 * M_PI), 3) *
                      profile.theta0 * profile.theta0 / 105.0;
  RadiatedEnergy e;
  e.vacuum = pref * profile.volume->squared_derivative_integral(4);
  if (!temp.is_zero()) {
    const double t = temp.temperature();
    e.thermal = pref * zeta4 * 840.0 * std::pow(t, 4) *
                profile.volume->squared_derivative_integral(2);
  }
  return e;
}

namespace detail {

using boost::math::quadrature::gauss_kronrod;

// The small-R mode sums reduce, after the polarization sum
// sum_{nu nu'} (e.e')^2 = 1 + cos^2(gamma) and both angular integrals
// (4pi)^2 * 4/3, to a two-dimensional frequency quadrature with the
// overall constant eps_inf^3/(3 pi^4).
inline double smallR_energy_kernel(const SmallRProfile& profile, double w,
                                   double wmax, const Temperature& temp,
                                   bool thermal_part, double tol) {
  const auto& v = *profile.volume;
  const double nw = thermal_part ? bose_occupation(w, temp) : 0.0;
  auto inner = [&](double wp) {
    const double weight =
        thermal_part ? nw + bose_occupation(wp, temp) : 1.0;
    return std::pow(wp, 3) * std::norm(v.fourier(w + wp)) * weight;
  };
  return std::pow(w, 4) *
         gauss_kronrod<double, 31>::integrate(inner, 0.0, wmax, 12, tol);
}

}  // namespace detail

// Brute-force vacuum energy by 2-D quadrature over the pair-creation
// kernel; oracle for the closed form above.
inline double smallR_vacuum_oracle(const SmallRProfile& profile,
                                   double tol = 1e-8) {
  profile.validate();
  const double wmax = profile.volume->bandwidth();
  const double constant =
      profile.theta0 * profile.theta0 * std::pow(profile.eps_inf, 3) /
      (3.0 * std::pow(M_PI, 4));
  double err = 0.0;
  const double val = detail::gauss_kronrod<double, 31>::integrate(
      [&](double w) {
        return detail::smallR_energy_kernel(profile, w, wmax,
                                            Temperature::zero(), false,
                                            tol * 1e-2);
      },
      0.0, wmax, 12, tol, &err);
  if (err > 100.0 * tol * std::max(std::abs(val), 1e-300))
    throw std::runtime_error("smallR_vacuum_oracle: quadrature non-convergence");
  return constant * val;
}

// Spectral energy density of the small-R pair-creation kernel, split
// into vacuum and thermal parts; used for the low-frequency softness
// diagnostics (e ~ w^4 at T=0, one power less at T > 0).
inline std::pair<double, double> smallR_spectral_density(
    const SmallRProfile& profile, double w, const Temperature& temp,
    double tol = 1e-9) {
  profile.validate();
  const double wmax = profile.volume->bandwidth();
  const double constant =
      profile.theta0 * profile.theta0 * std::pow(profile.eps_inf, 3) /
      (3.0 * std::pow(M_PI, 4));
  const double vac =
      constant * detail::smallR_energy_kernel(profile, w, wmax, temp, false, tol);
  const double th =
      temp.is_zero()
          ? 0.0
          : constant *
                detail::smallR_energy_kernel(profile, w, wmax, temp, true, tol);
  return {vac, th};
}

// Homogeneous harmonic modulation theta(t) = eps sin(2 omega_drive t)
// over a window [0, duration].
struct LargeRModulation {
  double epsilon = 1e-3;
  double omega_drive = 1.0;
  double duration = 10.0;
  double eps_inf = 1.0;

  // theta~_t(W) = int_0^T eps sin(2 w_d t) e^{iWt} dt, closed form with
  // removable points at W = +-2 w_d.
  std::complex<double> time_fourier(double w) const {
    const std::complex<double> i(0.0, 1.0);
    const double a = 2.0 * omega_drive;
    auto phase_integral = [this, i](double q) -> std::complex<double> {
      // int_0^T e^{iqt} dt
      if (std::abs(q) * duration < 1e-8)
        return duration * (1.0 + i * q * duration / 2.0);
      return (std::exp(i * q * duration) - 1.0) / (i * q);
    };
    return epsilon / (2.0 * i) * (phase_integral(w + a) - phase_integral(w - a));
  }
};

struct PhotonMode {
  Eigen::Vector3d k{1.0, 0.0, 0.0};
  int polarization = 0;  // 0 or 1

  double omega(double eps_inf) const { return k.norm() / std::sqrt(eps_inf); }
};

struct LargeRPoint {
  double omega = 0.0;
  double vacuum = 0.0;   // |S_{k,-k}|^2
  double thermal = 0.0;  // enhancement 2 n |S|^2
  double total() const { return vacuum + thermal; }
};

// dN_{k nu} = |S_{k nu,(-k) nu}|^2 (1 + 2 n_k); pairs appear back to
// back with equal polarization, isotropically in |k|.
inline LargeRPoint largeR_delta_n(const LargeRModulation& mod,
                                  const Temperature& temp, double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("largeR_delta_n: omega must be positive");
  LargeRPoint p;
  p.omega = omega;
  const double s2 = omega * omega * std::norm(mod.time_fourier(2.0 * omega));
  p.vacuum = s2;
  p.thermal = 2.0 * bose_occupation(omega, temp) * s2;
  return p;
}

inline std::vector<LargeRPoint> largeR_spectrum(
    const LargeRModulation& mod, const Temperature& temp,
    const std::vector<double>& omegas) {
  std::vector<LargeRPoint> out;
  out.reserve(omegas.size());
  for (double w : omegas) out.push_back(largeR_delta_n(mod, temp, w));
  return out;
}

struct PairCorrelation {
  double back_to_back = 0.0;  // anisotropic, temperature independent
  double isotropic = 0.0;     // -n_J dN_K - n_K dN_J, thermal, <= 0
  bool coupled = false;       // modes form a created pair
};

// Two-photon correlation decomposition for a pair of modes.  The
// anisotropic part lives on k' = -k with nu' = nu and is evaluated on
// the two-mode reduction through the exact Fock oracle; the isotropic
// thermal part is the diagonal-perturbation special case.
inline PairCorrelation pair_correlation(const LargeRModulation& mod,
                                        const Temperature& temp,
                                        const PhotonMode& mode_j,
                                        const PhotonMode& mode_k) {
  PairCorrelation out;
  const double wj = mode_j.omega(mod.eps_inf);
  const double wk = mode_k.omega(mod.eps_inf);
  const double nj = bose_occupation(wj, temp);
  const double nk = bose_occupation(wk, temp);
  const double dnj = largeR_delta_n(mod, temp, wj).total();
  const double dnk = largeR_delta_n(mod, temp, wk).total();
  out.isotropic = -nj * dnk - nk * dnj;

  const bool antiparallel = (mode_j.k + mode_k.k).norm() <
                            1e-10 * std::max(mode_j.k.norm(), mode_k.k.norm());
  out.coupled = antiparallel && mode_j.polarization == mode_k.polarization;
  if (out.coupled) {
    const std::complex<double> s = -wj * mod.time_fourier(wj + wk);
    PerturbationMatrices mat;
    mat.S = Eigen::MatrixXcd::Zero(2, 2);
    mat.U = Eigen::MatrixXcd::Zero(2, 2);
    mat.S(0, 1) = mat.S(1, 0) = s;
    const Eigen::VectorXd vac = Eigen::VectorXd::Zero(2);
    FockTruncation cut{12, 2};
    out.back_to_back = correlation(mat, vac, cut)(0, 1);
  }
  return out;
}

}  // namespace qrad::dielectric

#endif  // QRAD_DIELECTRIC_HPP
