#ifndef QRAD_MIRROR_HPP
#define QRAD_MIRROR_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qrad/thermal.hpp"
#include "qrad/trajectory.hpp"

// Single perfectly reflecting mirror in 1+1 dimensions: inter-mode
// coupling, squeezing/hopping matrix elements over the continuum wave
// number k, the finite-temperature spectrum and the radiated energy,
// both in closed form and by brute-force quadrature.

namespace qrad::mirror {

// Strictly increasing positive nodes with a bandwidth cutoff.
struct WavenumberGrid {
  std::vector<double> nodes;
  double k_max = 0.0;

  // Log-spaced grid per the bandwidth rule: k_max >= 10/tau.
  static WavenumberGrid log_spaced(const Trajectory& traj, int count = 400,
                                   double k_min_factor = 1e-4) {
    WavenumberGrid g;
    g.k_max = traj.bandwidth();
    const double k_min = k_min_factor / traj.char_time();
    g.nodes.resize(count);
    for (int i = 0; i < count; ++i)
      g.nodes[i] =
          k_min * std::pow(g.k_max / k_min, double(i) / double(count - 1));
    return g;
  }

  void validate(const Trajectory& traj) const {
    if (nodes.size() < 400)
      throw std::invalid_argument(
          "WavenumberGrid: need >= 400 nodes for a resolved spectrum");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!(nodes[i] > 0.0) || (i > 0 && nodes[i] <= nodes[i - 1]))
        throw std::invalid_argument(
            "WavenumberGrid: nodes must be positive and strictly increasing");
    }
    if (k_max < 10.0 / traj.char_time() - 1e-12)
      throw std::invalid_argument(
          "WavenumberGrid: bandwidth rule violated (k_max < 10/tau)");
  }
};

// M_kk'(t) = etadot(t) (2/pi) k k' / (k^2 - k'^2); the diagonal is
// excluded by the principal value.
inline double coupling_matrix_element(const Trajectory& traj, double t,
                                      double k, double kp) {
  if (!(k > 0.0) || !(kp > 0.0))
    throw std::domain_error("coupling_matrix_element: wave numbers must be > 0");
  if (k == kp)
    throw std::domain_error(
        "coupling_matrix_element: diagonal excluded by principal value");
  return traj.derivative(t, 1) * (2.0 / M_PI) * k * kp / (k * k - kp * kp);
}

// S_kk' = (1/pi)(sqrt(k/k') - sqrt(k'/k)) kk'/(k-k') eta~(k+k').  The
// bracket times kk'/(k-k') collapses to sqrt(kk'), which is also the
// continuous extension at k = k'.
inline std::complex<double> smatrix(const Trajectory& traj, double k,
                                    double kp) {
  if (!(k > 0.0) || !(kp > 0.0))
    throw std::domain_error("smatrix: wave numbers must be > 0");
  return std::sqrt(k * kp) / M_PI * traj.fourier(k + kp);
}

inline std::complex<double> umatrix(const Trajectory& traj, double k,
                                    double kp) {
  if (!(k > 0.0) || !(kp > 0.0))
    throw std::domain_error("umatrix: wave numbers must be > 0");
  return std::sqrt(k * kp) / M_PI * traj.fourier(k - kp);
}

struct SpectrumPoint {
  double k = 0.0;
  double vacuum = 0.0;   // S-term, occupation-free part
  double thermal = 0.0;  // S-term occupations + U-term
  double total() const { return vacuum + thermal; }
};

namespace detail {

using boost::math::quadrature::gauss_kronrod;

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  double err = 0.0;
  const double val =
      gauss_kronrod<double, 31>::integrate(f, a, b, 14, tol, &err);
  const double scale = std::max(std::abs(val), 1e-300);
  if (err / scale > 50.0 * tol && err > 1e-14)
    throw std::runtime_error(
        "mirror quadrature failed to converge (achieved relative error " +
        std::to_string(err / scale) + ")");
  return val;
}

}  // namespace detail

// dN_k = int dk' (kk'/pi^2) |eta~(k+k')|^2 (1 + n_k' + n_k)
//      + int dk' (kk'/pi^2) |eta~(k-k')|^2 (n_k' - n_k)
// The U integrand is continuous at k' = k because n_k' - n_k vanishes
// linearly there; the integral is split at k' = k anyway.
inline SpectrumPoint spectrum_point(const Trajectory& traj,
                                    const Temperature& temp, double k,
                                    double k_max, double tol = 1e-9) {
  SpectrumPoint p;
  p.k = k;
  const double nk = bose_occupation(k, temp);

  auto s_vac = [&](double kp) {
    return k * kp / (M_PI * M_PI) * std::norm(traj.fourier(k + kp));
  };
  p.vacuum = detail::integrate(s_vac, 0.0, k_max, tol);

  if (!temp.is_zero()) {
    auto s_th = [&](double kp) {
      return k * kp / (M_PI * M_PI) * std::norm(traj.fourier(k + kp)) *
             (bose_occupation(kp, temp) + nk);
    };
    auto u_th = [&](double kp) {
      if (kp == k) return 0.0;
      return k * kp / (M_PI * M_PI) * std::norm(traj.fourier(k - kp)) *
             (bose_occupation(kp, temp) - nk);
    };
    p.thermal = detail::integrate(s_th, 0.0, k_max, tol) +
                detail::integrate(u_th, 0.0, k, tol) +
                detail::integrate(u_th, k, k + k_max, tol);
  }
  return p;
}

inline std::vector<SpectrumPoint> spectrum(const Trajectory& traj,
                                           const Temperature& temp,
                                           const WavenumberGrid& grid,
                                           double tol = 1e-9) {
  grid.validate(traj);
  std::vector<SpectrumPoint> out;
  out.reserve(grid.nodes.size());
  for (double k : grid.nodes)
    out.push_back(spectrum_point(traj, temp, k, grid.k_max, tol));
  return out;
}

struct RadiatedEnergy {
  double vacuum = 0.0;
  double thermal = 0.0;
  double total() const { return vacuum + thermal; }
};

// Closed form E = (1/12 pi) int etaddot^2 dt + (pi/3) T^2 int etadot^2 dt.
inline RadiatedEnergy energy_closed(const Trajectory& traj,
                                    const Temperature& temp) {
  RadiatedEnergy e;
  e.vacuum = traj.squared_derivative_integral(2) / (12.0 * M_PI);
  if (!temp.is_zero()) {
    const double t = temp.temperature();
    e.thermal = M_PI / 3.0 * t * t * traj.squared_derivative_integral(1);
  }
  return e;
}

// Brute-force oracle E = int dk k dN_k by nested adaptive quadrature;
// the grid supplies the bandwidth cutoff.
inline RadiatedEnergy energy_quadrature(const Trajectory& traj,
                                        const Temperature& temp,
                                        const WavenumberGrid& grid,
                                        double tol = 1e-7) {
  grid.validate(traj);
  RadiatedEnergy e;
  const double inner_tol = tol * 1e-2;
  e.vacuum = detail::integrate(
      [&](double k) {
        return k * spectrum_point(traj, Temperature::zero(), k, grid.k_max,
                                  inner_tol)
                       .vacuum;
      },
      0.0, grid.k_max, tol);
  if (!temp.is_zero()) {
    // The thermal scattering term has support up to the thermal scale
    // (occupied modes shifted by the drive bandwidth), not just the
    // drive bandwidth itself: extend the outer range until n(k) is
    // negligible (e^-50).
    const double k_up = grid.k_max + 50.0 * temp.temperature();
    e.thermal = detail::integrate(
        [&](double k) {
          return k *
                 spectrum_point(traj, temp, k, grid.k_max, inner_tol).thermal;
        },
        0.0, k_up, tol);
  }
  return e;
}

// Diagnostic for the perturbative regime: max dN_k / (1 + n_k) over the
// grid.  The source formalism does not pin the valid regime; values
// above 0.1 should be treated as a warning.
inline double perturbative_ratio(const std::vector<SpectrumPoint>& spec,
                                 const Temperature& temp) {
  double worst = 0.0;
  for (const auto& p : spec)
    worst = std::max(worst,
                     p.total() / (1.0 + bose_occupation(p.k, temp)));
  return worst;
}

}  // namespace qrad::mirror

#endif  // QRAD_MIRROR_HPP
