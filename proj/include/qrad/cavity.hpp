#ifndef QRAD_CAVITY_HPP
#define QRAD_CAVITY_HPP

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrad/response.hpp"
#include "qrad/thermal.hpp"

// Trembling rectangular cavity with Dirichlet walls: mode spectrum,
// squeezing and velocity response matrices, the non-perturbative RWA
// photon yield with a parametric-oscillator ODE oracle, local field
// observables and the detectability figure of merit.

namespace qrad::cavity {

struct BoxGeometry {
  std::array<double, 3> edges{1.0, 1.0, 1.0};

  double volume() const { return edges[0] * edges[1] * edges[2]; }

  double frequency(int n1, int n2, int n3) const {
    if (n1 < 1 || n2 < 1 || n3 < 1)
      throw std::invalid_argument(
          "BoxGeometry::frequency: mode indices must be >= 1");
    const double a = n1 / edges[0], b = n2 / edges[1], c = n3 / edges[2];
    return M_PI * std::sqrt(a * a + b * b + c * c);
  }

  // sqrt(8/V) prod sin(n_i pi x_i / L_i); orthonormal on the box.
  double eigenfunction(const std::array<int, 3>& n,
                       const std::array<double, 3>& r) const {
    double f = std::sqrt(8.0 / volume());
    for (int i = 0; i < 3; ++i)
      f *= std::sin(n[i] * M_PI * r[i] / edges[i]);
    return f;
  }

  std::array<double, 3> eigenfunction_gradient(
      const std::array<int, 3>& n, const std::array<double, 3>& r) const {
    const double norm = std::sqrt(8.0 / volume());
    std::array<double, 3> g{};
    for (int i = 0; i < 3; ++i) {
      double v = norm;
      for (int j = 0; j < 3; ++j) {
        const double arg = n[j] * M_PI * r[j] / edges[j];
        v *= (j == i) ? (n[j] * M_PI / edges[j]) * std::cos(arg)
                      : std::sin(arg);
      }
      g[i] = v;
    }
    return g;
  }
};

struct Mode {
  std::array<int, 3> index{1, 1, 1};
  double omega = 0.0;
};

// Lowest `count` modes sorted by frequency.
inline std::vector<Mode> box_modes(const BoxGeometry& geom, int count) {
  if (count < 1) throw std::invalid_argument("box_modes: count >= 1 required");
  // Enumerate a cube of index space large enough to contain the lowest
  // `count` modes, then sort.
  int bound = 2;
  while (true) {
    std::vector<Mode> modes;
    for (int a = 1; a <= bound; ++a)
      for (int b = 1; b <= bound; ++b)
        for (int c = 1; c <= bound; ++c)
          modes.push_back({{a, b, c}, geom.frequency(a, b, c)});
    std::sort(modes.begin(), modes.end(),
              [](const Mode& x, const Mode& y) { return x.omega < y.omega; });
    // The enumeration is complete up to the frequency of an index at the
    // cube border along the stiffest axis.
    const double l_max = *std::max_element(geom.edges.begin(), geom.edges.end());
    const double safe = M_PI * (bound + 1) / l_max;
    if (static_cast<int>(modes.size()) >= count &&
        modes[count - 1].omega < safe) {
      modes.resize(count);
      return modes;
    }
    ++bound;
  }
}

// Assert the non-degenerate fundamental the RWA analysis assumes.
inline void require_unique_fundamental(const std::vector<Mode>& modes) {
  if (modes.size() >= 2 &&
      std::abs(modes[0].omega - modes[1].omega) < 1e-12 * modes[0].omega)
    throw std::invalid_argument(
        "cavity: degenerate fundamental mode; the resonant analysis assumes "
        "a unique lowest frequency");
}

// Resonant wall vibration: the drive enters every formula through
// dOmega_I^2(t) = 2 omega^2 eps sin(2 omega t), which ties the
// dimensionless amplitude eps to the ODE oracle.  The factor 2 is part
// of that normalization.
struct VibrationProfile {
  double epsilon = 1e-3;   // dimensionless amplitude
  double omega = 1.0;      // drive = fundamental frequency at resonance
  double duration = 10.0;  // T_s

  double squeezing_parameter() const { return omega * epsilon * duration / 2.0; }

  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (epsilon > 1e-2)
      w.push_back("epsilon > 1e-2: outside the eps << 1 regime");
    if (omega * duration < 10.0)
      w.push_back("omega*T_s < 10: RWA validity requires omega*T_s >> 1");
    if (epsilon > 1e-8)
      w.push_back(
          "epsilon exceeds the estimated mechanical bound eps_max < 1e-8 for "
          "resonant wall vibration");
    return w;
  }
};

// Time-sampled squeezing shifts and antisymmetric inter-mode coupling.
struct ModeCouplingSeries {
  std::vector<double> times;                        // uniform samples
  std::vector<Eigen::MatrixXd> coupling;            // M_IJ(t) per sample

  void validate() const {
    for (const auto& m : coupling)
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          if (i == j && m(i, i) != 0.0)
            throw std::invalid_argument(
                "ModeCouplingSeries: M_II must vanish");
          if (std::abs(m(i, j) + m(j, i)) >
              1e-12 * std::max(1.0, std::abs(m(i, j))))
            throw std::invalid_argument(
                "ModeCouplingSeries: M must be antisymmetric");
        }
  }
};

namespace detail {

// Trapezoid integral of f(t) e^{i phase t} over uniform samples.
inline std::complex<double> oscillatory_trapezoid(
    const std::vector<double>& times, const std::vector<double>& values,
    double phase) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    const std::complex<double> f0 =
        values[i] * std::exp(std::complex<double>(0.0, phase * times[i]));
    const std::complex<double> f1 =
        values[i + 1] * std::exp(std::complex<double>(0.0, phase * times[i + 1]));
    acc += 0.5 * dt * (f0 + f1);
  }
  return acc;
}

}  // namespace detail

struct SqueezingYield {
  std::complex<double> q_s;  // (1/2 omega) dOmega^2~ (2 omega)
  double delta_n = 0.0;      // |Q_S|^2 (1 + 2 n)
};

// Squeezing yield of a single mode from the sampled frequency shift
// dOmega_I^2(t); the samples must decay at the window ends.
inline SqueezingYield squeezing_delta_n(const std::vector<double>& times,
                                        const std::vector<double>& delta_omega_sq,
                                        double omega_mode,
                                        const Temperature& temp) {
  if (times.size() != delta_omega_sq.size() || times.size() < 2)
    throw std::invalid_argument("squeezing_delta_n: bad sample arrays");
  double peak = 0.0;
  for (double v : delta_omega_sq) peak = std::max(peak, std::abs(v));
  if (peak > 0.0 && (std::abs(delta_omega_sq.front()) > 1e-6 * peak ||
                     std::abs(delta_omega_sq.back()) > 1e-6 * peak))
    throw std::invalid_argument(
        "squeezing_delta_n: dOmega^2 samples must decay at the window ends");
  SqueezingYield y;
  y.q_s = detail::oscillatory_trapezoid(times, delta_omega_sq,
                                        2.0 * omega_mode) /
          (2.0 * omega_mode);
  y.delta_n = std::norm(y.q_s) * thermal_factor(omega_mode, temp);
  return y;
}

// Velocity-effect matrices from the sampled coupling M_IJ(t):
//   S^V_JK = (i/2) int dt M_JK e^{i(wJ+wK)t} (sqrt(wJ/wK) - sqrt(wK/wJ))
//   U^V_JK = (i/2) int dt M_JK e^{i(wJ-wK)t} (sqrt(wJ/wK) + sqrt(wK/wJ))
inline PerturbationMatrices velocity_matrices(
    const ModeCouplingSeries& series, const Eigen::VectorXd& frequencies) {
  series.validate();
  const Eigen::Index m = frequencies.size();
  PerturbationMatrices out;
  out.S = Eigen::MatrixXcd::Zero(m, m);
  out.U = Eigen::MatrixXcd::Zero(m, m);
  std::vector<double> samples(series.times.size());
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      if (j == k) continue;
      for (std::size_t t = 0; t < series.times.size(); ++t)
        samples[t] = series.coupling[t](j, k);
      const double wj = frequencies(j), wk = frequencies(k);
      const double ratio_m = std::sqrt(wj / wk) - std::sqrt(wk / wj);
      const double ratio_p = std::sqrt(wj / wk) + std::sqrt(wk / wj);
      const std::complex<double> half_i(0.0, 0.5);
      out.S(j, k) = half_i * ratio_m *
                    detail::oscillatory_trapezoid(series.times, samples, wj + wk);
      out.U(j, k) = half_i * ratio_p *
                    detail::oscillatory_trapezoid(series.times, samples, wj - wk);
    }
  // S^V from an antisymmetric M is symmetric: the antisymmetry of M
  // cancels against the antisymmetric frequency bracket.
  return out;
}

struct RwaResult {
  double xi = 0.0;        // squeezing parameter omega eps T_s / 2
  double delta_n1 = 0.0;  // sinh^2(Xi) (1 + 2 n_1)
  std::vector<std::string> warnings;
};

inline RwaResult rwa_photon_number(const VibrationProfile& profile,
                                   const Temperature& temp) {
  RwaResult r;
  r.warnings = profile.warnings();
  r.xi = profile.squeezing_parameter();
  const double s = std::sinh(r.xi);
  r.delta_n1 = s * s * thermal_factor(profile.omega, temp);
  return r;
}

struct BogoliubovPair {
  std::complex<double> alpha{1.0, 0.0};
  std::complex<double> beta{0.0, 0.0};

  double unitarity_defect() const {
    return std::abs(std::norm(alpha) - std::norm(beta) - 1.0);
  }
};

// Independent oracle for the RWA: integrates the parametric oscillator
//   qddot + [w^2 + 2 w^2 eps sin(2 w t)] q = 0
// from positive-frequency initial data and projects out (alpha, beta)
// at a drive-phase zero.  |alpha|^2 - |beta|^2 = 1 is enforced to 1e-8.
inline BogoliubovPair mathieu_oracle(const VibrationProfile& profile,
                                     double abs_tol = 1e-12,
                                     double rel_tol = 1e-10) {
  if (!(profile.epsilon < 1.0))
    throw std::invalid_argument("mathieu_oracle: epsilon must be < 1");
  const double w = profile.omega;
  const double eps = profile.epsilon;
  // Snap the end time to the nearest drive-phase zero sin(2wt) = 0 so
  // the projection is free of secular contamination.
  const double t_end =
      M_PI / (2.0 * w) * std::max(1.0, std::round(profile.duration * 2.0 * w / M_PI));

  using state = std::vector<std::complex<double>>;
  state y{std::complex<double>(1.0 / std::sqrt(2.0 * w), 0.0),
          std::complex<double>(0.0, -w / std::sqrt(2.0 * w))};
  auto rhs = [w, eps](const state& q, state& dq, double t) {
    dq[0] = q[1];
    dq[1] = -(w * w + 2.0 * w * w * eps * std::sin(2.0 * w * t)) * q[0];
  };
  using stepper = boost::numeric::odeint::runge_kutta_fehlberg78<state>;
  // Step ceiling pi/(20 w); adaptive refinement inside each interval.
  const double dt_max = M_PI / (20.0 * w);
  boost::numeric::odeint::integrate_const(
      boost::numeric::odeint::make_controlled<stepper>(abs_tol, rel_tol), rhs,
      y, 0.0, t_end, dt_max);

  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> f = y[0], fdot = y[1];
  BogoliubovPair pair;
  pair.alpha = std::sqrt(w / 2.0) * (f + i * fdot / w) * std::exp(i * w * t_end);
  pair.beta = std::sqrt(w / 2.0) * (f - i * fdot / w) * std::exp(-i * w * t_end);
  if (pair.unitarity_defect() > 1e-8)
    throw std::runtime_error(
        "mathieu_oracle: unitarity violated beyond 1e-8; tighten the ODE "
        "tolerance");
  return pair;
}

struct FieldMaps {
  std::vector<std::array<double, 3>> points;
  std::vector<double> phi_phi;   // change of <Phi(r) Phi(r)> (diagonal r=r')
  std::vector<double> pi_pi;     // change of <Pi(r) Pi(r)>
  std::vector<double> t00;       // change of the energy density
  double energy_flux = 0.0;      // identically zero within the RWA
};

// Local changes of the two-point functions and the energy density for
// the resonantly squeezed fundamental mode, sampled on a regular
// cell-centered grid (n^3 points).
inline FieldMaps local_field_changes(const VibrationProfile& profile,
                                     const Temperature& temp,
                                     const BoxGeometry& geom, int n) {
  if (n < 2) throw std::invalid_argument("local_field_changes: n >= 2");
  const auto modes = box_modes(geom, 2);
  require_unique_fundamental(modes);
  const double w1 = modes[0].omega;
  const auto idx = modes[0].index;
  const double xi = profile.squeezing_parameter();
  const double factor = thermal_factor(w1, temp);
  const double plus = std::expm1(2.0 * xi);    // e^{2 Xi} - 1
  const double minus = std::expm1(-2.0 * xi);  // e^{-2 Xi} - 1

  FieldMaps maps;
  maps.points.reserve(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const std::array<double, 3> r{(a + 0.5) * geom.edges[0] / n,
                                      (b + 0.5) * geom.edges[1] / n,
                                      (c + 0.5) * geom.edges[2] / n};
        const double f = geom.eigenfunction(idx, r);
        const auto g = geom.eigenfunction_gradient(idx, r);
        const double g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
        maps.points.push_back(r);
        maps.phi_phi.push_back(plus * factor * f * f / (2.0 * w1));
        maps.pi_pi.push_back(minus * factor * f * f * w1 / 2.0);
        maps.t00.push_back(0.25 * factor *
                           (plus * g2 / w1 + minus * f * f * w1));
      }
  return maps;
}

// Cell-volume quadrature of the energy-density map; equals w1 * dN1.
inline double integrate_t00(const FieldMaps& maps, const BoxGeometry& geom) {
  const double cell = geom.volume() / static_cast<double>(maps.t00.size());
  double acc = 0.0;
  for (double v : maps.t00) acc += v;
  return acc * cell;
}

struct Detectability {
  double ratio = 0.0;  // dN1 / sqrt(thermal variance)
  bool vacuum_limited = false;
};

inline Detectability detectability(double delta_n1, double omega_1,
                                   const Temperature& temp) {
  if (delta_n1 < 0.0 || !(omega_1 > 0.0))
    throw std::invalid_argument("detectability: inputs must be >= 0");
  Detectability d;
  const double var = thermal_variance(omega_1, temp);
  if (var == 0.0) {
    d.vacuum_limited = true;
    d.ratio = std::numeric_limits<double>::infinity();
  } else {
    d.ratio = delta_n1 / std::sqrt(var);
  }
  return d;
}

}  // namespace qrad::cavity

#endif  // QRAD_CAVITY_HPP
