#ifndef QRAD_FRW_HPP
#define QRAD_FRW_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qrad/thermal.hpp"

// Minimally coupled massless scalar in a conformally flat FRW
// spacetime: conformal-time reparameterization, per-mode Bogoliubov
// coefficients from the tau-form mode equation Qddot = -Omega^4 w^2 Q,
// and the exact thermal enhancement factor.

namespace qrad::frw {

// Scale factor Omega(tau) with constant asymptotics so that in/out
// particle notions exist.
class ScaleFactorProfile {
 public:
  virtual ~ScaleFactorProfile() = default;
  virtual double value(double tau) const = 0;
  virtual double derivative(double tau) const = 0;
  virtual double omega_in() const = 0;
  virtual double omega_out() const = 0;
  // tau range outside of which |Omegadot/Omega| is negligible.
  virtual std::pair<double, double> active_window() const = 0;
};

// Omega(tau) = Omega_in + (Omega_out - Omega_in)(1 + tanh(tau/tau_r))/2
class TanhRamp final : public ScaleFactorProfile {
 public:
  TanhRamp(double omega_in, double omega_out, double ramp_time)
      : in_(omega_in), out_(omega_out), tr_(ramp_time) {
    if (!(omega_in > 0.0) || !(omega_out > 0.0) || !(ramp_time > 0.0))
      throw std::invalid_argument("TanhRamp: all parameters must be positive");
  }

  double value(double tau) const override {
    return in_ + (out_ - in_) * 0.5 * (1.0 + std::tanh(tau / tr_));
  }

  double derivative(double tau) const override {
    const double c = std::cosh(tau / tr_);
    return (out_ - in_) * 0.5 / (tr_ * c * c);
  }

  double omega_in() const override { return in_; }
  double omega_out() const override { return out_; }

  std::pair<double, double> active_window() const override {
    // tanh saturates to ~1e-10 at |tau| = 12 tau_r.
    return {-12.0 * tr_, 12.0 * tr_};
  }

 private:
  double in_, out_, tr_;
};

// Symmetric excursion Omega = Omega0 (1 + h exp(-tau^2/tau_r^2)); has
// equal in/out values yet creates particles (minimal coupling is not
// conformally invariant in 3+1 dimensions).
class GaussianBump final : public ScaleFactorProfile {
 public:
  GaussianBump(double omega0, double height, double ramp_time)
      : o0_(omega0), h_(height), tr_(ramp_time) {
    if (!(omega0 > 0.0) || !(ramp_time > 0.0) || h_ <= -1.0)
      throw std::invalid_argument("GaussianBump: invalid parameters");
  }

  double value(double tau) const override {
    return o0_ * (1.0 + h_ * std::exp(-tau * tau / (tr_ * tr_)));
  }

  double derivative(double tau) const override {
    return o0_ * h_ * (-2.0 * tau / (tr_ * tr_)) *
           std::exp(-tau * tau / (tr_ * tr_));
  }

  double omega_in() const override { return o0_; }
  double omega_out() const override { return o0_; }

  std::pair<double, double> active_window() const override {
    return {-8.0 * tr_, 8.0 * tr_};
  }

 private:
  double o0_, h_, tr_;
};

// Numerical map between coordinate time t and conformal time tau with
// dtau = Omega^{-2}(t) dt; round-trips to 1e-10 relative.
class ConformalTime {
 public:
  explicit ConformalTime(std::function<double(double)> omega_of_t,
                         double t_reference = 0.0)
      : omega_(std::move(omega_of_t)), t0_(t_reference) {}

  double tau_of_t(double t) const {
    auto f = [this](double s) {
      const double w = omega_(s);
      if (!(w > 0.0))
        throw std::domain_error("ConformalTime: Omega must be positive");
      return 1.0 / (w * w);
    };
    if (t == t0_) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, t0_, t, 14, 1e-13);
  }

  // Inverts tau(t) by bisection + Newton polish; tau is strictly
  // increasing because the integrand is positive.
  double t_of_tau(double tau) const {
    if (tau == 0.0) return t0_;
    double lo = t0_, hi = t0_;
    double step = 1.0;
    if (tau > 0.0) {
      while (tau_of_t(hi) < tau) hi = t0_ + (step *= 2.0);
    } else {
      while (tau_of_t(lo) > tau) lo = t0_ - (step *= 2.0);
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = tau_of_t(mid);
      if (std::abs(v - tau) <= 1e-12 * std::max(1.0, std::abs(tau)))
        return mid;
      (v < tau ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  std::function<double(double)> omega_;
  double t0_;
};

struct BogoliubovPair {
  std::complex<double> alpha{1.0, 0.0};
  std::complex<double> beta{0.0, 0.0};

  double unitarity_defect() const {
    return std::abs(std::norm(alpha) - std::norm(beta) - 1.0);
  }
  double beta_sq() const { return std::norm(beta); }
};

// Integrates Qddot + Omega^4(tau) w^2 Q = 0 from positive-frequency in
// data e^{-i nu_in tau}/sqrt(2 nu_in) and projects onto out solutions
// with nu = Omega^2 w.  Errors out if unitarity is violated beyond 1e-8.
inline BogoliubovPair mode_bogoliubov(const ScaleFactorProfile& profile,
                                      double omega, double abs_tol = 1e-13,
                                      double rel_tol = 1e-11) {
  if (!(omega > 0.0))
    throw std::invalid_argument("mode_bogoliubov: omega must be positive");
  const double nu_in = profile.omega_in() * profile.omega_in() * omega;
  const double nu_out = profile.omega_out() * profile.omega_out() * omega;
  auto [tau0, tau1] = profile.active_window();
  // Extend until the matching windows satisfy |Omegadot/Omega| < 1e-8 nu.
  while (std::abs(profile.derivative(tau0)) / profile.value(tau0) >
         1e-8 * nu_in)
    tau0 *= 1.5;
  while (std::abs(profile.derivative(tau1)) / profile.value(tau1) >
         1e-8 * nu_out)
    tau1 *= 1.5;

  using state = std::vector<std::complex<double>>;
  const std::complex<double> i(0.0, 1.0);
  state y{std::exp(-i * nu_in * tau0) / std::sqrt(2.0 * nu_in),
          -i * nu_in * std::exp(-i * nu_in * tau0) / std::sqrt(2.0 * nu_in)};
  auto rhs = [&profile, omega](const state& q, state& dq, double tau) {
    const double o = profile.value(tau);
    dq[0] = q[1];
    dq[1] = -std::pow(o, 4) * omega * omega * q[0];
  };
  using stepper = boost::numeric::odeint::runge_kutta_fehlberg78<state>;
  const double nu_max = std::max(nu_in, nu_out);
  boost::numeric::odeint::integrate_adaptive(
      boost::numeric::odeint::make_controlled<stepper>(abs_tol, rel_tol), rhs,
      y, tau0, tau1, 0.01 / nu_max);

  BogoliubovPair pair;
  pair.alpha = std::sqrt(nu_out / 2.0) * (y[0] + i * y[1] / nu_out) *
               std::exp(i * nu_out * tau1);
  pair.beta = std::sqrt(nu_out / 2.0) * (y[0] - i * y[1] / nu_out) *
              std::exp(-i * nu_out * tau1);
  if (pair.unitarity_defect() > 1e-8)
    throw std::runtime_error(
        "mode_bogoliubov: unitarity defect above 1e-8; integrator tolerance "
        "insufficient");
  return pair;
}

// Analytic sudden-limit value |beta|^2 = (nu_out - nu_in)^2/(4 nu_in nu_out).
inline double sudden_beta_sq(const ScaleFactorProfile& profile, double omega) {
  const double nu_in = profile.omega_in() * profile.omega_in() * omega;
  const double nu_out = profile.omega_out() * profile.omega_out() * omega;
  return (nu_out - nu_in) * (nu_out - nu_in) / (4.0 * nu_in * nu_out);
}

struct SpectrumPoint {
  double omega = 0.0;          // comoving frequency
  double beta_sq = 0.0;        // vacuum yield |beta|^2
  double delta_n_thermal = 0.0;  // |beta|^2 * thermal factor
  double unitarity_defect = 0.0;
};

// Which frequency enters the initial Bose-Einstein occupation; the
// notation of the source result does not disambiguate, so both are
// exposed.  Default: the in-region physical frequency nu_in.
enum class OccupationFrequency { physical_in, comoving };

inline std::vector<SpectrumPoint> thermal_spectrum(
    const ScaleFactorProfile& profile, const std::vector<double>& omegas,
    const Temperature& temp,
    OccupationFrequency which = OccupationFrequency::physical_in) {
  std::vector<SpectrumPoint> out;
  out.reserve(omegas.size());
  for (double w : omegas) {
    const auto pair = mode_bogoliubov(profile, w);
    SpectrumPoint p;
    p.omega = w;
    p.beta_sq = pair.beta_sq();
    p.unitarity_defect = pair.unitarity_defect();
    const double occ_freq = which == OccupationFrequency::physical_in
                                ? profile.omega_in() * profile.omega_in() * w
                                : w;
    p.delta_n_thermal = p.beta_sq * thermal_factor(occ_freq, temp);
    out.push_back(p);
  }
  return out;
}

}  // namespace qrad::frw

#endif  // QRAD_FRW_HPP
