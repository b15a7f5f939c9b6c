#ifndef QRAD_TRAJECTORY_HPP
#define QRAD_TRAJECTORY_HPP

#include <fftw3.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

// Smooth real profiles of time with compact effective support: mirror
// position eta(t), bubble volume V(t), scale-factor excursions.  Every
// family exposes values, low-order derivatives, the Fourier transform
// eta~(omega) = integral dt eta(t) exp(i omega t) and the moment
// integrals integral (d^n eta/dt^n)^2 dt.

namespace qrad {

class Trajectory {
 public:
  virtual ~Trajectory() = default;

  virtual double value(double t) const = 0;
  virtual double derivative(double t, int order) const = 0;
  virtual std::complex<double> fourier(double omega) const = 0;

  // Characteristic time scale (sets the bandwidth rule k_max = 10/tau).
  virtual double char_time() const = 0;

  // Frequency above which |fourier| is negligible (< 1e-10 of peak).
  virtual double bandwidth() const { return 10.0 / char_time(); }

  // integral dt (d^n eta/dt^n)^2, default via Parseval and adaptive
  // quadrature over the spectrum.
  virtual double squared_derivative_integral(int order) const {
    const double wmax = bandwidth() + 2.0 / char_time();
    auto f = [this, order](double w) {
      return std::pow(w, 2 * order) * std::norm(fourier(w));
    };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, 0.0, wmax, 12, 1e-12);
    return integral / M_PI;  // 1/(2 pi) * full-line integral, |eta~| even
  }
};

// eta(t) = a exp(-t^2/tau^2)
class GaussianPulse final : public Trajectory {
 public:
  GaussianPulse(double amplitude, double tau) : a_(amplitude), tau_(tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("GaussianPulse: tau <= 0");
  }

  double value(double t) const override {
    return a_ * std::exp(-t * t / (tau_ * tau_));
  }

  double derivative(double t, int order) const override {
    // d^n/dt^n [a e^{-t^2/tau^2}] = p_n(t) e^{-t^2/tau^2} with the
    // polynomial recursion p_{n+1} = p_n' - (2t/tau^2) p_n.
    std::vector<double> p{a_};
    for (int n = 0; n < order; ++n) {
      std::vector<double> q(p.size() + 1, 0.0);
      for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] += i * p[i];
      for (std::size_t i = 0; i < p.size(); ++i)
        q[i + 1] -= 2.0 / (tau_ * tau_) * p[i];
      p = std::move(q);
    }
    double poly = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) poly = poly * t + p[i];
    return poly * std::exp(-t * t / (tau_ * tau_));
  }

  std::complex<double> fourier(double omega) const override {
    return a_ * tau_ * std::sqrt(M_PI) *
           std::exp(-omega * omega * tau_ * tau_ / 4.0);
  }

  double char_time() const override { return tau_; }

  double squared_derivative_integral(int order) const override {
    // (2n-1)!! sqrt(2 pi) a^2 / (2 tau^{2n-1})
    double dfact = 1.0;
    for (int k = 2 * order - 1; k > 1; k -= 2) dfact *= k;
    return dfact * std::sqrt(2.0 * M_PI) * a_ * a_ /
           (2.0 * std::pow(tau_, 2 * order - 1));
  }

  double amplitude() const { return a_; }

 private:
  double a_, tau_;
};

// eta(t) = a sin(omega0 t) exp(-t^2/tau^2)
class WindowedSine final : public Trajectory {
 public:
  WindowedSine(double amplitude, double omega0, double tau)
      : a_(amplitude), w0_(omega0), tau_(tau) {
    if (!(tau > 0.0) || !(omega0 > 0.0))
      throw std::invalid_argument("WindowedSine: need tau > 0, omega0 > 0");
  }

  double value(double t) const override {
    return a_ * std::sin(w0_ * t) * std::exp(-t * t / (tau_ * tau_));
  }

  double derivative(double t, int order) const override {
    if (order < 1 || order > 2)
      throw std::invalid_argument("WindowedSine: derivative order 1 or 2 only");
    const double g = std::exp(-t * t / (tau_ * tau_));
    const double gp = -2.0 * t / (tau_ * tau_);  // g'/g
    const double s = std::sin(w0_ * t), c = std::cos(w0_ * t);
    if (order == 1) return a_ * g * (w0_ * c + gp * s);
    // g''/g = gp^2 - 2/tau^2
    const double gpp = gp * gp - 2.0 / (tau_ * tau_);
    return a_ * g * (-w0_ * w0_ * s + 2.0 * w0_ * c * gp + s * gpp);
  }

  std::complex<double> fourier(double omega) const override {
    // 1/(2i) [G(omega + omega0) - G(omega - omega0)] with Gaussian G.
    auto g = [this](double w) {
      return tau_ * std::sqrt(M_PI) * std::exp(-w * w * tau_ * tau_ / 4.0);
    };
    return std::complex<double>(0.0, -0.5) * a_ *
           (g(omega + w0_) - g(omega - w0_));
  }

  double char_time() const override { return tau_; }
  double bandwidth() const override { return w0_ + 10.0 / tau_; }

 private:
  double a_, w0_, tau_;
};

// Uniformly sampled profile; natural cubic spline for values and
// derivatives, FFT with 8x zero padding for the Fourier transform.
class TabulatedTrajectory final : public Trajectory {
 public:
  TabulatedTrajectory(double t0, double dt, std::vector<double> samples)
      : t0_(t0), dt_(dt), y_(std::move(samples)) {
    if (y_.size() < 8)
      throw std::invalid_argument("TabulatedTrajectory: need >= 8 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("TabulatedTrajectory: dt <= 0");
    double peak = 0.0;
    for (double v : y_) peak = std::max(peak, std::abs(v));
    if (peak == 0.0)
      throw std::invalid_argument("TabulatedTrajectory: all-zero samples");
    if (std::abs(y_.front()) > 1e-10 * peak || std::abs(y_.back()) > 1e-10 * peak)
      throw std::invalid_argument(
          "TabulatedTrajectory: samples must decay below 1e-10 of the peak at "
          "the window ends");
    build_spline();
    build_spectrum();
  }

  double value(double t) const override { return spline_eval(t, 0); }

  double derivative(double t, int order) const override {
    if (order < 1 || order > 2)
      throw std::invalid_argument(
          "TabulatedTrajectory: spline derivatives up to order 2 only");
    return spline_eval(t, order);
  }

  std::complex<double> fourier(double omega) const override {
    const double aw = std::abs(omega);
    const double pos = aw / dw_;
    const std::size_t i = std::min(static_cast<std::size_t>(pos),
                                   spectrum_.size() - 2);
    const double frac = pos - static_cast<double>(i);
    std::complex<double> env =
        (1.0 - frac) * spectrum_[i] + frac * spectrum_[i + 1];
    if (pos >= static_cast<double>(spectrum_.size() - 1)) env = 0.0;
    return omega >= 0.0 ? env : std::conj(env);
  }

  double char_time() const override { return char_time_; }
  double bandwidth() const override { return bandwidth_; }

 private:
  void build_spline() {
    // Natural cubic spline: tridiagonal solve for second derivatives.
    const std::size_t n = y_.size();
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double rhs = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (dt_ * dt_);
      const double denom = 4.0 - c[i - 1];
      c[i] = 1.0 / denom;
      d[i] = (rhs - d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
  }

  double spline_eval(double t, int order) const {
    const double span = dt_ * (y_.size() - 1);
    if (t <= t0_ || t >= t0_ + span) return 0.0;
    const double pos = (t - t0_) / dt_;
    const std::size_t i =
        std::min(static_cast<std::size_t>(pos), y_.size() - 2);
    const double x = t - (t0_ + i * dt_);
    const double h = dt_;
    const double a = (m_[i + 1] - m_[i]) / (6.0 * h);
    const double b = m_[i] / 2.0;
    const double cc = (y_[i + 1] - y_[i]) / h - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
    switch (order) {
      case 0: return ((a * x + b) * x + cc) * x + y_[i];
      case 1: return (3.0 * a * x + 2.0 * b) * x + cc;
      default: return 6.0 * a * x + 2.0 * b;
    }
  }

  void build_spectrum() {
    const std::size_t n = y_.size();
    const std::size_t npad = 8 * n;
    std::vector<std::complex<double>> in(npad, 0.0), out(npad);
    for (std::size_t i = 0; i < n; ++i) in[i] = y_[i];
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(npad), reinterpret_cast<fftw_complex*>(in.data()),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD,
        FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    // Keep frequencies up to Nyquist.  The stored samples are the
    // demodulated eta~(w_k) = dt e^{i w_k t0} X_k: without the e^{iwt0}
    // factor the tabulated spectrum oscillates on the scale 2 pi/|t0|
    // and linear interpolation between bins would be badly biased.
    const std::size_t keep = npad / 2;
    dw_ = 2.0 * M_PI / (npad * dt_);
    spectrum_.resize(keep);
    for (std::size_t k = 0; k < keep; ++k)
      spectrum_[k] =
          dt_ * out[k] * std::exp(std::complex<double>(0.0, dw_ * k * t0_));

    double peak = 0.0;
    for (const auto& v : spectrum_) peak = std::max(peak, std::abs(v));
    bandwidth_ = dw_ * (keep - 1);
    for (std::size_t k = keep; k-- > 0;) {
      if (std::abs(spectrum_[k]) > 1e-10 * peak) {
        bandwidth_ = dw_ * (k + 1);
        break;
      }
    }
    char_time_ = 10.0 / bandwidth_;
  }

  double t0_, dt_;
  std::vector<double> y_;
  std::vector<double> m_;  // spline second derivatives
  std::vector<std::complex<double>> spectrum_;
  double dw_ = 0.0, bandwidth_ = 0.0, char_time_ = 0.0;
};

}  // namespace qrad

#endif  // QRAD_TRAJECTORY_HPP
