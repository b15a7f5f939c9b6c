#ifndef QRAD_THERMAL_HPP
#define QRAD_THERMAL_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

// Thermal-equilibrium primitives: Bose-Einstein occupation, thermal
// factors and variances, the Hurwitz-zeta sums appearing in finite
// temperature response functions, and photon-gas effective relations.

namespace qrad {

// Inverse temperature in natural units.  T = 0 is a distinguished value
// (beta = infinity), not a large-beta limit, so that thermal branches
// can be taken exactly without evaluating exp(beta*omega).
class Temperature {
 public:
  static Temperature zero() { return Temperature(); }

  static Temperature from_beta(double beta) {
    if (!(beta > 0.0))
      throw std::domain_error("Temperature: beta must be positive");
    Temperature t;
    t.beta_ = beta;
    return t;
  }

  static Temperature from_temperature(double temp) {
    if (temp == 0.0) return zero();
    if (!(temp > 0.0))
      throw std::domain_error("Temperature: T must be non-negative");
    return from_beta(1.0 / temp);
  }

  bool is_zero() const { return !std::isfinite(beta_); }

  double beta() const { return beta_; }

  double temperature() const { return is_zero() ? 0.0 : 1.0 / beta_; }

 private:
  Temperature() = default;
  double beta_ = std::numeric_limits<double>::infinity();
};

// Bose-Einstein occupation 1/(exp(beta*omega) - 1).  beta*omega > 700
// underflows to the vacuum value 0.
inline double bose_occupation(double omega, const Temperature& temp) {
  if (!(omega > 0.0))
    throw std::domain_error(
        "bose_occupation: omega must be positive (massless infrared mode "
        "needs regularization by the caller)");
  if (temp.is_zero()) return 0.0;
  const double x = temp.beta() * omega;
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

// 1 + 2 n(omega, T); multiplies the vacuum particle yield of any
// diagonal Hamiltonian.
inline double thermal_factor(double omega, const Temperature& temp) {
  return 1.0 + 2.0 * bose_occupation(omega, temp);
}

// Variance of the initial photon number in the canonical ensemble,
// <N^2>_0 - <N>_0^2 = n + n^2.
inline double thermal_variance(double omega, const Temperature& temp) {
  const double n = bose_occupation(omega, temp);
  return n + n * n;
}

namespace detail {

// Hurwitz zeta(s, a) for integer s >= 2 and complex a with Re(a) > 0,
// via Euler-Maclaurin summation.  Relative accuracy ~1e-14 for the
// arguments produced by hurwitz_sum (Re(a) >= 1).
inline std::complex<double> hurwitz_zeta_int(int s, std::complex<double> a) {
  if (s < 2) throw std::domain_error("hurwitz_zeta_int: s must be >= 2");
  if (!(a.real() > 0.0))
    throw std::domain_error("hurwitz_zeta_int: Re(a) must be positive");

  // Bernoulli numbers B_2, B_4, ..., B_16.
  static const double b2k[] = {1.0 / 6.0,   -1.0 / 30.0,    1.0 / 42.0,
                               -1.0 / 30.0, 5.0 / 66.0,     -691.0 / 2730.0,
                               7.0 / 6.0,   -3617.0 / 510.0};

  const int n_direct = 18;
  std::complex<double> sum = 0.0;
  for (int n = 0; n < n_direct; ++n)
    sum += std::pow(a + static_cast<double>(n), -s);

  const std::complex<double> w = a + static_cast<double>(n_direct);
  const std::complex<double> w_pow = std::pow(w, -s);
  // Integral comparison term plus midpoint correction.
  sum += w * w_pow / static_cast<double>(s - 1);
  sum += 0.5 * w_pow;

  // Euler-Maclaurin tail: B_{2k}/(2k)! * (s)_{2k-1} * w^{-s-2k+1}.
  std::complex<double> winv2 = 1.0 / (w * w);
  std::complex<double> term = w_pow / w;  // w^{-s-1}, k=1 power base
  double poch = static_cast<double>(s);   // rising factorial (s)_{2k-1}
  double fact = 2.0;                      // (2k)!
  for (int k = 0; k < 8; ++k) {
    if (k > 0) {
      term *= winv2;
      poch *= static_cast<double>(s + 2 * k - 1) * (s + 2 * k);
      fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    sum += b2k[k] / fact * poch * term;
  }
  return sum;
}

}  // namespace detail

// I^m_beta(dt) = sum_{n>=1} m! / (n beta - i dt)^{m+1}
//              = m!/beta^{m+1} * zeta(m+1, 1 - i dt/beta).
inline std::complex<double> hurwitz_sum(int m, double delta_t,
                                        const Temperature& temp) {
  if (m < 1) throw std::domain_error("hurwitz_sum: m must be >= 1");
  if (temp.is_zero())
    throw std::domain_error(
        "hurwitz_sum: undefined at T=0 (vacuum part is handled by closed "
        "forms)");
  const double beta = temp.beta();
  const std::complex<double> a(1.0, -delta_t / beta);
  double m_fact = 1.0;
  for (int j = 2; j <= m; ++j) m_fact *= j;
  return m_fact / std::pow(beta, m + 1) * detail::hurwitz_zeta_int(m + 1, a);
}

struct PhotonGas {
  double effective_temperature = 0.0;
  double effective_entropy = 0.0;
};

// Photon-gas effective temperature and entropy for a given energy and
// volume: inverts E = V T^4 pi^2/15.  The entropy prefactor 4 pi^4/45
// follows the source material as printed; the standard blackbody value
// has pi^2 in place of pi^4 and is available behind the flag.
inline PhotonGas photon_gas_effective(double energy, double volume,
                                      bool standard_entropy_prefactor = false) {
  if (energy < 0.0) throw std::domain_error("photon_gas_effective: E < 0");
  if (!(volume > 0.0)) throw std::domain_error("photon_gas_effective: V <= 0");
  PhotonGas g;
  g.effective_temperature =
      std::pow(15.0 * energy / (volume * M_PI * M_PI), 0.25);
  const double pref = standard_entropy_prefactor
                          ? 4.0 * M_PI * M_PI / 45.0
                          : 4.0 * M_PI * M_PI * M_PI * M_PI / 45.0;
  g.effective_entropy = volume * std::pow(g.effective_temperature, 3) * pref;
  return g;
}

// Small-perturbation relation dE/(4E) = dT/T = dS/(3S): given a relative
// energy change, returns the relative temperature and entropy changes.
inline std::pair<double, double> photon_gas_perturbation(
    double relative_energy_change) {
  return {relative_energy_change / 4.0, 3.0 * relative_energy_change / 4.0};
}

}  // namespace qrad

#endif  // QRAD_THERMAL_HPP
