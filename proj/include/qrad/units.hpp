#ifndef QRAD_UNITS_HPP
#define QRAD_UNITS_HPP

#include <cmath>

// Conversion between laboratory units (K, cm, GHz) and the natural
// units (hbar = c = k_B = 1) used everywhere else in the library.
// Internally all frequencies/energies are measured in 1/s and all
// inverse temperatures in s, so a single anchor unit suffices.

namespace qrad::units {

// CODATA 2018 exact values.
inline constexpr double c_cm_per_s = 2.99792458e10;
inline constexpr double k_boltzmann_J_per_K = 1.380649e-23;
inline constexpr double hbar_J_s = 1.054571817e-34;

// Temperature in K -> energy in 1/s (omega-equivalent, k_B T / hbar).
inline double kelvin_to_angular_frequency(double t_kelvin) {
  return t_kelvin * k_boltzmann_J_per_K / hbar_J_s;
}

// Inverse temperature beta in s for a lab temperature in K.
inline double beta_from_kelvin(double t_kelvin) {
  return 1.0 / kelvin_to_angular_frequency(t_kelvin);
}

// Length in cm -> inverse length in 1/s (momentum-equivalent, c/L).
inline double inverse_length_from_cm(double length_cm) {
  return c_cm_per_s / length_cm;
}

// Length in cm -> natural length in s (light-travel time, L/c).
inline double length_from_cm(double length_cm) {
  return length_cm / c_cm_per_s;
}

inline double ghz_to_angular_frequency(double f_ghz) {
  return 2.0 * M_PI * f_ghz * 1e9;
}

}  // namespace qrad::units

#endif  // QRAD_UNITS_HPP
