#pragma once

#include <numbers>

// Unit conventions used throughout the library.
//
// Inputs are linear frequencies in kHz and times in microseconds. Internally
// every generator is expressed in rad/us, so a frequency f [kHz] enters a
// Hamiltonian as 2*pi*f*1e-3 rad/us. Population relaxation constants are
// 2*pi*Gamma and coherence decay constants are pi*gamma (FWHM linewidth).
namespace ramanecho::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// kHz * us = 1e-3 cycles
inline constexpr double khz_us = 1e-3;

constexpr double angular(double f_khz) noexcept { return two_pi * f_khz * khz_us; }
constexpr double population_rate(double gamma_khz) noexcept { return two_pi * gamma_khz * khz_us; }
constexpr double coherence_rate(double linewidth_khz) noexcept { return pi * linewidth_khz * khz_us; }

// Angular frequency in krad/s to linear kHz.
constexpr double from_angular(double krad_per_s) noexcept { return krad_per_s / two_pi; }

// rad/us -> rad/s
constexpr double to_per_second(double per_us) noexcept { return per_us * 1e6; }

}  // namespace ramanecho::units
