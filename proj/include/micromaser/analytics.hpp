#pragma once

// Field observables and the closed-form thermalization predictions.

#include <span>
#include <vector>

#include "micromaser/dynamics.hpp"
#include "micromaser/models.hpp"

namespace micromaser {

inline constexpr double kDefaultG2Floor = 1e-9;

/// tr(ρ a†a).
double mean_photon_number(const ComplexMatrix& rho_f);

/// 1 / (exp(omega/T) - 1).
double bose_einstein_occupation(double omega, double T);

/// Ω / ln(1 + 1/n̄); returns 0 (absolute zero) for n̄ <= 0.
double field_temperature(double n_bar, double Omega);

/// tr(ρ a†a†aa) / n̄². Throws UndefinedCorrelationError when n̄ < floor.
double g2_zero(const ComplexMatrix& rho_f, double floor = kDefaultG2Floor);

/// Ω / ln(ρ00/ρ11), the temperature read off the two lowest populations.
double diagonal_ratio_temperature(const ComplexMatrix& rho_f, double Omega);

/// Upward (heating) and downward (cooling) rates of the coarse-grained field equation.
struct RatePair {
  double R_a = 0.0;
  double R_b = 0.0;
};

RatePair rates(const ReservoirSpec& reservoir, const CouplingSpec& coupling);

/// Γ = R_b - R_a; throws StabilityError unless positive.
double decay_rate(const RatePair& rates);

/// n̄(t) = n0 e^{-Γt} + n_th (1 - e^{-Γt}).
std::vector<double> analytic_trajectory(double n0, double n_th, double Gamma, std::span<const double> times);

struct ThermalizationPrediction {
  double Gamma = 0.0;
  double t_th = 0.0;
  double n_bar_th = 0.0;
  /// Low-temperature limit: 1/(rφ²N) for clusters, N/(rφ²) for multilevel atoms.
  double low_T_approx = 0.0;
};

ThermalizationPrediction thermalization_time(const ReservoirSpec& reservoir, const CouplingSpec& coupling);

/// Steady field temperatures a reservoir can drive the field to. For clusters
/// both equal T_a. For multilevel atoms `reservoir` is ω/ln(N p_g'/p_e) and
/// `effective` is ω/ln(p_g'/p_e), the temperature of the predicted n̄_th.
struct TemperatureCandidates {
  double reservoir = 0.0;
  double effective = 0.0;
};

TemperatureCandidates temperature_candidates(const ReservoirSpec& reservoir, double Omega);

struct DecayFit {
  double Gamma = 0.0;
  double n_inf = 0.0;
  double r_squared = 0.0;
};

/// Log-linear least squares on |n̄(t) - n_inf| with n_inf the mean of the
/// final 10% of samples. Throws FitError without a usable relaxation.
DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> n_mean);
DecayFit fit_decay_rate(const TimeSeries& series);

}  // namespace micromaser
