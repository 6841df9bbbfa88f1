#include "micromaser/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace micromaser {

double mean_photon_number(const ComplexMatrix& rho_f) {
  double n = 0.0;
  for (Index k = 1; k < rho_f.rows(); ++k) n += static_cast<double>(k) * rho_f(k, k).real();
  return n;
}

double bose_einstein_occupation(double omega, double T) {
  if (!(T > 0.0)) throw DomainError("Bose-Einstein occupation needs T > 0, got " + std::to_string(T));
  if (!(omega > 0.0)) throw DomainError("Bose-Einstein occupation needs omega > 0");
  return 1.0 / std::expm1(omega / T);
}

double field_temperature(double n_bar, double Omega) {
  if (!(n_bar > 0.0)) return 0.0;
  return Omega / std::log1p(1.0 / n_bar);
}

double g2_zero(const ComplexMatrix& rho_f, double floor) {
  const double n = mean_photon_number(rho_f);
  if (!(n >= floor) || n <= 0.0) {
    throw UndefinedCorrelationError("g2(0) undefined: mean photon number " + std::to_string(n) +
                                    " is below the floor");
  }
  // a†a†aa is diagonal with entries n(n-1), also on the truncated space.
  double second = 0.0;
  for (Index k = 2; k < rho_f.rows(); ++k) {
    second += static_cast<double>(k) * static_cast<double>(k - 1) * rho_f(k, k).real();
  }
  return second / (n * n);
}

double diagonal_ratio_temperature(const ComplexMatrix& rho_f, double Omega) {
  const double p0 = rho_f(0, 0).real();
  const double p1 = rho_f(1, 1).real();
  if (!(p1 > 0.0) || !(p0 > p1)) return 0.0;
  return Omega / std::log(p0 / p1);
}

RatePair rates(const ReservoirSpec& reservoir, const CouplingSpec& coupling) {
  const Populations p = reservoir_populations(reservoir);
  const double phi = coupling.phi();
  const double scale = coupling.injection_rate() * phi * phi;
  RatePair out;
  if (reservoir.kind == ReservoirKind::kMultiLevel) {
    out = {scale * p.excited, scale * p.ground};
  } else {
    out = {scale * reservoir.N * p.excited, scale * reservoir.N * p.ground};
  }
  if (out.R_a >= out.R_b) {
    throw GainRegimeError("upward rate " + std::to_string(out.R_a) + " is not below downward rate " +
                          std::to_string(out.R_b));
  }
  return out;
}

double decay_rate(const RatePair& r) {
  const double gamma = r.R_b - r.R_a;
  if (!(gamma > 0.0)) throw StabilityError("decay rate R_b - R_a is not positive; no thermal steady state");
  return gamma;
}

std::vector<double> analytic_trajectory(double n0, double n_th, double Gamma, std::span<const double> times) {
  if (!(Gamma > 0.0)) throw DomainError("analytic trajectory needs a positive decay rate");
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    const double decay = std::exp(-Gamma * t);
    out.push_back(n0 * decay + n_th * (1.0 - decay));
  }
  return out;
}

ThermalizationPrediction thermalization_time(const ReservoirSpec& reservoir, const CouplingSpec& coupling) {
  const RatePair r = rates(reservoir, coupling);
  ThermalizationPrediction out;
  out.Gamma = decay_rate(r);
  out.t_th = 1.0 / out.Gamma;
  out.n_bar_th = r.R_a / out.Gamma;
  const double phi = coupling.phi();
  const double scale = coupling.injection_rate() * phi * phi;
  out.low_T_approx = reservoir.kind == ReservoirKind::kMultiLevel ? reservoir.N / scale
                                                                   : 1.0 / (scale * reservoir.N);
  return out;
}

TemperatureCandidates temperature_candidates(const ReservoirSpec& reservoir, double Omega) {
  const Populations p = reservoir_populations(reservoir);
  if (reservoir.kind == ReservoirKind::kMultiAtom) return {reservoir.T_a, reservoir.T_a};
  const double n_th = p.excited / (p.ground - p.excited);
  return {multilevel_temperature(reservoir.N, reservoir.omega, p.excited, p.ground), field_temperature(n_th, Omega)};
}

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> n_mean) {
  if (times.size() != n_mean.size()) throw FitError("fit: times and values differ in length");
  const std::size_t count = n_mean.size();
  if (count < 100) throw FitError("fit: need at least 100 samples, got " + std::to_string(count));

  const std::size_t tail_begin = count - std::max<std::size_t>(1, count / 10);
  const auto tail = n_mean.subspan(tail_begin);
  DecayFit fit;
  fit.n_inf = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(tail.size());

  double noise = 0.0;
  for (double v : tail) noise = std::max(noise, std::abs(v - fit.n_inf));
  const double scale = std::max({std::abs(n_mean.front()), std::abs(n_mean.back()), 1e-300});
  noise = std::max(noise, 1e-14 * scale);
  const double gap = std::abs(n_mean.front() - fit.n_inf);
  if (!(std::abs(n_mean.back() - n_mean.front()) > 10.0 * noise) || !(gap > 0.0)) {
    throw FitError("fit: no visible relaxation in the series");
  }

  // Regression of y = ln|n - n_inf| on t, restricted to the resolved part of the approach.
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0, syy = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double dev = std::abs(n_mean[k] - fit.n_inf);
    if (!(dev > 0.02 * gap)) continue;
    const double t = times[k];
    const double y = std::log(dev);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    syy += y * y;
    ++used;
  }
  if (used < 3) throw FitError("fit: fewer than three samples above 2% of the initial gap");
  const double m = static_cast<double>(used);
  const double var_t = stt - st * st / m;
  const double var_y = syy - sy * sy / m;
  const double cov = sty - st * sy / m;
  if (!(var_t > 0.0)) throw FitError("fit: degenerate time axis");
  const double slope = cov / var_t;
  fit.Gamma = -slope;
  fit.r_squared = var_y > 0.0 ? (cov * cov) / (var_t * var_y) : 1.0;
  return fit;
}

DecayFit fit_decay_rate(const TimeSeries& series) { return fit_decay_rate(series.times, series.n_mean); }

}  // namespace micromaser
