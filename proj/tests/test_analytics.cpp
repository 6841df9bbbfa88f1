#include <doctest.h>

#include <cmath>

#include "micromaser/analytics.hpp"
#include "test_support.hpp"

using namespace micromaser;

namespace {

CouplingSpec coupling(double g, double tau) {
  CouplingSpec c;
  c.g = g;
  c.tau = tau;
  return c;
}

ComplexMatrix thermal(double T, Index dim) {
  FieldSpec field;
  field.T_f0 = T;
  field.truncation = FockTruncation(dim);
  return thermal_field_state(field);
}

}  // namespace

TEST_CASE("Bose-Einstein occupation") {
  CHECK(bose_einstein_occupation(1.0, 2.0) == doctest::Approx(1.54149408253680).epsilon(1e-13));
  CHECK(bose_einstein_occupation(1.0, 1.0) == doctest::Approx(0.581976706869326).epsilon(1e-13));
  CHECK_THROWS_AS(bose_einstein_occupation(1.0, 0.0), DomainError);
}

TEST_CASE("field temperature inverts the Bose-Einstein occupation") {
  std::mt19937 rng(73);
  std::uniform_real_distribution<double> temp(0.02, 50.0);
  std::uniform_real_distribution<double> freq(0.1, 4.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double T = temp(rng);
    const double Omega = freq(rng);
    CHECK(field_temperature(bose_einstein_occupation(Omega, T), Omega) == doctest::Approx(T).epsilon(1e-10));
  }
  CHECK(field_temperature(0.0, 1.0) == 0.0);
}

TEST_CASE("mean photon number and g2 of a thermal field") {
  const ComplexMatrix rho = thermal(2.0, 60);
  CHECK(mean_photon_number(rho) == doctest::Approx(1.54149408253118).epsilon(1e-12));
  CHECK(std::abs(g2_zero(rho) - 2.0) < 1e-9);
  CHECK(diagonal_ratio_temperature(rho, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("g2 of a Poisson distribution is one") {
  const Index dim = 40;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  double weight = std::exp(-1.0);
  for (Index n = 0; n < dim; ++n) {
    rho(n, n) = weight;
    weight /= static_cast<double>(n + 1);
  }
  CHECK(std::abs(g2_zero(rho) - 1.0) < 1e-12);
}

TEST_CASE("g2 is undefined for an empty cavity") {
  ComplexMatrix vacuum = ComplexMatrix::Zero(5, 5);
  vacuum(0, 0) = 1.0;
  CHECK_THROWS_AS(g2_zero(vacuum), UndefinedCorrelationError);
  ComplexMatrix faint = vacuum;
  faint(0, 0) = 1.0 - 1e-12;
  faint(1, 1) = 1e-12;
  CHECK_THROWS_AS(g2_zero(faint), UndefinedCorrelationError);
  CHECK(g2_zero(faint, 1e-13) == 0.0);
}

TEST_CASE("heating and cooling rates of a single atom") {
  const ReservoirSpec reservoir{ReservoirKind::kMultiAtom, 1, 2.0, 1.0};
  const RatePair r = rates(reservoir, coupling(0.1, 0.5));
  CHECK(r.R_a == doctest::Approx(1.88770334399073e-3).epsilon(1e-12));
  CHECK(r.R_b == doctest::Approx(3.11229665600927e-3).epsilon(1e-12));
  CHECK(decay_rate(r) == doctest::Approx(1.22459331201855e-3).epsilon(1e-12));
  const ThermalizationPrediction p = thermalization_time(reservoir, coupling(0.1, 0.5));
  CHECK(p.t_th == doctest::Approx(816.597633014719).epsilon(1e-12));
  CHECK(p.n_bar_th == doctest::Approx(bose_einstein_occupation(1.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("cluster thermalization times") {
  const CouplingSpec c = coupling(0.1, 0.5);
  const ReservoirSpec one{ReservoirKind::kMultiAtom, 1, 0.1, 1.0};
  const ReservoirSpec two{ReservoirKind::kMultiAtom, 2, 0.1, 1.0};
  const ReservoirSpec three{ReservoirKind::kMultiAtom, 3, 0.1, 1.0};
  CHECK(thermalization_time(one, c).t_th == doctest::Approx(200.018160796404).epsilon(1e-12));
  CHECK(thermalization_time(two, c).t_th == doctest::Approx(100.009080398202).epsilon(1e-12));
  CHECK(thermalization_time(three, c).t_th == doctest::Approx(66.6727202654680).epsilon(1e-12));
  CHECK(decay_rate(rates(two, c)) == doctest::Approx(9.99909204262595e-3).epsilon(1e-12));
  CHECK(thermalization_time(two, c).low_T_approx == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("reduced cluster rates equal the unreduced binomial coefficient") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> temp(0.05, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    for (int N = 1; N <= 6; ++N) {
      const ReservoirSpec reservoir{ReservoirKind::kMultiAtom, N, temp(rng), 1.0};
      const CouplingSpec c = coupling(0.1, 0.5);
      const Populations p = reservoir_populations(reservoir);
      const double scale = c.injection_rate() * c.phi() * c.phi();
      const double spectator = std::pow(p.excited + p.ground, N - 1);
      const RatePair r = rates(reservoir, c);
      CHECK(r.R_a == doctest::Approx(scale * N * p.excited * spectator).epsilon(1e-13));
      CHECK(r.R_b == doctest::Approx(scale * N * p.ground * spectator).epsilon(1e-13));
    }
  }
}

TEST_CASE("multilevel thermalization times") {
  const CouplingSpec c = coupling(0.1, 0.5);
  const ReservoirSpec one{ReservoirKind::kMultiLevel, 1, 0.1, 1.0};
  const ReservoirSpec two{ReservoirKind::kMultiLevel, 2, 0.1, 1.0};
  const ReservoirSpec three{ReservoirKind::kMultiLevel, 3, 0.1, 1.0};
  CHECK(thermalization_time(one, c).t_th == doctest::Approx(200.018160796404).epsilon(1e-12));
  CHECK(thermalization_time(two, c).t_th == doctest::Approx(400.054484862933).epsilon(1e-12));
  CHECK(thermalization_time(three, c).t_th == doctest::Approx(600.108974673758).epsilon(1e-12));
  const RatePair r = rates(two, c);
  CHECK(r.R_b - r.R_a == doctest::Approx(2.49965951598473e-3).epsilon(1e-12));
  CHECK(thermalization_time(two, c).low_T_approx == doctest::Approx(400.0).epsilon(1e-12));
}

TEST_CASE("thermalization time scales as 1/N for clusters and N for multilevel atoms") {
  std::mt19937 rng(79);
  std::uniform_real_distribution<double> g(0.01, 0.3);
  std::uniform_real_distribution<double> tau(0.1, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const CouplingSpec c = coupling(g(rng), tau(rng));
    const double T_cold = 0.1;
    const double cluster_base = thermalization_time({ReservoirKind::kMultiAtom, 1, T_cold, 1.0}, c).t_th;
    const double multi_base = thermalization_time({ReservoirKind::kMultiLevel, 1, T_cold, 1.0}, c).t_th;
    for (int N = 1; N <= 6; ++N) {
      const ThermalizationPrediction cluster = thermalization_time({ReservoirKind::kMultiAtom, N, T_cold, 1.0}, c);
      CHECK(N * cluster.t_th == doctest::Approx(cluster_base).epsilon(1e-12));
      CHECK(std::abs(cluster.t_th / cluster.low_T_approx - 1.0) < 0.01);
      const ThermalizationPrediction multi = thermalization_time({ReservoirKind::kMultiLevel, N, T_cold, 1.0}, c);
      CHECK(multi.t_th / N == doctest::Approx(multi_base).epsilon(1e-3));
      CHECK(std::abs(multi.t_th / multi.low_T_approx - 1.0) < 0.01);
    }
  }
}

TEST_CASE("rates reject reservoirs without a thermal steady state") {
  CHECK_THROWS_AS(rates({ReservoirKind::kMultiLevel, 3, 2.0, 1.0}, coupling(0.1, 0.5)), GainRegimeError);
  CHECK_THROWS_AS(decay_rate({2.0, 1.0}), StabilityError);
  CHECK_THROWS_AS(decay_rate({1.0, 1.0}), StabilityError);
  CHECK_THROWS_AS(thermalization_time({ReservoirKind::kMultiLevel, 2, 1.0 / std::log(2.0), 1.0}, coupling(0.1, 0.5)),
                  StabilityError);
}

TEST_CASE("temperature candidates") {
  const TemperatureCandidates cluster = temperature_candidates({ReservoirKind::kMultiAtom, 3, 0.7, 1.0}, 1.0);
  CHECK(cluster.reservoir == 0.7);
  CHECK(cluster.effective == 0.7);
  const ReservoirSpec multi{ReservoirKind::kMultiLevel, 2, 0.5, 1.0};
  const TemperatureCandidates t = temperature_candidates(multi, 1.0);
  CHECK(t.reservoir == doctest::Approx(0.5).epsilon(1e-12));
  // ω / ln(p_g'/p_e) = ω / (ω/T_a - ln N)
  CHECK(t.effective == doctest::Approx(1.0 / (2.0 - std::log(2.0))).epsilon(1e-12));
  const Populations p = reservoir_populations(multi);
  CHECK(bose_einstein_occupation(1.0, t.effective) ==
        doctest::Approx(p.excited / (p.ground - p.excited)).epsilon(1e-12));
}

TEST_CASE("analytic trajectory") {
  const double n0 = bose_einstein_occupation(1.0, 1.0);
  const double n_th = bose_einstein_occupation(1.0, 2.0);
  const double Gamma = 1.22459331201855e-3;
  const std::vector<double> times = {0.0, 1.0 / Gamma, 1e7};
  const std::vector<double> n = analytic_trajectory(n0, n_th, Gamma, times);
  CHECK(n[0] == doctest::Approx(n0).epsilon(1e-15));
  CHECK(n[1] == doctest::Approx(1.18850736658196).epsilon(1e-12));
  CHECK(n[2] == doctest::Approx(n_th).epsilon(1e-15));
  CHECK_THROWS_AS(analytic_trajectory(n0, n_th, 0.0, times), DomainError);
}

TEST_CASE("decay fit recovers a synthetic exponential") {
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> gamma(2e-4, 5e-3);
  std::uniform_real_distribution<double> level(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double Gamma = trial == 0 ? 1e-3 : gamma(rng);
    const double n0 = level(rng);
    const double n_th = level(rng);
    const double dt = 0.5;
    const std::size_t count = static_cast<std::size_t>(25.0 / Gamma / dt);
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k) t[k] = dt * static_cast<double>(k);
    const std::vector<double> n = analytic_trajectory(n0, n_th, Gamma, t);
    if (std::abs(n0 - n_th) < 1e-3) continue;
    const DecayFit fit = fit_decay_rate(t, n);
    CHECK(fit.Gamma == doctest::Approx(Gamma).epsilon(1e-6));
    CHECK(fit.n_inf == doctest::Approx(n_th).epsilon(1e-9));
    CHECK(fit.r_squared > 0.999999);
  }
}

TEST_CASE("decay fit refuses series without relaxation") {
  std::vector<double> t(200), flat(200, 1.3);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k);
  CHECK_THROWS_AS(fit_decay_rate(t, flat), FitError);
  std::vector<double> short_t(50, 0.0), short_n(50, 0.0);
  CHECK_THROWS_AS(fit_decay_rate(short_t, short_n), FitError);
  std::vector<double> mismatched(199, 0.0);
  CHECK_THROWS_AS(fit_decay_rate(t, mismatched), FitError);
}
