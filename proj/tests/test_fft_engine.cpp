// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sparsetf/errors.hpp"
#include "sparsetf/fft_engine.hpp"
#include "sparsetf/grid.hpp"

#include <Eigen/Dense>

using namespace sparsetf;
namespace {
constexpr double kPi = std::numbers::pi;

Signal periodic_signal(int n, const std::function<double(double)>& f) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / n);
  return make_signal(Grid{0, 1, n, true}, std::move(v));
}

PhaseFunction periodic_phase(int n, const std::function<double(double)>& omega) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = omega(static_cast<double>(i) / n);
  return phase_from_frequency(w, 1.0 / n);
}

}  // namespace

TEST_CASE("resampling with a linear phase is the identity") {
  const int n = 128;
  auto r = periodic_signal(n, [](double t) { return std::sin(2 * kPi * 5 * t) + t * 0; });
  auto phase = periodic_phase(n, [](double) { return 2 * kPi * 16; });
  const auto out = resample_to_theta(r, phase, n);
  for (int i = 0; i < n; ++i)
    CHECK(out[static_cast<std::size_t>(i)] ==
          doctest::Approx(r.values[static_cast<std::size_t>(i)]).epsilon(1e-8));

  // refinement keeps the original samples at even indices
  const auto fine = resample_to_theta(r, phase, 2 * n);
  for (int i = 0; i < n; ++i)
    CHECK(fine[static_cast<std::size_t>(2 * i)] ==
          doctest::Approx(r.values[static_cast<std::size_t>(i)]).epsilon(1e-10));
}

TEST_CASE("resampling cos(theta) yields cos of the uniform phase grid") {
  const int n = 1024;
  auto omega_fn = [](double t) { return 60 * kPi + 30 * kPi * std::cos(2 * kPi * t); };
  auto phase = periodic_phase(n, omega_fn);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = std::cos(phase.theta[static_cast<std::size_t>(i)]);
  auto r = make_signal(Grid{0, 1, n, true}, std::move(v));
  const int n_theta = 2048;
  const auto out = resample_to_theta(r, phase, n_theta);
  const double span = 60 * kPi;
  double sup = 0;
  for (int j = 0; j < n_theta; ++j)
    sup = std::max(sup, std::abs(out[static_cast<std::size_t>(j)] -
                                 std::cos(span * j / n_theta)));
  CHECK(sup < 1e-4);
}

TEST_CASE("resampling rejects bad input") {
  const int n = 64;
  auto r = periodic_signal(n, [](double t) { return std::cos(2 * kPi * 8 * t); });
  auto phase = periodic_phase(n, [](double) { return 2 * kPi * 8; });
  CHECK_THROWS_AS(resample_to_theta(r, phase, n / 2), InvalidInputError);
  Signal nonper = make_signal(Grid{0, 1, n, false}, r.values);
  CHECK_THROWS_AS(resample_to_theta(nonper, phase, n), InvalidInputError);
  auto bad = phase;
  bad.theta[10] = bad.theta[12];
  bad.theta[11] = bad.theta[12] + 1.0;  // decreasing afterwards
  bad.theta[12] = bad.theta[11] - 0.5;
  CHECK_THROWS_AS(resample_to_theta(r, bad, n), InvalidInputError);
}

TEST_CASE("envelope step calibration on pure carriers") {
  const int n = 512;
  const long carrier = 16;
  std::vector<double> grid_phase(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    grid_phase[static_cast<std::size_t>(i)] = 2 * kPi * carrier * i / static_cast<double>(n);

  std::vector<double> rc(static_cast<std::size_t>(n)), rs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rc[static_cast<std::size_t>(i)] = std::cos(grid_phase[static_cast<std::size_t>(i)]);
    rs[static_cast<std::size_t>(i)] = std::sin(grid_phase[static_cast<std::size_t>(i)]);
  }
  const FilterSpec cosine{FilterKind::cosine, 0.5};
  const auto ec = envelope_step(rc, carrier, cosine);
  const auto es = envelope_step(rs, carrier, cosine);
  for (int i = 0; i < n; ++i) {
    CHECK(ec.a[static_cast<std::size_t>(i)] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ec.b[static_cast<std::size_t>(i)] == doctest::Approx(0.0).scale(1).epsilon(1e-10));
    CHECK(es.a[static_cast<std::size_t>(i)] == doctest::Approx(0.0).scale(1).epsilon(1e-10));
    CHECK(es.b[static_cast<std::size_t>(i)] == doctest::Approx(1.0).epsilon(1e-10));
  }

  // constant pair comes back exactly (pins both sign conventions)
  std::vector<double> mix(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    mix[static_cast<std::size_t>(i)] = 3.0 * rc[static_cast<std::size_t>(i)] -
                                       2.0 * rs[static_cast<std::size_t>(i)];
  const auto em = envelope_step(mix, carrier, cosine);
  for (int i = 0; i < n; ++i) {
    CHECK(em.a[static_cast<std::size_t>(i)] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(em.b[static_cast<std::size_t>(i)] == doctest::Approx(-2.0).epsilon(1e-10));
  }
}

TEST_CASE("envelope step recovers a slow modulation (stair filter)") {
  const int n = 512;
  const long carrier = 16;
  std::vector<double> r(static_cast<std::size_t>(n)), truth(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double phi = 2 * kPi * carrier * i / static_cast<double>(n);
    truth[static_cast<std::size_t>(i)] = 2.0 + std::cos(phi / static_cast<double>(carrier));
    r[static_cast<std::size_t>(i)] = truth[static_cast<std::size_t>(i)] * std::cos(phi);
  }
  const FilterSpec stair{FilterKind::stair, 0.5};
  const auto env = envelope_step(r, carrier, stair);
  double sup = 0;
  for (int i = 0; i < n; ++i)
    sup = std::max(sup, std::abs(env.a[static_cast<std::size_t>(i)] -
                                 truth[static_cast<std::size_t>(i)]));
  CHECK(sup < 1e-3);

  // least-squares projection oracle: same fit from the normal equations
  const int kmax = static_cast<int>(0.5 * carrier) - 1;
  const int cols = 2 * (2 * kmax + 1);
  Eigen::MatrixXd design(n, cols);
  for (int i = 0; i < n; ++i) {
    const double phi = 2 * kPi * carrier * i / static_cast<double>(n);
    int c = 0;
    design(i, c++) = std::cos(phi);
    design(i, c++) = std::sin(phi);
    for (int k = 1; k <= kmax; ++k) {
      const double arg = k * phi / static_cast<double>(carrier);
      design(i, c++) = std::cos(arg) * std::cos(phi);
      design(i, c++) = std::sin(arg) * std::cos(phi);
      design(i, c++) = std::cos(arg) * std::sin(phi);
      design(i, c++) = std::sin(arg) * std::sin(phi);
    }
  }
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs(i) = r[static_cast<std::size_t>(i)];
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  Eigen::VectorXd fit = design * coef;
  for (int i = 0; i < n; ++i) {
    const double phi = 2 * kPi * carrier * i / static_cast<double>(n);
    const double got = env.a[static_cast<std::size_t>(i)] * std::cos(phi) +
                       env.b[static_cast<std::size_t>(i)] * std::sin(phi);
    CHECK(got == doctest::Approx(fit(i)).epsilon(1e-7));
  }
}

TEST_CASE("envelope step validates the band") {
  std::vector<double> r(64, 1.0);
  CHECK_THROWS_AS(envelope_step(r, 1, FilterSpec{FilterKind::cosine, 0.5}),
                  PhaseTooShortError);
  CHECK_THROWS_AS(envelope_step(r, 8, FilterSpec{FilterKind::cosine, 0.1}),
                  BandTooNarrowError);
  CHECK_THROWS_AS(envelope_step(r, 8, FilterSpec{FilterKind::cosine, 0.6}),
                  InvalidInputError);
}

TEST_CASE("energy conservation for the stair filter") {
  const int n = 256;
  const long carrier = 32;
  // a few in-band and out-of-band lines around the carrier
  std::vector<double> r(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / n;
    r[static_cast<std::size_t>(i)] = 1.3 * std::cos(2 * kPi * 32 * t) +
                                     0.7 * std::sin(2 * kPi * 35 * t) +
                                     0.4 * std::cos(2 * kPi * 20 * t) +
                                     0.9 * std::cos(2 * kPi * 55 * t);
  }
  const auto env = envelope_step(r, carrier, FilterSpec{FilterKind::stair, 0.5});
  double total = 0, fit_e = 0, res_e = 0;
  for (int i = 0; i < n; ++i) {
    const double phi = 2 * kPi * carrier * i / static_cast<double>(n);
    const double fit = env.a[static_cast<std::size_t>(i)] * std::cos(phi) +
                       env.b[static_cast<std::size_t>(i)] * std::sin(phi);
    const double x = r[static_cast<std::size_t>(i)];
    total += x * x;
    fit_e += fit * fit;
    res_e += (x - fit) * (x - fit);
  }
  CHECK(total == doctest::Approx(fit_e + res_e).epsilon(1e-8));
}

TEST_CASE("phase correction and update: converged state is a fixed point") {
  const int n = 256;
  const Grid grid{0, 1, n, true};
  EnvelopePair env;
  env.a.assign(static_cast<std::size_t>(n), 1.0);
  env.b.assign(static_cast<std::size_t>(n), 0.0);
  auto phase = periodic_phase(n, [](double) { return 2 * kPi * 20; });
  FftEngineConfig config;
  const auto res = phase_update(phase, env, grid, config);
  CHECK(res.eta == doctest::Approx(config.eta_max));
  for (int i = 0; i < n; ++i)
    CHECK(res.phase.omega[static_cast<std::size_t>(i)] == doctest::Approx(2 * kPi * 20));
}

TEST_CASE("phase correction interpolates across thresholded points") {
  const int n = 64;
  EnvelopePair env;
  env.a.assign(static_cast<std::size_t>(n), 1.0);
  env.b.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 20; i < 24; ++i) {
    env.a[static_cast<std::size_t>(i)] = 0.01;  // below alpha = 0.1
    env.b[static_cast<std::size_t>(i)] = 1000.0 * (i - 21.5);  // would blow up the quotient
  }
  const auto delta = phase_correction(env, 1.0 / n, true, 0.1);
  for (int i = 20; i < 24; ++i)
    CHECK(std::abs(delta[static_cast<std::size_t>(i)]) < 1e3);  // filled, not exploded

  EnvelopePair dead;
  dead.a.assign(static_cast<std::size_t>(n), 0.001);
  dead.b.assign(static_cast<std::size_t>(n), 0.0);
  CHECK_THROWS_AS(phase_correction(dead, 1.0 / n, true, 0.1), DegenerateEnvelopeError);
}

TEST_CASE("frequency step limit matches a bisection oracle") {
  const std::vector<double> omega{4, 3, 2, 1, 2};
  const std::vector<double> delta{-1, -2, -8, -0.5, -1};
  const double eta = frequency_step_limit(omega, delta, 1.0);
  CHECK(eta == doctest::Approx(0.25));

  // bisection oracle for the binding constraint
  auto feasible = [&](double e) {
    for (std::size_t i = 0; i < omega.size(); ++i)
      if (omega[i] + e * delta[i] < 0) return false;
    return true;
  };
  double lo = 0, hi = 1;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  CHECK(eta == doctest::Approx(lo).epsilon(1e-10));

  int zeros = 0;
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (omega[i] + eta * delta[i] == doctest::Approx(0.0).scale(1).epsilon(1e-14)) ++zeros;
  CHECK(zeros == 1);

  CHECK(frequency_step_limit(omega, std::vector<double>{1, 1, 1, 1, 1}, 1.0) ==
        doctest::Approx(1.0));
}

TEST_CASE("one update halves a 5% frequency error") {
  const int n = 512;
  auto omega_true = [](double t) { return 48 * kPi + 6 * kPi * std::cos(2 * kPi * t); };
  auto truth = periodic_phase(n, omega_true);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = std::cos(truth.theta[static_cast<std::size_t>(i)]);
  auto r = make_signal(Grid{0, 1, n, true}, std::move(v));

  FftEngineConfig config;
  config.continuation_widths = {0.5};
  config.max_iters = 1;
  config.polish = false;
  config.record_history = true;
  auto guess = periodic_phase(n, [&](double t) { return 1.05 * omega_true(t); });
  const auto res = extract_imf_fft(r, guess, config);
  REQUIRE(res.omega_history.size() == 1);

  // the engine first snaps the record to a whole number of periods
  const double snapped_ratio = 1.05 * 24.0 / 25.0;  // span 25.2 periods -> bin 25
  const double initial_err = std::abs(snapped_ratio - 1.0);
  double post_err = 0;
  for (int i = 0; i < n; ++i) {
    const double w = omega_true(static_cast<double>(i) / n);
    post_err = std::max(post_err,
                        std::abs(res.omega_history[0][static_cast<std::size_t>(i)] - w) / w);
  }
  CHECK(post_err <= 0.5 * initial_err);
}

TEST_CASE("extraction of a pure carrier is a fixed point") {
  const int n = 256;
  auto phase = periodic_phase(n, [](double) { return 2 * kPi * 16; });
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = std::cos(phase.theta[static_cast<std::size_t>(i)]);
  auto r = make_signal(Grid{0, 1, n, true}, std::move(v));
  const auto res = extract_imf_fft(r, phase, FftEngineConfig{});
  CHECK(res.converged);
  CHECK(res.iterations <= 5);  // one iteration per continuation level
  for (int i = 0; i < n; ++i) {
    CHECK(res.component.envelope[static_cast<std::size_t>(i)] ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.component.phase.omega[static_cast<std::size_t>(i)] ==
          doctest::Approx(2 * kPi * 16).epsilon(1e-6));
  }
}

TEST_CASE("full extraction of the modulated example signal") {
  const int n = 512;
  auto omega_true = [](double t) { return 60 * kPi + 30 * kPi * std::cos(2 * kPi * t); };
  auto truth = periodic_phase(n, omega_true);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = std::cos(truth.theta[static_cast<std::size_t>(i)]);
  auto r = make_signal(Grid{0, 1, n, true}, std::move(v));

  FftEngineConfig config;
  config.record_history = true;
  auto guess = periodic_phase(n, [](double) { return 2 * kPi * 17; });
  const auto res = extract_imf_fft(r, guess, config);
  CHECK(res.converged);

  double sup = 0;
  for (int i = 0; i < n; ++i) {
    const double w = omega_true(static_cast<double>(i) / n);
    sup = std::max(sup, std::abs(res.component.phase.omega[static_cast<std::size_t>(i)] - w) / w);
  }
  CHECK(sup < 1e-2);

  // every intermediate frequency stays nonnegative (monotone phases)
  for (const auto& hist : res.omega_history)
    for (double w : hist) CHECK(w >= 0.0);
}

TEST_CASE("chirp extraction: the accurate region grows outward") {
  const int n = 1024;
  std::vector<double> v(static_cast<std::size_t>(n));
  const Grid grid{0, 1, n, false};
  for (int i = 0; i < n; ++i) {
    const double t = grid.at(i);
    v[static_cast<std::size_t>(i)] = std::cos(10 * kPi * (3 * t + 1) * (3 * t + 1));
  }
  auto r = make_signal(grid, std::move(v));
  std::vector<double> w0(static_cast<std::size_t>(n), 80 * kPi);
  auto guess = phase_from_frequency(w0, grid.dt());

  FftEngineConfig config;
  config.record_history = true;
  const auto res = extract_imf_fft(r, guess, config);
  CHECK(res.converged);

  auto measure = [&](const std::vector<double>& omega) {
    int good = 0;
    for (int i = 0; i < n; ++i) {
      const double w = 60 * kPi * (3 * grid.at(i) + 1);
      if (std::abs(omega[static_cast<std::size_t>(i)] - w) / w < 0.05) ++good;
    }
    return static_cast<double>(good) / n;
  };
  double prev = 0.0;
  for (int end : res.level_end_iterations) {
    const double m = measure(res.omega_history[static_cast<std::size_t>(end - 1)]);
    CHECK(m >= prev - 0.01);
    prev = std::max(prev, m);
  }
  CHECK(prev > 0.97);
}
