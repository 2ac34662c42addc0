#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "harvest/calendar.hpp"
#include "harvest/gpr.hpp"
#include "harvest/rng.hpp"

using namespace harvest;

namespace {

// Hand-written covariance; mirrors the documented kernel sum independently
// of the production code.
double cov_oracle(const KernelParams& p, double t1, double t2, double c) {
  const double s = std::sin(std::numbers::pi * std::abs(t1 - t2));
  return p.periodic_variance *
             std::exp(-2.0 * s * s /
                      (p.periodic_lengthscale * p.periodic_lengthscale)) +
         p.linear_variance * (t1 - c) * (t2 - c) + p.bias_variance;
}

// Dense multivariate-normal log-density via pivoted LU, an independent route
// from the production Cholesky.
double dense_lml_oracle(const KernelParams& p, const std::vector<double>& t,
                        const std::vector<double>& y, double c) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      k(i, j) = cov_oracle(p, t[static_cast<std::size_t>(i)],
                           t[static_cast<std::size_t>(j)], c);
    }
  }
  k.diagonal().array() += p.noise_variance;
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(k);
  const Eigen::VectorXd sol = lu.solve(yv);
  return -0.5 * yv.dot(sol) - 0.5 * std::log(lu.determinant()) -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

GduHistory synthetic_history(double amp, double slope, double level,
                             double noise_sd, int n_years,
                             std::uint64_t seed) {
  GduHistory h;
  Rng rng = make_rng(seed);
  const std::int64_t start = model_day({2009, 1, 1});
  for (int d = 0; d < n_years * kDaysPerYear; ++d) {
    const double t = years_from_model_day(start + d) -
                     years_from_model_day(start);
    const double value = amp * std::sin(2.0 * std::numbers::pi * t) +
                         slope * t + level + draw_normal(rng, 0.0, noise_sd);
    h.days.push_back(start + d);
    h.values.push_back(std::max(0.0, value));
  }
  return h;
}

}  // namespace

TEST_CASE("kernel parameters must be positive") {
  KernelParams p{1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK_NOTHROW(p.validate());
  p.noise_variance = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.noise_variance = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("kernel value matches the documented sum of components") {
  const KernelParams p{2.0, 0.7, 0.3, 1.5, 0.1};
  Rng rng = make_rng(10);
  std::uniform_real_distribution<double> t_dist(-3.0, 25.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double t1 = t_dist(rng), t2 = t_dist(rng);
    CHECK(kernel_value(p, t1, t2, 10.0) ==
          doctest::Approx(cov_oracle(p, t1, t2, 10.0)).epsilon(1e-14));
  }
  // exact one-year periodicity of the periodic part: kill linear/bias terms
  const KernelParams periodic_only{2.0, 0.7, 1e-12, 1e-12, 0.1};
  for (int trial = 0; trial < 100; ++trial) {
    const double t1 = t_dist(rng), t2 = t_dist(rng);
    CHECK(kernel_value(periodic_only, t1, t2, 0.0) ==
          doctest::Approx(kernel_value(periodic_only, t1 + 1.0, t2 + 1.0, 0.0))
              .epsilon(1e-9));
  }
}

TEST_CASE("a one-year calendar shift leaves the periodic Gram unchanged") {
  const KernelParams p{3.0, 0.8, 1e-14, 1e-14, 0.2};
  std::vector<double> t, t_shifted;
  for (std::int64_t off : {7300L, 7310L, 7444L, 7656L, 7900L}) {
    t.push_back(years_from_model_day(off));
    t_shifted.push_back(years_from_model_day(off + 365));
  }
  const Eigen::MatrixXd a = gram_matrix(p, t, 0.0);
  const Eigen::MatrixXd b = gram_matrix(p, t_shifted, 0.0);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("log marginal likelihood: one-point closed form") {
  const KernelParams p{0.5, 1.0, 0.25, 2.0, 0.75};
  const double t0 = 3.2, c = 1.0;
  // hand-computed variance: periodic(0) + linear + bias + noise
  const double var = 0.5 + 0.25 * (t0 - c) * (t0 - c) + 2.0 + 0.75;
  for (double y0 : {0.0, 1.0, -2.5}) {
    const std::vector<double> t{t0}, y{y0};
    const double want =
        -0.5 * (y0 * y0 / var + std::log(var) +
                std::log(2.0 * std::numbers::pi));
    CHECK(log_marginal_likelihood(p, t, y, c) ==
          doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("log marginal likelihood: two-point hand inversion") {
  const KernelParams p{1.0, 1.0, 0.5, 1.0, 0.3};
  const double c = 0.25;
  const std::vector<double> t{0.0, 0.5};
  const std::vector<double> y{1.0, -1.0};
  const double k00 = cov_oracle(p, t[0], t[0], c) + p.noise_variance;
  const double k11 = cov_oracle(p, t[1], t[1], c) + p.noise_variance;
  const double k01 = cov_oracle(p, t[0], t[1], c);
  const double det = k00 * k11 - k01 * k01;
  const double quad = (k11 * y[0] * y[0] - 2.0 * k01 * y[0] * y[1] +
                       k00 * y[1] * y[1]) /
                      det;
  const double want =
      -0.5 * quad - 0.5 * std::log(det) - std::log(2.0 * std::numbers::pi);
  CHECK(log_marginal_likelihood(p, t, y, c) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("log marginal likelihood matches the dense oracle") {
  Rng rng = make_rng(2024);
  std::uniform_real_distribution<double> t_dist(0.0, 11.0);
  std::normal_distribution<double> y_dist(10.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> n_dist(2, 50);
    const int n = n_dist(rng);
    std::vector<double> t, y;
    for (int i = 0; i < n; ++i) {
      t.push_back(t_dist(rng));
      y.push_back(y_dist(rng));
    }
    std::sort(t.begin(), t.end());
    const KernelParams p{1.5, 0.9, 0.2, 3.0, 0.5};
    const double got = log_marginal_likelihood(p, t, y, 5.5);
    const double want = dense_lml_oracle(p, t, y, 5.5);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("prior model: predictive std is the closed-form prior spread") {
  // vanishing periodic/linear parts: std = sqrt(bias + noise) everywhere
  const KernelParams p{1e-12, 1.0, 1e-12, 4.0, 9.0};
  const GprModel model(p, {}, {}, 0.0);
  std::vector<double> mean, sd;
  model.predict(std::vector<double>{0.0, 1.5, 20.0}, mean, sd);
  for (double m : mean) CHECK(m == 0.0);
  for (double s : sd) {
    CHECK(s == doctest::Approx(std::sqrt(13.0)).epsilon(1e-9));
  }
}

TEST_CASE("noiseless interpolation passes through the data") {
  // Small noise floor (parameters must stay positive); tolerance tracks it.
  const KernelParams p{4.0, 1.0, 0.1, 9.0, 1e-8};
  std::vector<double> t, y;
  for (int i = 0; i < 30; ++i) {
    const double ti = i / 7.0;
    t.push_back(ti);
    y.push_back(3.0 * std::sin(2.0 * std::numbers::pi * ti) + 0.2 * ti + 5.0);
  }
  const GprModel model(p, t, y, t.back() / 2.0);
  std::vector<double> mean, sd;
  model.predict(t, mean, sd);
  const double tol = 3.0 * std::sqrt(p.noise_variance + model.jitter());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(std::abs(mean[i] - y[i]) < std::max(tol, 1e-3));
    CHECK(sd[i] >= std::sqrt(p.noise_variance));
  }
}

TEST_CASE("predictive std never drops below the noise floor") {
  const KernelParams p{2.0, 0.8, 0.3, 1.0, 0.6};
  std::vector<double> t, y;
  Rng rng = make_rng(55);
  for (int i = 0; i < 40; ++i) {
    t.push_back(i * 0.1);
    y.push_back(draw_normal(rng, 10.0, 2.0));
  }
  const GprModel model(p, t, y, 2.0);
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(-1.0 + 0.08 * i);
  std::vector<double> mean, sd;
  model.predict(grid, mean, sd);
  for (double s : sd) CHECK(s >= std::sqrt(p.noise_variance) - 1e-12);
}

TEST_CASE("duplicate observation times still factorize (jitter escalation)") {
  const KernelParams p{1.0, 1.0, 0.1, 1.0, 1e-10};
  const std::vector<double> t{1.0, 1.0, 1.0, 2.0};
  const std::vector<double> y{3.0, 3.0, 3.0, 4.0};
  const GprModel model(p, t, y, 1.5);
  CHECK(std::isfinite(model.log_marginal_likelihood()));
}

TEST_CASE("fit recovers a periodic signal well enough to extrapolate") {
  // level chosen high enough that the non-negativity clip never bites
  const double noise_sd = 1.5;
  const GduHistory h = synthetic_history(9.0, 0.5, 14.0, noise_sd, 4, 42);

  GprFitConfig cfg;
  cfg.subsample_stride = 7;
  cfg.n_starts = 3;
  cfg.max_iterations = 250;
  cfg.seed = 7;
  const GprModel model = fit_gpr(h, cfg);

  // extrapolate half a year past the end of training
  const std::int64_t start = model_day({2009, 1, 1});
  std::vector<double> t_test, truth;
  for (int d = 4 * kDaysPerYear; d < 4 * kDaysPerYear + 182; ++d) {
    const double t = years_from_model_day(start + d) -
                     years_from_model_day(start);
    t_test.push_back(years_from_model_day(start + d));
    truth.push_back(9.0 * std::sin(2.0 * std::numbers::pi * t) + 0.5 * t +
                    14.0);
  }
  std::vector<double> mean, sd;
  model.predict(t_test, mean, sd);
  double sq = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    sq += (mean[i] - truth[i]) * (mean[i] - truth[i]);
  }
  const double rmse = std::sqrt(sq / static_cast<double>(truth.size()));
  CHECK(rmse < 1.5 * noise_sd);
}

TEST_CASE("fit is deterministic per seed") {
  const GduHistory h = synthetic_history(9.0, 0.4, 14.0, 1.0, 2, 17);
  GprFitConfig cfg;
  cfg.subsample_stride = 10;
  cfg.n_starts = 2;
  cfg.max_iterations = 120;
  cfg.seed = 3;
  const GprModel a = fit_gpr(h, cfg);
  const GprModel b = fit_gpr(h, cfg);
  CHECK(a.params().periodic_variance == b.params().periodic_variance);
  CHECK(a.params().noise_variance == b.params().noise_variance);
  CHECK(a.log_marginal_likelihood() == b.log_marginal_likelihood());
}

TEST_CASE("fit validation") {
  GduHistory h;
  h.days = {0};
  h.values = {1.0};
  CHECK_THROWS_AS(fit_gpr(h), std::domain_error);

  GduHistory unordered;
  unordered.days = {5, 3};
  unordered.values = {1.0, 1.0};
  CHECK_THROWS_AS(fit_gpr(unordered), std::invalid_argument);

  GduHistory negative;
  negative.days = {1, 2, 3};
  negative.values = {1.0, -0.5, 1.0};
  CHECK_THROWS_AS(fit_gpr(negative), std::invalid_argument);

  GduHistory ok;
  for (int i = 0; i < 30; ++i) {
    ok.days.push_back(i * 5);
    ok.values.push_back(10.0 + (i % 3));
  }
  GprFitConfig bad;
  bad.subsample_stride = 0;
  CHECK_THROWS_AS(fit_gpr(ok, bad), std::invalid_argument);
}

TEST_CASE("forecast horizon validation and shape") {
  const KernelParams p{1.0, 1.0, 0.1, 1.0, 0.5};
  std::vector<double> t{0.0, 0.1, 0.2}, y{1.0, 2.0, 3.0};
  const GprModel model(p, t, y, 0.1);

  CHECK_THROWS_AS(predict_forecast(model, {{2020, 1, 1}, 0}),
                  std::domain_error);
  CHECK_THROWS_AS(predict_forecast(model, {{2020, 1, 1}, -3}),
                  std::domain_error);

  const GduForecast f = predict_forecast(model, {{2020, 1, 1}, 40});
  CHECK(f.d_max() == 40);
  CHECK(f.sd.size() == 40);
  CHECK(f.horizon_start == CivilDate{2020, 1, 1});
  for (double s : f.sd) CHECK(s >= std::sqrt(p.noise_variance) - 1e-12);
}

TEST_CASE("calendar-day climatology: mean and spread per (month, day)") {
  GduHistory h;
  h.site_id = 0;
  // Jan 1 always 5; Jan 2 alternates 4 and 6
  for (int year = 2010; year < 2014; ++year) {
    h.days.push_back(model_day({year, 1, 1}));
    h.values.push_back(5.0);
    h.days.push_back(model_day({year, 1, 2}));
    h.values.push_back(year % 2 == 0 ? 4.0 : 6.0);
  }
  const GduForecast f = naive_forecast(h, {{2020, 1, 1}, 2});
  CHECK(f.mean[0] == 5.0);
  CHECK(f.sd[0] == 0.0);
  CHECK(f.mean[1] == 5.0);
  // sample std of {4,6,4,6} with the n-1 denominator
  CHECK(f.sd[1] == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-15));

  GduHistory two;
  two.days = {model_day({2010, 1, 2}), model_day({2011, 1, 2})};
  two.values = {4.0, 6.0};
  const GduForecast f2 = naive_forecast(two, {{2020, 1, 2}, 1});
  CHECK(f2.mean[0] == 5.0);
  CHECK(f2.sd[0] == doctest::Approx(1.4142135623730951).epsilon(1e-15));
}

TEST_CASE("climatology requires two samples per calendar day") {
  GduHistory h;
  h.days = {model_day({2010, 1, 1}), model_day({2010, 1, 2}),
            model_day({2011, 1, 1})};
  h.values = {5.0, 4.0, 5.0};
  CHECK_NOTHROW(naive_forecast(h, {{2020, 1, 1}, 1}));
  CHECK_THROWS_AS(naive_forecast(h, {{2020, 1, 1}, 2}), std::domain_error);
  CHECK_THROWS_AS(naive_forecast(h, {{2020, 3, 1}, 1}), std::domain_error);
}

TEST_CASE("climatology horizon never contains Feb 29") {
  GduHistory h;
  for (int year = 2010; year < 2012; ++year) {
    for (int d = 0; d < kDaysPerYear; ++d) {
      h.days.push_back(model_day({year, 1, 1}) + d);
      h.values.push_back(7.0);
    }
  }
  // spans what would be Feb 29, 2020 on the civil calendar
  const GduForecast f = naive_forecast(h, {{2020, 2, 1}, 60});
  CHECK(f.d_max() == 60);
  const std::int64_t start = model_day({2020, 2, 1});
  for (int k = 0; k < 60; ++k) {
    CHECK_FALSE(is_leap_day(date_from_model_day(start + k)));
  }
  // 60 model days from Feb 1 land on Apr 1, skipping the leap day
  CHECK(date_from_model_day(start + 59) == CivilDate{2020, 4, 1});
}

TEST_CASE("residual diagnostics: interpolation, coverage, unbiasedness") {
  const double noise_sd = 1.0;
  const GduHistory noisy = synthetic_history(8.0, 0.3, 11.0, noise_sd, 3, 9);
  GprFitConfig cfg;
  cfg.subsample_stride = 6;
  cfg.n_starts = 2;
  cfg.max_iterations = 200;
  const GprModel model = fit_gpr(noisy, cfg);

  const auto res = residual_diagnostics(model, noisy);
  REQUIRE(res.size() == noisy.size());
  int covered = 0;
  double sum = 0.0;
  for (const auto& r : res) {
    if (std::abs(r.residual) <= 2.0 * r.sd) ++covered;
    sum += r.residual;
  }
  CHECK(covered >= static_cast<int>(res.size() * 9) / 10);
  CHECK(std::abs(sum / static_cast<double>(res.size())) < 0.1 * noise_sd);

  // noiseless, perfectly fit data interpolates to ~zero residuals
  const KernelParams p{4.0, 1.0, 0.1, 9.0, 1e-9};
  GduHistory clean;
  for (int i = 0; i < 25; ++i) {
    clean.days.push_back(i * 15);
    clean.values.push_back(
        5.0 + 2.0 * std::sin(2.0 * std::numbers::pi * i * 15.0 / 365.0));
  }
  std::vector<double> t;
  for (std::int64_t d : clean.days) t.push_back(years_from_model_day(d));
  const GprModel exact(p, t, clean.values, t.back() / 2.0);
  for (const auto& r : residual_diagnostics(exact, clean)) {
    CHECK(std::abs(r.residual) < 1e-6);
  }
}
