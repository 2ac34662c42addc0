#include "harvest/gpr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "harvest/rng.hpp"

namespace harvest {

namespace {

constexpr int kNumParams = 5;
using ParamVec = std::array<double, kNumParams>;

ParamVec to_array(const KernelParams& p) {
  return {p.periodic_variance, p.periodic_lengthscale, p.linear_variance,
          p.bias_variance, p.noise_variance};
}

KernelParams from_array(const ParamVec& v) {
  return {v[0], v[1], v[2], v[3], v[4]};
}

std::vector<double> history_times(const GduHistory& h) {
  std::vector<double> t;
  t.reserve(h.size());
  for (std::int64_t d : h.days) t.push_back(years_from_model_day(d));
  return t;
}

void validate_history(const GduHistory& h) {
  if (h.days.size() != h.values.size()) {
    throw std::invalid_argument("GduHistory: days/values length mismatch");
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i > 0 && h.days[i] <= h.days[i - 1]) {
      throw std::invalid_argument(
          "GduHistory: observation days must be strictly increasing");
    }
    if (!std::isfinite(h.values[i]) || h.values[i] < 0.0) {
      throw std::invalid_argument(
          "GduHistory: GDU values must be finite and non-negative");
    }
  }
}

// Cholesky of the noisy Gram matrix with escalating diagonal jitter. Returns
// the jitter that succeeded via `jitter_out`.
Eigen::LLT<Eigen::MatrixXd> factorize(const KernelParams& params,
                                      std::span<const double> t, double center,
                                      double& jitter_out) {
  Eigen::MatrixXd k = gram_matrix(params, t, center);
  const Eigen::Index n = k.rows();
  k.diagonal().array() += params.noise_variance;
  const double scale = n > 0 ? k.diagonal().mean() : 1.0;

  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
  for (int attempt = 0; attempt < 10; ++attempt) {
    Eigen::MatrixXd trial = k;
    trial.diagonal().array() += jitter;
    llt.compute(trial);
    if (llt.info() == Eigen::Success) {
      jitter_out = jitter;
      return llt;
    }
    jitter = jitter == 0.0 ? 1e-12 * scale : jitter * 10.0;
  }
  throw FitError(
      "gpr: Gram matrix is not positive definite even with jitter");
}

double lml_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt,
                    const Eigen::VectorXd& y, const Eigen::VectorXd& alpha) {
  const Eigen::Index n = y.size();
  const double quad = y.dot(alpha);
  const double logdet =
      2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * quad - 0.5 * logdet -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

struct SimplexResult {
  ParamVec x;       // log-parameters
  double f = std::numeric_limits<double>::infinity();
};

// Standard Nelder-Mead on R^5 with reflection/expansion/contraction/shrink.
template <typename F>
SimplexResult nelder_mead(F&& objective, const ParamVec& x0, double step,
                          int max_iterations, double tolerance) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5,
                   kShrink = 0.5;
  const int n = kNumParams;
  std::array<ParamVec, kNumParams + 1> xs;
  std::array<double, kNumParams + 1> fs;
  xs[0] = x0;
  fs[0] = objective(x0);
  for (int i = 0; i < n; ++i) {
    xs[i + 1] = x0;
    xs[i + 1][i] += step;
    fs[i + 1] = objective(xs[i + 1]);
  }
  std::array<int, kNumParams + 1> order;

  for (int it = 0; it < max_iterations; ++it) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = order[0], worst = order[n], second_worst = order[n - 1];
    if (std::abs(fs[worst] - fs[best]) <=
        tolerance * (1.0 + std::abs(fs[best]))) {
      break;
    }

    ParamVec centroid{};
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < n; ++d) centroid[d] += xs[i][d];
    }
    for (int d = 0; d < n; ++d) centroid[d] /= n;

    auto blend = [&](double coeff) {
      ParamVec p;
      for (int d = 0; d < n; ++d) {
        p[d] = centroid[d] + coeff * (centroid[d] - xs[worst][d]);
      }
      return p;
    };

    const ParamVec xr = blend(kReflect);
    const double fr = objective(xr);
    if (fr < fs[best]) {
      const ParamVec xe = blend(kExpand);
      const double fe = objective(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second_worst]) {
      xs[worst] = xr;
      fs[worst] = fr;
    } else {
      const ParamVec xc = blend(fr < fs[worst] ? kContract : -kContract);
      const double fc = objective(xc);
      if (fc < std::min(fr, fs[worst])) {
        xs[worst] = xc;
        fs[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int d = 0; d < n; ++d) {
            xs[i][d] = xs[best][d] + kShrink * (xs[i][d] - xs[best][d]);
          }
          fs[i] = objective(xs[i]);
        }
      }
    }
  }

  SimplexResult r;
  for (int i = 0; i <= n; ++i) {
    if (fs[i] < r.f) {
      r.f = fs[i];
      r.x = xs[i];
    }
  }
  return r;
}

}  // namespace

GprModel::GprModel(KernelParams params, std::vector<double> train_t,
                   std::vector<double> train_y, double center)
    : params_(params), t_(std::move(train_t)), y_(std::move(train_y)),
      center_(center) {
  params_.validate();
  if (t_.size() != y_.size()) {
    throw std::invalid_argument("GprModel: times/targets length mismatch");
  }
  if (t_.empty()) return;  // prior-only model
  llt_ = factorize(params_, t_, center_, jitter_);
  const Eigen::Map<const Eigen::VectorXd> y(y_.data(),
                                            static_cast<Eigen::Index>(y_.size()));
  alpha_ = llt_.solve(y);
  lml_ = lml_from_llt(llt_, y, alpha_);
}

void GprModel::predict(std::span<const double> t,
                       std::vector<double>& mean_out,
                       std::vector<double>& sd_out) const {
  const std::size_t m = t.size();
  mean_out.assign(m, 0.0);
  sd_out.assign(m, 0.0);
  if (m == 0) return;

  if (t_.empty()) {
    for (std::size_t i = 0; i < m; ++i) {
      sd_out[i] = std::sqrt(kernel_value(params_, t[i], t[i], center_) +
                            params_.noise_variance);
    }
    return;
  }

  const Eigen::MatrixXd ks = cross_gram_matrix(params_, t, t_, center_);
  const Eigen::VectorXd mu = ks * alpha_;
  // v = L^-1 ks^T; explained variance per column is its squared norm.
  const Eigen::MatrixXd v =
      llt_.matrixL().solve(ks.transpose());
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index ei = static_cast<Eigen::Index>(i);
    const double kss = kernel_value(params_, t[i], t[i], center_);
    const double explained = v.col(ei).squaredNorm();
    const double latent = std::max(kss - explained, 0.0);
    mean_out[i] = mu(ei);
    sd_out[i] = std::sqrt(latent + params_.noise_variance);
  }
}

double log_marginal_likelihood(const KernelParams& params,
                               std::span<const double> t,
                               std::span<const double> y, double center) {
  params.validate();
  if (t.size() != y.size()) {
    throw std::invalid_argument(
        "log_marginal_likelihood: times/targets length mismatch");
  }
  if (t.empty()) {
    throw std::domain_error("log_marginal_likelihood: empty data");
  }
  double jitter = 0.0;
  const Eigen::LLT<Eigen::MatrixXd> llt = factorize(params, t, center, jitter);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(),
                                             static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXd alpha = llt.solve(yv);
  return lml_from_llt(llt, yv, alpha);
}

double log_marginal_likelihood(const GprModel& model,
                               const GduHistory& history) {
  validate_history(history);
  const std::vector<double> t = history_times(history);
  return log_marginal_likelihood(model.params(), t, history.values,
                                 model.center());
}

GprModel fit_gpr(const GduHistory& history, const GprFitConfig& config) {
  validate_history(history);
  if (config.subsample_stride < 1) {
    throw std::invalid_argument("fit_gpr: subsample stride must be >= 1");
  }
  if (config.n_starts < 1 || config.max_iterations < 1) {
    throw std::invalid_argument("fit_gpr: need at least one start/iteration");
  }
  config.lower.validate();
  config.upper.validate();

  const std::vector<double> all_t = history_times(history);
  std::vector<double> t, y;
  for (std::size_t i = 0; i < history.size();
       i += static_cast<std::size_t>(config.subsample_stride)) {
    t.push_back(all_t[i]);
    y.push_back(history.values[i]);
  }
  if (t.size() < 2) {
    throw std::domain_error(
        "fit_gpr: need at least two observations after subsampling");
  }
  const double center =
      0.5 * (t.front() + t.back());

  ParamVec lo_log, hi_log;
  {
    const ParamVec lo = to_array(config.lower), hi = to_array(config.upper);
    for (int d = 0; d < kNumParams; ++d) {
      if (!(lo[d] < hi[d])) {
        throw std::invalid_argument("fit_gpr: empty parameter box");
      }
      lo_log[d] = std::log(lo[d]);
      hi_log[d] = std::log(hi[d]);
    }
  }

  const auto objective = [&](const ParamVec& x) {
    ParamVec clamped = x;
    double penalty = 0.0;
    for (int d = 0; d < kNumParams; ++d) {
      const double c = std::clamp(x[d], lo_log[d], hi_log[d]);
      const double excess = x[d] - c;
      penalty += 100.0 * excess * excess;
      clamped[d] = c;
    }
    ParamVec nat;
    for (int d = 0; d < kNumParams; ++d) nat[d] = std::exp(clamped[d]);
    try {
      return -log_marginal_likelihood(from_array(nat), t, y, center) + penalty;
    } catch (const FitError&) {
      return 1e30;
    }
  };

  // Data-driven first start: split the empirical variance across the
  // components and anchor the bias at the squared mean.
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  var /= static_cast<double>(y.size() > 1 ? y.size() - 1 : 1);
  var = std::max(var, 1e-8);

  std::vector<ParamVec> starts;
  {
    KernelParams h;
    h.periodic_variance = 0.5 * var;
    h.periodic_lengthscale = 1.0;
    h.linear_variance = 0.01 * var;
    h.bias_variance = std::max(mean * mean, 1e-4);
    h.noise_variance = 0.25 * var;
    ParamVec s = to_array(h);
    for (int d = 0; d < kNumParams; ++d) {
      s[d] = std::clamp(std::log(s[d]), lo_log[d], hi_log[d]);
    }
    starts.push_back(s);
  }
  Rng rng = make_rng(derive_seed(config.seed, 0x6f17));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  while (starts.size() < static_cast<std::size_t>(config.n_starts)) {
    ParamVec s;
    for (int d = 0; d < kNumParams; ++d) {
      s[d] = lo_log[d] + u01(rng) * (hi_log[d] - lo_log[d]);
    }
    starts.push_back(s);
  }

  SimplexResult best;
  for (const ParamVec& s : starts) {
    const SimplexResult r = nelder_mead(objective, s, 0.5,
                                        config.max_iterations,
                                        config.tolerance);
    if (r.f < best.f) best = r;
  }
  if (!(best.f < 1e29)) {
    throw FitError("fit_gpr: no start produced a usable factorization");
  }

  ParamVec x = best.x;
  for (int d = 0; d < kNumParams; ++d) {
    x[d] = std::exp(std::clamp(x[d], lo_log[d], hi_log[d]));
  }
  return GprModel(from_array(x), std::move(t), std::move(y), center);
}

GduForecast predict_forecast(const GprModel& model,
                             const HorizonSpec& horizon) {
  if (horizon.n_days <= 0) {
    throw std::domain_error("predict_forecast: horizon must be positive");
  }
  const std::int64_t start = model_day(horizon.start);
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(horizon.n_days));
  for (int k = 0; k < horizon.n_days; ++k) {
    t.push_back(years_from_model_day(start + k));
  }
  GduForecast f;
  f.horizon_start = horizon.start;
  model.predict(t, f.mean, f.sd);
  return f;
}

GduForecast naive_forecast(const GduHistory& history,
                           const HorizonSpec& horizon) {
  validate_history(history);
  if (horizon.n_days <= 0) {
    throw std::domain_error("naive_forecast: horizon must be positive");
  }
  std::map<int, std::vector<double>> by_doy;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const CivilDate d = date_from_model_day(history.days[i]);
    by_doy[day_of_year(d)].push_back(history.values[i]);
  }

  GduForecast f;
  f.horizon_start = horizon.start;
  const std::int64_t start = model_day(horizon.start);
  for (int k = 0; k < horizon.n_days; ++k) {
    const CivilDate d = date_from_model_day(start + k);
    const auto it = by_doy.find(day_of_year(d));
    if (it == by_doy.end() || it->second.size() < 2) {
      throw std::domain_error(
          "naive_forecast: fewer than two observations for " +
          format_iso_date(d));
    }
    const std::vector<double>& xs = it->second;
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    f.mean.push_back(mean);
    f.sd.push_back(std::sqrt(ss / (n - 1.0)));
  }
  return f;
}

std::vector<ResidualPoint> residual_diagnostics(const GprModel& model,
                                                const GduHistory& history) {
  validate_history(history);
  const std::vector<double> t = history_times(history);
  std::vector<double> mean, sd;
  model.predict(t, mean, sd);
  std::vector<ResidualPoint> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.push_back({t[i], history.values[i] - mean[i], sd[i]});
  }
  return out;
}

}  // namespace harvest
