#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "harvest/calendar.hpp"
#include "harvest/kernels.hpp"
#include "harvest/types.hpp"

namespace harvest {

// Observed daily GDUs for one site, on the model calendar (Feb 29 already
// dropped), strictly increasing in time.
struct GduHistory {
  int site_id = 0;
  std::vector<std::int64_t> days;  // model-day offsets
  std::vector<double> values;

  std::size_t size() const { return days.size(); }
};

struct HorizonSpec {
  CivilDate start;
  int n_days = 0;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gaussian-process regressor over normalized time, conditioned on a (possibly
// subsampled) training set. Construction factorizes the noisy Gram matrix,
// escalating a diagonal jitter until the Cholesky succeeds.
class GprModel {
 public:
  GprModel(KernelParams params, std::vector<double> train_t,
           std::vector<double> train_y, double center);

  const KernelParams& params() const { return params_; }
  std::span<const double> train_t() const { return t_; }
  std::span<const double> train_y() const { return y_; }
  double center() const { return center_; }
  double jitter() const { return jitter_; }

  // Marginal log-density of the training targets under the kernel.
  double log_marginal_likelihood() const { return lml_; }

  // Posterior mean and standard deviation at the given times; the standard
  // deviation includes the observation noise, so it never drops below
  // sqrt(noise_variance).
  void predict(std::span<const double> t, std::vector<double>& mean_out,
               std::vector<double>& sd_out) const;

 private:
  KernelParams params_;
  std::vector<double> t_, y_;
  double center_ = 0.0;
  double jitter_ = 0.0;
  double lml_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
};

struct GprFitConfig {
  int subsample_stride = 3;  // keep every k-th observation for training
  int n_starts = 4;          // multi-start count for the simplex search
  int max_iterations = 400;  // per start
  double tolerance = 1e-7;   // objective spread at which a start stops
  std::uint64_t seed = 0;    // seeds the restart draws
  KernelParams lower{1e-4, 1e-2, 1e-8, 1e-6, 1e-6};
  KernelParams upper{1e4, 1e2, 1e2, 1e4, 1e3};
};

// Maximizes the log marginal likelihood over the five kernel parameters with
// a multi-start Nelder-Mead search in log-parameter space, bounded by the
// config box. The linear-kernel center is pinned at the midpoint of the
// training times.
GprModel fit_gpr(const GduHistory& history, const GprFitConfig& config = {});

// Marginal log-density of targets y at times t under the given kernel;
// factorized fresh, independent of any fitted model state.
double log_marginal_likelihood(const KernelParams& params,
                               std::span<const double> t,
                               std::span<const double> y, double center);

// Same quantity for a fitted model evaluated over a full history (not just
// the subsample it was trained on).
double log_marginal_likelihood(const GprModel& model,
                               const GduHistory& history);

// Daily predictive mean and std over the horizon.
GduForecast predict_forecast(const GprModel& model, const HorizonSpec& horizon);

// Calendar-day climatology: per (month, day), mean and sample standard
// deviation across years of history. Every horizon day needs at least two
// observations.
GduForecast naive_forecast(const GduHistory& history,
                           const HorizonSpec& horizon);

struct ResidualPoint {
  double t = 0.0;         // normalized time of the observation
  double residual = 0.0;  // observed minus posterior mean
  double sd = 0.0;        // predictive std at the observation
};

// Residuals of a fitted model over a history (typically the one it was
// trained on) for calibration checks.
std::vector<ResidualPoint> residual_diagnostics(const GprModel& model,
                                                const GduHistory& history);

}  // namespace harvest
