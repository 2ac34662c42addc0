#pragma once

#include <Eigen/Dense>
#include <span>

namespace harvest {

// Covariance of the seasonal GDU model: an annual periodic component plus a
// slow linear drift, a constant bias, and white observation noise. Times are
// in model years, so the period is pinned at exactly 1.
struct KernelParams {
  double periodic_variance = 1.0;
  double periodic_lengthscale = 1.0;
  double linear_variance = 1.0;
  double bias_variance = 1.0;
  double noise_variance = 1.0;

  void validate() const;
};

// Noise-free covariance k(t1, t2); the white-noise term enters only on the
// Gram diagonal of observed points.
double kernel_value(const KernelParams& p, double t1, double t2,
                    double center);

// Symmetric noise-free Gram matrix over the given times.
Eigen::MatrixXd gram_matrix(const KernelParams& p, std::span<const double> t,
                            double center);

// Cross-covariance between prediction times (rows) and training times
// (columns).
Eigen::MatrixXd cross_gram_matrix(const KernelParams& p,
                                  std::span<const double> t_pred,
                                  std::span<const double> t_train,
                                  double center);

}  // namespace harvest
