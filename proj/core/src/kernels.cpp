#include "harvest/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harvest {

void KernelParams::validate() const {
  const double v[] = {periodic_variance, periodic_lengthscale,
                      linear_variance, bias_variance, noise_variance};
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument(
          "KernelParams: all parameters must be positive and finite");
    }
  }
}

double kernel_value(const KernelParams& p, double t1, double t2,
                    double center) {
  const double s = std::sin(std::numbers::pi * std::abs(t1 - t2));
  const double periodic =
      p.periodic_variance *
      std::exp(-2.0 * s * s / (p.periodic_lengthscale * p.periodic_lengthscale));
  const double linear = p.linear_variance * (t1 - center) * (t2 - center);
  return periodic + linear + p.bias_variance;
}

Eigen::MatrixXd gram_matrix(const KernelParams& p, std::span<const double> t,
                            double center) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel_value(p, t[static_cast<std::size_t>(i)],
                                    t[static_cast<std::size_t>(j)], center);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Eigen::MatrixXd cross_gram_matrix(const KernelParams& p,
                                  std::span<const double> t_pred,
                                  std::span<const double> t_train,
                                  double center) {
  const Eigen::Index m = static_cast<Eigen::Index>(t_pred.size());
  const Eigen::Index n = static_cast<Eigen::Index>(t_train.size());
  Eigen::MatrixXd k(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      k(i, j) = kernel_value(p, t_pred[static_cast<std::size_t>(i)],
                             t_train[static_cast<std::size_t>(j)], center);
    }
  }
  return k;
}

}  // namespace harvest
