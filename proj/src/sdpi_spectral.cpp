#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "sdpi/sdpi.hpp"
#include "sdpi_internal.hpp"

namespace sdpi {

namespace {

Eigen::MatrixXd correlation_matrix(const ProbabilityMeasure& mu,
                                   const MarkovKernel& kernel,
                                   const std::vector<std::size_t>& supp_x,
                                   const std::vector<std::size_t>& supp_y,
                                   const ProbabilityMeasure& out) {
  Eigen::MatrixXd q(supp_x.size(), supp_y.size());
  for (std::size_t i = 0; i < supp_x.size(); ++i) {
    for (std::size_t j = 0; j < supp_y.size(); ++j) {
      q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::sqrt(mu[supp_x[i]]) * kernel(supp_x[i], supp_y[j]) /
          std::sqrt(out[supp_y[j]]);
    }
  }
  return q;
}

}  // namespace

SdpiEstimate eta_chi2_dd(const ProbabilityMeasure& mu, const MarkovKernel& kernel) {
  if (mu.size() != kernel.input_size()) {
    throw DimensionMismatch("measure size does not match kernel input size");
  }
  const std::vector<std::size_t> supp_x = mu.support();
  if (supp_x.size() < 2) {
    throw DegenerateMeasure("support must contain at least 2 points");
  }
  const ProbabilityMeasure out = apply_kernel(mu, kernel);
  const std::vector<std::size_t> supp_y = out.support();

  // Q(x, y) = sqrt(mu(x)) K(y|x) / sqrt(mu K(y)); its singular values are the
  // maximal-correlation spectrum, with sigma_1 = 1 achieved by the constants.
  const Eigen::MatrixXd q = correlation_matrix(mu, kernel, supp_x, supp_y, out);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
  const auto& sigma = svd.singularValues();
  double second = sigma.size() > 1 ? sigma(1) : 0.0;

  SdpiEstimate e;
  e.value = std::min(1.0, std::max(0.0, second * second));
  e.lower_bound = e.value;
  e.upper_bound = e.value;
  e.method = Method::Spectral;
  e.certificate = std::monostate{};
  e.certificate_kind = DivergenceKind::chi_squared();
  return e;
}

namespace detail {

std::vector<double> chi2_direction(const ProbabilityMeasure& mu,
                                   const MarkovKernel& kernel) {
  const std::vector<std::size_t> supp_x = mu.support();
  const ProbabilityMeasure out = apply_kernel(mu, kernel);
  const std::vector<std::size_t> supp_y = out.support();
  if (supp_x.size() < 2 || supp_y.size() < 2) return {};
  const Eigen::MatrixXd q = correlation_matrix(mu, kernel, supp_x, supp_y, out);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q, Eigen::ComputeThinU);
  if (svd.matrixU().cols() < 2) return {};
  std::vector<double> h(mu.size(), 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < supp_x.size(); ++i) {
    h[supp_x[i]] = std::sqrt(mu[supp_x[i]]) *
                   svd.matrixU()(static_cast<Eigen::Index>(i), 1);
    scale = std::max(scale, std::abs(h[supp_x[i]]) / mu[supp_x[i]]);
  }
  if (scale == 0.0) return {};
  for (auto& v : h) v /= scale;  // now mu + t h >= 0 for t in [-1, 1]
  return h;
}

}  // namespace detail

}  // namespace sdpi
