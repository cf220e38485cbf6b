#include "sdpi/mixing.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sdpi {

namespace {

constexpr double kStationaryResidualTol = 1e-13;

double residual_inf(const ProbabilityMeasure& pi, const MarkovKernel& kernel) {
  const ProbabilityMeasure next = apply_kernel(pi, kernel);
  double worst = 0.0;
  for (std::size_t x = 0; x < pi.size(); ++x) {
    worst = std::max(worst, std::abs(next[x] - pi[x]));
  }
  return worst;
}

std::optional<ProbabilityMeasure> stationary_direct(const MarkovKernel& kernel) {
  const auto n = static_cast<Eigen::Index>(kernel.input_size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    for (Eigen::Index x = 0; x < n; ++x) {
      a(y, x) = kernel(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
    }
    a(y, y) -= 1.0;
  }
  // Replace the last balance equation with the normalization constraint.
  for (Eigen::Index x = 0; x < n; ++x) a(n - 1, x) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::VectorXd pi = a.partialPivLu().solve(b);

  std::vector<double> w(kernel.input_size());
  for (Eigen::Index x = 0; x < n; ++x) {
    if (!(pi(x) > 0.0)) return std::nullopt;  // ergodic chains are positive
    w[static_cast<std::size_t>(x)] = pi(x);
  }
  try {
    return ProbabilityMeasure::from_weights(std::move(w), /*renormalize=*/true);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<ProbabilityMeasure> stationary_power(const MarkovKernel& kernel) {
  ProbabilityMeasure pi = ProbabilityMeasure::uniform(kernel.input_size());
  for (int iter = 0; iter < 1000000; ++iter) {
    const ProbabilityMeasure next = apply_kernel(pi, kernel);
    double delta = 0.0;
    for (std::size_t x = 0; x < pi.size(); ++x) {
      delta = std::max(delta, std::abs(next[x] - pi[x]));
    }
    pi = next;
    if (delta <= 1e-14) return pi;
  }
  return std::nullopt;
}

// d(nu)/d(pi) - 1 deviation in L^alpha(pi).
double deviation(const ProbabilityMeasure& nu, const ProbabilityMeasure& pi,
                 double alpha) {
  double sum = 0.0;
  for (std::size_t x = 0; x < pi.size(); ++x) {
    if (pi[x] == 0.0) {
      if (nu[x] > 0.0) {
        throw AbsoluteContinuityViolation("start must be dominated by pi");
      }
      continue;
    }
    sum += pi[x] * std::pow(std::abs(nu[x] / pi[x] - 1.0), alpha);
  }
  return std::pow(sum, 1.0 / alpha);
}

void check_chain(const ChainSpec& spec) {
  if (spec.kernel.input_size() != spec.kernel.output_size()) {
    throw DimensionMismatch("chain kernel must be square");
  }
  if (spec.start.size() != spec.kernel.input_size()) {
    throw DimensionMismatch("start distribution does not match the kernel");
  }
  if (spec.steps < 0) throw ParameterOutOfRange("steps must be nonnegative");
}

}  // namespace

bool is_ergodic(const MarkovKernel& kernel) {
  if (kernel.input_size() != kernel.output_size()) return false;
  const std::size_t n = kernel.input_size();
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) base[x][y] = kernel(x, y) > 0.0;
  }
  std::vector<std::vector<bool>> power = base;
  const std::size_t cap = n * n;
  for (std::size_t m = 1; m <= cap; ++m) {
    bool all = true;
    for (const auto& row : power) {
      for (bool v : row) {
        if (!v) {
          all = false;
          break;
        }
      }
      if (!all) break;
    }
    if (all) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!power[x][k]) continue;
        for (std::size_t y = 0; y < n; ++y) {
          if (base[k][y]) next[x][y] = true;
        }
      }
    }
    power.swap(next);
  }
  return false;
}

ProbabilityMeasure stationary(const MarkovKernel& kernel) {
  if (!is_ergodic(kernel)) {
    throw NotErgodic("kernel does not induce an aperiodic irreducible chain");
  }
  if (auto direct = stationary_direct(kernel);
      direct.has_value() && residual_inf(*direct, kernel) <= kStationaryResidualTol) {
    return *direct;
  }
  if (auto iterated = stationary_power(kernel);
      iterated.has_value() &&
      residual_inf(*iterated, kernel) <= kStationaryResidualTol) {
    return *iterated;
  }
  throw NoConvergence("stationary distribution did not reach residual 1e-13");
}

std::vector<double> trajectory_dev(const ChainSpec& spec,
                                   const ProbabilityMeasure& pi, double alpha) {
  check_chain(spec);
  if (!(alpha >= 1.0)) throw ParameterOutOfRange("norm order must be >= 1");
  std::vector<double> devs;
  devs.reserve(static_cast<std::size_t>(spec.steps) + 1);
  ProbabilityMeasure nu = spec.start;
  for (int n = 0; n <= spec.steps; ++n) {
    devs.push_back(deviation(nu, pi, alpha));
    if (n < spec.steps) nu = apply_kernel(nu, spec.kernel);
  }
  return devs;
}

std::vector<double> linear_bound(const ChainSpec& spec,
                                 const ProbabilityMeasure& pi, double alpha,
                                 double rate) {
  check_chain(spec);
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw RateOutOfRange("geometric rate must be in [0, 1]");
  }
  const double dev0 = deviation(spec.start, pi, alpha);
  const double base = alpha == 2.0 ? dev0 * dev0 : dev0;
  std::vector<double> bounds;
  bounds.reserve(static_cast<std::size_t>(spec.steps) + 1);
  double factor = 1.0;
  for (int n = 0; n <= spec.steps; ++n) {
    bounds.push_back(factor * base);
    factor *= rate;
  }
  return bounds;
}

std::vector<double> nonlinear_bound(const ChainSpec& spec,
                                    const ProbabilityMeasure& pi, double alpha,
                                    double eta) {
  check_chain(spec);
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw RateOutOfRange("contraction constant must be in [0, 1]");
  }
  // ||d nu/d pi||_{L^alpha(pi)}, finite iff nu << pi.
  double norm_pow = 0.0;
  for (std::size_t x = 0; x < pi.size(); ++x) {
    if (pi[x] == 0.0) {
      if (spec.start[x] > 0.0) {
        throw AbsoluteContinuityViolation("start must be dominated by pi");
      }
      continue;
    }
    norm_pow += pi[x] * std::pow(spec.start[x] / pi[x], alpha);
  }
  std::vector<double> bounds;
  bounds.reserve(static_cast<std::size_t>(spec.steps) + 1);
  double exponent = 1.0;
  for (int n = 0; n <= spec.steps; ++n) {
    if (alpha == 2.0) {
      bounds.push_back(std::pow(norm_pow, exponent) - 1.0);
    } else {
      bounds.push_back(std::pow(std::pow(norm_pow, 1.0 / alpha), exponent));
    }
    exponent *= eta;
  }
  return bounds;
}

MixingReport compare_bounds(const ChainSpec& spec, const SearchBudget& budget) {
  check_chain(spec);
  const ProbabilityMeasure pi = stationary(spec.kernel);

  MixingReport report{pi, 0.0, 0.0, 0.0, {}, std::nullopt};
  report.eta_chi2 = eta_chi2_dd(pi, spec.kernel).value;
  report.eta_2 =
      eta_dd(pi, spec.kernel, DivergenceKind::renyi(AlphaOrder::finite(2.0)),
             budget)
          .value;
  report.gamma_alpha = std::sqrt(report.eta_chi2);

  const std::vector<double> dev = trajectory_dev(spec, pi, 2.0);
  const std::vector<double> lin = linear_bound(spec, pi, 2.0, report.eta_chi2);
  const std::vector<double> nonlin = nonlinear_bound(spec, pi, 2.0, report.eta_2);

  report.per_step.reserve(dev.size());
  for (std::size_t i = 0; i < dev.size(); ++i) {
    MixingStep step;
    step.n = static_cast<int>(i);
    step.true_dev_sq = dev[i] * dev[i];
    step.linear_bound = lin[i];
    step.nonlinear_bound = nonlin[i];
    report.per_step.push_back(step);
    if (!report.crossing_index.has_value() && nonlin[i] > lin[i]) {
      report.crossing_index = step.n;
    }
  }
  return report;
}

}  // namespace sdpi
