#include "sdpi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sdpi {

namespace {

void validate_nonnegative(const std::vector<double>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) {
      throw NegativeWeight("weight at index " + std::to_string(i) +
                           " is negative or NaN");
    }
  }
}

double total(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

}  // namespace

ProbabilityMeasure ProbabilityMeasure::from_weights(std::vector<double> weights,
                                                    bool renormalize) {
  validate_nonnegative(weights);
  const double sum = total(weights);
  if (sum <= 0.0) throw ZeroTotalMass("weights sum to zero");
  if (renormalize) {
    for (auto& v : weights) v /= sum;
  } else if (std::abs(sum - 1.0) > kNormalizationTol) {
    throw NotNormalized("weights sum to " + std::to_string(sum));
  }
  return ProbabilityMeasure(std::move(weights));
}

ProbabilityMeasure ProbabilityMeasure::uniform(std::size_t n) {
  if (n == 0) throw ZeroTotalMass("empty alphabet");
  return from_weights(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                      /*renormalize=*/true);
}

ProbabilityMeasure ProbabilityMeasure::dirac(std::size_t n, std::size_t at) {
  if (at >= n) throw DimensionMismatch("dirac atom out of range");
  std::vector<double> w(n, 0.0);
  w[at] = 1.0;
  return from_weights(std::move(w));
}

std::vector<std::size_t> ProbabilityMeasure::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) s.push_back(i);
  }
  return s;
}

std::size_t ProbabilityMeasure::support_size() const {
  std::size_t n = 0;
  for (double v : weights_) n += (v > 0.0);
  return n;
}

bool ProbabilityMeasure::has_full_support() const {
  return support_size() == weights_.size();
}

double ProbabilityMeasure::mass(const std::vector<std::size_t>& event) const {
  double m = 0.0;
  for (std::size_t x : event) {
    if (x >= weights_.size()) throw DimensionMismatch("event index out of range");
    m += weights_[x];
  }
  return m;
}

MarkovKernel MarkovKernel::from_rows(std::vector<std::vector<double>> rows,
                                     bool renormalize) {
  if (rows.empty() || rows[0].empty()) {
    throw DimensionMismatch("kernel needs at least one row and one column");
  }
  const std::size_t cols = rows[0].size();
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != cols) {
      throw DimensionMismatch("ragged kernel row " + std::to_string(x));
    }
    validate_nonnegative(rows[x]);
    const double sum = total(rows[x]);
    if (sum <= 0.0) throw ZeroTotalMass("kernel row " + std::to_string(x) + " is zero");
    if (renormalize) {
      for (auto& v : rows[x]) v /= sum;
    } else if (std::abs(sum - 1.0) > kNormalizationTol) {
      throw NotNormalized("kernel row " + std::to_string(x) + " sums to " +
                          std::to_string(sum));
    }
  }
  return MarkovKernel(std::move(rows));
}

ProbabilityMeasure MarkovKernel::row_measure(std::size_t x) const {
  return ProbabilityMeasure::from_weights(rows_[x], /*renormalize=*/true);
}

AlphaOrder AlphaOrder::infinity() {
  return AlphaOrder(Tag::Infinity, std::numeric_limits<double>::infinity());
}

AlphaOrder AlphaOrder::finite(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterOutOfRange("finite Renyi order must be positive");
  }
  if (value == 1.0) return one();
  return AlphaOrder(Tag::Finite, value);
}

AlphaOrder AlphaOrder::of(double value) {
  if (std::isnan(value) || value < 0.0) {
    throw ParameterOutOfRange("Renyi order must be in [0, infinity]");
  }
  if (value == 0.0) return zero();
  if (value == 1.0) return one();
  if (std::isinf(value)) return infinity();
  return finite(value);
}

ProbabilityMeasure apply_kernel(const ProbabilityMeasure& mu,
                                const MarkovKernel& kernel) {
  if (mu.size() != kernel.input_size()) {
    throw DimensionMismatch("measure size does not match kernel input size");
  }
  std::vector<double> out(kernel.output_size(), 0.0);
  for (std::size_t x = 0; x < mu.size(); ++x) {
    const double w = mu[x];
    if (w == 0.0) continue;
    const auto& row = kernel.row(x);
    for (std::size_t y = 0; y < row.size(); ++y) out[y] += w * row[y];
  }
  return ProbabilityMeasure::from_weights(std::move(out), /*renormalize=*/true);
}

DualKernel dual_kernel(const ProbabilityMeasure& mu, const MarkovKernel& kernel) {
  if (mu.size() != kernel.input_size()) {
    throw DimensionMismatch("measure size does not match kernel input size");
  }
  const ProbabilityMeasure out = apply_kernel(mu, kernel);
  std::vector<std::size_t> out_support = out.support();
  std::vector<std::vector<double>> rows;
  rows.reserve(out_support.size());
  for (std::size_t y : out_support) {
    std::vector<double> row(mu.size(), 0.0);
    for (std::size_t x = 0; x < mu.size(); ++x) {
      row[x] = mu[x] * kernel(x, y) / out[y];
    }
    rows.push_back(std::move(row));
  }
  return DualKernel{MarkovKernel::from_rows(std::move(rows), /*renormalize=*/true),
                    std::move(out_support)};
}

ProbabilityMeasure restrict_measure(const ProbabilityMeasure& mu,
                                    const std::vector<std::size_t>& event) {
  const double m = mu.mass(event);
  if (m <= 0.0) throw ZeroMassEvent("restriction event has zero mass");
  std::vector<double> w(mu.size(), 0.0);
  for (std::size_t x : event) w[x] = mu[x] / m;
  return ProbabilityMeasure::from_weights(std::move(w), /*renormalize=*/true);
}

MarkovKernel tensor(const MarkovKernel& first, const MarkovKernel& second) {
  const std::size_t nx1 = first.input_size(), ny1 = first.output_size();
  const std::size_t nx2 = second.input_size(), ny2 = second.output_size();
  std::vector<std::vector<double>> rows(nx1 * nx2,
                                        std::vector<double>(ny1 * ny2, 0.0));
  for (std::size_t x1 = 0; x1 < nx1; ++x1) {
    for (std::size_t x2 = 0; x2 < nx2; ++x2) {
      auto& row = rows[x1 * nx2 + x2];
      for (std::size_t y1 = 0; y1 < ny1; ++y1) {
        const double a = first(x1, y1);
        if (a == 0.0) continue;
        for (std::size_t y2 = 0; y2 < ny2; ++y2) {
          row[y1 * ny2 + y2] = a * second(x2, y2);
        }
      }
    }
  }
  return MarkovKernel::from_rows(std::move(rows), /*renormalize=*/true);
}

MarkovKernel bsc(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) {
    throw ParameterOutOfRange("BSC crossover must be in [0, 1]");
  }
  return MarkovKernel::from_rows(
      {{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

MarkovKernel z_channel(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ParameterOutOfRange("Z-channel parameter must be in [0, 1]");
  }
  return MarkovKernel::from_rows({{1.0, 0.0}, {1.0 - lambda, lambda}});
}

MarkovKernel identity_kernel(std::size_t n) {
  if (n == 0) throw DimensionMismatch("identity kernel needs n >= 1");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return MarkovKernel::from_rows(std::move(rows));
}

MarkovKernel rank_one(const ProbabilityMeasure& row) {
  std::vector<std::vector<double>> rows(row.size(), row.weights());
  return MarkovKernel::from_rows(std::move(rows));
}

}  // namespace sdpi
