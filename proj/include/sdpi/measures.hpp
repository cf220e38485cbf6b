#ifndef SDPI_MEASURES_HPP
#define SDPI_MEASURES_HPP

#include <cstddef>
#include <vector>

#include "sdpi/errors.hpp"

namespace sdpi {

// Absolute tolerance on "sums to one" at construction time. Operations that
// produce measures/kernels renormalize their results to kill rounding drift.
inline constexpr double kNormalizationTol = 1e-12;

// A probability measure on a finite alphabet. Immutable after construction.
// Support is defined by exact comparison with zero: entries meant to be zero
// must be literal zeros, since several kernel-structure results are
// discontinuous in the entries.
class ProbabilityMeasure {
 public:
  static ProbabilityMeasure from_weights(std::vector<double> weights,
                                         bool renormalize = false);
  static ProbabilityMeasure uniform(std::size_t n);
  static ProbabilityMeasure dirac(std::size_t n, std::size_t at);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t x) const { return weights_[x]; }
  const std::vector<double>& weights() const { return weights_; }

  std::vector<std::size_t> support() const;
  std::size_t support_size() const;
  bool has_full_support() const;
  // Total mass of an index set (indices must be in range).
  double mass(const std::vector<std::size_t>& event) const;

 private:
  explicit ProbabilityMeasure(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

// A row-stochastic matrix K(y|x): rows_[x][y] is the probability of output y
// given input x. Immutable after construction.
class MarkovKernel {
 public:
  static MarkovKernel from_rows(std::vector<std::vector<double>> rows,
                                bool renormalize = false);

  std::size_t input_size() const { return rows_.size(); }
  std::size_t output_size() const { return rows_.empty() ? 0 : rows_[0].size(); }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  const std::vector<double>& row(std::size_t x) const { return rows_[x]; }
  ProbabilityMeasure row_measure(std::size_t x) const;

 private:
  explicit MarkovKernel(std::vector<std::vector<double>> r)
      : rows_(std::move(r)) {}
  std::vector<std::vector<double>> rows_;
};

// Extended order parameter for the Renyi family: 0, 1 and infinity are
// distinguished values, everything else is a finite positive order != 1.
class AlphaOrder {
 public:
  enum class Tag { Zero, One, Infinity, Finite };

  static AlphaOrder zero() { return AlphaOrder(Tag::Zero, 0.0); }
  static AlphaOrder one() { return AlphaOrder(Tag::One, 1.0); }
  static AlphaOrder infinity();
  static AlphaOrder finite(double value);
  // Classifies a plain number into the right variant.
  static AlphaOrder of(double value);

  Tag tag() const { return tag_; }
  bool is_zero() const { return tag_ == Tag::Zero; }
  bool is_one() const { return tag_ == Tag::One; }
  bool is_infinite() const { return tag_ == Tag::Infinity; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  // Numeric value; +infinity for the Infinity variant.
  double value() const { return value_; }

 private:
  AlphaOrder(Tag t, double v) : tag_(t), value_(v) {}
  Tag tag_;
  double value_;
};

// mu K(y) = sum_x K(y|x) mu(x).
ProbabilityMeasure apply_kernel(const ProbabilityMeasure& mu,
                                const MarkovKernel& kernel);

// Reverse channel for the pair (mu, K). Rows are indexed by the support of
// mu K (outputs y with (mu K)(y) = 0 are omitted); output_support lists the
// original y index of each row.
struct DualKernel {
  MarkovKernel kernel;
  std::vector<std::size_t> output_support;
};
DualKernel dual_kernel(const ProbabilityMeasure& mu, const MarkovKernel& kernel);

// mu conditioned on the event: 1_A(x) mu(x) / mu(A).
ProbabilityMeasure restrict_measure(const ProbabilityMeasure& mu,
                                    const std::vector<std::size_t>& event);

// Product channel with row-major index pairing: joint input x1*|X2|+x2,
// joint output y1*|Y2|+y2.
MarkovKernel tensor(const MarkovKernel& first, const MarkovKernel& second);

// Named channels.
MarkovKernel bsc(double crossover);
MarkovKernel z_channel(double lambda);
MarkovKernel identity_kernel(std::size_t n);
MarkovKernel rank_one(const ProbabilityMeasure& row);

}  // namespace sdpi

#endif  // SDPI_MEASURES_HPP
