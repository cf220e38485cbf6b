#ifndef SDPI_DIVERGENCES_HPP
#define SDPI_DIVERGENCES_HPP

#include <string>

#include "sdpi/measures.hpp"

namespace sdpi {

// Extended nonnegative real; +infinity is a first-class value, not an error.
using DivergenceValue = double;

// The divergence family computed by this module. Hellinger order 1 is
// degenerate and is routed to KL at construction.
class DivergenceKind {
 public:
  enum class Family { Renyi, KL, TotalVariation, Hellinger, ChiSquared, LInf };

  static DivergenceKind renyi(AlphaOrder order) {
    return DivergenceKind(Family::Renyi, order);
  }
  static DivergenceKind kl() { return DivergenceKind(Family::KL, AlphaOrder::one()); }
  static DivergenceKind total_variation() {
    return DivergenceKind(Family::TotalVariation, AlphaOrder::one());
  }
  static DivergenceKind hellinger(double order);
  static DivergenceKind chi_squared() {
    return DivergenceKind(Family::ChiSquared, AlphaOrder::finite(2.0));
  }
  static DivergenceKind linf() {
    return DivergenceKind(Family::LInf, AlphaOrder::infinity());
  }

  Family family() const { return family_; }
  AlphaOrder order() const { return order_; }
  std::string name() const;

 private:
  DivergenceKind(Family f, AlphaOrder a) : family_(f), order_(a) {}
  Family family_;
  AlphaOrder order_;
};

// Renyi divergence of the given order, computed in the log domain.
// Conventions: for finite alpha > 1 and alpha = infinity the value is
// +infinity unless nu << mu; for alpha in (0,1) terms where either measure
// vanishes contribute zero and the value is finite unless the supports are
// disjoint; alpha = 1 is KL with 0 log 0 = 0; alpha = 0 is -log mu(supp nu).
DivergenceValue renyi_divergence(const ProbabilityMeasure& nu,
                                 const ProbabilityMeasure& mu, AlphaOrder alpha);

DivergenceValue kl_divergence(const ProbabilityMeasure& nu,
                              const ProbabilityMeasure& mu);

// Half the L1 distance, so values lie in [0, 1].
DivergenceValue total_variation(const ProbabilityMeasure& nu,
                                const ProbabilityMeasure& mu);

// (sum nu^a mu^(1-a) - 1) / (a - 1) with the same zero conventions as the
// Renyi divergence. Order 2 is the chi-squared divergence.
DivergenceValue hellinger_divergence(const ProbabilityMeasure& nu,
                                     const ProbabilityMeasure& mu, double order);

DivergenceValue chi_squared(const ProbabilityMeasure& nu,
                            const ProbabilityMeasure& mu);

// max_x nu(x)/mu(x) - 1; +infinity unless nu << mu.
DivergenceValue linf_divergence(const ProbabilityMeasure& nu,
                                const ProbabilityMeasure& mu);

// Dispatcher over DivergenceKind.
DivergenceValue divergence(const ProbabilityMeasure& nu,
                           const ProbabilityMeasure& mu,
                           const DivergenceKind& kind);

// D_alpha = log(1 + (alpha-1) h) / (alpha-1); +infinity maps to +infinity
// and a nonpositive argument of the log maps to +infinity.
DivergenceValue hellinger_to_renyi(DivergenceValue h, double alpha);

// Numerically stable log(sum exp(v))); empty input and all -inf give -inf.
double log_sum_exp(const std::vector<double>& v);

}  // namespace sdpi

#endif  // SDPI_DIVERGENCES_HPP
