#ifndef SDPI_MIXING_HPP
#define SDPI_MIXING_HPP

#include <optional>
#include <vector>

#include "sdpi/measures.hpp"
#include "sdpi/sdpi.hpp"

namespace sdpi {

// A finite-state chain: square kernel, starting distribution, step horizon.
// The kernel must be primitive (some power has all entries positive, checked
// with exact-zero semantics up to power |X|^2).
struct ChainSpec {
  MarkovKernel kernel;
  ProbabilityMeasure start;
  int steps = 0;
};

// True iff K is square and some boolean power K^m (m <= |X|^2) is all-positive.
bool is_ergodic(const MarkovKernel& kernel);

// Unique stationary distribution of an ergodic kernel: direct linear solve,
// falling back to power iteration (tolerance 1e-14, at most 1e6 iterations).
// The result satisfies ||pi K - pi||_inf <= 1e-13.
ProbabilityMeasure stationary(const MarkovKernel& kernel);

// ||d(nu K^n)/d(pi) - 1||_{L^alpha(pi)} for n = 0..steps.
std::vector<double> trajectory_dev(const ChainSpec& spec,
                                   const ProbabilityMeasure& pi, double alpha);

// Geometric-decay bound on the deviation. For alpha = 2 the values are in
// squared-norm units with the given rate applied per step
// (bound(n) = rate^n * dev(0)^2); for other alpha the plain norm bound
// rate^n * dev(0) is returned.
std::vector<double> linear_bound(const ChainSpec& spec,
                                 const ProbabilityMeasure& pi, double alpha,
                                 double rate);

// Exponent-shrinking bound. For alpha = 2 the values bound the squared
// deviation: (||d nu/d pi||^2)^(eta^n) - 1; for other alpha the bound on the
// density norm ||d(nu K^n)/d pi|| <= ||d nu/d pi||^(eta^n) is returned.
std::vector<double> nonlinear_bound(const ChainSpec& spec,
                                    const ProbabilityMeasure& pi, double alpha,
                                    double eta);

struct MixingStep {
  int n = 0;
  double true_dev_sq = 0.0;
  double linear_bound = 0.0;
  double nonlinear_bound = 0.0;
};

struct MixingReport {
  ProbabilityMeasure pi;
  double eta_chi2 = 0.0;
  double eta_2 = 0.0;
  double gamma_alpha = 0.0;  // norm-units geometric rate, sqrt(eta_chi2)
  std::vector<MixingStep> per_step;
  std::optional<int> crossing_index;  // first n where nonlinear > linear
};

// Full comparison at alpha = 2: true squared deviation, the geometric bound
// with rate eta_chi2(pi, K), and the exponent-shrinking bound with
// eta_2(pi, K) estimated by the boundary-restricted search.
MixingReport compare_bounds(const ChainSpec& spec, const SearchBudget& budget = {});

}  // namespace sdpi

#endif  // SDPI_MIXING_HPP
