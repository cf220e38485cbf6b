#ifndef SDPI_INTERNAL_HPP
#define SDPI_INTERNAL_HPP

#include <vector>

#include "sdpi/measures.hpp"

#include "sdpi/divergences.hpp"

namespace sdpi::detail {

// Signed perturbation direction over X (zero off supp(mu), coordinates sum
// to ~0) along which the chi-squared contraction ratio attains its spectral
// value locally at mu. Empty when the output support has fewer than 2 points.
std::vector<double> chi2_direction(const ProbabilityMeasure& mu,
                                   const MarkovKernel& kernel);

// Contraction ratio of a binary-supported pair parameterized by logits,
// evaluated entirely in the log domain (valid for logits of any magnitude).
// Returns -infinity when the input divergence is outside (1e-12, inf).
double binary_logit_ratio(const MarkovKernel& kernel, std::size_t x,
                          std::size_t x_prime, double logit_p, double logit_q,
                          const DivergenceKind& kind);

}  // namespace sdpi::detail

#endif  // SDPI_INTERNAL_HPP
