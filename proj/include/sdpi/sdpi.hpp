#ifndef SDPI_SDPI_HPP
#define SDPI_SDPI_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "sdpi/divergences.hpp"
#include "sdpi/measures.hpp"

namespace sdpi {

// How an SdpiEstimate was obtained.
enum class Method {
  ClosedForm,
  SubsetEnumeration,
  BinaryPairSearch,
  BoundaryBruteForce,
  Spectral,
  SimplexSearch,
};

const char* method_name(Method m);

// Witness that reproduces the reported value.
struct PairOfMeasures {
  ProbabilityMeasure nu;
  ProbabilityMeasure mu;
};
struct Subset {
  std::vector<std::size_t> indices;
};
struct RowPair {
  std::size_t x;
  std::size_t x_prime;
};
// Pair of binary-supported measures on atoms (x, x_prime), stored through
// logits so that witnesses arbitrarily deep in the simplex corners (weights
// far below the smallest positive double) stay representable and
// re-evaluable: nu = (sigma(logit_p), 1-sigma(logit_p)) on (x, x_prime), and
// mu likewise with logit_q. Infinite logits encode exact 0/1 weights.
struct BinaryPairLogit {
  std::size_t x;
  std::size_t x_prime;
  double logit_p;
  double logit_q;
};
using Certificate =
    std::variant<std::monostate, PairOfMeasures, Subset, RowPair, BinaryPairLogit>;

// A contraction-constant estimate in [0,1]. For search-based methods the
// value is a certified lower bound (upper_bound stays 1); closed forms and
// enumerations are exact, so lower_bound == value == upper_bound. For
// PairOfMeasures certificates, certificate_kind records the divergence under
// which the pair reproduces the value (it can differ from the queried kind
// when an exact identity maps one constant onto another).
struct SdpiEstimate {
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 1.0;
  Method method = Method::ClosedForm;
  Certificate certificate{};
  std::optional<DivergenceKind> certificate_kind{};
};

// Budget and determinism knobs for the search-based estimators. The seed
// fully determines every search decision.
struct SearchBudget {
  int restarts = 32;
  int max_iterations = 0;       // 0: scaled automatically with the dimension
  double tolerance = 1e-9;      // convergence tolerance on the ratio
  int grid_points = 512;        // binary-pair grid per axis (logit-spaced)
  double logit_span = 40.0;     // grid covers logits in [-span, span]
  bool deep_refine = true;      // chase boundary suprema far into the tails
  std::uint64_t seed = 0x5d71c0ffee5eedULL;
};

// --- Closed forms and exact enumerations -----------------------------------

// Dobrushin coefficient: max over row pairs of the total-variation distance.
SdpiEstimate eta_tv_kernel(const MarkovKernel& kernel);

// Exact distribution-independent constant for the order-infinity Renyi
// divergence: sup over ordered row pairs (x, x') of
// 1 - min_{y in supp K(.|x)} K(y|x') / K(y|x).
SdpiEstimate eta_infty_kernel(const MarkovKernel& kernel);

// Exact distribution-dependent constant for order infinity, by enumerating
// all nonempty proper subsets of supp(mu) and taking the best restriction.
// Support sizes above 20 are rejected (2^20 subsets is the enumeration cap).
SdpiEstimate eta_infty_dd(const ProbabilityMeasure& mu, const MarkovKernel& kernel);

// Greedy solution of: maximize sum_x nu(x) K(y|x) subject to
// nu(x) <= e^t mu(x) and sum nu = 1. Returns the optimum and a maximizer.
std::pair<double, ProbabilityMeasure> knapsack_sup(const ProbabilityMeasure& mu,
                                                   const MarkovKernel& kernel,
                                                   std::size_t y, double t);

struct SupportStructure {
  bool has_disjoint_rows = false;
  bool has_unequal_supports = false;
};
SupportStructure support_structure(const MarkovKernel& kernel);

// Minimal epsilon such that the kernel is epsilon-LDP; +infinity when the
// contraction of the order-infinity divergence is trivial.
double ldp_epsilon(const MarkovKernel& kernel);

// True iff every row ratio K(y|x')/K(y|x) over supp K(.|x) is >= eps,
// equivalently eta_infty(K) <= 1 - eps. Both routes are computed and must
// agree; a disagreement indicates a bug and throws.
bool ultra_mixing_check(const MarkovKernel& kernel, double eps);

// --- Spectral ---------------------------------------------------------------

// Squared second-largest singular value of Q(x, y) =
// sqrt(mu(x)) K(y|x) / sqrt(mu K(y)) over supp(mu) x supp(mu K).
SdpiEstimate eta_chi2_dd(const ProbabilityMeasure& mu, const MarkovKernel& kernel);

// --- Search-based estimators -------------------------------------------------

// Distribution-dependent constant via seeded multistart Nelder-Mead over the
// simplex on supp(mu). For Renyi orders 2 and infinity the search space is
// the simplex boundary (plus the exact fallback constants); for every
// phi-like kind the spectral chi-squared constant is folded in as a certified
// lower bound. The result is a lower-bound estimate with upper_bound = 1.
SdpiEstimate eta_dd(const ProbabilityMeasure& mu, const MarkovKernel& kernel,
                    const DivergenceKind& kind, const SearchBudget& budget = {});

// Distribution-independent constant. Renyi orders in [1, infinity) use the
// binary-support reduction (logit-spaced grid plus refinement); orders in
// [0, 1] return the chi-squared constant (exact identity) after checking the
// binary search does not exceed it; order infinity and TV use closed forms.
SdpiEstimate eta_di(const MarkovKernel& kernel, const DivergenceKind& kind,
                    const SearchBudget& budget = {});

// Total-variation sandwich for eta_infty(mu, K):
//   lower = eta_TV(mu,K) * min_x mu(x)   (requires full support)
//   upper = eta_TV(mu,K) / min_{y in supp(mu K)} mu K(y), clamped to 1.
struct TvSandwich {
  double lower = 0.0;
  double upper = 1.0;
  double eta_tv_dd = 0.0;
};
TvSandwich eta_infty_tv_bounds(const ProbabilityMeasure& mu,
                               const MarkovKernel& kernel,
                               const SearchBudget& budget = {});

// --- Transformed divergences -------------------------------------------------

// A scalar transform g with g(0) = 0 applied on top of a base divergence.
class TransformSpec {
 public:
  enum class Convexity { Convex, Concave };

  // g(x) = log(1 + scale * x) / scale; concave for scale > 0, convex for
  // scale < 0 (with g = +inf past the log singularity).
  static TransformSpec log_one_plus(double scale);
  // g(x) = x^lambda with lambda in (0, 1); concave.
  static TransformSpec power(double lambda);

  double operator()(double x) const;
  Convexity convexity() const { return convexity_; }

 private:
  enum class Kind { LogOnePlus, Power };
  TransformSpec(Kind k, double p, Convexity c)
      : kind_(k), param_(p), convexity_(c) {}
  Kind kind_;
  double param_;
  Convexity convexity_;
};

// Estimates eta for the base divergence and for g(base) over one shared
// candidate set, so the ordering promised by the convexity of g can be
// checked sample-consistently. Both estimates include the spectral
// chi-squared constant as a certified lower bound.
struct TransformedComparison {
  double eta_base = 0.0;
  double eta_transformed = 0.0;
};
TransformedComparison transformed_sdpi_compare(const ProbabilityMeasure& mu,
                                               const MarkovKernel& kernel,
                                               const DivergenceKind& base,
                                               const TransformSpec& transform,
                                               const SearchBudget& budget = {});

// --- Brute-force oracles (test-grade ground truth) ---------------------------

// Exhaustive grid evaluation of the contraction ratio: over the simplex on
// supp(mu) when mu is given (alphabet cap 3, except order infinity which uses
// an exact radius scan and chi-squared which also accepts support 4 via a
// boundary-face grid), or over binary-supported pairs when mu is absent
// (alphabet cap 5). Accuracy is O(resolution).
SdpiEstimate brute_force_eta(const std::optional<ProbabilityMeasure>& mu,
                             const MarkovKernel& kernel,
                             const DivergenceKind& kind, double resolution);

// --- Shared helpers -----------------------------------------------------------

// D(nu K || mu K) / D(nu || mu); NaN if the input divergence is 0 or infinite.
double contraction_ratio(const ProbabilityMeasure& nu,
                         const ProbabilityMeasure& mu, const MarkovKernel& kernel,
                         const DivergenceKind& kind);

// Re-evaluates an estimate's certificate; certificates of exact methods and
// searches reproduce the reported value within 1e-9.
double certificate_ratio(const SdpiEstimate& estimate,
                         const std::optional<ProbabilityMeasure>& mu,
                         const MarkovKernel& kernel, const DivergenceKind& kind);

}  // namespace sdpi

#endif  // SDPI_SDPI_HPP
