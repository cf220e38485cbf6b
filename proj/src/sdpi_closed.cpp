#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sdpi/sdpi.hpp"
#include "sdpi_internal.hpp"

namespace sdpi {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

SdpiEstimate exact_estimate(double value, Method method, Certificate cert,
                            std::optional<DivergenceKind> cert_kind = {}) {
  SdpiEstimate e;
  e.value = clamp01(value);
  e.lower_bound = e.value;
  e.upper_bound = e.value;
  e.method = method;
  e.certificate = std::move(cert);
  e.certificate_kind = std::move(cert_kind);
  return e;
}

// 1 - min_{y in supp K(.|x)} K(y|x') / K(y|x) for one ordered pair.
double infty_pair_value(const MarkovKernel& k, std::size_t x, std::size_t xp) {
  double min_ratio = kInf;
  for (std::size_t y = 0; y < k.output_size(); ++y) {
    if (k(x, y) == 0.0) continue;
    min_ratio = std::min(min_ratio, k(xp, y) / k(x, y));
  }
  return 1.0 - std::min(min_ratio, 1.0);
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::SubsetEnumeration: return "subset_enumeration";
    case Method::BinaryPairSearch: return "binary_pair_search";
    case Method::BoundaryBruteForce: return "boundary_brute_force";
    case Method::Spectral: return "spectral";
    case Method::SimplexSearch: return "simplex_search";
  }
  return "unknown";
}

SdpiEstimate eta_tv_kernel(const MarkovKernel& kernel) {
  const std::size_t n = kernel.input_size();
  double best = 0.0;
  RowPair best_pair{0, 0};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xp = 0; xp < n; ++xp) {
      if (x == xp) continue;
      double sum = 0.0;
      for (std::size_t y = 0; y < kernel.output_size(); ++y) {
        sum += std::abs(kernel(x, y) - kernel(xp, y));
      }
      const double tv = 0.5 * sum;
      if (tv > best) {
        best = tv;
        best_pair = RowPair{x, xp};
      }
    }
  }
  return exact_estimate(best, Method::ClosedForm, best_pair,
                        DivergenceKind::total_variation());
}

SdpiEstimate eta_infty_kernel(const MarkovKernel& kernel) {
  const std::size_t n = kernel.input_size();
  double best = 0.0;
  RowPair best_pair{0, 0};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xp = 0; xp < n; ++xp) {
      if (x == xp) continue;
      const double v = infty_pair_value(kernel, x, xp);
      if (v > best) {
        best = v;
        best_pair = RowPair{x, xp};
      }
    }
  }
  return exact_estimate(best, Method::ClosedForm, best_pair,
                        DivergenceKind::renyi(AlphaOrder::infinity()));
}

SdpiEstimate eta_infty_dd(const ProbabilityMeasure& mu,
                          const MarkovKernel& kernel) {
  if (mu.size() != kernel.input_size()) {
    throw DimensionMismatch("measure size does not match kernel input size");
  }
  const std::vector<std::size_t> supp = mu.support();
  const std::size_t m = supp.size();
  if (m < 2) throw DegenerateMeasure("support must contain at least 2 points");
  if (m > 20) throw AlphabetTooLarge("subset enumeration capped at 20 support points");

  const ProbabilityMeasure out = apply_kernel(mu, kernel);
  const std::size_t ny = kernel.output_size();

  double best = 0.0;
  std::uint32_t best_mask = 1;
  std::vector<double> out_a(ny);
  for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    double mass_a = 0.0, mass_rest = 0.0;
    std::fill(out_a.begin(), out_a.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t x = supp[i];
      if (mask & (1u << i)) {
        mass_a += mu[x];
        for (std::size_t y = 0; y < ny; ++y) out_a[y] += mu[x] * kernel(x, y);
      } else {
        mass_rest += mu[x];
      }
    }
    // D_infty(mu|A || mu) = log(1/mu(A)); use the complement mass when A is
    // nearly everything to avoid cancellation.
    const double d_in = mass_rest < 0.5 ? -std::log1p(-mass_rest) : -std::log(mass_a);
    double worst = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      if (out_a[y] == 0.0) continue;
      worst = std::max(worst, std::log(out_a[y] / mass_a) - std::log(out[y]));
    }
    const double ratio = worst / d_in;
    if (ratio > best) {
      best = ratio;
      best_mask = mask;
    }
  }

  Subset cert;
  for (std::size_t i = 0; i < m; ++i) {
    if (best_mask & (1u << i)) cert.indices.push_back(supp[i]);
  }
  return exact_estimate(best, Method::SubsetEnumeration, std::move(cert),
                        DivergenceKind::renyi(AlphaOrder::infinity()));
}

std::pair<double, ProbabilityMeasure> knapsack_sup(const ProbabilityMeasure& mu,
                                                   const MarkovKernel& kernel,
                                                   std::size_t y, double t) {
  if (mu.size() != kernel.input_size()) {
    throw DimensionMismatch("measure size does not match kernel input size");
  }
  if (y >= kernel.output_size()) throw DimensionMismatch("output index out of range");
  if (!(t > 0.0)) throw InvalidRadius("knapsack radius must be positive");

  const std::size_t n = mu.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return kernel(a, y) > kernel(b, y);
  });

  const double cap_scale = std::exp(t);
  std::vector<double> nu(n, 0.0);
  double budget = 1.0;
  double value = 0.0;
  for (std::size_t x : order) {
    if (budget <= 0.0) break;
    const double cap = cap_scale * mu[x];
    const double take = std::min(cap, budget);
    nu[x] = take;
    value += take * kernel(x, y);
    budget -= take;
  }
  return {value, ProbabilityMeasure::from_weights(std::move(nu), /*renormalize=*/true)};
}

SupportStructure support_structure(const MarkovKernel& kernel) {
  const std::size_t n = kernel.input_size();
  const std::size_t ny = kernel.output_size();
  std::vector<std::vector<bool>> supp(n, std::vector<bool>(ny));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < ny; ++y) supp[x][y] = kernel(x, y) > 0.0;
  }
  SupportStructure s;
  for (std::size_t x = 0; x < n && !(s.has_disjoint_rows && s.has_unequal_supports); ++x) {
    for (std::size_t xp = x + 1; xp < n; ++xp) {
      bool intersect = false, equal = true;
      for (std::size_t y = 0; y < ny; ++y) {
        if (supp[x][y] && supp[xp][y]) intersect = true;
        if (supp[x][y] != supp[xp][y]) equal = false;
      }
      if (!intersect) s.has_disjoint_rows = true;
      if (!equal) s.has_unequal_supports = true;
    }
  }
  return s;
}

double ldp_epsilon(const MarkovKernel& kernel) {
  // Work with m = min row ratio directly; eta_infty = 1 - m, and
  // epsilon = -log m avoids cancellation through 1 - (1 - m).
  const std::size_t n = kernel.input_size();
  double m = 1.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xp = 0; xp < n; ++xp) {
      if (x == xp) continue;
      for (std::size_t y = 0; y < kernel.output_size(); ++y) {
        if (kernel(x, y) == 0.0) continue;
        m = std::min(m, kernel(xp, y) / kernel(x, y));
      }
    }
  }
  if (m == 0.0) return kInf;
  return std::max(0.0, -std::log(m));
}

bool ultra_mixing_check(const MarkovKernel& kernel, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw ParameterOutOfRange("ultra-mixing level must be in [0, 1]");
  }
  // Pointwise route.
  bool pointwise = true;
  const std::size_t n = kernel.input_size();
  for (std::size_t x = 0; x < n && pointwise; ++x) {
    for (std::size_t xp = 0; xp < n && pointwise; ++xp) {
      if (x == xp) continue;
      for (std::size_t y = 0; y < kernel.output_size(); ++y) {
        if (kernel(x, y) == 0.0) continue;
        if (kernel(xp, y) / kernel(x, y) < eps) {
          pointwise = false;
          break;
        }
      }
    }
  }
  // Contraction route.
  const bool via_eta = eta_infty_kernel(kernel).value <= 1.0 - eps;
  if (pointwise != via_eta) {
    throw Error("ultra-mixing routes disagree; this is a bug");
  }
  return pointwise;
}

double contraction_ratio(const ProbabilityMeasure& nu,
                         const ProbabilityMeasure& mu,
                         const MarkovKernel& kernel,
                         const DivergenceKind& kind) {
  const double d_in = divergence(nu, mu, kind);
  if (!(d_in > 0.0) || std::isinf(d_in)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double d_out =
      divergence(apply_kernel(nu, kernel), apply_kernel(mu, kernel), kind);
  return d_out / d_in;
}

double certificate_ratio(const SdpiEstimate& estimate,
                         const std::optional<ProbabilityMeasure>& mu,
                         const MarkovKernel& kernel, const DivergenceKind& kind) {
  const DivergenceKind eval_kind = estimate.certificate_kind.value_or(kind);
  if (const auto* pair = std::get_if<RowPair>(&estimate.certificate)) {
    if (eval_kind.family() == DivergenceKind::Family::Renyi &&
        eval_kind.order().is_infinite()) {
      return infty_pair_value(kernel, pair->x, pair->x_prime);
    }
    return total_variation(kernel.row_measure(pair->x),
                           kernel.row_measure(pair->x_prime));
  }
  if (const auto* subset = std::get_if<Subset>(&estimate.certificate)) {
    if (!mu.has_value()) throw Error("subset certificate needs the base measure");
    return contraction_ratio(restrict_measure(*mu, subset->indices), *mu, kernel,
                             eval_kind);
  }
  if (const auto* pom = std::get_if<PairOfMeasures>(&estimate.certificate)) {
    return contraction_ratio(pom->nu, pom->mu, kernel, eval_kind);
  }
  if (const auto* bin = std::get_if<BinaryPairLogit>(&estimate.certificate)) {
    return detail::binary_logit_ratio(kernel, bin->x, bin->x_prime,
                                      bin->logit_p, bin->logit_q, eval_kind);
  }
  throw Error("estimate carries no reproducible certificate");
}

}  // namespace sdpi
