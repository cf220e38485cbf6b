#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sdpi/sdpi.hpp"

namespace sdpi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinInputDivergence = 1e-12;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

struct BruteOutcome {
  double value = 0.0;
  std::optional<PairOfMeasures> cert;
};

void consider(BruteOutcome& out, const ProbabilityMeasure& nu,
              const ProbabilityMeasure& mu, const MarkovKernel& kernel,
              const DivergenceKind& kind, const ProbabilityMeasure& mu_out) {
  const double d_in = divergence(nu, mu, kind);
  if (!(d_in > kMinInputDivergence) || std::isinf(d_in)) return;
  const double d_out = divergence(apply_kernel(nu, kernel), mu_out, kind);
  const double ratio = d_out / d_in;
  if (ratio > out.value) {
    out.value = ratio;
    out.cert = PairOfMeasures{nu, mu};
  }
}

// All weight vectors with the given atoms summing to `steps` grid units.
template <typename Fn>
void enumerate_compositions(std::size_t n, const std::vector<std::size_t>& atoms,
                            long steps, Fn&& visit) {
  const double unit = 1.0 / static_cast<double>(steps);
  std::vector<double> w(n, 0.0);
  if (atoms.size() == 1) {
    w[atoms[0]] = 1.0;
    visit(w);
    return;
  }
  if (atoms.size() == 2) {
    for (long i = 0; i <= steps; ++i) {
      w[atoms[0]] = static_cast<double>(i) * unit;
      w[atoms[1]] = static_cast<double>(steps - i) * unit;
      visit(w);
    }
    return;
  }
  for (long i = 0; i <= steps; ++i) {
    for (long j = 0; i + j <= steps; ++j) {
      w[atoms[0]] = static_cast<double>(i) * unit;
      w[atoms[1]] = static_cast<double>(j) * unit;
      w[atoms[2]] = static_cast<double>(steps - i - j) * unit;
      visit(w);
    }
  }
}

// Exact radius scan for the order-infinity distribution-dependent constant:
// for every radius t, the measure maximizing nu K(y) subject to
// nu <= e^t mu is a fractional-knapsack solution, and the overall supremum
// is attained at the prefix-mass radii. The scan scores each candidate by
// its genuine divergence ratio.
BruteOutcome brute_infty_dd(const ProbabilityMeasure& mu,
                            const MarkovKernel& kernel, double resolution) {
  const std::vector<std::size_t> supp = mu.support();
  const ProbabilityMeasure mu_out = apply_kernel(mu, kernel);
  const DivergenceKind kind = DivergenceKind::renyi(AlphaOrder::infinity());

  double min_mass = 1.0;
  for (std::size_t x : supp) min_mass = std::min(min_mass, mu[x]);
  const double t_max = -std::log(min_mass);

  std::vector<double> radii;
  for (double t = resolution; t < t_max + resolution; t += resolution) {
    radii.push_back(std::min(t, t_max));
  }
  // Prefix-mass radii per output symbol: the endpoints where the knapsack
  // solution is exactly a restriction of mu.
  for (std::size_t y = 0; y < kernel.output_size(); ++y) {
    if (!(mu_out[y] > 0.0)) continue;
    std::vector<std::size_t> order(supp);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return kernel(a, y) > kernel(b, y);
                     });
    double mass = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      mass += mu[order[k]];
      if (mass < 1.0 && mass > 0.0) radii.push_back(-std::log(mass));
    }
  }

  BruteOutcome out;
  for (double t : radii) {
    if (!(t > 0.0)) continue;
    for (std::size_t y = 0; y < kernel.output_size(); ++y) {
      if (!(mu_out[y] > 0.0)) continue;
      const auto [value, nu_star] = knapsack_sup(mu, kernel, y, t);
      (void)value;
      consider(out, nu_star, mu, kernel, kind, mu_out);
    }
  }
  return out;
}

SdpiEstimate finish(const BruteOutcome& out, Method method,
                    const DivergenceKind& kind) {
  SdpiEstimate e;
  e.value = clamp01(out.value);
  e.lower_bound = e.value;
  e.upper_bound = 1.0;
  e.method = method;
  if (out.cert.has_value()) {
    e.certificate = *out.cert;
    e.certificate_kind = kind;
  }
  return e;
}

}  // namespace

SdpiEstimate brute_force_eta(const std::optional<ProbabilityMeasure>& mu,
                             const MarkovKernel& kernel,
                             const DivergenceKind& kind, double resolution) {
  if (!(resolution > 0.0 && resolution < 0.5)) {
    throw ParameterOutOfRange("brute-force resolution must be in (0, 0.5)");
  }
  const long steps = std::lround(1.0 / resolution);

  if (mu.has_value()) {
    if (mu->size() != kernel.input_size()) {
      throw DimensionMismatch("measure size does not match kernel input size");
    }
    const std::vector<std::size_t> supp = mu->support();
    if (supp.size() < 2) throw DegenerateMeasure("support must contain at least 2 points");

    const bool infty = kind.family() == DivergenceKind::Family::Renyi &&
                       kind.order().is_infinite();
    if (infty) {
      return finish(brute_infty_dd(*mu, kernel, resolution),
                    Method::BoundaryBruteForce, kind);
    }

    const ProbabilityMeasure mu_out = apply_kernel(*mu, kernel);
    BruteOutcome out;
    if (supp.size() <= 3) {
      enumerate_compositions(mu->size(), supp, steps, [&](const std::vector<double>& w) {
        consider(out, ProbabilityMeasure::from_weights(w, true), *mu, kernel,
                 kind, mu_out);
      });
      return finish(out, Method::BoundaryBruteForce, kind);
    }
    if (supp.size() == 4 && kind.family() == DivergenceKind::Family::ChiSquared) {
      // The chi-squared ratio is constant along rays from mu, so a grid over
      // the proper faces is exhaustive up to the grid error.
      for (std::uint32_t mask = 1; mask + 1 < (1u << supp.size()); ++mask) {
        std::vector<std::size_t> atoms;
        for (std::size_t i = 0; i < supp.size(); ++i) {
          if (mask & (1u << i)) atoms.push_back(supp[i]);
        }
        enumerate_compositions(mu->size(), atoms, steps,
                               [&](const std::vector<double>& w) {
                                 consider(out,
                                          ProbabilityMeasure::from_weights(w, true),
                                          *mu, kernel, kind, mu_out);
                               });
      }
      return finish(out, Method::BoundaryBruteForce, kind);
    }
    throw AlphabetTooLarge(
        "grid brute force supports 3 atoms (4 for chi-squared faces)");
  }

  // Distribution-independent: binary pairs at the grid resolution.
  const std::size_t n = kernel.input_size();
  if (n > 5) throw AlphabetTooLarge("binary brute force capped at 5 inputs");
  BruteOutcome out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xp = 0; xp < n; ++xp) {
      if (x == xp) continue;
      std::vector<ProbabilityMeasure> nus;
      std::vector<ProbabilityMeasure> nus_out;
      nus.reserve(static_cast<std::size_t>(steps) + 1);
      for (long i = 0; i <= steps; ++i) {
        std::vector<double> w(n, 0.0);
        w[x] = static_cast<double>(i) / static_cast<double>(steps);
        w[xp] = 1.0 - w[x];
        nus.push_back(ProbabilityMeasure::from_weights(std::move(w), true));
        nus_out.push_back(apply_kernel(nus.back(), kernel));
      }
      for (long qi = 0; qi <= steps; ++qi) {
        const auto& mu_bin = nus[static_cast<std::size_t>(qi)];
        const auto& mu_bin_out = nus_out[static_cast<std::size_t>(qi)];
        for (long pi = 0; pi <= steps; ++pi) {
          if (pi == qi) continue;
          const auto& nu_bin = nus[static_cast<std::size_t>(pi)];
          const double d_in = divergence(nu_bin, mu_bin, kind);
          if (!(d_in > kMinInputDivergence) || std::isinf(d_in)) continue;
          const double d_out =
              divergence(nus_out[static_cast<std::size_t>(pi)], mu_bin_out, kind);
          const double ratio = d_out / d_in;
          if (ratio > out.value) {
            out.value = ratio;
            out.cert = PairOfMeasures{nu_bin, mu_bin};
          }
        }
      }
    }
  }
  return finish(out, Method::BoundaryBruteForce, kind);
}

}  // namespace sdpi
