#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "nelder_mead.hpp"
#include "sdpi/rng.hpp"
#include "sdpi/sdpi.hpp"
#include "sdpi_internal.hpp"

namespace sdpi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinInputDivergence = 1e-12;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

bool is_renyi(const DivergenceKind& kind) {
  return kind.family() == DivergenceKind::Family::Renyi;
}

// Kinds for which eta_D(mu, K) >= eta_chi2(mu, K) is a theorem, so the
// spectral value can be folded in as a certified lower bound.
bool chi2_floor_applies(const DivergenceKind& kind) {
  switch (kind.family()) {
    case DivergenceKind::Family::Renyi:
    case DivergenceKind::Family::KL:
    case DivergenceKind::Family::Hellinger:
    case DivergenceKind::Family::ChiSquared:
    case DivergenceKind::Family::TotalVariation:
      return true;
    case DivergenceKind::Family::LInf:
      return false;
  }
  return false;
}

// The contraction ratio is invariant along rays nu = mu + t h for these
// kinds, so the supremum is attained on the simplex boundary.
bool boundary_search_applies(const DivergenceKind& kind) {
  if (kind.family() == DivergenceKind::Family::LInf) return true;
  if (!is_renyi(kind)) return false;
  const AlphaOrder a = kind.order();
  return a.is_infinite() || (a.is_finite() && a.value() == 2.0);
}

struct RatioObjective {
  const ProbabilityMeasure& mu;
  const MarkovKernel& kernel;
  const ProbabilityMeasure& mu_out;
  DivergenceKind kind;

  double operator()(const ProbabilityMeasure& nu) const {
    const double d_in = divergence(nu, mu, kind);
    if (!(d_in > kMinInputDivergence) || std::isinf(d_in)) return -kInf;
    const double d_out = divergence(apply_kernel(nu, kernel), mu_out, kind);
    return d_out / d_in;
  }
};

// Maps an unconstrained vector to a measure supported on the given face.
ProbabilityMeasure face_point(const std::vector<std::size_t>& face,
                              const std::vector<double>& z, std::size_t n) {
  double hi = -kInf;
  for (double v : z) hi = std::max(hi, v);
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i < face.size(); ++i) w[face[i]] = std::exp(z[i] - hi);
  return ProbabilityMeasure::from_weights(std::move(w), /*renormalize=*/true);
}

struct SearchOutcome {
  double value = -kInf;
  std::optional<ProbabilityMeasure> best;
};

void consider(SearchOutcome& out, double value, const ProbabilityMeasure& nu) {
  if (value > out.value) {
    out.value = value;
    out.best = nu;
  }
}

std::vector<std::vector<std::size_t>> proper_subsets(
    const std::vector<std::size_t>& supp) {
  std::vector<std::vector<std::size_t>> faces;
  const std::size_t m = supp.size();
  for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) face.push_back(supp[i]);
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

// Restriction candidates mu_{|A}: all proper subsets up to support 12,
// otherwise singletons, pairs and drop-one sets.
std::vector<std::vector<std::size_t>> restriction_events(
    const std::vector<std::size_t>& supp) {
  if (supp.size() <= 12) return proper_subsets(supp);
  std::vector<std::vector<std::size_t>> events;
  for (std::size_t i = 0; i < supp.size(); ++i) {
    events.push_back({supp[i]});
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      events.push_back({supp[i], supp[j]});
    }
    std::vector<std::size_t> drop_one;
    for (std::size_t j = 0; j < supp.size(); ++j) {
      if (j != i) drop_one.push_back(supp[j]);
    }
    events.push_back(std::move(drop_one));
  }
  return events;
}

// Seed candidates evaluated directly (and reused as search starts where the
// dimension allows): restrictions of mu, perturbations along the spectral
// chi-squared direction, extremal pair directions, and seeded random points.
std::vector<ProbabilityMeasure> seed_candidates(const ProbabilityMeasure& mu,
                                                const MarkovKernel& kernel,
                                                const SearchBudget& budget) {
  const std::vector<std::size_t> supp = mu.support();
  std::vector<ProbabilityMeasure> seeds;

  for (const auto& event : restriction_events(supp)) {
    seeds.push_back(restrict_measure(mu, event));
  }

  const std::vector<double> h = detail::chi2_direction(mu, kernel);
  if (!h.empty()) {
    for (double t : {1.0, 0.5, 0.1, 1e-2, 1e-3, 1e-4, -1.0, -0.5, -0.1, -1e-2,
                     -1e-3, -1e-4}) {
      std::vector<double> w(mu.size());
      bool ok = true;
      for (std::size_t x = 0; x < mu.size(); ++x) {
        w[x] = mu[x] + t * h[x];
        if (w[x] < 0.0) {
          ok = w[x] > -1e-15;
          w[x] = 0.0;
        }
        if (!ok) break;
      }
      if (ok) seeds.push_back(ProbabilityMeasure::from_weights(w, true));
    }
  }

  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = 0; j < supp.size(); ++j) {
      if (i == j) continue;
      // mu pushed along delta_x - delta_x' until coordinate x' dies.
      std::vector<double> w = mu.weights();
      w[supp[i]] += w[supp[j]];
      w[supp[j]] = 0.0;
      seeds.push_back(ProbabilityMeasure::from_weights(std::move(w), true));
    }
  }

  Rng rng(Rng::derive(budget.seed, 0xc0ffee));
  const int random_seeds = std::max(8, 4 * budget.restarts);
  for (int i = 0; i < random_seeds; ++i) {
    std::vector<double> w(mu.size(), 0.0);
    const std::vector<double> d = rng.dirichlet(supp.size());
    for (std::size_t j = 0; j < supp.size(); ++j) w[supp[j]] = d[j];
    seeds.push_back(ProbabilityMeasure::from_weights(std::move(w), true));
  }
  return seeds;
}

int default_iterations(const SearchBudget& budget, std::size_t dim) {
  if (budget.max_iterations > 0) return budget.max_iterations;
  return 120 + 80 * static_cast<int>(dim);
}

// Multistart Nelder-Mead over the faces of the simplex on supp(mu). In
// boundary mode only proper faces are searched; otherwise the full face is
// searched and restriction seeds still enter as direct candidates.
SearchOutcome simplex_search(const ProbabilityMeasure& mu,
                             const MarkovKernel& kernel,
                             const DivergenceKind& kind,
                             const SearchBudget& budget, bool boundary_only) {
  const std::vector<std::size_t> supp = mu.support();
  const ProbabilityMeasure mu_out = apply_kernel(mu, kernel);
  const RatioObjective ratio{mu, kernel, mu_out, kind};

  SearchOutcome outcome;
  for (const auto& seed : seed_candidates(mu, kernel, budget)) {
    if (boundary_only && seed.support_size() == supp.size()) continue;
    consider(outcome, ratio(seed), seed);
  }

  std::vector<std::vector<std::size_t>> faces;
  if (boundary_only) {
    if (supp.size() <= 7) {
      faces = proper_subsets(supp);
    } else {
      for (std::size_t i = 0; i < supp.size(); ++i) {
        std::vector<std::size_t> face;
        for (std::size_t j = 0; j < supp.size(); ++j) {
          if (j != i) face.push_back(supp[j]);
        }
        faces.push_back(std::move(face));
      }
    }
  } else {
    faces.push_back(supp);
  }

  std::size_t run = 0;
  auto run_from = [&](const std::vector<std::size_t>& face,
                      const std::vector<double>& start) {
    if (face.size() < 2) return;
    auto objective = [&](const std::vector<double>& z) {
      return ratio(face_point(face, z, mu.size()));
    };
    const auto result = detail::nelder_mead_maximize(
        objective, start, 0.7, default_iterations(budget, face.size()),
        budget.tolerance);
    if (result.value > outcome.value) {
      outcome.value = result.value;
      outcome.best = face_point(face, result.point, mu.size());
    }
    ++run;
  };

  // One run per face from the restriction of mu to that face.
  for (const auto& face : faces) {
    std::vector<double> start(face.size());
    for (std::size_t i = 0; i < face.size(); ++i) start[i] = std::log(mu[face[i]]);
    run_from(face, start);
  }
  // Remaining budget: seeded random starts, spread round-robin over faces.
  const int total_runs = std::max<int>(budget.restarts, static_cast<int>(faces.size()));
  int extra = total_runs - static_cast<int>(faces.size());
  for (int i = 0; i < extra; ++i) {
    const auto& face = faces[static_cast<std::size_t>(i) % faces.size()];
    Rng rng(Rng::derive(budget.seed, 0xab5eed + static_cast<std::uint64_t>(i)));
    std::vector<double> start(face.size());
    for (auto& v : start) v = rng.uniform(-3.0, 3.0);
    run_from(face, start);
  }

  return outcome;
}

SdpiEstimate closed_tv_dd(const ProbabilityMeasure& mu, const MarkovKernel& kernel) {
  // Over the simplex on supp(mu) the TV contraction constant is the Dobrushin
  // coefficient of the support rows, attained by a pair direction.
  const std::vector<std::size_t> supp = mu.support();
  double best = 0.0;
  RowPair pair{supp[0], supp[0]};
  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = 0; j < supp.size(); ++j) {
      if (i == j) continue;
      const double tv = total_variation(kernel.row_measure(supp[i]),
                                        kernel.row_measure(supp[j]));
      if (tv > best) {
        best = tv;
        pair = RowPair{supp[i], supp[j]};
      }
    }
  }
  SdpiEstimate e;
  e.value = clamp01(best);
  e.lower_bound = e.value;
  e.upper_bound = e.value;
  e.method = Method::ClosedForm;
  e.certificate = pair;
  e.certificate_kind = DivergenceKind::total_variation();
  return e;
}

}  // namespace

SdpiEstimate eta_dd(const ProbabilityMeasure& mu, const MarkovKernel& kernel,
                    const DivergenceKind& kind, const SearchBudget& budget) {
  if (mu.size() != kernel.input_size()) {
    throw DimensionMismatch("measure size does not match kernel input size");
  }
  if (mu.support_size() < 2) {
    throw DegenerateMeasure("support must contain at least 2 points");
  }
  if (kind.family() == DivergenceKind::Family::TotalVariation) {
    return closed_tv_dd(mu, kernel);
  }
  if (kind.family() == DivergenceKind::Family::ChiSquared) {
    return eta_chi2_dd(mu, kernel);
  }

  const bool boundary = boundary_search_applies(kind);
  SearchOutcome search = simplex_search(mu, kernel, kind, budget, boundary);

  SdpiEstimate result;
  result.value = clamp01(search.value);
  result.method = Method::SimplexSearch;
  if (search.best.has_value()) {
    result.certificate = PairOfMeasures{*search.best, mu};
    result.certificate_kind = kind;
  }

  if (chi2_floor_applies(kind)) {
    const SdpiEstimate local = eta_chi2_dd(mu, kernel);
    if (local.value > result.value) {
      result.value = local.value;
      result.method = Method::Spectral;
      result.certificate = std::monostate{};
      result.certificate_kind = DivergenceKind::chi_squared();
    }
  }
  if (is_renyi(kind) && kind.order().is_infinite()) {
    // Appendix-style fallback: the L-infinity contraction never exceeds the
    // order-infinity Renyi contraction.
    SearchBudget linf_budget = budget;
    linf_budget.restarts = std::max(4, budget.restarts / 2);
    const SearchOutcome linf =
        simplex_search(mu, kernel, DivergenceKind::linf(), linf_budget, true);
    if (linf.value > result.value && linf.best.has_value()) {
      result.value = clamp01(linf.value);
      result.method = Method::SimplexSearch;
      result.certificate = PairOfMeasures{*linf.best, mu};
      result.certificate_kind = DivergenceKind::linf();
    }
  }

  result.lower_bound = result.value;
  result.upper_bound = 1.0;
  return result;
}

TvSandwich eta_infty_tv_bounds(const ProbabilityMeasure& mu,
                               const MarkovKernel& kernel,
                               const SearchBudget& budget) {
  if (!mu.has_full_support()) {
    throw NotFullSupport("the lower bound requires a full-support measure");
  }
  const double eta_tv = eta_dd(mu, kernel, DivergenceKind::total_variation(),
                               budget).value;
  const ProbabilityMeasure out = apply_kernel(mu, kernel);
  double min_out = kInf;
  for (std::size_t y = 0; y < out.size(); ++y) {
    if (out[y] > 0.0) min_out = std::min(min_out, out[y]);
  }
  double min_in = kInf;
  for (std::size_t x = 0; x < mu.size(); ++x) min_in = std::min(min_in, mu[x]);

  TvSandwich s;
  s.eta_tv_dd = eta_tv;
  s.upper = std::min(1.0, eta_tv / min_out);
  s.lower = eta_tv * min_in;
  return s;
}

TransformSpec TransformSpec::log_one_plus(double scale) {
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw ParameterOutOfRange("log-one-plus transform needs a nonzero scale");
  }
  return TransformSpec(Kind::LogOnePlus, scale,
                       scale > 0.0 ? Convexity::Concave : Convexity::Convex);
}

TransformSpec TransformSpec::power(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ParameterOutOfRange("power transform exponent must be in (0, 1)");
  }
  return TransformSpec(Kind::Power, lambda, Convexity::Concave);
}

double TransformSpec::operator()(double x) const {
  if (x < 0.0) throw ParameterOutOfRange("transform argument must be >= 0");
  switch (kind_) {
    case Kind::LogOnePlus: {
      if (std::isinf(x)) return kInf;
      const double scaled = param_ * x;
      if (scaled <= -1.0) return kInf;
      return std::log1p(scaled) / param_;
    }
    case Kind::Power:
      return std::pow(x, param_);
  }
  return kInf;
}

TransformedComparison transformed_sdpi_compare(const ProbabilityMeasure& mu,
                                               const MarkovKernel& kernel,
                                               const DivergenceKind& base,
                                               const TransformSpec& transform,
                                               const SearchBudget& budget) {
  if (mu.support_size() < 2) {
    throw DegenerateMeasure("support must contain at least 2 points");
  }
  if (base.family() == DivergenceKind::Family::LInf) {
    throw UnsupportedKind("transform comparison is not defined for this base");
  }
  const ProbabilityMeasure mu_out = apply_kernel(mu, kernel);

  auto base_ratio = [&](const ProbabilityMeasure& nu) {
    const double d_in = divergence(nu, mu, base);
    if (!(d_in > kMinInputDivergence) || std::isinf(d_in)) return -kInf;
    return divergence(apply_kernel(nu, kernel), mu_out, base) / d_in;
  };
  auto transformed_ratio = [&](const ProbabilityMeasure& nu) {
    const double g_in = transform(divergence(nu, mu, base));
    if (!(g_in > kMinInputDivergence) || std::isinf(g_in)) return -kInf;
    const double g_out = transform(divergence(apply_kernel(nu, kernel), mu_out, base));
    return g_out / g_in;
  };

  // Shared candidate pool: direct seeds plus the optimizers found for each
  // objective, all cross-evaluated under both ratios.
  std::vector<ProbabilityMeasure> pool = seed_candidates(mu, kernel, budget);
  SearchBudget half = budget;
  half.restarts = std::max(4, budget.restarts / 2);
  SearchOutcome from_base = simplex_search(mu, kernel, base, half, false);
  if (from_base.best.has_value()) pool.push_back(*from_base.best);

  {
    const std::vector<std::size_t> supp = mu.support();
    auto objective = [&](const std::vector<double>& z) {
      return transformed_ratio(face_point(supp, z, mu.size()));
    };
    for (int i = 0; i < half.restarts; ++i) {
      Rng rng(Rng::derive(budget.seed, 0x7ead + static_cast<std::uint64_t>(i)));
      std::vector<double> start(supp.size());
      for (auto& v : start) v = rng.uniform(-3.0, 3.0);
      const auto r = detail::nelder_mead_maximize(
          objective, start, 0.7, default_iterations(budget, supp.size()),
          budget.tolerance);
      pool.push_back(face_point(supp, r.point, mu.size()));
    }
  }

  TransformedComparison out;
  out.eta_base = -kInf;
  out.eta_transformed = -kInf;
  for (const auto& nu : pool) {
    out.eta_base = std::max(out.eta_base, base_ratio(nu));
    out.eta_transformed = std::max(out.eta_transformed, transformed_ratio(nu));
  }

  const double local = eta_chi2_dd(mu, kernel).value;
  out.eta_base = clamp01(std::max(out.eta_base, local));
  out.eta_transformed = clamp01(std::max(out.eta_transformed, local));
  return out;
}

}  // namespace sdpi
