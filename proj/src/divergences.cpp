#include "sdpi/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdpi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(const ProbabilityMeasure& nu, const ProbabilityMeasure& mu) {
  if (nu.size() != mu.size()) {
    throw DimensionMismatch("divergence arguments have different alphabet sizes");
  }
}

double clamp_nonnegative(double v) { return v < 0.0 ? 0.0 : v; }

// log sum_x nu(x)^a mu(x)^(1-a), in the log domain. Returns +inf when a > 1
// and nu is not absolutely continuous w.r.t. mu; -inf when no term survives
// (disjoint supports).
double log_power_sum(const ProbabilityMeasure& nu, const ProbabilityMeasure& mu,
                     double a) {
  std::vector<double> terms;
  terms.reserve(nu.size());
  for (std::size_t x = 0; x < nu.size(); ++x) {
    if (nu[x] == 0.0) continue;
    if (mu[x] == 0.0) {
      if (a > 1.0) return kInf;
      continue;  // a in (0,1): zero contribution
    }
    terms.push_back(a * std::log(nu[x]) + (1.0 - a) * std::log(mu[x]));
  }
  return log_sum_exp(terms);
}

}  // namespace

double log_sum_exp(const std::vector<double>& v) {
  double hi = -kInf;
  for (double t : v) hi = std::max(hi, t);
  if (hi == -kInf) return -kInf;
  if (hi == kInf) return kInf;
  double sum = 0.0;
  for (double t : v) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

DivergenceKind DivergenceKind::hellinger(double order) {
  if (!(order > 0.0) || !std::isfinite(order)) {
    throw InvalidOrder("Hellinger order must be a positive finite real");
  }
  if (order == 1.0) return kl();  // the order-1 limit is the KL divergence
  if (order == 2.0) return chi_squared();
  return DivergenceKind(Family::Hellinger, AlphaOrder::finite(order));
}

std::string DivergenceKind::name() const {
  switch (family_) {
    case Family::Renyi:
      if (order_.is_infinite()) return "renyi(inf)";
      return "renyi(" + std::to_string(order_.value()) + ")";
    case Family::KL: return "kl";
    case Family::TotalVariation: return "tv";
    case Family::Hellinger:
      return "hellinger(" + std::to_string(order_.value()) + ")";
    case Family::ChiSquared: return "chi2";
    case Family::LInf: return "linf";
  }
  return "unknown";
}

DivergenceValue kl_divergence(const ProbabilityMeasure& nu,
                              const ProbabilityMeasure& mu) {
  check_dims(nu, mu);
  double sum = 0.0;
  for (std::size_t x = 0; x < nu.size(); ++x) {
    if (nu[x] == 0.0) continue;
    if (mu[x] == 0.0) return kInf;
    sum += nu[x] * (std::log(nu[x]) - std::log(mu[x]));
  }
  return clamp_nonnegative(sum);
}

DivergenceValue renyi_divergence(const ProbabilityMeasure& nu,
                                 const ProbabilityMeasure& mu,
                                 AlphaOrder alpha) {
  check_dims(nu, mu);
  switch (alpha.tag()) {
    case AlphaOrder::Tag::One:
      return kl_divergence(nu, mu);
    case AlphaOrder::Tag::Zero: {
      double mass = 0.0;
      for (std::size_t x = 0; x < nu.size(); ++x) {
        if (nu[x] > 0.0) mass += mu[x];
      }
      if (mass == 0.0) return kInf;
      return clamp_nonnegative(-std::log(mass));
    }
    case AlphaOrder::Tag::Infinity: {
      double worst = -kInf;
      for (std::size_t x = 0; x < nu.size(); ++x) {
        if (nu[x] == 0.0) continue;
        if (mu[x] == 0.0) return kInf;
        worst = std::max(worst, std::log(nu[x]) - std::log(mu[x]));
      }
      return clamp_nonnegative(worst);
    }
    case AlphaOrder::Tag::Finite: {
      const double a = alpha.value();
      const double lps = log_power_sum(nu, mu, a);
      if (lps == kInf) return kInf;
      if (lps == -kInf) return kInf;  // disjoint supports, a in (0,1)
      return clamp_nonnegative(lps / (a - 1.0));
    }
  }
  return kInf;
}

DivergenceValue total_variation(const ProbabilityMeasure& nu,
                                const ProbabilityMeasure& mu) {
  check_dims(nu, mu);
  double sum = 0.0;
  for (std::size_t x = 0; x < nu.size(); ++x) sum += std::abs(nu[x] - mu[x]);
  return std::min(1.0, 0.5 * sum);
}

DivergenceValue hellinger_divergence(const ProbabilityMeasure& nu,
                                     const ProbabilityMeasure& mu,
                                     double order) {
  check_dims(nu, mu);
  if (!(order > 0.0) || order == 1.0) {
    throw InvalidOrder("Hellinger order must be positive and != 1");
  }
  const double lps = log_power_sum(nu, mu, order);
  if (lps == kInf) return kInf;
  if (lps == -kInf) {
    // Disjoint supports: sum is 0, value is 1/(1-order) for order < 1.
    return order < 1.0 ? 1.0 / (1.0 - order) : kInf;
  }
  return clamp_nonnegative(std::expm1(lps) / (order - 1.0));
}

DivergenceValue chi_squared(const ProbabilityMeasure& nu,
                            const ProbabilityMeasure& mu) {
  return hellinger_divergence(nu, mu, 2.0);
}

DivergenceValue linf_divergence(const ProbabilityMeasure& nu,
                                const ProbabilityMeasure& mu) {
  check_dims(nu, mu);
  double worst = 0.0;
  for (std::size_t x = 0; x < nu.size(); ++x) {
    if (nu[x] == 0.0) continue;
    if (mu[x] == 0.0) return kInf;
    worst = std::max(worst, nu[x] / mu[x]);
  }
  return clamp_nonnegative(worst - 1.0);
}

DivergenceValue divergence(const ProbabilityMeasure& nu,
                           const ProbabilityMeasure& mu,
                           const DivergenceKind& kind) {
  switch (kind.family()) {
    case DivergenceKind::Family::Renyi:
      return renyi_divergence(nu, mu, kind.order());
    case DivergenceKind::Family::KL:
      return kl_divergence(nu, mu);
    case DivergenceKind::Family::TotalVariation:
      return total_variation(nu, mu);
    case DivergenceKind::Family::Hellinger:
      return hellinger_divergence(nu, mu, kind.order().value());
    case DivergenceKind::Family::ChiSquared:
      return chi_squared(nu, mu);
    case DivergenceKind::Family::LInf:
      return linf_divergence(nu, mu);
  }
  throw UnsupportedKind("unknown divergence kind");
}

DivergenceValue hellinger_to_renyi(DivergenceValue h, double alpha) {
  if (alpha == 1.0 || !(alpha > 0.0)) {
    throw InvalidOrder("conversion requires alpha > 0, alpha != 1");
  }
  if (std::isinf(h)) return kInf;
  const double scaled = (alpha - 1.0) * h;
  if (scaled <= -1.0) return kInf;  // log of a nonpositive number
  return clamp_nonnegative(std::log1p(scaled) / (alpha - 1.0));
}

}  // namespace sdpi
