#ifndef SDPI_NELDER_MEAD_HPP
#define SDPI_NELDER_MEAD_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace sdpi::detail {

struct NelderMeadResult {
  std::vector<double> point;
  double value = -std::numeric_limits<double>::infinity();
};

// Standard downhill-simplex maximizer (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5). Deterministic for a fixed start.
inline NelderMeadResult nelder_mead_maximize(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, double step, int max_iterations,
    double tolerance) {
  const std::size_t dim = start.size();
  const std::size_t m = dim + 1;
  std::vector<std::vector<double>> pts(m, start);
  for (std::size_t i = 1; i < m; ++i) pts[i][i - 1] += step;
  std::vector<double> vals(m);
  for (std::size_t i = 0; i < m; ++i) vals[i] = objective(pts[i]);

  std::vector<std::size_t> order(m);
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    sort_order();
    const double best = vals[order[0]];
    const double worst = vals[order[m - 1]];
    if (std::isfinite(best) && std::isfinite(worst) &&
        best - worst <= tolerance * (1.0 + std::abs(best))) {
      break;
    }

    const std::size_t iw = order[m - 1];
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == iw) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[i][d];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coeff) {
      std::vector<double> p(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        p[d] = centroid[d] + coeff * (centroid[d] - pts[iw][d]);
      }
      return p;
    };

    const std::vector<double> reflected = blend(1.0);
    const double fr = objective(reflected);
    const double second_worst = vals[order[m - 2]];
    if (fr > vals[order[0]]) {
      const std::vector<double> expanded = blend(2.0);
      const double fe = objective(expanded);
      if (fe > fr) {
        pts[iw] = expanded;
        vals[iw] = fe;
      } else {
        pts[iw] = reflected;
        vals[iw] = fr;
      }
    } else if (fr > second_worst) {
      pts[iw] = reflected;
      vals[iw] = fr;
    } else {
      const std::vector<double> contracted = blend(-0.5);
      const double fc = objective(contracted);
      if (fc > vals[iw]) {
        pts[iw] = contracted;
        vals[iw] = fc;
      } else {
        const auto& anchor = pts[order[0]];
        for (std::size_t i = 0; i < m; ++i) {
          if (i == order[0]) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            pts[i][d] = anchor[d] + 0.5 * (pts[i][d] - anchor[d]);
          }
          vals[i] = objective(pts[i]);
        }
      }
    }
  }

  sort_order();
  return NelderMeadResult{pts[order[0]], vals[order[0]]};
}

// One-dimensional golden-section maximization on [lo, hi].
inline double golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, int iterations,
                                      double* best_value = nullptr) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc > fd) {
    if (best_value) *best_value = fc;
    return c;
  }
  if (best_value) *best_value = fd;
  return d;
}

}  // namespace sdpi::detail

#endif  // SDPI_NELDER_MEAD_HPP
