#include "ictqkd/photon_stats.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ictqkd {
namespace {

// Outward expansion applied to optimized extrema so the returned interval
// still brackets the true extremum despite finite search resolution.
constexpr double kExtremaMargin = 1e-12;

constexpr double kInvPhi = 0.6180339887498949;

// Golden-section minimizer; returns (argmin, min). f must be unimodal on
// [a, b] for exactness, otherwise this refines the basin it was given.
template <typename F>
std::pair<double, double> golden_argmin(F&& f, double a, double b) {
  if (!(b > a)) {
    return {a, f(a)};
  }
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 90; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    if ((b - a) <= 1e-14 * (1.0 + std::abs(a) + std::abs(b))) {
      break;
    }
  }
  return f1 <= f2 ? std::pair<double, double>{x1, f1}
                  : std::pair<double, double>{x2, f2};
}

// Corner-evaluation bounds from pmf monotonicity in the mean. The pmf is
// unimodal with its peak at mean == n, so the maximum may sit at an interior
// point of [a, b]; the corner formulas alone are only valid below the peak.
MinMax corner_bounds(int n, double a, double b) {
  if (n == 0) {
    return {poisson_pmf(0, b), poisson_pmf(0, a)};
  }
  const double lo = std::min(poisson_pmf(n, a), poisson_pmf(n, b));
  const double peak = std::clamp(static_cast<double>(n), a, b);
  return {lo, poisson_pmf(n, peak)};
}

}  // namespace

void DeviationInterval::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw DomainError("deviation interval must be finite");
  }
  if (!(lo <= 0.0 && 0.0 <= hi)) {
    throw DomainError("deviation interval must contain 0 (zero-mean support)");
  }
  if (lo <= -1.0) {
    throw DomainError("deviation lower bound must exceed -1");
  }
}

void IntensityInterval::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw DomainError("intensity interval must be finite");
  }
  if (!(0.0 <= lo && lo <= hi)) {
    throw DomainError("intensity interval must satisfy 0 <= lo <= hi");
  }
}

double poisson_pmf(int n, double mean) {
  if (n < 0) {
    throw DomainError("poisson_pmf: n must be >= 0");
  }
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("poisson_pmf: mean must be finite and >= 0");
  }
  if (mean == 0.0) {
    return n == 0 ? 1.0 : 0.0;
  }
  return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

double poisson_cdf(int n, double mean) {
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) {
    sum += poisson_pmf(m, mean);
  }
  return std::min(sum, 1.0);
}

double pmf_bound_kernel(int n, double deviation, double mean) {
  if (n < 0) {
    throw DomainError("pmf_bound_kernel: n must be >= 0");
  }
  if (!(deviation > -1.0) || !std::isfinite(deviation)) {
    throw DomainError("pmf_bound_kernel: deviation must be finite and > -1");
  }
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("pmf_bound_kernel: mean must be finite and >= 0");
  }
  const double weight = poisson_pmf(n, mean);
  const double bracket = std::exp(-deviation * mean) * std::pow(1.0 + deviation, n) -
                         (static_cast<double>(n) - mean) * deviation;
  return weight * bracket;
}

MinMax kernel_box_extrema(int n, const DeviationInterval& dev,
                          const IntensityInterval& intensity, int grid) {
  dev.validate();
  intensity.validate();
  if (n < 0) {
    throw DomainError("kernel_box_extrema: n must be >= 0");
  }
  if (grid < 2) {
    throw DomainError("kernel_box_extrema: grid must be >= 2");
  }

  if (dev.degenerate() && intensity.degenerate()) {
    const double v = pmf_bound_kernel(n, dev.lo, intensity.lo);
    return {v, v};
  }

  const int gx = dev.degenerate() ? 0 : grid;
  const int gy = intensity.degenerate() ? 0 : grid;
  const double sx = gx > 0 ? dev.width() / gx : 0.0;
  const double sy = gy > 0 ? intensity.width() / gy : 0.0;

  double best_min = 0.0, best_max = 0.0;
  double min_x = dev.lo, min_y = intensity.lo, max_x = dev.lo, max_y = intensity.lo;
  bool first = true;
  for (int i = 0; i <= gx; ++i) {
    const double x = (i == gx) ? dev.hi : dev.lo + sx * i;
    for (int j = 0; j <= gy; ++j) {
      const double y = (j == gy) ? intensity.hi : intensity.lo + sy * j;
      const double v = pmf_bound_kernel(n, x, y);
      if (first || v < best_min) {
        best_min = v;
        min_x = x;
        min_y = y;
      }
      if (first || v > best_max) {
        best_max = v;
        max_x = x;
        max_y = y;
      }
      first = false;
    }
  }

  // Coordinate golden-section refinement around the winning cells. sign=+1
  // refines the minimum, sign=-1 the maximum.
  const auto refine = [&](double x0, double y0, double v0, double sign) {
    double x = x0, y = y0;
    double best = sign * v0;
    for (int sweep = 0; sweep < 3; ++sweep) {
      if (gx > 0) {
        const double a = std::max(dev.lo, x - sx);
        const double b = std::min(dev.hi, x + sx);
        auto [ax, av] =
            golden_argmin([&](double t) { return sign * pmf_bound_kernel(n, t, y); }, a, b);
        if (av < best) {
          best = av;
          x = ax;
        }
      }
      if (gy > 0) {
        const double a = std::max(intensity.lo, y - sy);
        const double b = std::min(intensity.hi, y + sy);
        auto [ay, av] =
            golden_argmin([&](double t) { return sign * pmf_bound_kernel(n, x, t); }, a, b);
        if (av < best) {
          best = av;
          y = ay;
        }
      }
    }
    return sign * best;
  };

  const double refined_min = refine(min_x, min_y, best_min, 1.0);
  const double refined_max = refine(max_x, max_y, best_max, -1.0);
  return {refined_min - kExtremaMargin, refined_max + kExtremaMargin};
}

PhotonBounds photon_number_bounds(const IntensityInterval& intensity,
                                  const DeviationInterval& dev, int n_cut, int n_th,
                                  BoundsMode mode, int grid) {
  intensity.validate();
  dev.validate();
  if (n_cut < 0) {
    throw DomainError("photon_number_bounds: n_cut must be >= 0");
  }
  if (n_th < 0) {
    throw DomainError("photon_number_bounds: n_th must be >= 0");
  }

  const double a = intensity.lo * (1.0 + dev.lo);
  const double b = intensity.hi * (1.0 + dev.hi);

  PhotonBounds out;
  out.lower.resize(static_cast<std::size_t>(n_cut) + 1);
  out.upper.resize(static_cast<std::size_t>(n_cut) + 1);
  for (int n = 0; n <= n_cut; ++n) {
    MinMax mm = corner_bounds(n, a, b);
    if (mode == BoundsMode::enhanced && n <= n_th) {
      // Both bracketings are valid, so their intersection is too. The box
      // extrema are the tighter pair except on strongly asymmetric deviation
      // intervals, where a corner bound can win for small n.
      const MinMax box = kernel_box_extrema(n, dev, intensity, grid);
      mm.min = std::max(mm.min, box.min);
      mm.max = std::min(mm.max, box.max);
    }
    double lower = std::clamp(mm.min, 0.0, 1.0);
    double upper = std::clamp(mm.max, 0.0, 1.0);
    lower = std::min(lower, upper);
    out.lower[static_cast<std::size_t>(n)] = lower;
    out.upper[static_cast<std::size_t>(n)] = upper;
  }
  return out;
}

}  // namespace ictqkd
