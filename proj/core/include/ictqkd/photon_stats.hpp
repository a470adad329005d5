#pragma once

#include <vector>

#include "ictqkd/errors.hpp"

namespace ictqkd {

// Closed interval of relative intensity deviations. Zero-mean fluctuation
// distributions are supported on it, so lo <= 0 <= hi.
struct DeviationInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  void validate() const;
};

// Closed interval of conditional mean intensities, 0 <= lo <= hi.
struct IntensityInterval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  void validate() const;
};

struct MinMax {
  double min = 0.0;
  double max = 0.0;
};

// Two-sided bounds on the conditional photon-number distribution of one
// record: lower[n] <= p_n <= upper[n] for n = 0..n_cut, each in [0, 1].
struct PhotonBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  int n_cut() const { return static_cast<int>(lower.size()) - 1; }
};

// Which photon-number bounds the pipeline uses. `enhanced` brackets the
// corrected integrand over the deviation/intensity box; `monotone` is the
// corner-evaluation baseline derived from pmf monotonicity alone.
enum class BoundsMode { enhanced, monotone };

// e^{-mean} mean^n / n!, evaluated in log space. mean >= 0, n >= 0.
double poisson_pmf(int n, double mean);

// sum_{m=0}^{n} poisson_pmf(m, mean).
double poisson_cdf(int n, double mean);

// First-order-corrected Poisson integrand. Averaging it against any
// zero-mean fluctuation density reproduces the conditional photon-number
// probability, so its box extrema bracket that probability:
//   kernel(n, x, y) = (y^n e^{-y} / n!) * (e^{-x y} (1 + x)^n - (n - y) x)
// with x the relative deviation and y the conditional mean intensity.
double pmf_bound_kernel(int n, double deviation, double mean);

// Extrema of pmf_bound_kernel over deviation x intensity box. Dense coarse
// grid (grid x grid cells) followed by coordinate golden-section refinement
// around the best cells, expanded outward by a 1e-12 safety margin.
// Fully degenerate boxes evaluate exactly with no margin.
MinMax kernel_box_extrema(int n, const DeviationInterval& dev,
                          const IntensityInterval& intensity, int grid = 64);

// Photon-number bounds for one record. In enhanced mode, the intersection of
// the corrected-integrand box extrema with the corner evaluations for
// n <= n_th and corner evaluations alone beyond; in monotone mode, corner
// evaluations everywhere. Values are clamped to [0, 1], lower <= upper.
PhotonBounds photon_number_bounds(const IntensityInterval& intensity,
                                  const DeviationInterval& dev, int n_cut,
                                  int n_th, BoundsMode mode = BoundsMode::enhanced,
                                  int grid = 64);

}  // namespace ictqkd
