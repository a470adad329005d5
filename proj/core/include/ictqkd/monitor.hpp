#pragma once

#include <cstdint>
#include <vector>

#include "ictqkd/errors.hpp"
#include "ictqkd/model.hpp"
#include "ictqkd/photon_stats.hpp"

namespace ictqkd {

// Low-efficiency intensity monitor tapping the source output.
struct MonitorParams {
  double efficiency = 1e-3;             // eta_m, in (0, 1]
  double efficiency_uncertainty = 0.0;  // relative; true value in eta_m * [1-u, 1+u]
  double dark_count = 0.0;              // per-gate dark-click probability
  double afterpulse = 0.0;              // afterpulse probability

  void validate() const;
};

// Per-record monitor click statistics. click_probability is clicks/trials in
// empirical mode and the analytic rate in model mode.
struct MonitorRecordStats {
  Record record;
  std::int64_t trials = 0;
  std::int64_t clicks = 0;
  double click_probability = 0.0;
};

// (1 - D) / [(1 - p_d)(1 - p_ap)], clamped to <= 1. Sampling noise can push
// the raw ratio above 1; the flag records when that happened.
struct RescaledNondetection {
  double value = 1.0;
  bool clamped = false;
};
RescaledNondetection rescaled_nondetection(double click_rate,
                                           const MonitorParams& params);

// Second-order Taylor upper bound on the conditional mean intensity:
//   [1 - sqrt(1 - 2(1 - scaled)(1 + zeta))] / [eta (1 + zeta)],
// zeta = max((dev.lo)^2, (dev.hi)^2). Throws EstimationError when the
// radicand is negative (click rate too high for the expansion).
double intensity_upper_bound(double scaled, double efficiency, double zeta);

// Third-order lower bound, clamped below at 0:
//   (1 - scaled)/eta + (1 - scaled)^2/(2 eta) - eta^2 alpha_upper^3 / 6,
// with alpha_upper from intensity_upper_bound on the same inputs.
double intensity_lower_bound(double scaled, double efficiency, double alpha_upper);

// Two-sided bound on one record's conditional mean intensity from its click
// rate, valid for any zero-mean fluctuation supported on dev. The efficiency
// uncertainty is worst-cased at the interval endpoints (both bounds scale as
// 1/eta, so endpoints are exact).
IntensityInterval estimate_intensity(double click_rate, const MonitorParams& params,
                                     const DeviationInterval& dev);

// Batch form over all records; deviations[i] belongs to stats[i]. Errors are
// rethrown with the offending record's label prepended.
std::vector<IntensityInterval> estimate_intensity_intervals(
    const std::vector<MonitorRecordStats>& stats, const MonitorParams& params,
    const std::vector<DeviationInterval>& deviations);

// Expected monitor click rate when the pulse intensity is mean * (1 + delta)
// with delta uniform on [-uniform_halfwidth, uniform_halfwidth]:
//   D = 1 - (1 - p_d)(1 - p_ap) e^{-t} sinh(t d)/(t d),  t = eta_m * mean.
double monitor_click_rate(double mean_intensity, double uniform_halfwidth,
                          const MonitorParams& params);

}  // namespace ictqkd
