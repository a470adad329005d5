#include "ictqkd/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ictqkd {
namespace {

// sinh(t)/t with a series fallback near 0.
double sinhc(double t) {
  if (std::abs(t) < 1e-5) {
    const double t2 = t * t;
    return 1.0 + t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sinh(t) / t;
}

void check_efficiency(double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw DomainError("monitor efficiency must lie in (0, 1]");
  }
}

}  // namespace

void MonitorParams::validate() const {
  check_efficiency(efficiency);
  if (!(efficiency_uncertainty >= 0.0 && efficiency_uncertainty < 1.0)) {
    throw DomainError("monitor efficiency uncertainty must lie in [0, 1)");
  }
  if (!(dark_count >= 0.0 && dark_count < 1.0)) {
    throw DomainError("monitor dark count must lie in [0, 1)");
  }
  if (!(afterpulse >= 0.0 && afterpulse < 1.0)) {
    throw DomainError("monitor afterpulse must lie in [0, 1)");
  }
}

RescaledNondetection rescaled_nondetection(double click_rate,
                                           const MonitorParams& params) {
  params.validate();
  if (!(click_rate >= 0.0 && click_rate <= 1.0)) {
    throw DomainError("rescaled_nondetection: click rate must lie in [0, 1]");
  }
  const double raw =
      (1.0 - click_rate) / ((1.0 - params.dark_count) * (1.0 - params.afterpulse));
  if (raw > 1.0) {
    return {1.0, true};
  }
  return {raw, false};
}

double intensity_upper_bound(double scaled, double efficiency, double zeta) {
  check_efficiency(efficiency);
  if (!(scaled >= 0.0 && scaled <= 1.0)) {
    throw DomainError("intensity_upper_bound: scaled nondetection outside [0, 1]");
  }
  if (!(zeta >= 0.0)) {
    throw DomainError("intensity_upper_bound: zeta must be >= 0");
  }
  const double q = 1.0 + zeta;
  const double one_minus = 1.0 - scaled;
  const double radicand = 1.0 - 2.0 * one_minus * q;
  if (radicand < 0.0) {
    throw EstimationError(
        "monitor click rate too high for the Taylor intensity bounds");
  }
  // Stable form of (1 - sqrt(radicand)) / (efficiency * q).
  return 2.0 * one_minus / (efficiency * (1.0 + std::sqrt(radicand)));
}

double intensity_lower_bound(double scaled, double efficiency, double alpha_upper) {
  check_efficiency(efficiency);
  if (!(scaled >= 0.0 && scaled <= 1.0)) {
    throw DomainError("intensity_lower_bound: scaled nondetection outside [0, 1]");
  }
  if (!(alpha_upper >= 0.0)) {
    throw DomainError("intensity_lower_bound: alpha_upper must be >= 0");
  }
  const double one_minus = 1.0 - scaled;
  const double lower =
      one_minus / efficiency + one_minus * one_minus / (2.0 * efficiency) -
      efficiency * efficiency * alpha_upper * alpha_upper * alpha_upper / 6.0;
  return std::max(lower, 0.0);
}

IntensityInterval estimate_intensity(double click_rate, const MonitorParams& params,
                                     const DeviationInterval& dev) {
  dev.validate();
  const RescaledNondetection scaled = rescaled_nondetection(click_rate, params);
  const double zeta = std::max(dev.lo * dev.lo, dev.hi * dev.hi);

  // Both bounds scale as 1/eta at fixed scaled nondetection, so the
  // uncertainty interval's endpoints give the exact worst cases.
  const double u = params.efficiency_uncertainty;
  const double eta_lo = params.efficiency * (1.0 - u);
  const double eta_hi = params.efficiency * (1.0 + u);
  const double upper = intensity_upper_bound(scaled.value, eta_lo, zeta);
  const double lower = intensity_lower_bound(
      scaled.value, eta_hi, intensity_upper_bound(scaled.value, eta_hi, zeta));
  return {std::min(lower, upper), upper};
}

std::vector<IntensityInterval> estimate_intensity_intervals(
    const std::vector<MonitorRecordStats>& stats, const MonitorParams& params,
    const std::vector<DeviationInterval>& deviations) {
  if (stats.size() != deviations.size()) {
    throw DomainError("estimate_intensity_intervals: stats/deviations size mismatch");
  }
  std::vector<IntensityInterval> out;
  out.reserve(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    try {
      out.push_back(
          estimate_intensity(stats[i].click_probability, params, deviations[i]));
    } catch (const Error& e) {
      throw EstimationError("record " + stats[i].record.label() + ": " + e.what());
    }
  }
  return out;
}

double monitor_click_rate(double mean_intensity, double uniform_halfwidth,
                          const MonitorParams& params) {
  params.validate();
  if (!(mean_intensity >= 0.0)) {
    throw DomainError("monitor_click_rate: mean intensity must be >= 0");
  }
  if (!(uniform_halfwidth >= 0.0 && uniform_halfwidth < 1.0)) {
    throw DomainError("monitor_click_rate: uniform halfwidth must lie in [0, 1)");
  }
  const double t = params.efficiency * mean_intensity;
  const double no_click = (1.0 - params.dark_count) * (1.0 - params.afterpulse) *
                          std::exp(-t) * sinhc(t * uniform_halfwidth);
  return 1.0 - no_click;
}

}  // namespace ictqkd
