#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ictqkd/errors.hpp"
#include "ictqkd/model.hpp"
#include "ictqkd/monitor.hpp"

namespace ictqkd {

// Receiver-side channel and detection model (correlation-free): fiber loss,
// detector efficiency, dark counts, polarization misalignment.
struct ChannelParams {
  double detector_efficiency = 0.2;    // eta_det, in (0, 1]
  double dark_count = 0.0;             // p_d of Bob's detectors
  double attenuation_db_per_km = 0.2;  // alpha_att
  double distance_km = 0.0;            // L
  double misalignment = 0.0;           // delta_A, radians
  double error_correction = 1.16;      // f_EC

  // eta = eta_det * 10^{-alpha_att L / 10}
  double transmittance() const;
  void validate() const;
};

// Ground-truth source correlation shape used by the simulator and the
// analytic rate oracles. "nearest_pull" drags each conditional mean toward
// the geometrically weighted sign average of the preceding settings
// (signal +1, decoy 0, vacuum -1); it respects the declared magnitude
// envelope |mean/a_k - 1| <= magnitude(a_k) by construction.
enum class CorrelationShape { none, nearest_pull };

struct GroundTruthCorrelation {
  CorrelationShape shape = CorrelationShape::none;
  double decay = 0.5;                        // geometric weight c in [0, 1)
  std::array<double, 3> magnitude{};         // per-setting correlation envelope
  std::array<double, 3> fluctuation{};       // per-setting uniform halfwidth

  double magnitude_of(Setting s) const;
  double fluctuation_of(Setting s) const;
  void validate() const;
};

// Click probability for mean photon number `intensity`:
//   1 - (1 - p_d)^2 e^{-eta a}.
double gain(double intensity, const ChannelParams& channel);

// Error-click probability, with h = (e^{-eta a cos^2 dA} - e^{-eta a sin^2 dA})/2:
//   p_d^2/2 + p_d(1 - p_d)(1 + h) + (1 - p_d)^2 (1/2 + h - e^{-eta a}/2).
double error_gain(double intensity, const ChannelParams& channel);

// error_gain / gain (the observed QBER of that intensity).
double error_rate(double intensity, const ChannelParams& channel);

// Reference n-photon yield of the correlation-free model,
//   1 - (1 - p_d)^2 (1 - eta)^n.
double reference_yield(int n, double transmittance, double dark_count);

// Reference n-photon error yield: average over the four genuine detection
// events (none / wrong-only / correct-only / both) of their dark-count-aware
// bit-error probabilities.
double reference_error_yield(int n, double transmittance, double dark_count,
                             double misalignment);

// True conditional mean intensity of the record's latest pulse.
double ground_truth_mean(const Record& record, const Intensities& intensities,
                         const GroundTruthCorrelation& truth);

// Expected monitor click rate of the record under the ground-truth model
// (uniform fluctuation with the current setting's halfwidth).
double analytic_monitor_rate(const Record& record, const Intensities& intensities,
                             const GroundTruthCorrelation& truth,
                             const MonitorParams& monitor);

// Sequential Monte Carlo of the local monitor: i.i.d. settings per round,
// length-xi history, uniform intensity fluctuation, Bernoulli click. The
// first xi rounds only seed the history, so trials sum to rounds - xi.
// Deterministic for a fixed seed.
std::vector<MonitorRecordStats> simulate_monitor_clicks(
    const ProtocolParams& params, const GroundTruthCorrelation& truth,
    const MonitorParams& monitor, std::int64_t rounds, std::uint64_t seed);

}  // namespace ictqkd
