#pragma once

#include <array>
#include <vector>

#include "ictqkd/errors.hpp"
#include "ictqkd/model.hpp"
#include "ictqkd/photon_stats.hpp"

namespace ictqkd {

// Declared per-setting uncertainty envelope of the source: `correlation`
// bounds the relative shift of the conditional mean (|mean/a - 1| <=
// correlation), `fluctuation` bounds the zero-mean relative deviation
// around that mean. Both are magnitudes in [0, 1).
struct CorrelationEnvelope {
  std::array<double, 3> correlation{};
  std::array<double, 3> fluctuation{};

  double correlation_of(Setting s) const;
  double fluctuation_of(Setting s) const;
  void validate() const;
};

// Per-record uncertainty boxes feeding the photon-number bounds and the
// overlap parameters: one deviation interval and one conditional-mean
// interval per full record, indexed by record rank.
struct CorrelationInputs {
  int xi = 0;
  CorrelationEnvelope envelope;
  std::vector<DeviationInterval> deviations;
  std::vector<IntensityInterval> intensities;

  void validate() const;
};

// Boxes straight from the declared envelope: every record ending in setting
// s gets mean interval a_s * [1 - corr_s, 1 + corr_s] and deviation
// interval [-fluct_s, +fluct_s].
CorrelationInputs worst_case_inputs(const Intensities& intensities,
                                    const CorrelationEnvelope& envelope, int xi);

// Photon-number bounds of every full record, indexed by record rank.
// Shared by the overlap parameters and the decoy linear programs.
struct RecordBoundsCache {
  std::vector<PhotonBounds> bounds;
  BoundsMode mode = BoundsMode::enhanced;

  int n_max() const;
};

// Entries run to max(params.n_cut, params.n_th); the enhanced/corner
// switchover follows params.n_th.
RecordBoundsCache compute_record_bounds(const ProtocolParams& params,
                                        const CorrelationInputs& inputs,
                                        BoundsMode mode, int grid = 64);

// Squared-overlap lower bounds between the future statistics that follow a
// round with setting a versus a', for all 6 ordered pairs. Diagonal entries
// stay 1.
struct TauTable {
  std::array<std::array<double, 3>, 3> values{{{1.0, 1.0, 1.0},
                                               {1.0, 1.0, 1.0},
                                               {1.0, 1.0, 1.0}}};

  double value(Setting a, Setting ap) const;
  void set(Setting a, Setting ap, double tau);
  void validate() const;
};

// Lower bound on one future round's statistical overlap:
//   1 + sum_{m=0}^{n_th} [ sqrt(lower_a[m] * lower_ap[m]) - poisson(m, aL) ]
// with aL = intensity (1 - delta_rand)(1 - delta_corr), capped at 1. The
// photon bounds belong to the two record variants of that round and
// `intensity` is the round's own setting. Replacing the tail by the Poisson
// mass above n_th requires the envelope to stay below n_th + 1.
double overlap_term_lower(const PhotonBounds& bounds_a,
                          const PhotonBounds& bounds_ap, double intensity,
                          double delta_rand, double delta_corr, int n_th);

// Squared overlap lower bound for the ordered pair (a, a'):
//   tau = { sum over future settings s_1..s_xi of (prod p_{s_i}) *
//           prod_i min over unseen prefixes of overlap_term_lower(...) }^2
// clamped to [0, 1]. xi = 0 gives 1 exactly.
double tau_lower_bound(Setting a, Setting ap, const ProtocolParams& params,
                       const CorrelationInputs& inputs,
                       const RecordBoundsCache& cache);

TauTable compute_tau_table(const ProtocolParams& params,
                           const CorrelationInputs& inputs,
                           const RecordBoundsCache& cache);
TauTable compute_tau_table(const ProtocolParams& params,
                           const CorrelationInputs& inputs, BoundsMode mode,
                           int grid = 64);

}  // namespace ictqkd
