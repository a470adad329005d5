#pragma once

#include <vector>

#include "ictqkd/correlation.hpp"
#include "ictqkd/lp.hpp"
#include "ictqkd/model.hpp"

namespace ictqkd {

// Conditional per-record click statistics, already divided by the basis-match
// and setting-probability prefactors. Indexed by full-record rank.
struct ObservedStatistics {
  std::vector<double> gain;
  std::vector<double> error_gain;

  // `gain` must cover every full record; `error_gain` may be empty when only
  // yield programs are built.
  void validate(int xi) const;
};

enum class YieldTarget { z_single_photon, x_single_photon };

// Linear program over per-record n-photon yields y_{n,r}: two decoy rows per
// record (the upper one carries the 1 - sum p_n^L truncation slack), a
// tangent pair per shared-prefix setting pair and photon number, and [0,1]
// box rows. The objective is the basis- and probability-weighted
// signal-setting single-photon yield, minimized.
LinearProgram build_yield_lp(const ObservedStatistics& obs,
                             const RecordBoundsCache& bounds, const TauTable& taus,
                             const std::vector<double>& reference_yields,
                             const ProtocolParams& params, YieldTarget target);

// Same structure over n-photon error yields h_{n,r}, with tangents anchored
// at the reference error yields. The objective weights h_1 by the upper
// single-photon mass and is maximized.
LinearProgram build_error_lp(const ObservedStatistics& obs,
                             const RecordBoundsCache& bounds, const TauTable& taus,
                             const std::vector<double>& reference_error_yields,
                             const ProtocolParams& params);

}  // namespace ictqkd
