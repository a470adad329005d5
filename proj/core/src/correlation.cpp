#include "ictqkd/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace ictqkd {

namespace {

void check_magnitude(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0 || value >= 1.0) {
    throw DomainError(std::string(name) + " must lie in [0, 1)");
  }
}

std::size_t records_for(int xi) {
  if (xi < 0) throw DomainError("correlation range must be nonnegative");
  if (xi > kMaxCorrelationRange) {
    throw CapacityError("correlation range exceeds the enumeration cap");
  }
  std::size_t count = 1;
  for (int i = 0; i <= xi; ++i) count *= 3;
  return count;
}

}  // namespace

double CorrelationEnvelope::correlation_of(Setting s) const {
  return correlation[static_cast<std::size_t>(s)];
}

double CorrelationEnvelope::fluctuation_of(Setting s) const {
  return fluctuation[static_cast<std::size_t>(s)];
}

void CorrelationEnvelope::validate() const {
  for (double c : correlation) check_magnitude(c, "correlation magnitude");
  for (double d : fluctuation) check_magnitude(d, "fluctuation halfwidth");
}

void CorrelationInputs::validate() const {
  envelope.validate();
  const std::size_t expected = records_for(xi);
  if (deviations.size() != expected || intensities.size() != expected) {
    throw DomainError("record boxes do not match the correlation range");
  }
  for (const auto& dev : deviations) dev.validate();
  for (const auto& interval : intensities) interval.validate();
}

CorrelationInputs worst_case_inputs(const Intensities& intensities,
                                    const CorrelationEnvelope& envelope, int xi) {
  intensities.validate();
  envelope.validate();
  CorrelationInputs inputs;
  inputs.xi = xi;
  inputs.envelope = envelope;
  for (const auto& record : enumerate_records(xi)) {
    const Setting s = record.last();
    const double a = intensities.value(s);
    const double corr = envelope.correlation_of(s);
    inputs.intensities.push_back({a * (1.0 - corr), a * (1.0 + corr)});
    inputs.deviations.push_back(
        {-envelope.fluctuation_of(s), envelope.fluctuation_of(s)});
  }
  return inputs;
}

int RecordBoundsCache::n_max() const {
  if (bounds.empty()) return -1;
  return bounds.front().n_cut();
}

RecordBoundsCache compute_record_bounds(const ProtocolParams& params,
                                        const CorrelationInputs& inputs,
                                        BoundsMode mode, int grid) {
  params.validate();
  inputs.validate();
  if (params.xi != inputs.xi) {
    throw DomainError("correlation inputs built for a different range");
  }
  const int n_max = std::max(params.n_cut, params.n_th);
  RecordBoundsCache cache;
  cache.mode = mode;
  cache.bounds.reserve(inputs.intensities.size());
  for (std::size_t r = 0; r < inputs.intensities.size(); ++r) {
    cache.bounds.push_back(photon_number_bounds(inputs.intensities[r],
                                                inputs.deviations[r], n_max,
                                                params.n_th, mode, grid));
  }
  return cache;
}

double TauTable::value(Setting a, Setting ap) const {
  return values[static_cast<std::size_t>(a)][static_cast<std::size_t>(ap)];
}

void TauTable::set(Setting a, Setting ap, double tau) {
  values[static_cast<std::size_t>(a)][static_cast<std::size_t>(ap)] = tau;
}

void TauTable::validate() const {
  for (const auto& row : values) {
    for (double tau : row) {
      if (!std::isfinite(tau) || tau < 0.0 || tau > 1.0) {
        throw DomainError("overlap parameter outside [0, 1]");
      }
    }
  }
}

double overlap_term_lower(const PhotonBounds& bounds_a,
                          const PhotonBounds& bounds_ap, double intensity,
                          double delta_rand, double delta_corr, int n_th) {
  if (n_th < 0) throw DomainError("tail threshold must be nonnegative");
  if (bounds_a.n_cut() < n_th || bounds_ap.n_cut() < n_th) {
    throw DomainError("photon bounds shorter than the tail threshold");
  }
  if (!std::isfinite(intensity) || intensity < 0.0) {
    throw DomainError("intensity must be nonnegative");
  }
  check_magnitude(delta_rand, "fluctuation halfwidth");
  check_magnitude(delta_corr, "correlation magnitude");

  const double floor = intensity * (1.0 - delta_rand) * (1.0 - delta_corr);
  double term = 1.0;
  for (int m = 0; m <= n_th; ++m) {
    const double la = bounds_a.lower[m];
    const double lb = bounds_ap.lower[m];
    // Equal factors skip the sqrt round trip so symmetric inputs telescope
    // exactly.
    const double mean_mass = la == lb ? la : std::sqrt(la * lb);
    term += mean_mass - poisson_pmf(m, floor);
  }
  return std::clamp(term, 0.0, 1.0);
}

namespace {

// Depth-first sum over future setting assignments. Each tree node fixes one
// more future round and multiplies in that round's worst-case overlap term.
struct TauEvaluator {
  const ProtocolParams& params;
  const CorrelationInputs& inputs;
  const RecordBoundsCache& cache;
  int mid_a = 0;
  int mid_ap = 0;
  std::array<std::size_t, kMaxCorrelationRange + 2> pow3{};

  double setting_probability(int s) const {
    return params.probabilities.value(static_cast<Setting>(s));
  }

  // Minimum overlap term of round k+i over the rounds before k that its
  // record still spans. srank encodes s_1..s_i in base 3.
  double round_term(int i, std::size_t srank) const {
    const int xi = params.xi;
    const int own = static_cast<int>(srank % 3);
    const Setting s = static_cast<Setting>(own);
    const double a = params.intensities.value(s);
    const double rand = inputs.envelope.fluctuation_of(s);
    const double corr = inputs.envelope.correlation_of(s);

    const int prefix_len = xi - i;
    double best = 1.0;
    for (std::size_t urank = 0; urank < pow3[prefix_len]; ++urank) {
      // Skip prefixes containing settings the protocol never emits.
      std::size_t digits = urank;
      bool possible = true;
      for (int d = 0; d < prefix_len; ++d) {
        if (setting_probability(static_cast<int>(digits % 3)) == 0.0) {
          possible = false;
          break;
        }
        digits /= 3;
      }
      if (!possible) continue;

      const std::size_t head = urank * 3;
      const std::size_t rank_a = (head + mid_a) * pow3[i] + srank;
      const std::size_t rank_ap = (head + mid_ap) * pow3[i] + srank;
      const double term =
          overlap_term_lower(cache.bounds[rank_a], cache.bounds[rank_ap], a,
                             rand, corr, params.n_th);
      best = std::min(best, term);
    }
    return best;
  }

  double sum(int i, std::size_t srank) const {
    if (i == params.xi) return 1.0;
    double total = 0.0;
    for (int s = 0; s < kNumSettings; ++s) {
      const double p = setting_probability(s);
      if (p == 0.0) continue;
      const std::size_t next = srank * 3 + static_cast<std::size_t>(s);
      total += p * round_term(i + 1, next) * sum(i + 1, next);
    }
    return total;
  }
};

}  // namespace

double tau_lower_bound(Setting a, Setting ap, const ProtocolParams& params,
                       const CorrelationInputs& inputs,
                       const RecordBoundsCache& cache) {
  params.validate();
  inputs.validate();
  if (a == ap) throw DomainError("overlap pair must use distinct settings");
  if (params.xi != inputs.xi) {
    throw DomainError("correlation inputs built for a different range");
  }
  if (cache.bounds.size() != inputs.intensities.size()) {
    throw DomainError("record bounds cache does not match the record set");
  }
  if (cache.n_max() < params.n_th) {
    throw DomainError("record bounds cache shorter than the tail threshold");
  }
  // The tail of each overlap term replaces the true statistics by the
  // Poisson mass of the envelope floor; that needs the envelope ceiling on
  // every emitted setting to stay below n_th + 1.
  for (Setting s : kSettings) {
    if (params.probabilities.value(s) == 0.0) continue;
    const double ceiling = params.intensities.value(s) *
                           (1.0 + inputs.envelope.correlation_of(s)) *
                           (1.0 + inputs.envelope.fluctuation_of(s));
    if (ceiling > params.n_th + 1.0) {
      throw DomainError("tail threshold below the intensity envelope ceiling");
    }
  }
  if (params.xi == 0) return 1.0;

  TauEvaluator eval{params, inputs, cache};
  eval.mid_a = static_cast<int>(a);
  eval.mid_ap = static_cast<int>(ap);
  eval.pow3[0] = 1;
  for (std::size_t i = 1; i < eval.pow3.size(); ++i) {
    eval.pow3[i] = eval.pow3[i - 1] * 3;
  }
  const double total = eval.sum(0, 0);
  return std::clamp(total * total, 0.0, 1.0);
}

TauTable compute_tau_table(const ProtocolParams& params,
                           const CorrelationInputs& inputs,
                           const RecordBoundsCache& cache) {
  TauTable table;
  for (Setting a : kSettings) {
    for (Setting ap : kSettings) {
      if (a == ap) continue;
      table.set(a, ap, tau_lower_bound(a, ap, params, inputs, cache));
    }
  }
  return table;
}

TauTable compute_tau_table(const ProtocolParams& params,
                           const CorrelationInputs& inputs, BoundsMode mode,
                           int grid) {
  return compute_tau_table(params, inputs,
                           compute_record_bounds(params, inputs, mode, grid));
}

}  // namespace ictqkd
