#include "ictqkd/channel.hpp"

#include <cmath>
#include <random>

namespace ictqkd {

namespace {

void check_probability(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0 || value >= 1.0) {
    throw DomainError(std::string(name) + " must lie in [0, 1)");
  }
}

// Uniform double in [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

double ChannelParams::transmittance() const {
  return detector_efficiency *
         std::pow(10.0, -attenuation_db_per_km * distance_km / 10.0);
}

void ChannelParams::validate() const {
  if (!std::isfinite(detector_efficiency) || detector_efficiency <= 0.0 ||
      detector_efficiency > 1.0) {
    throw DomainError("detector efficiency must lie in (0, 1]");
  }
  check_probability(dark_count, "dark count probability");
  if (!std::isfinite(attenuation_db_per_km) || attenuation_db_per_km < 0.0) {
    throw DomainError("attenuation must be nonnegative");
  }
  if (!std::isfinite(distance_km) || distance_km < 0.0) {
    throw DomainError("distance must be nonnegative");
  }
  if (!std::isfinite(misalignment)) {
    throw DomainError("misalignment must be finite");
  }
  if (!std::isfinite(error_correction) || error_correction < 1.0) {
    throw DomainError("error correction efficiency must be at least 1");
  }
}

double GroundTruthCorrelation::magnitude_of(Setting s) const {
  return magnitude[static_cast<std::size_t>(s)];
}

double GroundTruthCorrelation::fluctuation_of(Setting s) const {
  return fluctuation[static_cast<std::size_t>(s)];
}

void GroundTruthCorrelation::validate() const {
  if (!std::isfinite(decay) || decay < 0.0 || decay >= 1.0) {
    throw DomainError("correlation decay must lie in [0, 1)");
  }
  for (double m : magnitude) check_probability(m, "correlation magnitude");
  for (double d : fluctuation) check_probability(d, "fluctuation halfwidth");
}

double gain(double intensity, const ChannelParams& channel) {
  if (!std::isfinite(intensity) || intensity < 0.0) {
    throw DomainError("intensity must be nonnegative");
  }
  const double pd = channel.dark_count;
  const double eta = channel.transmittance();
  return 1.0 - (1.0 - pd) * (1.0 - pd) * std::exp(-eta * intensity);
}

double error_gain(double intensity, const ChannelParams& channel) {
  if (!std::isfinite(intensity) || intensity < 0.0) {
    throw DomainError("intensity must be nonnegative");
  }
  const double pd = channel.dark_count;
  const double eta = channel.transmittance();
  const double cos2 = std::cos(channel.misalignment) * std::cos(channel.misalignment);
  const double sin2 = 1.0 - cos2;
  const double h = (std::exp(-eta * intensity * cos2) -
                    std::exp(-eta * intensity * sin2)) /
                   2.0;
  return pd * pd / 2.0 + pd * (1.0 - pd) * (1.0 + h) +
         (1.0 - pd) * (1.0 - pd) *
             (0.5 + h - std::exp(-eta * intensity) / 2.0);
}

double error_rate(double intensity, const ChannelParams& channel) {
  const double q = gain(intensity, channel);
  if (q <= 0.0) return 0.0;
  return error_gain(intensity, channel) / q;
}

double reference_yield(int n, double transmittance, double dark_count) {
  if (n < 0) throw DomainError("photon number must be nonnegative");
  if (!std::isfinite(transmittance) || transmittance < 0.0 || transmittance > 1.0) {
    throw DomainError("transmittance must lie in [0, 1]");
  }
  check_probability(dark_count, "dark count probability");
  const double miss = std::pow(1.0 - transmittance, n);
  return 1.0 - (1.0 - dark_count) * (1.0 - dark_count) * miss;
}

double reference_error_yield(int n, double transmittance, double dark_count,
                             double misalignment) {
  if (n < 0) throw DomainError("photon number must be nonnegative");
  if (!std::isfinite(transmittance) || transmittance < 0.0 || transmittance > 1.0) {
    throw DomainError("transmittance must lie in [0, 1]");
  }
  check_probability(dark_count, "dark count probability");
  if (!std::isfinite(misalignment)) {
    throw DomainError("misalignment must be finite");
  }
  const double pd = dark_count;
  const double cos2 = std::cos(misalignment) * std::cos(misalignment);
  const double sin2 = 1.0 - cos2;

  // Genuine detection patterns for n photons: none, wrong detector only,
  // correct detector only, both.
  const double p_none = std::pow(1.0 - transmittance, n);
  const double p_wrong = std::pow(1.0 - cos2 * transmittance, n) - p_none;
  const double p_correct = std::pow(1.0 - sin2 * transmittance, n) - p_none;
  const double p_both = 1.0 - p_none - p_wrong - p_correct;

  // Bit-error probability of each pattern once dark counts and random
  // double-click assignment are folded in.
  const double e_none = pd * (1.0 - pd) + pd * pd / 2.0;
  const double e_wrong = (1.0 - pd) * (1.0 - pd) +
                         1.5 * pd * (1.0 - pd) + pd * pd / 2.0;
  const double e_correct = 0.5 * pd * (1.0 - pd) + pd * pd / 2.0;
  const double e_both = 0.5;

  return p_none * e_none + p_wrong * e_wrong + p_correct * e_correct +
         p_both * e_both;
}

double ground_truth_mean(const Record& record, const Intensities& intensities,
                         const GroundTruthCorrelation& truth) {
  const double base = intensities.value(record.last());
  if (truth.shape == CorrelationShape::none || record.length() <= 1) {
    return base;
  }
  // Geometric sign average over the preceding settings, most recent first.
  double weight = 1.0;
  double numerator = 0.0;
  double denominator = 0.0;
  const auto& entries = record.entries();
  for (std::size_t i = entries.size() - 1; i-- > 0;) {
    double sign = 0.0;
    if (entries[i] == Setting::signal) sign = 1.0;
    if (entries[i] == Setting::vacuum) sign = -1.0;
    numerator += weight * sign;
    denominator += weight;
    weight *= truth.decay;
  }
  const double pull = numerator / denominator;
  return base * (1.0 + truth.magnitude_of(record.last()) * pull);
}

double analytic_monitor_rate(const Record& record, const Intensities& intensities,
                             const GroundTruthCorrelation& truth,
                             const MonitorParams& monitor) {
  return monitor_click_rate(ground_truth_mean(record, intensities, truth),
                            truth.fluctuation_of(record.last()), monitor);
}

std::vector<MonitorRecordStats> simulate_monitor_clicks(
    const ProtocolParams& params, const GroundTruthCorrelation& truth,
    const MonitorParams& monitor, std::int64_t rounds, std::uint64_t seed) {
  params.validate();
  truth.validate();
  monitor.validate();
  if (rounds < 0) throw DomainError("round count must be nonnegative");

  const int xi = params.xi;
  const std::vector<Record> records = enumerate_records(xi);
  std::vector<MonitorRecordStats> stats(records.size());
  std::vector<double> exponent(records.size());
  std::vector<double> halfwidth(records.size());
  const double prefactor =
      (1.0 - monitor.dark_count) * (1.0 - monitor.afterpulse);
  for (std::size_t r = 0; r < records.size(); ++r) {
    stats[r].record = records[r];
    exponent[r] = monitor.efficiency *
                  ground_truth_mean(records[r], params.intensities, truth);
    halfwidth[r] = truth.fluctuation_of(records[r].last());
  }

  std::mt19937_64 gen(seed);
  const double p_signal = params.probabilities.signal;
  const double p_decoy = params.probabilities.decoy;
  std::int64_t history_rank = 0;
  std::int64_t suffix_modulus = 1;
  for (int i = 0; i < xi; ++i) suffix_modulus *= 3;

  for (std::int64_t round = 0; round < rounds; ++round) {
    const double u = uniform01(gen);
    int setting = 2;
    if (u < p_signal) {
      setting = 0;
    } else if (u < p_signal + p_decoy) {
      setting = 1;
    }
    const std::int64_t rank = history_rank * 3 + setting;
    history_rank = rank % suffix_modulus;
    if (round < xi) continue;

    auto& entry = stats[static_cast<std::size_t>(rank)];
    entry.trials += 1;
    const double delta = (2.0 * uniform01(gen) - 1.0) * halfwidth[rank];
    const double survive = prefactor * std::exp(-exponent[rank] * (1.0 + delta));
    if (uniform01(gen) >= survive) entry.clicks += 1;
  }

  for (auto& entry : stats) {
    if (entry.trials > 0) {
      entry.click_probability =
          static_cast<double>(entry.clicks) / static_cast<double>(entry.trials);
    }
  }
  return stats;
}

}  // namespace ictqkd
