#include "ictqkd/decoy.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ictqkd/cs_bounds.hpp"
#include "ictqkd/errors.hpp"

namespace ictqkd {

namespace {

std::size_t pow3(int exponent) {
  std::size_t result = 1;
  while (exponent-- > 0) result *= 3;
  return result;
}

void check_conditional(const std::vector<double>& values, std::size_t records,
                       const char* what) {
  if (values.size() != records) {
    throw DomainError(std::string(what) + " must cover every full record");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError(std::string(what) + " entries must lie in [0, 1]");
    }
  }
}

struct BuildKind {
  const std::vector<double>* observed;
  char variable_tag;       // 'y' for yields, 'h' for error yields
  Sense sense;
  bool weight_upper_mass;  // objective mass p_1^U instead of p_1^L
  double basis_share;      // q_Z or q_X
};

LinearProgram build_common(const RecordBoundsCache& bounds, const TauTable& taus,
                           const std::vector<double>& references,
                           const ProtocolParams& params, const BuildKind& kind) {
  params.validate();
  taus.validate();
  const std::size_t records = pow3(params.xi + 1);
  const std::size_t prefixes = pow3(params.xi);
  const int n_cut = params.n_cut;
  if (bounds.bounds.size() != records) {
    throw DomainError("photon bounds must cover every full record");
  }
  if (bounds.n_max() < n_cut) {
    throw DomainError("photon bounds are shorter than the truncation cut");
  }
  if (static_cast<int>(references.size()) < n_cut + 1) {
    throw DomainError("reference values must cover n = 0..n_cut");
  }
  for (int n = 0; n <= n_cut; ++n) {
    if (!(references[n] >= 0.0 && references[n] <= 1.0)) {
      throw DomainError("reference values must lie in [0, 1]");
    }
  }

  const std::vector<Record> full_records = enumerate_records(params.xi);
  LinearProgram lp;
  lp.sense = kind.sense;
  const auto var_index = [&](std::size_t record_rank, int n) {
    return static_cast<int>(record_rank * (n_cut + 1) + n);
  };
  for (std::size_t r = 0; r < records; ++r) {
    for (int n = 0; n <= n_cut; ++n) {
      lp.add_variable(kind.variable_tag + std::to_string(n) + "_" +
                      full_records[r].label());
    }
  }

  for (std::size_t r = 0; r < records; ++r) {
    const PhotonBounds& pb = bounds.bounds[r];
    std::vector<std::pair<int, double>> lower_terms;
    std::vector<std::pair<int, double>> upper_terms;
    double lower_mass = 0.0;
    for (int n = 0; n <= n_cut; ++n) {
      lower_terms.push_back({var_index(r, n), pb.lower[n]});
      upper_terms.push_back({var_index(r, n), pb.upper[n]});
      lower_mass += pb.lower[n];
    }
    const double observed = (*kind.observed)[r];
    const std::string& label = full_records[r].label();
    lp.add_constraint("decoy_lo_" + label, lower_terms, Relation::less_equal, observed);
    lp.add_constraint("decoy_hi_" + label, upper_terms, Relation::greater_equal,
                      observed - 1.0 + lower_mass);
  }

  const std::vector<Record> prefix_records = enumerate_records(params.xi, 1);
  for (const Record& prefix : prefix_records) {
    const std::size_t q = prefix.rank();
    for (Setting a : kSettings) {
      for (Setting ap : kSettings) {
        if (a == ap) continue;
        const double tau = taus.value(a, ap);
        const std::size_t rank_a = q * 3 + static_cast<std::size_t>(a);
        const std::size_t rank_ap = q * 3 + static_cast<std::size_t>(ap);
        for (int n = 0; n <= n_cut; ++n) {
          const TangentCoefficients tan = cs_tangent(references[n], tau);
          const std::string suffix = std::to_string(n) + "_" + prefix.label() +
                                     setting_label(a) + setting_label(ap);
          lp.add_constraint(
              "cs_hi_" + suffix,
              {{var_index(rank_ap, n), 1.0}, {var_index(rank_a, n), -tan.m_upper}},
              Relation::less_equal, tan.c_upper);
          lp.add_constraint(
              "cs_lo_" + suffix,
              {{var_index(rank_ap, n), 1.0}, {var_index(rank_a, n), -tan.m_lower}},
              Relation::greater_equal, tan.c_lower);
        }
      }
    }
  }

  for (int v = 0; v < lp.variable_count(); ++v) {
    lp.add_constraint("box_lo_" + lp.variable_names[v], {{v, 1.0}},
                      Relation::greater_equal, 0.0);
    lp.add_constraint("box_hi_" + lp.variable_names[v], {{v, 1.0}},
                      Relation::less_equal, 1.0);
  }

  // Weighted single-photon term over all records ending in the signal
  // setting; prefix weights are the record probabilities of the history.
  const double share_sq = kind.basis_share * kind.basis_share;
  const double p_signal = params.probabilities.value(Setting::signal);
  for (std::size_t q = 0; q < prefixes; ++q) {
    double weight = 1.0;
    std::size_t digits = q;
    for (int i = 0; i < params.xi; ++i) {
      weight *= params.probabilities.value(kSettings[digits % 3]);
      digits /= 3;
    }
    const std::size_t r = q * 3 + static_cast<std::size_t>(Setting::signal);
    const PhotonBounds& pb = bounds.bounds[r];
    const double mass = kind.weight_upper_mass ? pb.upper[1] : pb.lower[1];
    lp.set_objective(var_index(r, 1), share_sq * p_signal * weight * mass);
  }
  return lp;
}

}  // namespace

void ObservedStatistics::validate(int xi) const {
  if (xi < 0 || xi > kMaxCorrelationRange) {
    throw DomainError("correlation range out of supported bounds");
  }
  const std::size_t records = pow3(xi + 1);
  check_conditional(gain, records, "conditional gains");
  if (!error_gain.empty()) {
    check_conditional(error_gain, records, "conditional error gains");
  }
}

LinearProgram build_yield_lp(const ObservedStatistics& obs,
                             const RecordBoundsCache& bounds, const TauTable& taus,
                             const std::vector<double>& reference_yields,
                             const ProtocolParams& params, YieldTarget target) {
  obs.validate(params.xi);
  BuildKind kind;
  kind.observed = &obs.gain;
  kind.variable_tag = 'y';
  kind.sense = Sense::minimize;
  kind.weight_upper_mass = false;
  kind.basis_share =
      target == YieldTarget::z_single_photon ? params.q_z : 1.0 - params.q_z;
  return build_common(bounds, taus, reference_yields, params, kind);
}

LinearProgram build_error_lp(const ObservedStatistics& obs,
                             const RecordBoundsCache& bounds, const TauTable& taus,
                             const std::vector<double>& reference_error_yields,
                             const ProtocolParams& params) {
  obs.validate(params.xi);
  if (obs.error_gain.empty()) {
    throw DomainError("error program needs conditional error gains");
  }
  BuildKind kind;
  kind.observed = &obs.error_gain;
  kind.variable_tag = 'h';
  kind.sense = Sense::maximize;
  kind.weight_upper_mass = true;
  kind.basis_share = 1.0 - params.q_z;
  return build_common(bounds, taus, reference_error_yields, params, kind);
}

}  // namespace ictqkd
