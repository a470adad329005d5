#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ictqkd/errors.hpp"

namespace ictqkd {

// Intensity setting labels in their fixed enumeration order.
// The order (signal < decoy < vacuum) defines record ranks and CSV labels.
enum class Setting : std::uint8_t { signal = 0, decoy = 1, vacuum = 2 };

inline constexpr std::array<Setting, 3> kSettings = {Setting::signal,
                                                     Setting::decoy,
                                                     Setting::vacuum};
inline constexpr int kNumSettings = 3;

// Correlation ranges above this cap make the record space (3^(xi+1))
// impractical for the dense LP path; enumeration refuses them.
inline constexpr int kMaxCorrelationRange = 8;

// Single-character labels used in CSV output: 'm', 'n', 'w'.
char setting_label(Setting s);
Setting setting_from_label(char c);

// Mean photon numbers per setting; signal > decoy > vacuum >= 0.
struct Intensities {
  double signal = 0.0;
  double decoy = 0.0;
  double vacuum = 0.0;

  double value(Setting s) const;
  void validate() const;
};

// Per-setting selection probabilities; each >= 0, summing to 1.
struct SettingProbabilities {
  double signal = 1.0 / 3.0;
  double decoy = 1.0 / 3.0;
  double vacuum = 1.0 / 3.0;

  double value(Setting s) const;
  void validate() const;
};

// A record is a tuple of settings (a_{k-len+1}, ..., a_k), oldest first.
// Full records for correlation range xi have length xi + 1; prefixes have
// length xi. The empty record (length 0) is the prefix when xi == 0.
class Record {
 public:
  Record() = default;
  explicit Record(std::vector<Setting> entries) : entries_(std::move(entries)) {}

  static Record from_label(const std::string& label);

  int length() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  Setting at(int i) const { return entries_.at(static_cast<std::size_t>(i)); }
  Setting last() const;
  const std::vector<Setting>& entries() const { return entries_; }

  // Lexicographic rank among records of the same length (base-3, oldest
  // entry most significant).
  std::size_t rank() const;

  std::string label() const;

  // Record with `s` appended as the newest entry.
  Record extended(Setting s) const;

  bool operator==(const Record& other) const { return entries_ == other.entries_; }

 private:
  std::vector<Setting> entries_;
};

// Protocol-level parameters shared by the analysis pipeline.
struct ProtocolParams {
  Intensities intensities;
  SettingProbabilities probabilities;
  double q_z = 0.5;  // key-basis selection probability; q_x = 1 - q_z
  int xi = 1;        // correlation range (settings influencing a round)
  int n_cut = 3;     // photon-number cutoff in the decoy LPs
  int n_th = 10;     // tail threshold in the overlap lower bounds

  void validate() const;
};

// All setting tuples of length xi + 1 - offset in lexicographic order.
// offset 0 enumerates full records, offset 1 the prefixes.
std::vector<Record> enumerate_records(int xi, int offset = 0);

// Product of per-setting probabilities over the record's entries.
// The empty record has probability 1.
double record_probability(const Record& record, const SettingProbabilities& p);

}  // namespace ictqkd
