#include "ictqkd/model.hpp"

#include <cmath>
#include <string>

namespace ictqkd {

char setting_label(Setting s) {
  switch (s) {
    case Setting::signal:
      return 'm';
    case Setting::decoy:
      return 'n';
    case Setting::vacuum:
      return 'w';
  }
  throw DomainError("setting_label: invalid setting");
}

Setting setting_from_label(char c) {
  switch (c) {
    case 'm':
      return Setting::signal;
    case 'n':
      return Setting::decoy;
    case 'w':
      return Setting::vacuum;
    default:
      throw DomainError(std::string("setting_from_label: unknown label '") + c + "'");
  }
}

double Intensities::value(Setting s) const {
  switch (s) {
    case Setting::signal:
      return signal;
    case Setting::decoy:
      return decoy;
    case Setting::vacuum:
      return vacuum;
  }
  throw DomainError("Intensities::value: invalid setting");
}

void Intensities::validate() const {
  if (!(std::isfinite(signal) && std::isfinite(decoy) && std::isfinite(vacuum))) {
    throw DomainError("intensities must be finite");
  }
  if (!(signal > decoy && decoy > vacuum && vacuum >= 0.0)) {
    throw DomainError("intensities must satisfy signal > decoy > vacuum >= 0");
  }
}

double SettingProbabilities::value(Setting s) const {
  switch (s) {
    case Setting::signal:
      return signal;
    case Setting::decoy:
      return decoy;
    case Setting::vacuum:
      return vacuum;
  }
  throw DomainError("SettingProbabilities::value: invalid setting");
}

void SettingProbabilities::validate() const {
  if (!(signal >= 0.0 && decoy >= 0.0 && vacuum >= 0.0)) {
    throw DomainError("setting probabilities must be nonnegative");
  }
  const double sum = signal + decoy + vacuum;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError("setting probabilities must sum to 1");
  }
}

Setting Record::last() const {
  if (entries_.empty()) {
    throw DomainError("Record::last on empty record");
  }
  return entries_.back();
}

std::size_t Record::rank() const {
  std::size_t r = 0;
  for (Setting s : entries_) {
    r = r * 3 + static_cast<std::size_t>(s);
  }
  return r;
}

std::string Record::label() const {
  std::string out;
  out.reserve(entries_.size());
  for (Setting s : entries_) {
    out.push_back(setting_label(s));
  }
  return out;
}

Record Record::from_label(const std::string& label) {
  std::vector<Setting> entries;
  entries.reserve(label.size());
  for (char c : label) {
    entries.push_back(setting_from_label(c));
  }
  return Record(std::move(entries));
}

Record Record::extended(Setting s) const {
  std::vector<Setting> entries = entries_;
  entries.push_back(s);
  return Record(std::move(entries));
}

void ProtocolParams::validate() const {
  intensities.validate();
  probabilities.validate();
  if (!(q_z > 0.0 && q_z <= 1.0)) {
    throw DomainError("q_z must lie in (0, 1]");
  }
  if (xi < 0 || xi > kMaxCorrelationRange) {
    throw CapacityError("correlation range xi outside [0, 8]");
  }
  if (n_cut < 1 || n_cut > 10) {
    throw DomainError("n_cut must lie in [1, 10]");
  }
  if (n_th < 0 || n_th > 30) {
    throw DomainError("n_th must lie in [0, 30]");
  }
}

std::vector<Record> enumerate_records(int xi, int offset) {
  if (xi < 0 || xi > kMaxCorrelationRange) {
    throw CapacityError("enumerate_records: correlation range xi outside [0, 8]");
  }
  if (offset < 0 || offset > xi + 1) {
    throw DomainError("enumerate_records: offset outside [0, xi + 1]");
  }
  const int length = xi + 1 - offset;
  std::size_t count = 1;
  for (int i = 0; i < length; ++i) {
    count *= 3;
  }
  std::vector<Record> records;
  records.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    std::vector<Setting> entries(static_cast<std::size_t>(length));
    std::size_t v = r;
    for (int i = length - 1; i >= 0; --i) {
      entries[static_cast<std::size_t>(i)] = static_cast<Setting>(v % 3);
      v /= 3;
    }
    records.emplace_back(std::move(entries));
  }
  return records;
}

double record_probability(const Record& record, const SettingProbabilities& p) {
  double prob = 1.0;
  for (Setting s : record.entries()) {
    prob *= p.value(s);
  }
  return prob;
}

}  // namespace ictqkd
