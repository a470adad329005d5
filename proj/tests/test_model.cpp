#include "doctest.h"
#include "ictqkd/model.hpp"

using namespace ictqkd;

TEST_CASE("setting labels round-trip") {
  CHECK(setting_label(Setting::signal) == 'm');
  CHECK(setting_label(Setting::decoy) == 'n');
  CHECK(setting_label(Setting::vacuum) == 'w');
  for (Setting s : kSettings) {
    CHECK(setting_from_label(setting_label(s)) == s);
  }
  CHECK_THROWS_AS(setting_from_label('x'), DomainError);
}

TEST_CASE("intensities accessor and validation") {
  const Intensities mu{0.5, 0.1, 0.0};
  CHECK(mu.value(Setting::signal) == 0.5);
  CHECK(mu.value(Setting::decoy) == 0.1);
  CHECK(mu.value(Setting::vacuum) == 0.0);
  CHECK_NOTHROW(mu.validate());

  CHECK_THROWS_AS((Intensities{0.1, 0.1, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((Intensities{0.5, 0.0, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((Intensities{0.5, 0.1, -0.1}.validate()), DomainError);
}

TEST_CASE("setting probabilities validation") {
  CHECK_NOTHROW(SettingProbabilities{}.validate());
  CHECK_NOTHROW((SettingProbabilities{0.5, 0.3, 0.2}.validate()));
  CHECK_THROWS_AS((SettingProbabilities{0.5, 0.6, -0.1}.validate()), DomainError);
  CHECK_THROWS_AS((SettingProbabilities{0.5, 0.3, 0.3}.validate()), DomainError);
}

TEST_CASE("record labels, rank, extension") {
  const Record r = Record::from_label("mnw");
  CHECK(r.length() == 3);
  CHECK(r.at(0) == Setting::signal);
  CHECK(r.at(1) == Setting::decoy);
  CHECK(r.at(2) == Setting::vacuum);
  CHECK(r.last() == Setting::vacuum);
  CHECK(r.label() == "mnw");
  CHECK(r.rank() == 5);  // base-3 digits 0,1,2 oldest first

  CHECK(Record::from_label("m").rank() == 0);
  CHECK(Record::from_label("w").rank() == 2);
  CHECK(Record::from_label("mn").extended(Setting::vacuum) == r);

  const Record empty;
  CHECK(empty.empty());
  CHECK(empty.rank() == 0);
  CHECK(empty.label().empty());
  CHECK_THROWS_AS(empty.last(), DomainError);
}

TEST_CASE("record enumeration is lexicographic and sized 3^(xi+1-offset)") {
  const auto full = enumerate_records(1);
  REQUIRE(full.size() == 9);
  CHECK(full.front().label() == "mm");
  CHECK(full.back().label() == "ww");
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(full[i].rank() == i);
    CHECK(full[i].length() == 2);
  }

  const auto prefixes = enumerate_records(1, 1);
  REQUIRE(prefixes.size() == 3);
  CHECK(prefixes[1].label() == "n");

  const auto empty_prefix = enumerate_records(0, 1);
  REQUIRE(empty_prefix.size() == 1);
  CHECK(empty_prefix[0].empty());

  CHECK_THROWS_AS(enumerate_records(9), CapacityError);
  CHECK_THROWS_AS(enumerate_records(1, 3), DomainError);
  CHECK_THROWS_AS(enumerate_records(1, -1), DomainError);
}

TEST_CASE("record probability is the product over entries") {
  const SettingProbabilities p{0.5, 0.3, 0.2};
  CHECK(record_probability(Record{}, p) == 1.0);
  CHECK(record_probability(Record::from_label("mw"), p) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(record_probability(Record::from_label("nnn"), p) == doctest::Approx(0.027).epsilon(1e-14));

  double total = 0.0;
  for (const Record& r : enumerate_records(2)) {
    total += record_probability(r, p);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("protocol parameter validation") {
  ProtocolParams params;
  params.intensities = Intensities{0.5, 0.1, 0.0};
  CHECK_NOTHROW(params.validate());

  ProtocolParams bad = params;
  bad.q_z = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  bad = params;
  bad.xi = kMaxCorrelationRange + 1;
  CHECK_THROWS_AS(bad.validate(), CapacityError);

  bad = params;
  bad.n_cut = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  bad = params;
  bad.n_th = 31;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
