#include <cmath>
#include <random>

#include "doctest.h"
#include "ictqkd/photon_stats.hpp"

using namespace ictqkd;

namespace {

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

// Independent long-double reference for the corrected integrand.
long double ref_kernel(int n, long double x, long double y) {
  const long double pmf =
      std::exp(-y) * std::pow(y, static_cast<long double>(n)) /
      std::tgamma(static_cast<long double>(n) + 1.0L);
  const long double bracket =
      std::exp(-x * y) * std::pow(1.0L + x, static_cast<long double>(n)) -
      (static_cast<long double>(n) - y) * x;
  return pmf * bracket;
}

// Conditional n-photon probability for a two-point zero-mean deviation
// mixture at fixed mean intensity. Any such mixture must be bracketed by the
// kernel box extrema.
double two_point_probability(int n, double mean, double d_neg, double d_pos) {
  REQUIRE(d_neg < 0.0);
  REQUIRE(d_pos > 0.0);
  const double w_neg = d_pos / (d_pos - d_neg);
  const double w_pos = -d_neg / (d_pos - d_neg);
  return w_neg * poisson_pmf(n, mean * (1.0 + d_neg)) +
         w_pos * poisson_pmf(n, mean * (1.0 + d_pos));
}

}  // namespace

TEST_CASE("poisson pmf matches frozen values and edge cases") {
  CHECK(poisson_pmf(2, 0.5) == doctest::Approx(0.07581633246407918).epsilon(1e-13));
  CHECK(poisson_pmf(0, 0.0) == 1.0);
  CHECK(poisson_pmf(3, 0.0) == 0.0);
  CHECK(poisson_pmf(0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(poisson_pmf(-1, 0.5), DomainError);
  CHECK_THROWS_AS(poisson_pmf(2, -0.5), DomainError);

  for (int n = 0; n <= 15; ++n) {
    for (double mean : {1e-6, 0.1, 0.5, 1.0, 5.0, 20.0}) {
      const long double ref = std::exp(-static_cast<long double>(mean)) *
                              std::pow(static_cast<long double>(mean),
                                       static_cast<long double>(n)) /
                              std::tgamma(static_cast<long double>(n) + 1.0L);
      CHECK(poisson_pmf(n, mean) ==
            doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    }
  }
}

TEST_CASE("poisson cdf sums the pmf and saturates at 1") {
  double sum = 0.0;
  for (int n = 0; n <= 12; ++n) {
    sum += poisson_pmf(n, 3.5);
    CHECK(poisson_cdf(n, 3.5) == doctest::Approx(sum).epsilon(1e-13));
  }
  CHECK(poisson_cdf(200, 5.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(poisson_cdf(200, 5.0) <= 1.0);
}

TEST_CASE("corrected integrand reduces to the pmf at zero deviation") {
  for (int n = 0; n <= 8; ++n) {
    for (double y : {0.0, 0.05, 0.7, 3.0}) {
      CHECK(pmf_bound_kernel(n, 0.0, y) == poisson_pmf(n, y));
    }
  }
}

TEST_CASE("corrected integrand matches frozen value and reference") {
  CHECK(pmf_bound_kernel(1, 0.01, 0.5) == doctest::Approx(0.30325399).epsilon(1e-7));

  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(uniform(gen, 0.0, 7.999));
    const double x = uniform(gen, -0.5, 0.5);
    const double y = uniform(gen, 0.0, 4.0);
    const double ref = static_cast<double>(ref_kernel(n, x, y));
    CHECK(pmf_bound_kernel(n, x, y) == doctest::Approx(ref).epsilon(1e-13));
  }

  CHECK_THROWS_AS(pmf_bound_kernel(2, -1.0, 0.5), DomainError);
  CHECK_THROWS_AS(pmf_bound_kernel(2, 0.0, -0.5), DomainError);
}

TEST_CASE("kernel box extrema agree with a dense brute-force scan") {
  const DeviationInterval dev{-0.03, 0.03};
  const IntensityInterval intensity{0.49, 0.51};
  const int n = 1;

  long double brute_min = 0.0L, brute_max = 0.0L;
  const int g = 1000;
  for (int i = 0; i <= g; ++i) {
    const long double x = dev.lo + dev.width() * i / g;
    for (int j = 0; j <= g; ++j) {
      const long double y = intensity.lo + intensity.width() * j / g;
      const long double v = ref_kernel(n, x, y);
      if ((i == 0 && j == 0) || v < brute_min) brute_min = v;
      if ((i == 0 && j == 0) || v > brute_max) brute_max = v;
    }
  }

  const MinMax mm = kernel_box_extrema(n, dev, intensity);
  // Bracketing of every grid point is exact; two-sided closeness absorbs the
  // brute grid's own resolution error.
  CHECK(mm.min <= static_cast<double>(brute_min) + 1e-12);
  CHECK(mm.max >= static_cast<double>(brute_max) - 1e-12);
  CHECK(mm.min == doctest::Approx(static_cast<double>(brute_min)).epsilon(2e-9));
  CHECK(mm.max == doctest::Approx(static_cast<double>(brute_max)).epsilon(2e-9));
}

TEST_CASE("kernel box extrema handle degenerate boxes") {
  const double v = pmf_bound_kernel(3, 0.0, 0.8);
  const MinMax exact = kernel_box_extrema(3, DeviationInterval{0.0, 0.0},
                                          IntensityInterval{0.8, 0.8});
  CHECK(exact.min == v);
  CHECK(exact.max == v);

  const MinMax dev_only = kernel_box_extrema(1, DeviationInterval{-0.02, 0.02},
                                             IntensityInterval{0.5, 0.5});
  CHECK(dev_only.min <= pmf_bound_kernel(1, -0.02, 0.5));
  CHECK(dev_only.min <= pmf_bound_kernel(1, 0.02, 0.5));
  CHECK(dev_only.max >= pmf_bound_kernel(1, 0.0, 0.5));

  const MinMax int_only = kernel_box_extrema(1, DeviationInterval{0.0, 0.0},
                                             IntensityInterval{0.4, 0.6});
  CHECK(int_only.min <= poisson_pmf(1, 0.4));
  CHECK(int_only.max >= poisson_pmf(1, 0.6));
}

TEST_CASE("kernel box extrema bracket every zero-mean two-point mixture") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(uniform(gen, 0.0, 5.999));
    const double base = uniform(gen, 0.05, 1.2);
    const double spread = uniform(gen, 0.0, 0.02);
    const IntensityInterval intensity{base * (1.0 - spread), base * (1.0 + spread)};
    const DeviationInterval dev{uniform(gen, -0.1, -1e-4), uniform(gen, 1e-4, 0.1)};

    const MinMax mm = kernel_box_extrema(n, dev, intensity);
    for (int k = 0; k < 5; ++k) {
      const double mean = uniform(gen, intensity.lo, intensity.hi);
      const double d_neg = uniform(gen, dev.lo, -1e-6);
      const double d_pos = uniform(gen, 1e-6, dev.hi);
      const double p = two_point_probability(n, mean, d_neg, d_pos);
      CHECK(p >= mm.min - 1e-10);
      CHECK(p <= mm.max + 1e-10);
    }
  }
}

TEST_CASE("photon number bounds bracket mixture truth in both modes") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    const double base = uniform(gen, 0.05, 1.0);
    const double spread = uniform(gen, 0.0, 0.02);
    const IntensityInterval intensity{base * (1.0 - spread), base * (1.0 + spread)};
    const DeviationInterval dev{uniform(gen, -0.05, -1e-4), uniform(gen, 1e-4, 0.05)};
    const int n_cut = 4;

    for (BoundsMode mode : {BoundsMode::enhanced, BoundsMode::monotone}) {
      const PhotonBounds pb = photon_number_bounds(intensity, dev, n_cut, 10, mode);
      REQUIRE(pb.n_cut() == n_cut);
      for (int n = 0; n <= n_cut; ++n) {
        CHECK(pb.lower[n] >= 0.0);
        CHECK(pb.upper[n] <= 1.0);
        CHECK(pb.lower[n] <= pb.upper[n]);
        for (int k = 0; k < 3; ++k) {
          const double mean = uniform(gen, intensity.lo, intensity.hi);
          const double d_neg = uniform(gen, dev.lo, -1e-6);
          const double d_pos = uniform(gen, 1e-6, dev.hi);
          const double p = two_point_probability(n, mean, d_neg, d_pos);
          CHECK(p >= pb.lower[n] - 1e-10);
          CHECK(p <= pb.upper[n] + 1e-10);
        }
      }
    }
  }
}

TEST_CASE("enhanced bounds are never looser than the monotone baseline") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const double base = uniform(gen, 0.05, 1.0);
    const double spread = uniform(gen, 0.0, 0.02);
    const IntensityInterval intensity{base * (1.0 - spread), base * (1.0 + spread)};
    const DeviationInterval dev{uniform(gen, -0.05, 0.0), uniform(gen, 0.0, 0.05)};
    const int n_cut = 5;

    const PhotonBounds enhanced = photon_number_bounds(intensity, dev, n_cut, 10,
                                                       BoundsMode::enhanced);
    const PhotonBounds monotone = photon_number_bounds(intensity, dev, n_cut, 10,
                                                       BoundsMode::monotone);
    for (int n = 0; n <= n_cut; ++n) {
      CHECK(enhanced.lower[n] >= monotone.lower[n] - 1e-12);
      CHECK(enhanced.upper[n] <= monotone.upper[n] + 1e-12);
    }
  }
}

TEST_CASE("photon number bounds collapse on a fully degenerate box") {
  const PhotonBounds pb = photon_number_bounds(IntensityInterval{0.5, 0.5},
                                               DeviationInterval{0.0, 0.0}, 3, 10);
  for (int n = 0; n <= 3; ++n) {
    const double p = poisson_pmf(n, 0.5);
    CHECK(pb.lower[n] == doctest::Approx(p).epsilon(1e-11));
    CHECK(pb.upper[n] == doctest::Approx(p).epsilon(1e-11));
    CHECK(pb.lower[n] <= p);
    CHECK(pb.upper[n] >= p);
  }
}

TEST_CASE("interval validation rejects malformed inputs") {
  CHECK_THROWS_AS((DeviationInterval{0.01, 0.02}.validate()), DomainError);
  CHECK_THROWS_AS((DeviationInterval{-1.0, 0.5}.validate()), DomainError);
  CHECK_THROWS_AS((IntensityInterval{-0.1, 0.5}.validate()), DomainError);
  CHECK_THROWS_AS((IntensityInterval{0.5, 0.4}.validate()), DomainError);
  CHECK_THROWS_AS(kernel_box_extrema(-1, DeviationInterval{0.0, 0.0},
                                     IntensityInterval{0.5, 0.5}),
                  DomainError);
  CHECK_THROWS_AS(kernel_box_extrema(1, DeviationInterval{-0.01, 0.01},
                                     IntensityInterval{0.4, 0.6}, 1),
                  DomainError);
}
