#include "circreg/rng.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "circreg/angle.hpp"
#include "circreg/noise.hpp"

namespace circreg {
namespace {

struct SampleStats {
  double mean = 0.0;
  double var = 0.0;
  double se = 0.0;  // standard error of the mean
};

SampleStats stats_of(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= (n - 1.0);
  return {mean, var, std::sqrt(var / n)};
}

TEST(SeededRng, DeterministicAndStreamSeparated) {
  SeededRng a(42, 7);
  SeededRng b(42, 7);
  SeededRng other_stream(42, 8);
  SeededRng other_seed(43, 7);
  bool stream_differs = false;
  bool seed_differs = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    ASSERT_EQ(va, b.next_u64());
    stream_differs |= (va != other_stream.next_u64());
    seed_differs |= (va != other_seed.next_u64());
  }
  EXPECT_TRUE(stream_differs);
  EXPECT_TRUE(seed_differs);
  EXPECT_EQ(a.seed(), 42u);
  EXPECT_EQ(a.stream(), 7u);
}

TEST(SeededRng, MatchesDocumentedEngineConstruction) {
  // The class contract pins the exact engine and seeding word order; anyone
  // can reproduce the stream with the standard library alone.
  const std::uint64_t seed = 0x0123456789abcdefULL;
  const std::uint64_t stream = 0xfedcba9876543210ULL;
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream & 0xffffffffu),
                    static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 reference(seq);
  SeededRng rng(seed, stream);
  for (int i = 0; i < 16; ++i) {
    ASSERT_EQ(rng.next_u64(), reference());
  }
  // uniform01 is the top 53 bits centered in the unit cell.
  const std::uint64_t next = reference();
  EXPECT_EQ(rng.uniform01(),
            (static_cast<double>(next >> 11) + 0.5) * 0x1.0p-53);
}

TEST(SeededRng, Uniform01StaysStrictlyInsideUnitInterval) {
  SeededRng rng(1, 1);
  const int n = 200000;
  std::vector<double> xs(n);
  for (double& x : xs) {
    x = rng.uniform01();
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  const auto s = stats_of(xs);
  EXPECT_NEAR(s.mean, 0.5, 3.0 * s.se);
  EXPECT_NEAR(s.var, 1.0 / 12.0, 3.0 * std::sqrt(2.0 / n) / 12.0 + 1e-4);
}

TEST(SeededRng, Uniform01PassesChiSquareBinning) {
  SeededRng rng(2026, 3);
  const int n = 200000;
  const int bins = 20;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const int b = static_cast<int>(rng.uniform01() * bins);
    ++counts[std::min(b, bins - 1)];
  }
  const double expected = static_cast<double>(n) / bins;
  double stat = 0.0;
  for (int c : counts) stat += (c - expected) * (c - expected) / expected;
  const double p_value = boost::math::gamma_q((bins - 1) / 2.0, stat / 2.0);
  EXPECT_GT(p_value, 1e-6) << "chi-square stat " << stat;
}

TEST(SeededRng, UniformRangeAndValidation) {
  SeededRng rng(5, 5);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-2.0, 3.0);
    ASSERT_GE(x, -2.0);
    ASSERT_LT(x, 3.0);
  }
  EXPECT_THROW(rng.uniform(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(rng.uniform(2.0, -2.0), std::invalid_argument);
  EXPECT_THROW(rng.uniform(0.0, std::numeric_limits<double>::infinity()),
               std::invalid_argument);
}

TEST(SeededRng, GaussianMomentsAndTails) {
  SeededRng rng(99, 1);
  const double sigma = 0.7;
  const int n = 200000;
  std::vector<double> xs(n);
  int beyond_two_sigma = 0;
  for (double& x : xs) {
    x = rng.gaussian(sigma);
    if (std::fabs(x) > 2.0 * sigma) ++beyond_two_sigma;
  }
  const auto s = stats_of(xs);
  EXPECT_NEAR(s.mean, 0.0, 3.0 * s.se);
  // Var of the sample variance for a Gaussian is 2 sigma^4 / n.
  EXPECT_NEAR(s.var, sigma * sigma,
              3.0 * sigma * sigma * std::sqrt(2.0 / n));
  const double p_tail = 0.045500263896358;  // 2 * Phi(-2)
  EXPECT_NEAR(static_cast<double>(beyond_two_sigma) / n, p_tail,
              3.0 * std::sqrt(p_tail * (1.0 - p_tail) / n));
  EXPECT_THROW(rng.gaussian(0.0), std::invalid_argument);
  EXPECT_THROW(rng.gaussian(-1.0), std::invalid_argument);
}

TEST(SeededRng, LaplaceMomentsAndTails) {
  SeededRng rng(77, 2);
  const double sigma = 1.3;
  const int n = 200000;
  std::vector<double> xs(n);
  int beyond_scale = 0;
  for (double& x : xs) {
    x = rng.laplace(sigma);
    if (std::fabs(x) > sigma) ++beyond_scale;
  }
  const auto s = stats_of(xs);
  EXPECT_NEAR(s.mean, 0.0, 3.0 * s.se);
  // Var = 2 sigma^2; fourth moment 24 sigma^4 gives sd(s^2) = sqrt(20/n) s^2.
  EXPECT_NEAR(s.var, 2.0 * sigma * sigma,
              3.0 * sigma * sigma * std::sqrt(20.0 / n));
  // P(|X| > sigma) = exp(-1) separates Laplace from Gaussian tails.
  const double p_tail = std::exp(-1.0);
  EXPECT_NEAR(static_cast<double>(beyond_scale) / n, p_tail,
              3.0 * std::sqrt(p_tail * (1.0 - p_tail) / n));
  EXPECT_THROW(rng.laplace(0.0), std::invalid_argument);
}

TEST(VonMises, ResultantMatchesBesselRatio) {
  // Frozen I1/I0 values at the tested concentrations.
  const struct {
    double kappa;
    double resultant;
  } cases[] = {
      {0.01, 0.00499993750104165},
      {2.0, 0.69777465796400798},
      {5.0, 0.89338313704408522},
  };
  for (const auto& c : cases) {
    SeededRng rng(314, 15);
    const Angle mu = wrap(0.9);
    VonMisesSampler sampler(mu, c.kappa);
    const int n = 200000;
    std::vector<double> cosines(n);
    std::vector<double> sines(n);
    for (int i = 0; i < n; ++i) {
      const double delta = sampler.draw(rng).radians() - mu.radians();
      cosines[static_cast<std::size_t>(i)] = std::cos(delta);
      sines[static_cast<std::size_t>(i)] = std::sin(delta);
    }
    const auto sc = stats_of(cosines);
    const auto ss = stats_of(sines);
    EXPECT_NEAR(sc.mean, c.resultant, 3.0 * sc.se) << "kappa=" << c.kappa;
    EXPECT_NEAR(ss.mean, 0.0, 3.0 * ss.se) << "kappa=" << c.kappa;
    EXPECT_EQ(sampler.accepted(), static_cast<std::uint64_t>(n));
    EXPECT_GE(sampler.proposals(), sampler.accepted());
    const double rate = static_cast<double>(sampler.accepted()) /
                        static_cast<double>(sampler.proposals());
    EXPECT_GE(rate, 0.5) << "kappa=" << c.kappa;
  }
}

TEST(VonMises, AcceptanceStaysEfficientAtExtremeConcentration) {
  for (double kappa : {0.001, 50.0, 2000.0}) {
    SeededRng rng(8, 8);
    VonMisesSampler sampler(Angle(), kappa);
    for (int i = 0; i < 20000; ++i) sampler.draw(rng);
    const double rate = static_cast<double>(sampler.accepted()) /
                        static_cast<double>(sampler.proposals());
    EXPECT_GE(rate, 0.5) << "kappa=" << kappa;
  }
}

TEST(VonMises, ArcProbabilitiesMatchDensityQuadrature) {
  const double kappa = 2.0;
  const Angle mu = wrap(0.7);
  SeededRng rng(4711, 1);
  VonMisesSampler sampler(mu, kappa);
  const int n = 200000;
  std::vector<double> draws(n);
  for (double& d : draws) d = sampler.draw(rng).radians();

  // Independent density: f = exp(kappa cos(t - mu)) / (2 pi I0(kappa)), with
  // I0 from Boost and the arc mass from Simpson's rule.
  const double i0 = boost::math::cyl_bessel_i(0, kappa);
  const auto arc_mass = [&](double a, double b) {
    const int steps = 2000;  // even
    const double h = (b - a) / steps;
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
      const double t = a + h * i;
      const double f = std::exp(kappa * std::cos(t - mu.radians()));
      const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * f;
    }
    return acc * h / 3.0 / (kTwoPi * i0);
  };

  const double arcs[][2] = {
      {-kPi, -1.0}, {-1.0, 0.5}, {0.5, 1.2}, {1.2, kPi}};
  double total_p = 0.0;
  for (const auto& arc : arcs) {
    const double p = arc_mass(arc[0], arc[1]);
    total_p += p;
    int hits = 0;
    for (double d : draws) {
      if (d >= arc[0] && d < arc[1]) ++hits;
    }
    EXPECT_NEAR(static_cast<double>(hits) / n, p,
                3.0 * std::sqrt(p * (1.0 - p) / n) + 1e-4)
        << "arc [" << arc[0] << "," << arc[1] << ")";
  }
  EXPECT_NEAR(total_p, 1.0, 1e-8);
}

TEST(VonMises, RejectsBadConcentration) {
  EXPECT_THROW(VonMisesSampler(Angle(), 0.0), std::invalid_argument);
  EXPECT_THROW(VonMisesSampler(Angle(), -2.0), std::invalid_argument);
  EXPECT_THROW(VonMisesSampler(Angle(), std::nan("")), std::invalid_argument);
  SeededRng rng(1, 2);
  EXPECT_NO_THROW(sample_von_mises(rng, wrap(0.1), 10.0));
}

TEST(WrappedLaplace, ResultantMatchesCharacteristicFunction) {
  const double lambda = 2.54;
  SeededRng rng(606, 11);
  const int n = 200000;
  std::vector<double> cosines(n);
  std::vector<double> sines(n);
  for (int i = 0; i < n; ++i) {
    const Angle theta = sample_wrapped_laplace(rng, lambda);
    ASSERT_GE(theta.radians(), -kPi);
    ASSERT_LT(theta.radians(), kPi);
    cosines[static_cast<std::size_t>(i)] = std::cos(theta.radians());
    sines[static_cast<std::size_t>(i)] = std::sin(theta.radians());
  }
  const auto sc = stats_of(cosines);
  const auto ss = stats_of(sines);
  // E cos = Re cf(1) ties the sampler to the noise model used in estimation.
  const auto model = CircularNoiseModel::wrapped_laplace(lambda);
  EXPECT_NEAR(sc.mean, model.cf(1).real(), 3.0 * sc.se);
  EXPECT_NEAR(sc.mean, 0.865800633421010, 3.0 * sc.se);
  EXPECT_NEAR(ss.mean, 0.0, 3.0 * ss.se);
  EXPECT_THROW(sample_wrapped_laplace(rng, 0.0), std::invalid_argument);
}

TEST(WrappedLaplace, CircularVarianceAtSecondScale) {
  const double lambda = 1.74;
  SeededRng rng(607, 12);
  const int n = 200000;
  std::vector<double> cosines(n);
  for (int i = 0; i < n; ++i) {
    cosines[static_cast<std::size_t>(i)] =
        std::cos(sample_wrapped_laplace(rng, lambda).radians());
  }
  const auto sc = stats_of(cosines);
  // Circular variance 1 - E cos = 1 / (1 + lambda^2), frozen at lambda = 1.74.
  EXPECT_NEAR(1.0 - sc.mean, 0.248286820935545, 3.0 * sc.se);
}

}  // namespace
}  // namespace circreg
