// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "qinterf/convergence.hpp"
#include "qinterf/random_stream.hpp"
#include "support/stats.hpp"

using namespace qinterf;

namespace {

DistanceCurve synthetic(const std::vector<std::uint64_t>& gates, double (*f)(double)) {
  DistanceCurve c;
  for (auto g : gates) c.points.push_back({g, f(static_cast<double>(g)), 0.0});
  return c;
}

std::vector<std::uint64_t> range(std::uint64_t from, std::uint64_t to, std::uint64_t step) {
  std::vector<std::uint64_t> out;
  for (auto g = from; g <= to; g += step) out.push_back(g);
  return out;
}

}  // namespace

TEST(Hellinger, HandValues) {
  const std::vector<double> a{0.25, 0.25, 0.5}, one{1.0, 0.0}, half{0.5, 0.5};
  EXPECT_EQ(hellinger_sq(a, a), 0.0);
  EXPECT_NEAR(hellinger_sq(one, half), 2.0 * (1.0 - std::sqrt(0.5)), 1e-15);
  EXPECT_NEAR(hellinger_sq(one, half), 0.5858, 1e-4);
  const std::vector<double> left{1.0, 0.0}, right{0.0, 1.0};
  EXPECT_EQ(hellinger_sq(left, right), 2.0);
}

TEST(Hellinger, SymmetricBoundedAndZeroOnlyWhenEqual) {
  RandomStream r(1, 0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> p(8), q(8);
    double sp = 0, sq = 0;
    for (int b = 0; b < 8; ++b) {
      p[b] = r.uniform() < 0.3 ? 0.0 : r.uniform();
      q[b] = r.uniform();
      sp += p[b];
      sq += q[b];
    }
    if (sp == 0.0) continue;
    for (int b = 0; b < 8; ++b) {
      p[b] /= sp;
      q[b] /= sq;
    }
    const double d = hellinger_sq(p, q);
    EXPECT_EQ(d, hellinger_sq(q, p));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
    EXPECT_GT(d, 1e-12);
    EXPECT_LT(hellinger_sq(p, p), 1e-12);
  }
}

TEST(Hellinger, HistogramOverloads) {
  Histogram a(0, 1, 4), b(0, 1, 4), c(0, 1, 5);
  a.add(std::vector<double>{0.1, 0.3, 0.6, 0.9});
  b.add(std::vector<double>{0.6, 0.9});
  EXPECT_EQ(hellinger_sq(a, a), 0.0);
  EXPECT_NEAR(hellinger_sq(a, b), 2.0 * (1.0 - 1.0 / std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(interference_distance(a, b), 2.0 * (1.0 - 1.0 / std::sqrt(2.0)), 1e-15);
  EXPECT_EQ(interference_distance(b, b), 0.0);
  c.add(0.5);
  EXPECT_THROW(hellinger_sq(a, c), BinningMismatch);
  EXPECT_THROW(interference_distance(a, c), BinningMismatch);
  EXPECT_THROW(hellinger_sq(a, Histogram(0, 1, 4)), InsufficientData);
}

TEST(Hellinger, AnalyticReferenceUsesBinIntegrals) {
  Histogram h(0.0, 1.0, 2);
  h.add(0.25);
  // Uniform CDF: exact bin masses (1/2, 1/2).
  EXPECT_NEAR(hellinger_sq(h, [](double x) { return x; }), 2.0 * (1.0 - std::sqrt(0.5)), 1e-15);
  const auto q = bin_probabilities_from_cdf(Histogram(0.0, 5.0, 100), [](double s) { return wigner_cdf(s); });
  double sum = 0.0;
  for (double x : q) sum += x;
  EXPECT_NEAR(sum, wigner_cdf(5.0), 1e-15);
  EXPECT_LT(1.0 - sum, 1e-13);
}

TEST(Hellinger, DeltaMethodErrorMatchesMonteCarlo) {
  // Multinomial resampling of a fixed law gives the spread the first-order
  // error formula should predict.
  const std::vector<double> truth{0.05, 0.1, 0.2, 0.3, 0.2, 0.1, 0.05};
  const std::vector<double> ref{0.1, 0.1, 0.15, 0.25, 0.2, 0.15, 0.05};
  const std::uint64_t n = 5000;
  RandomStream r(2, 0);
  std::vector<double> fs;
  for (int rep = 0; rep < 2000; ++rep) {
    std::vector<double> counts(truth.size(), 0.0);
    for (std::uint64_t i = 0; i < n; ++i) {
      double u = r.uniform();
      std::size_t b = 0;
      while (b + 1 < truth.size() && u >= truth[b]) u -= truth[b++];
      counts[b] += 1.0;
    }
    for (auto& c : counts) c /= static_cast<double>(n);
    fs.push_back(hellinger_sq(counts, ref));
  }
  const auto m = qinterf::testing::mean_of(fs);
  const double sd = m.std_error * std::sqrt(static_cast<double>(fs.size()));
  const double predicted = hellinger_stderr(truth, ref, n);
  EXPECT_NEAR(sd / predicted, 1.0, 0.1);
  EXPECT_EQ(hellinger_stderr(ref, ref, 0, 0), 0.0);
}

TEST(SpacingDistance, WignerSamplesSitAtTheFloor) {
  RandomStream r(3, 0);
  std::vector<double> s(1000000);
  for (auto& x : s)
    x = qinterf::testing::invert_cdf([](double v) { return wigner_cdf(v); }, r.uniform(), 0.0, 10.0);
  EXPECT_LT(spacing_distance(s), 0.005);
}

TEST(SpacingDistance, PoissonSamplesGiveTheAffinityGap) {
  RandomStream r(4, 0);
  std::vector<double> s(200000);
  for (auto& x : s) x = -std::log1p(-r.uniform());
  const double gap =
      2.0 * (1.0 - qinterf::testing::simpson(
                       [](double v) { return std::sqrt(wigner_surmise(v) * poisson_law(v)); }, 0.0, 40.0));
  EXPECT_NEAR(spacing_distance(s), gap, 0.02);
}

TEST(SpacingDistance, ConstantSpacingsHitOneBin) {
  const std::vector<double> ones(2000, 1.0);
  // 100 bins of width 0.05 on [0, 5]: 1.0 opens bin 20.
  const double mass = wigner_cdf(1.05) - wigner_cdf(1.0);
  EXPECT_NEAR(spacing_distance(ones), 2.0 * (1.0 - std::sqrt(mass)), 1e-12);
  const std::vector<SpacingSample> split{{std::vector<double>(1000, 1.0)}, {std::vector<double>(1000, 1.0)}};
  EXPECT_NEAR(spacing_distance(std::span<const SpacingSample>(split)), 2.0 * (1.0 - std::sqrt(mass)), 1e-12);
}

TEST(SpacingDistance, NeedsEnoughValues) {
  const std::vector<double> few(999, 1.0);
  EXPECT_THROW(spacing_distance(few), InsufficientData);
}

TEST(RateFit, ExactExponential) {
  const auto c = synthetic(range(0, 40, 2), [](double g) { return 2.0 * std::exp(-0.1 * g); });
  const RateFit f = fit_exponential_rate(c);
  EXPECT_NEAR(f.rate, 0.1, 1e-10);
  EXPECT_NEAR(f.intercept, std::log(2.0), 1e-10);
  EXPECT_LT(f.residual, 1e-12);
  // exp(-0.1 g) >= 0.05 keeps g <= 29.9: 0, 2, ..., 28 fall inside [0.1, 2].
  EXPECT_EQ(f.points_used, 15u);
  EXPECT_EQ(f.kind, FitKind::Exponential);
}

TEST(RateFit, ExactGaussian) {
  // Starts at n_g = 40, where the curve first drops below the F <= 2 bound.
  const auto c = synthetic(range(40, 150, 10), [](double g) { return std::exp(1.0 - 2e-4 * g * g); });
  const RateFit f = fit_gaussian_rate(c);
  EXPECT_NEAR(f.rate, 2e-4, 1e-10);
  EXPECT_NEAR(f.intercept, 1.0, 1e-10);
  EXPECT_EQ(f.points_used, 12u);
}

TEST(RateFit, GaussianDataThroughExponentialFitterIsFlagged) {
  const auto c = synthetic(range(0, 60, 3), [](double g) { return 2.0 * std::exp(-1e-3 * g * g); });
  const RateFit f = fit_exponential_rate(c);
  EXPECT_GT(f.rate, 0.0);
  EXPECT_GT(f.residual, 0.05);
  EXPECT_LT(fit_gaussian_rate(c).residual, 1e-12);
}

TEST(RateFit, ExponentialRateIgnoresScale) {
  const auto c = synthetic(range(0, 50, 5), [](double g) { return 0.5 * std::exp(-0.01 * g); });
  auto scaled = c;
  for (auto& p : scaled.points) p.distance *= 3.0;
  const RateFit a = fit_exponential_rate(c);
  const RateFit b = fit_exponential_rate(scaled);
  EXPECT_EQ(a.points_used, b.points_used);
  EXPECT_NEAR(a.rate, b.rate, 1e-12);
  EXPECT_NEAR(b.intercept - a.intercept, std::log(3.0), 1e-12);
}

TEST(RateFit, SaturationFloorIsExcluded) {
  const auto c = synthetic(range(0, 100, 4), [](double g) { return std::max(2.0 * std::exp(-0.1 * g), 0.03); });
  const RateFit f = fit_exponential_rate(c);
  EXPECT_NEAR(f.rate, 0.1, 1e-10);
}

TEST(RateFit, ErrorsAndValidation) {
  EXPECT_THROW(fit_exponential_rate(synthetic({0, 10}, [](double g) { return 1.5 - g * 0.145; })),
               InsufficientData);
  DistanceCurve bad;
  bad.points = {{5, 1.0, 0.0}, {5, 0.5, 0.0}};
  EXPECT_THROW(fit_exponential_rate(bad), InvalidArgument);
  bad.points = {{1, 2.5, 0.0}, {2, 0.5, 0.0}};
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(RateFit, StandardErrorOfSlope) {
  // Residuals (+d, -d, +d, -d) about ln F = -0.1 g at g = 0, 1, 2, 3.
  const double d = 0.01;
  DistanceCurve c;
  for (int g = 0; g < 4; ++g)
    c.points.push_back({static_cast<std::uint64_t>(g), std::exp(-0.1 * g + (g % 2 ? -d : d)), 0.0});
  const RateFit f = fit_exponential_rate(c);
  // Hand OLS: sum (x - 1.5) r = -2 d and sxx = 5, so the slope moves by
  // -2d/5 and SSR = 4 d^2 - (2 d)^2 / 5.
  const double sxr = -2 * d;
  const double ssr = 4 * d * d - sxr * sxr / 5.0;
  EXPECT_NEAR(f.rate, 0.1 + 2 * d / 5, 1e-12);
  EXPECT_NEAR(f.rate_stderr, std::sqrt(ssr / 2.0 / 5.0), 1e-12);
  EXPECT_NEAR(f.residual, std::sqrt(ssr / 4.0), 1e-12);
}

TEST(CurveCsv, RoundTrip) {
  DistanceCurve c;
  c.metadata = {{"ensemble", "uce"}, {"qubits", "4"}};
  c.points = {{10, 1.25, 0.01}, {20, 0.1 + 0.2, 0.003}, {40, 1e-3, 0.0}};
  std::stringstream ss;
  write_curve_csv(ss, c);
  EXPECT_NE(ss.str().find("n_g,F,stderr\n"), std::string::npos);
  const DistanceCurve back = read_curve_csv(ss);
  ASSERT_EQ(back.points.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.points[i].gates, c.points[i].gates);
    EXPECT_EQ(back.points[i].distance, c.points[i].distance);
    EXPECT_EQ(back.points[i].std_error, c.points[i].std_error);
  }
  EXPECT_EQ(back.metadata, c.metadata);
}

TEST(FitCsv, Layout) {
  const auto c = synthetic(range(0, 20, 2), [](double g) { return 2.0 * std::exp(-0.1 * g); });
  const RateFit f = fit_exponential_rate(c);
  std::stringstream ss;
  write_fit_csv(ss, &f, f.kind, f.f_high, f.f_low, {{"seed", "1"}});
  const CsvTable t = read_csv(ss);
  ASSERT_EQ(t.header, (std::vector<std::string>{"kind", "param1", "param2", "residual", "points_used",
                                                "F_high", "F_low"}));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].fields[0], "exponential");
  EXPECT_NEAR(parse_double(t.rows[0].fields[1], 0), 0.1, 1e-10);
  EXPECT_EQ(t.rows[0].fields[4], "11");
  EXPECT_EQ(*t.meta("fit_status"), "ok");

  std::stringstream none;
  write_fit_csv(none, nullptr, FitKind::Gaussian, 2.0, 0.01);
  const CsvTable u = read_csv(none);
  EXPECT_EQ(u.rows[0].fields[0], "gaussian");
  EXPECT_EQ(u.rows[0].fields[1], "nan");
  EXPECT_EQ(*u.meta("fit_status"), "insufficient_points");
}
