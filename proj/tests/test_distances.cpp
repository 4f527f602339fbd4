#include "oracles.hpp"
#include "support.hpp"

#include <mvst/distances.hpp>

#include <gtest/gtest.h>

using namespace mvst;

namespace {

  std::vector<double> random_vec(std::mt19937_64& rng, std::size_t m) {
    std::normal_distribution<double> g;
    std::vector<double> v(m);
    for (auto& x : v) { x = g(rng); }
    return v;
  }

  // Full-matrix dependent DTW with band, written independently of the library.
  double dtw_d_matrix(const MultivariateInstance& q, const MultivariateInstance& c, std::size_t band) {
    const std::size_t m = q.length();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> D(m + 1, std::vector<double>(m + 1, inf));
    D[0][0] = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        if ((i > j ? i - j : j - i) > band) { continue; }
        double cost = 0;
        for (std::size_t k = 0; k < q.dimensions(); ++k) {
          cost += (q.dim(k)[i - 1] - c.dim(k)[j - 1]) * (q.dim(k)[i - 1] - c.dim(k)[j - 1]);
        }
        D[i][j] = cost + std::min({D[i - 1][j], D[i][j - 1], D[i - 1][j - 1]});
      }
    }
    return D[m][m];
  }

  std::size_t loo_oracle(const Dataset& data, const std::function<double(std::size_t, std::size_t)>& dist) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::size_t best = data.size();
      double bd = 0;
      for (std::size_t j = 0; j < data.size(); ++j) {
        if (j == i) { continue; }
        const double v = dist(i, j);
        if (best == data.size() || v < bd) {
          best = j;
          bd = v;
        }
      }
      correct += data[best].label() == data[i].label();
    }
    return correct;
  }

  // Two spikes per instance, one per dimension, at unrelated positions. Class is spike height.
  // Per-dimension warping aligns each spike on its own; a single shared path cannot.
  Dataset spike_dataset() {
    const std::size_t m = 20;
    std::vector<MultivariateInstance> out;
    for (std::size_t i = 0; i < 12; ++i) {
      const double h = i % 2 ? 2.0 : 3.0;
      std::vector<double> a(m, 0.0), b(m, 0.0);
      a[2 + (i * 7) % 16] = h;
      b[2 + (i * 11 + 3) % 16] = h;
      out.emplace_back(std::vector<TimeSeries>{TimeSeries(a), TimeSeries(b)}, i % 2 ? "low" : "high");
    }
    return Dataset("Spikes", std::move(out), {"high", "low"});
  }

} // namespace

TEST(Euclidean, Examples) {
  EXPECT_EQ(euclidean_dist(TimeSeries{1, 2, 3}, TimeSeries{1, 2, 3}), 0.0);
  EXPECT_EQ(euclidean_dist(TimeSeries{0, 0}, TimeSeries{3, 4}), 5.0);
  EXPECT_THROW(euclidean_dist(TimeSeries{1, 2}, TimeSeries{1, 2, 3}), DimensionError);
}

TEST(Sdist, Examples) {
  EXPECT_EQ(sdist(TimeSeries{1, 2}, TimeSeries{5, 1, 2, 9}, false), 0.0);
  EXPECT_EQ(sdist(TimeSeries{1, 2}, TimeSeries{5, 1, 2, 9}, true), 0.0);
  const TimeSeries t{0.3, -1, 4, 2};
  EXPECT_EQ(sdist(t, t, false), 0.0);
  EXPECT_NEAR(sdist(t, t, true), 0.0, 1e-15);
  EXPECT_THROW(sdist(TimeSeries{1, 2, 3}, TimeSeries{1, 2}, false), DimensionError);
}

TEST(Sdist, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> len(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = len(rng) + 5;
    const std::size_t l = std::uniform_int_distribution<std::size_t>(1, m)(rng);
    const auto s = random_vec(rng, l);
    const auto t = random_vec(rng, m);
    for (bool norm : {false, true}) {
      EXPECT_NEAR(sdist(s, t, norm), oracle::sdist(s, t, norm), 1e-12);
    }
  }
}

TEST(Sdist, ShiftInvarianceWhenNormalized) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_vec(rng, 6);
    auto t = random_vec(rng, 30);
    const double before = sdist(s, t, true);
    for (auto& v : t) { v = 3.5 * v + 10.0; }
    EXPECT_NEAR(sdist(s, t, true), before, 1e-9);
  }
}

TEST(WarpingWindowTest, Band) {
  EXPECT_EQ(WarpingWindow(0.0).band(10), 0u);
  EXPECT_EQ(WarpingWindow(0.1).band(10), 1u);
  EXPECT_EQ(WarpingWindow(0.15).band(10), 2u);
  EXPECT_EQ(WarpingWindow(1.0).band(10), 10u);
  EXPECT_THROW(WarpingWindow(1.5), ConfigError);
  EXPECT_THROW(WarpingWindow(-0.1), ConfigError);
}

TEST(Dtw, Examples) {
  const TimeSeries a{1, 2, 3, 3}, b{1, 1, 2, 3};
  EXPECT_EQ(dtw(a, b, WarpingWindow::full()), 0.0);
  EXPECT_EQ(dtw(a, a, WarpingWindow(0.3)), 0.0);
  // Zero window collapses to pointwise squared differences.
  EXPECT_EQ(dtw(a, b, WarpingWindow(0.0)), 0.0 + 1.0 + 1.0 + 0.0);
  EXPECT_THROW(dtw(TimeSeries{1, 2}, TimeSeries{1, 2, 3}), DimensionError);
}

TEST(Dtw, MatchesPathEnumeration) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const auto a = random_vec(rng, m);
    const auto b = random_vec(rng, m);
    for (double f : {0.0, 0.2, 0.5, 1.0}) {
      const WarpingWindow w(f);
      EXPECT_NEAR(dtw(a, b, w), oracle::dtw_paths(a, b, w.band(m)), 1e-9);
    }
  }
}

TEST(Dtw, FullWindowMatchesTextbookMatrix) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_vec(rng, 30);
    const auto b = random_vec(rng, 30);
    EXPECT_NEAR(dtw(a, b), oracle::dtw_full_matrix(a, b), 1e-9);
    EXPECT_NEAR(dtw(a, b), dtw(b, a), 1e-12);
    EXPECT_LE(dtw(a, b), dtw(a, b, WarpingWindow(0.0)) + 1e-12);
  }
}

TEST(DtwMultivariate, DegenerateAndIdentity) {
  std::mt19937_64 rng(17);
  const auto q = support::random_instance(rng, 1, 12);
  const auto c = support::random_instance(rng, 1, 12);
  EXPECT_EQ(dtw_d(q, c), dtw(q.dim(0), c.dim(0)));
  EXPECT_EQ(dtw_i(q, c), dtw(q.dim(0), c.dim(0)));
  const auto q3 = support::random_instance(rng, 3, 9);
  EXPECT_EQ(dtw_d(q3, q3), 0.0);
  EXPECT_EQ(dtw_i(q3, q3), 0.0);
  EXPECT_THROW(dtw_d(q3, q), DimensionError);
  EXPECT_THROW(dtw_i(q3, support::random_instance(rng, 3, 8)), DimensionError);
  EXPECT_THROW(dtw_multivariate(DtwVariant::Adaptive, q3, q3), ConfigError);
}

TEST(DtwMultivariate, DependentMatchesOracles) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const auto q = support::random_instance(rng, 2, m);
    const auto c = support::random_instance(rng, 2, m);
    EXPECT_NEAR(dtw_d(q, c), oracle::dtw_d_paths(q, c, m), 1e-9);
  }
  for (int trial = 0; trial < 40; ++trial) {
    const auto q = support::random_instance(rng, 3, 25);
    const auto c = support::random_instance(rng, 3, 25);
    const WarpingWindow w(0.2);
    EXPECT_NEAR(dtw_d(q, c, w), dtw_d_matrix(q, c, w.band(25)), 1e-9);
    // One shared path cannot beat per-dimension optimal paths.
    EXPECT_LE(dtw_i(q, c, w), dtw_d(q, c, w) + 1e-9);
  }
}

TEST(DtwMultivariate, IndependentIsSumOfPerDimension) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = support::random_instance(rng, 4, 16);
    const auto c = support::random_instance(rng, 4, 16);
    double sum = 0;
    for (std::size_t k = 0; k < 4; ++k) { sum += dtw(q.dim(k), c.dim(k)); }
    EXPECT_EQ(dtw_i(q, c), sum);
  }
}

TEST(DtwAdaptive, PicksIndependentWhenPerDimensionWarpingMatters) {
  const auto data = spike_dataset();
  const std::size_t band = data.length();
  const auto oi = loo_oracle(data, [&](std::size_t i, std::size_t j) {
    return oracle::dtw_full_matrix(std::vector<double>(data[i].dim(0).begin(), data[i].dim(0).end()),
                                   std::vector<double>(data[j].dim(0).begin(), data[j].dim(0).end()))
           + oracle::dtw_full_matrix(std::vector<double>(data[i].dim(1).begin(), data[i].dim(1).end()),
                                     std::vector<double>(data[j].dim(1).begin(), data[j].dim(1).end()));
  });
  const auto od = loo_oracle(data, [&](std::size_t i, std::size_t j) { return dtw_d_matrix(data[i], data[j], band); });
  ASSERT_GT(oi, od) << "construction should favour per-dimension warping";
  const auto sel = dtw_a_select_detailed(data);
  EXPECT_EQ(sel.independent_correct, oi);
  EXPECT_EQ(sel.dependent_correct, od);
  EXPECT_EQ(sel.variant, DtwVariant::Independent);
  EXPECT_EQ(dtw_a_select(data, WarpingWindow::full(), 4), DtwVariant::Independent);
}

TEST(DtwAdaptive, TiesGoToDependent) {
  std::mt19937_64 rng(12);
  // With one dimension both variants coincide, so LOO accuracies tie.
  const auto data = support::random_dataset(rng, 10, 1, 8, 2);
  const auto sel = dtw_a_select_detailed(data);
  EXPECT_EQ(sel.independent_correct, sel.dependent_correct);
  EXPECT_EQ(sel.variant, DtwVariant::Dependent);
}

TEST(DtwAdaptive, SmallestLegalInput) {
  std::mt19937_64 rng(13);
  const auto data = support::random_dataset(rng, 2, 2, 6, 2);
  const auto v = dtw_a_select(data);
  EXPECT_TRUE(v == DtwVariant::Dependent || v == DtwVariant::Independent);
  const auto one = support::random_dataset(rng, 1, 2, 6, 1);
  EXPECT_THROW(dtw_a_select(one), ConfigError);
}

TEST(DtwAdaptive, ThreadCountDoesNotMatter) {
  std::mt19937_64 rng(14);
  const auto data = support::random_dataset(rng, 17, 3, 15, 3);
  const auto a = dtw_a_select_detailed(data, WarpingWindow(0.3), 1);
  const auto b = dtw_a_select_detailed(data, WarpingWindow(0.3), 6);
  EXPECT_EQ(a.independent_correct, b.independent_correct);
  EXPECT_EQ(a.dependent_correct, b.dependent_correct);
}
