#include "support.hpp"

#include <mvst/classifiers.hpp>
#include <mvst/evaluation.hpp>
#include <mvst/shapelets_io.hpp>
#include <mvst/synthetic.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace mvst;

namespace {

  MultivariateInstance point(std::vector<double> dims, std::string label) {
    std::vector<TimeSeries> s;
    for (double v : dims) { s.emplace_back(std::vector<double>{v}); }
    return MultivariateInstance(std::move(s), std::move(label));
  }

  double abs_dist(const TimeSeries& a, const TimeSeries& b) { return euclidean_dist(a, b); }

} // namespace

TEST(NearestNeighbour, Rules) {
  const std::vector<double> one{4.0};
  const std::vector<std::string> l1{"only"};
  auto dist = [](double a, double b) { return std::abs(a - b); };
  EXPECT_EQ(knn1_predict(std::span<const double>(one), std::span<const std::string>(l1), dist, 100.0).label, "only");

  const std::vector<double> train{0.0, 2.0, 5.0};
  const std::vector<std::string> labels{"x", "y", "z"};
  EXPECT_EQ(knn1_predict(std::span<const double>(train), std::span<const std::string>(labels), dist, 5.0).label, "z");
  // 1.0 is equidistant from items 0 and 1.
  EXPECT_EQ(knn1_predict(std::span<const double>(train), std::span<const std::string>(labels), dist, 1.0).label, "x");

  const std::vector<double> empty;
  EXPECT_THROW(nearest_neighbour(std::span<const double>(empty), 1.0, dist), ConfigError);
}

TEST(Concatenate, AppendsDimensions) {
  const MultivariateInstance a({TimeSeries{1, 2}, TimeSeries{3, 4}}, "a");
  EXPECT_EQ(concatenate(a), (TimeSeries{1, 2, 3, 4}));
  const MultivariateInstance b({TimeSeries{7, 8, 9}}, "a");
  EXPECT_EQ(concatenate(b), b.dim(0));
}

TEST(Ensemble, MajorityVote) {
  const Dataset train("E", {point({0, 0, 9}, "A"), point({9, 9, 0}, "B")}, {"A", "B"});
  const auto p = ensemble_predict(train, abs_dist, point({0, 0, 0}, "?"));
  EXPECT_EQ(p.label, "A");
  EXPECT_EQ(*p.votes, (std::vector<std::size_t>{2, 1}));
}

TEST(Ensemble, TieGoesToClosestNeighbour) {
  const Dataset train("E", {point({0.1, 5.0}, "A"), point({5.0, 0.5}, "B")}, {"A", "B"});
  EXPECT_EQ(ensemble_predict(train, abs_dist, point({0, 0}, "?")).label, "A");
  const Dataset flipped("E", {point({0.5, 5.0}, "A"), point({5.0, 0.1}, "B")}, {"A", "B"});
  EXPECT_EQ(ensemble_predict(flipped, abs_dist, point({0, 0}, "?")).label, "B");
  // Full tie on votes and distance falls back to alphabet order.
  const Dataset even("E", {point({1.0, 5.0}, "B"), point({5.0, 1.0}, "A")}, {"A", "B"});
  EXPECT_EQ(ensemble_predict(even, abs_dist, point({0, 0}, "?")).label, "A");
}

TEST(Ensemble, UnivariateMatchesOneNn) {
  std::mt19937_64 rng(3);
  const auto train = support::random_dataset(rng, 12, 1, 10, 3);
  const auto test = support::random_dataset(rng, 10, 1, 10, 3);
  auto d = [](const TimeSeries& a, const TimeSeries& b) { return dtw(a, b); };
  for (const auto& q : test) {
    EXPECT_EQ(ensemble_predict(train, d, q).label,
              knn1_predict(train, [&](const auto& a, const auto& b) { return dtw(a.dim(0), b.dim(0)); }, q).label);
  }
}

TEST(FitPredict, ResubstitutionIsPerfect) {
  std::mt19937_64 rng(4);
  const auto train = support::random_dataset(rng, 9, 2, 12, 3);
  AlgorithmConfig cfg;
  cfg.search.total_shapelets = 300;
  for (auto algo : all_algorithms) {
    if (algo == Algorithm::NnDtwE) { continue; } // per-dimension votes can disagree with the true item
    const auto r = fit_predict(algo, train, train, cfg);
    EXPECT_EQ(accuracy(r.predictions, train), 1.0) << to_string(algo);
  }
}

TEST(FitPredict, DtwIMatchesManualPipeline) {
  std::mt19937_64 rng(5);
  const auto train = support::random_dataset(rng, 15, 3, 14, 3);
  const auto test = support::random_dataset(rng, 12, 3, 14, 3);
  AlgorithmConfig cfg;
  cfg.window = WarpingWindow(0.25);
  cfg.threads = 3;
  const auto r = fit_predict(Algorithm::DtwI, train, test, cfg);
  for (std::size_t q = 0; q < test.size(); ++q) {
    std::size_t best = 0;
    double bd = 0;
    for (std::size_t i = 0; i < train.size(); ++i) {
      double s = 0;
      for (std::size_t k = 0; k < 3; ++k) { s += dtw(train[i].dim(k), test[q].dim(k), cfg.window); }
      if (i == 0 || s < bd) {
        bd = s;
        best = i;
      }
    }
    EXPECT_EQ(r.predictions[q].label, train[best].label());
  }
}

TEST(FitPredict, AdaptiveReportsChoice) {
  std::mt19937_64 rng(6);
  const auto train = support::random_dataset(rng, 8, 2, 10, 2);
  const auto r = fit_predict(Algorithm::DtwA, train, train, {});
  ASSERT_TRUE(r.resolved_dtw.has_value());
  EXPECT_EQ(*r.resolved_dtw, dtw_a_select(train));
}

TEST(FitPredict, IncompatibleSetsRejected) {
  std::mt19937_64 rng(7);
  const auto train = support::random_dataset(rng, 4, 2, 10, 2);
  const auto test = support::random_dataset(rng, 4, 3, 10, 2);
  EXPECT_THROW(fit_predict(Algorithm::DtwD, train, test, {}), Error);
}

TEST(StPipeline, SerializedShapeletsReproducePredictions) {
  synthetic::PlantedConfig pc;
  pc.train_size = 16;
  pc.test_size = 16;
  pc.length = 50;
  pc.pattern_length = 12;
  const auto data = synthetic::planted(pc);
  SearchConfig sc;
  sc.total_shapelets = 400;
  sc.seed = 3;
  const auto r = st_pipeline(data.train, data.test, sc);
  const auto j = io::shapelet_set_to_json(r.shapelets, nullptr);
  const auto back = io::shapelet_set_from_json(io::Json::parse(j.dump(2)));
  const auto again = st_predict(data.train, data.test, back.shapelets, 4);
  ASSERT_EQ(again.size(), r.predictions.size());
  for (std::size_t i = 0; i < again.size(); ++i) { EXPECT_EQ(again[i].label, r.predictions[i].label); }
}

TEST(StPipeline, PlantedPatternIsLearned) {
  const auto data = synthetic::planted({});
  SearchConfig sc;
  sc.total_shapelets = 2000;
  sc.seed = 1;
  sc.threads = 4;
  const auto preds = st_pipeline_fit_predict(data.train, data.test, sc);
  EXPECT_GE(accuracy(preds, data.test), 0.95);
}

TEST(AlgorithmNames, RoundTrip) {
  for (auto a : all_algorithms) { EXPECT_EQ(parse_algorithm(to_string(a)), a); }
  EXPECT_THROW(parse_algorithm("dtw-x"), ConfigError);
  EXPECT_TRUE(is_shapelet_algorithm(Algorithm::StI));
  EXPECT_FALSE(is_shapelet_algorithm(Algorithm::DtwA));
}

TEST(PredictionsCsv, Format) {
  const Dataset test("T", {point({1}, "a"), point({2}, "b")}, {"a", "b"});
  const std::vector<Prediction> p{{"a", std::nullopt}, {"a", std::nullopt}};
  std::ostringstream out;
  write_predictions_csv(out, test, p, "manifest {}");
  EXPECT_EQ(out.str(), "# manifest {}\ninstanceIndex,trueLabel,predictedLabel\n0,a,a\n1,b,a\n");
  EXPECT_THROW(write_predictions_csv(out, test, std::span<const Prediction>(p).first(1)), ConfigError);
}
