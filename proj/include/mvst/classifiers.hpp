#pragma once

#include <mvst/data.hpp>
#include <mvst/distances.hpp>
#include <mvst/error.hpp>
#include <mvst/parallel.hpp>
#include <mvst/shapelets.hpp>
#include <mvst/text.hpp>

#include <cstddef>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvst {

  struct Prediction {
    std::string label;
    /// Per-class vote tally aligned with the class alphabet (ensembles only).
    std::optional<std::vector<std::size_t>> votes;
  };

  struct Neighbour {
    std::size_t index;
    double distance;
  };

  /// Nearest training item; distance ties keep the lowest index.
  template<typename Item, typename Query, typename Dist>
  Neighbour nearest_neighbour(std::span<const Item> train, const Query& query, Dist&& dist) {
    if (train.empty()) { throw ConfigError("1-NN needs a non-empty training set"); }
    Neighbour best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < train.size(); ++i) {
      const double d = dist(train[i], query);
      if (i == 0 || d < best.distance) { best = {i, d}; }
    }
    return best;
  }

  template<typename Item, typename Query, typename Dist>
  Prediction knn1_predict(std::span<const Item> train, std::span<const std::string> labels, Dist&& dist,
                          const Query& query) {
    if (labels.size() != train.size()) { throw ConfigError("training items and labels differ in count"); }
    return {labels[nearest_neighbour(train, query, dist).index], std::nullopt};
  }

  template<typename Dist>
  Prediction knn1_predict(const Dataset& train, Dist&& dist, const MultivariateInstance& query) {
    const auto nn = nearest_neighbour(std::span(train.instances()), query, dist);
    return {train[nn.index].label(), std::nullopt};
  }

  /// Dimensions appended in order into one series of length d*m.
  inline TimeSeries concatenate(const MultivariateInstance& inst) {
    std::vector<double> out;
    out.reserve(inst.dimensions() * inst.length());
    for (const auto& s : inst.dims()) { out.insert(out.end(), s.begin(), s.end()); }
    return TimeSeries(std::move(out));
  }

  /// One 1-NN per dimension, majority vote. Vote ties go to the label with the smallest
  /// nearest-neighbour distance among its voting dimensions, then to class-alphabet order.
  template<typename UnivariateDist>
  Prediction ensemble_predict(const Dataset& train, UnivariateDist&& dist, const MultivariateInstance& query) {
    const std::size_t d = train.dimensions();
    if (query.dimensions() != d) { throw DimensionError("query dimension count differs from training data"); }
    const std::size_t c = train.num_classes();
    std::vector<std::size_t> votes(c, 0);
    std::vector<double> closest(c, std::numeric_limits<double>::infinity());
    for (std::size_t dim = 0; dim < d; ++dim) {
      const auto& q = query.dim(dim);
      std::size_t best_i = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < train.size(); ++i) {
        const double dd = dist(train[i].dim(dim), q);
        if (i == 0 || dd < best) {
          best = dd;
          best_i = i;
        }
      }
      const std::size_t cls = train.label_index(best_i);
      ++votes[cls];
      closest[cls] = std::min(closest[cls], best);
    }
    std::size_t winner = 0;
    for (std::size_t k = 1; k < c; ++k) {
      if (votes[k] > votes[winner] || (votes[k] == votes[winner] && closest[k] < closest[winner])) { winner = k; }
    }
    return {train.classes()[winner], votes};
  }

  // --- --- --- Shapelet transform pipeline

  /// Transform both sets with `shapelets` and classify test rows by 1-NN Euclidean on feature rows.
  inline std::vector<Prediction> st_predict(const Dataset& train, const Dataset& test,
                                            std::span<const ShapeletCandidate> shapelets, unsigned threads = 1) {
    const auto train_fm = transform(train, shapelets, threads);
    const auto test_fm = transform(test, shapelets, threads);
    std::vector<std::span<const double>> rows;
    rows.reserve(train_fm.rows);
    for (std::size_t i = 0; i < train_fm.rows; ++i) { rows.push_back(train_fm.row(i)); }
    std::vector<Prediction> out(test_fm.rows);
    parallel_for(test_fm.rows, threads, [&](std::size_t i) {
      const auto nn = nearest_neighbour(std::span<const std::span<const double>>(rows), test_fm.row(i),
                                        [](std::span<const double> a, std::span<const double> b) {
                                          return euclidean_dist(a, b);
                                        });
      out[i] = {train[nn.index].label(), std::nullopt};
    });
    return out;
  }

  struct StPipelineResult {
    std::vector<ShapeletCandidate> shapelets;
    std::vector<Prediction> predictions;
  };

  inline StPipelineResult st_pipeline(const Dataset& train, const Dataset& test, const SearchConfig& config) {
    StPipelineResult r;
    r.shapelets = search(train, config);
    r.predictions = st_predict(train, test, r.shapelets, config.threads);
    return r;
  }

  inline std::vector<Prediction> st_pipeline_fit_predict(const Dataset& train, const Dataset& test,
                                                         const SearchConfig& config) {
    return st_pipeline(train, test, config).predictions;
  }

  // --- --- --- Algorithm roster

  enum class Algorithm { DtwI, DtwD, DtwA, NnEdC, NnDtwC, NnDtwE, StIndep, StD, StI };

  inline constexpr Algorithm all_algorithms[] = {Algorithm::DtwI,   Algorithm::DtwD,   Algorithm::DtwA,
                                                 Algorithm::NnEdC,  Algorithm::NnDtwC, Algorithm::NnDtwE,
                                                 Algorithm::StIndep, Algorithm::StD,   Algorithm::StI};

  inline std::string_view to_string(Algorithm a) {
    switch (a) {
      case Algorithm::DtwI: return "dtw-i";
      case Algorithm::DtwD: return "dtw-d";
      case Algorithm::DtwA: return "dtw-a";
      case Algorithm::NnEdC: return "1nn-ed-c";
      case Algorithm::NnDtwC: return "1nn-dtw-c";
      case Algorithm::NnDtwE: return "1nn-dtw-e";
      case Algorithm::StIndep: return "st-indep";
      case Algorithm::StD: return "st-d";
      case Algorithm::StI: return "st-i";
    }
    return "?";
  }

  inline Algorithm parse_algorithm(std::string_view name) {
    for (auto a : all_algorithms) {
      if (to_string(a) == name) { return a; }
    }
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
  }

  inline bool is_shapelet_algorithm(Algorithm a) {
    return a == Algorithm::StIndep || a == Algorithm::StD || a == Algorithm::StI;
  }

  struct AlgorithmConfig {
    WarpingWindow window;
    /// Used by the st-* algorithms; `variant` is overridden by the algorithm.
    SearchConfig search;
    unsigned threads = 1;
  };

  struct FitResult {
    std::vector<Prediction> predictions;
    std::vector<ShapeletCandidate> shapelets;
    std::optional<DtwVariant> resolved_dtw;
  };

  inline FitResult fit_predict(Algorithm algo, const Dataset& train, const Dataset& test, const AlgorithmConfig& cfg) {
    detail::check_compatible(train, test);
    FitResult r;
    r.predictions.resize(test.size());
    auto per_query = [&](auto&& predict_one) {
      parallel_for(test.size(), cfg.threads, [&](std::size_t i) { r.predictions[i] = predict_one(test[i]); });
    };
    const auto window = cfg.window;
    switch (algo) {
      case Algorithm::DtwA:
      case Algorithm::DtwI:
      case Algorithm::DtwD: {
        DtwVariant v = algo == Algorithm::DtwI ? DtwVariant::Independent : DtwVariant::Dependent;
        if (algo == Algorithm::DtwA) {
          v = train.size() >= 2 ? dtw_a_select(train, window, cfg.threads) : DtwVariant::Dependent;
          r.resolved_dtw = v;
        }
        per_query([&](const MultivariateInstance& q) {
          return knn1_predict(train, [&](const auto& a, const auto& b) { return dtw_multivariate(v, a, b, window); }, q);
        });
        break;
      }
      case Algorithm::NnEdC:
      case Algorithm::NnDtwC: {
        std::vector<TimeSeries> flat;
        flat.reserve(train.size());
        for (const auto& inst : train) { flat.push_back(concatenate(inst)); }
        const auto labels = train.labels();
        const bool use_dtw = algo == Algorithm::NnDtwC;
        per_query([&](const MultivariateInstance& q) {
          const auto cq = concatenate(q);
          return knn1_predict(std::span<const TimeSeries>(flat), std::span<const std::string>(labels),
                              [&](const TimeSeries& a, const TimeSeries& b) {
                                return use_dtw ? dtw(a, b, window) : euclidean_dist(a, b);
                              },
                              cq);
        });
        break;
      }
      case Algorithm::NnDtwE:
        per_query([&](const MultivariateInstance& q) {
          return ensemble_predict(train, [&](const TimeSeries& a, const TimeSeries& b) { return dtw(a, b, window); }, q);
        });
        break;
      case Algorithm::StIndep:
      case Algorithm::StD:
      case Algorithm::StI: {
        SearchConfig sc = cfg.search;
        sc.variant = algo == Algorithm::StIndep ? ShapeletVariant::Independent
                     : algo == Algorithm::StD   ? ShapeletVariant::MultiDependent
                                                : ShapeletVariant::MultiIndependent;
        sc.threads = cfg.threads;
        auto res = st_pipeline(train, test, sc);
        r.predictions = std::move(res.predictions);
        r.shapelets = std::move(res.shapelets);
        break;
      }
    }
    return r;
  }

  // --- --- --- Output

  /// CSV `instanceIndex,trueLabel,predictedLabel`, optionally preceded by '#' comment lines.
  inline void write_predictions_csv(std::ostream& out, const Dataset& test, std::span<const Prediction> predictions,
                                    std::string_view comment = {}) {
    if (predictions.size() != test.size()) { throw ConfigError("prediction count differs from test size"); }
    if (!comment.empty()) { io::write_comment_block(out, comment); }
    out << "instanceIndex,trueLabel,predictedLabel\n";
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      out << i << ',' << test[i].label() << ',' << predictions[i].label << '\n';
    }
  }

} // namespace mvst
