#pragma once

#include <mvst/classifiers.hpp>
#include <mvst/data.hpp>
#include <mvst/error.hpp>
#include <mvst/parallel.hpp>
#include <mvst/random.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace mvst {

  inline double accuracy(std::span<const std::string> predicted, std::span<const std::string> truth) {
    if (predicted.size() != truth.size()) { throw StatisticsError("prediction and truth counts differ"); }
    if (predicted.empty()) { throw StatisticsError("accuracy of an empty prediction set"); }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) { correct += predicted[i] == truth[i]; }
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
  }

  inline double accuracy(std::span<const Prediction> predictions, const Dataset& test) {
    std::vector<std::string> predicted;
    predicted.reserve(predictions.size());
    for (const auto& p : predictions) { predicted.push_back(p.label); }
    const auto truth = test.labels();
    return accuracy(predicted, truth);
  }

  // --- --- --- Results table

  struct ResultCell {
    std::size_t dataset = 0;
    std::size_t algorithm = 0;
    std::size_t fold = 0;
    std::optional<double> accuracy;
    std::optional<std::string> error;
  };

  /// Accuracies for every (dataset, algorithm, fold), stored dataset-major then algorithm then fold.
  class ResultsTable {
  public:
    ResultsTable() = default;

    ResultsTable(std::vector<std::string> datasets, std::vector<std::string> algorithms, std::size_t folds)
      : datasets_(std::move(datasets)), algorithms_(std::move(algorithms)), folds_(folds) {
      if (folds_ == 0) { throw ConfigError("fold count must be at least 1"); }
      cells_.resize(datasets_.size() * algorithms_.size() * folds_);
      for (std::size_t d = 0; d < datasets_.size(); ++d) {
        for (std::size_t a = 0; a < algorithms_.size(); ++a) {
          for (std::size_t f = 0; f < folds_; ++f) {
            auto& c = cell(d, a, f);
            c.dataset = d;
            c.algorithm = a;
            c.fold = f;
          }
        }
      }
    }

    [[nodiscard]] const std::vector<std::string>& datasets() const { return datasets_; }
    [[nodiscard]] const std::vector<std::string>& algorithms() const { return algorithms_; }
    [[nodiscard]] std::size_t folds() const { return folds_; }
    [[nodiscard]] const std::vector<ResultCell>& cells() const { return cells_; }

    ResultCell& cell(std::size_t d, std::size_t a, std::size_t f) {
      return cells_[(d * algorithms_.size() + a) * folds_ + f];
    }
    [[nodiscard]] const ResultCell& cell(std::size_t d, std::size_t a, std::size_t f) const {
      return cells_[(d * algorithms_.size() + a) * folds_ + f];
    }

    /// Mean accuracy over successful folds; nullopt when every fold failed.
    [[nodiscard]] std::optional<double> mean(std::size_t d, std::size_t a) const {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t f = 0; f < folds_; ++f) {
        if (const auto& acc = cell(d, a, f).accuracy) {
          sum += *acc;
          ++count;
        }
      }
      if (count == 0) { return std::nullopt; }
      return sum / static_cast<double>(count);
    }

    /// Population standard deviation over successful folds.
    [[nodiscard]] std::optional<double> stddev(std::size_t d, std::size_t a) const {
      const auto mu = mean(d, a);
      if (!mu) { return std::nullopt; }
      double ss = 0.0;
      std::size_t count = 0;
      for (std::size_t f = 0; f < folds_; ++f) {
        if (const auto& acc = cell(d, a, f).accuracy) {
          ss += (*acc - *mu) * (*acc - *mu);
          ++count;
        }
      }
      return std::sqrt(ss / static_cast<double>(count));
    }

    [[nodiscard]] std::size_t failures() const {
      return static_cast<std::size_t>(
        std::count_if(cells_.begin(), cells_.end(), [](const ResultCell& c) { return c.error.has_value(); }));
    }

  private:
    std::vector<std::string> datasets_;
    std::vector<std::string> algorithms_;
    std::size_t folds_ = 0;
    std::vector<ResultCell> cells_;
  };

  struct ExperimentDataset {
    Dataset train;
    Dataset test;
    [[nodiscard]] const std::string& name() const { return train.name(); }
  };

  /// Seed used to resample dataset `name` (shared by every algorithm, so folds are paired).
  inline std::uint64_t resample_seed(std::uint64_t seed, const std::string& dataset) {
    return mix_seed(seed, stable_hash(dataset));
  }

  /// Seed handed to an algorithm for one cell.
  inline std::uint64_t cell_seed(std::uint64_t seed, const std::string& dataset, std::string_view algorithm,
                                 std::size_t fold) {
    return mix_seed(seed, stable_hash(dataset), stable_hash(algorithm), fold);
  }

  /// Run every (dataset, algorithm, fold) cell. Cells run concurrently on `threads` workers;
  /// each cell's randomness depends only on its coordinates. Failures are recorded per cell.
  inline ResultsTable run_experiment(std::span<const ExperimentDataset> datasets, std::span<const Algorithm> algorithms,
                                     std::size_t folds, std::uint64_t seed, const AlgorithmConfig& base = {},
                                     unsigned threads = 1) {
    std::vector<std::string> dnames, anames;
    std::set<std::string> seen;
    for (const auto& d : datasets) {
      if (!seen.insert(d.name()).second) { throw ConfigError("duplicate dataset name '" + d.name() + "'"); }
      dnames.push_back(d.name());
    }
    for (auto a : algorithms) { anames.emplace_back(to_string(a)); }
    ResultsTable table(dnames, anames, folds);

    const std::size_t per_dataset = algorithms.size() * folds;
    parallel_for(datasets.size() * per_dataset, threads, [&](std::size_t job) {
      const std::size_t d = job / per_dataset;
      const std::size_t a = (job % per_dataset) / folds;
      const std::size_t f = job % folds;
      auto& c = table.cell(d, a, f);
      try {
        const auto& ds = datasets[d];
        const auto [train, test] =
          stratified_resample(ds.train, ds.test, ResampleSpec{f, resample_seed(seed, ds.name()), 0.5});
        AlgorithmConfig cfg = base;
        cfg.threads = 1;
        cfg.search.seed = cell_seed(seed, ds.name(), anames[a], f);
        const auto fit = fit_predict(algorithms[a], train, test, cfg);
        c.accuracy = accuracy(fit.predictions, test);
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    });
    return table;
  }

  // --- --- --- Ranks

  struct RankSummary {
    std::vector<std::string> algorithms;
    /// Datasets included (those where every algorithm produced a mean).
    std::vector<std::string> datasets;
    /// per_dataset_ranks[i][a]: rank of algorithm a on datasets[i]; 1 = best.
    std::vector<std::vector<double>> per_dataset_ranks;
    std::vector<double> average_rank;
  };

  /// Ranks of `values` (higher is better gets rank 1); ties share the mean of their positions.
  inline std::vector<double> rank_descending(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && values[order[j + 1]] == values[order[i]]) { ++j; }
      const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
      for (std::size_t k = i; k <= j; ++k) { ranks[order[k]] = shared; }
      i = j + 1;
    }
    return ranks;
  }

  /// Average ranks from a datasets x algorithms matrix of mean accuracies.
  inline RankSummary average_ranks(const std::vector<std::vector<double>>& means,
                                   std::vector<std::string> dataset_names, std::vector<std::string> algorithm_names) {
    if (algorithm_names.size() < 2) { throw StatisticsError("ranking needs at least two algorithms"); }
    if (means.empty()) { throw StatisticsError("ranking needs at least one dataset"); }
    RankSummary r;
    r.algorithms = std::move(algorithm_names);
    r.datasets = std::move(dataset_names);
    r.average_rank.assign(r.algorithms.size(), 0.0);
    for (const auto& row : means) {
      if (row.size() != r.algorithms.size()) { throw StatisticsError("ragged mean-accuracy matrix"); }
      r.per_dataset_ranks.push_back(rank_descending(row));
      for (std::size_t a = 0; a < row.size(); ++a) { r.average_rank[a] += r.per_dataset_ranks.back()[a]; }
    }
    for (auto& v : r.average_rank) { v /= static_cast<double>(means.size()); }
    return r;
  }

  /// Ranks by fold-mean accuracy. Datasets where some algorithm has no successful fold are left out.
  inline RankSummary average_ranks(const ResultsTable& table) {
    std::vector<std::vector<double>> means;
    std::vector<std::string> names;
    for (std::size_t d = 0; d < table.datasets().size(); ++d) {
      std::vector<double> row;
      for (std::size_t a = 0; a < table.algorithms().size(); ++a) {
        if (auto m = table.mean(d, a)) { row.push_back(*m); }
      }
      if (row.size() == table.algorithms().size()) {
        means.push_back(std::move(row));
        names.push_back(table.datasets()[d]);
      }
    }
    return average_ranks(means, names, table.algorithms());
  }

  // --- --- --- Wilcoxon signed-rank test

  struct WilcoxonResult {
    double p_value = 1.0;
    /// Sum of ranks of positive differences.
    double w_plus = 0.0;
    /// Pairs left after discarding zero differences.
    std::size_t n = 0;
    bool exact = true;
  };

  namespace detail {
    inline constexpr std::size_t wilcoxon_exact_limit = 20;
  }

  /// Two-sided paired test. Zero differences are discarded, tied |differences| share average ranks.
  /// Exact null distribution for n <= 20 remaining pairs, normal approximation with continuity
  /// correction above that. All differences zero gives p = 1.
  inline WilcoxonResult wilcoxon_signed_rank_detailed(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) { throw StatisticsError("Wilcoxon test needs paired samples of equal length"); }
    if (a.empty()) { throw StatisticsError("Wilcoxon test needs at least one pair"); }
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      if (d != 0.0) { diffs.push_back(d); }
    }
    WilcoxonResult r;
    r.n = diffs.size();
    if (r.n == 0) { return r; }

    std::vector<double> magnitudes(r.n);
    for (std::size_t i = 0; i < r.n; ++i) { magnitudes[i] = -std::abs(diffs[i]); }
    // rank_descending on negated magnitudes ranks the smallest |d| first.
    const auto ranks = rank_descending(magnitudes);

    // Average ranks are multiples of 1/2; work in doubled integer ranks.
    std::vector<std::uint64_t> doubled(r.n);
    std::uint64_t doubled_plus = 0;
    std::uint64_t doubled_total = 0;
    for (std::size_t i = 0; i < r.n; ++i) {
      doubled[i] = static_cast<std::uint64_t>(std::llround(2.0 * ranks[i]));
      doubled_total += doubled[i];
      if (diffs[i] > 0.0) { doubled_plus += doubled[i]; }
    }
    r.w_plus = static_cast<double>(doubled_plus) / 2.0;

    if (r.n <= detail::wilcoxon_exact_limit) {
      // counts[s] = number of sign assignments whose doubled positive-rank sum is s.
      std::vector<std::uint64_t> counts(doubled_total + 1, 0);
      counts[0] = 1;
      std::uint64_t reach = 0;
      for (auto w : doubled) {
        for (std::uint64_t s = reach + 1; s-- > 0;) {
          if (counts[s] != 0) { counts[s + w] += counts[s]; }
        }
        reach += w;
      }
      std::uint64_t lower = 0, upper = 0;
      for (std::uint64_t s = 0; s <= doubled_total; ++s) {
        if (s <= doubled_plus) { lower += counts[s]; }
        if (s >= doubled_plus) { upper += counts[s]; }
      }
      const double total = std::ldexp(1.0, static_cast<int>(r.n));
      r.p_value = std::min(1.0, 2.0 * static_cast<double>(std::min(lower, upper)) / total);
      r.exact = true;
      return r;
    }

    const double n = static_cast<double>(r.n);
    const double mean = n * (n + 1.0) / 4.0;
    double tie_term = 0.0;
    {
      std::vector<double> sorted = magnitudes;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) { ++j; }
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
      }
    }
    const double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    const double z = std::max(0.0, std::abs(r.w_plus - mean) - 0.5) / std::sqrt(variance);
    r.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), std::numeric_limits<double>::min(), 1.0);
    r.exact = false;
    return r;
  }

  inline double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    return wilcoxon_signed_rank_detailed(a, b).p_value;
  }

  struct PairwiseTest {
    std::string first;
    std::string second;
    std::size_t datasets = 0;
    WilcoxonResult result;
  };

  /// Wilcoxon test for every algorithm pair over fold-mean accuracies on the datasets where
  /// both have a mean. No multiplicity correction is applied.
  inline std::vector<PairwiseTest> pairwise_wilcoxon(const ResultsTable& table) {
    std::vector<PairwiseTest> out;
    const auto& algs = table.algorithms();
    for (std::size_t x = 0; x < algs.size(); ++x) {
      for (std::size_t y = x + 1; y < algs.size(); ++y) {
        std::vector<double> va, vb;
        for (std::size_t d = 0; d < table.datasets().size(); ++d) {
          auto ma = table.mean(d, x);
          auto mb = table.mean(d, y);
          if (ma && mb) {
            va.push_back(*ma);
            vb.push_back(*mb);
          }
        }
        PairwiseTest t{algs[x], algs[y], va.size(), {}};
        if (!va.empty()) { t.result = wilcoxon_signed_rank_detailed(va, vb); }
        out.push_back(std::move(t));
      }
    }
    return out;
  }

  // --- --- --- Serialization

  inline nlohmann::ordered_json results_to_json(const ResultsTable& table,
                                                const nlohmann::ordered_json& manifest = nullptr) {
    nlohmann::ordered_json j;
    if (!manifest.is_null()) { j["manifest"] = manifest; }
    j["datasets"] = table.datasets();
    j["algorithms"] = table.algorithms();
    j["folds"] = table.folds();
    auto cells = nlohmann::ordered_json::array();
    for (const auto& c : table.cells()) {
      nlohmann::ordered_json e;
      e["dataset"] = table.datasets()[c.dataset];
      e["algorithm"] = table.algorithms()[c.algorithm];
      e["fold"] = c.fold;
      e["accuracy"] = c.accuracy ? nlohmann::ordered_json(*c.accuracy) : nlohmann::ordered_json(nullptr);
      if (c.error) { e["error"] = *c.error; }
      cells.push_back(std::move(e));
    }
    j["cells"] = std::move(cells);
    return j;
  }

  inline ResultsTable results_from_json(const nlohmann::ordered_json& j) {
    try {
      ResultsTable table(j.at("datasets").get<std::vector<std::string>>(),
                         j.at("algorithms").get<std::vector<std::string>>(), j.at("folds").get<std::size_t>());
      const auto index_of = [](const std::vector<std::string>& names, const std::string& key) {
        auto it = std::find(names.begin(), names.end(), key);
        if (it == names.end()) { throw ParseError("cell refers to unknown name '" + key + "'"); }
        return static_cast<std::size_t>(it - names.begin());
      };
      for (const auto& e : j.at("cells")) {
        const auto d = index_of(table.datasets(), e.at("dataset").get<std::string>());
        const auto a = index_of(table.algorithms(), e.at("algorithm").get<std::string>());
        const auto f = e.at("fold").get<std::size_t>();
        if (f >= table.folds()) { throw ParseError("cell fold " + std::to_string(f) + " out of range"); }
        auto& c = table.cell(d, a, f);
        if (!e.at("accuracy").is_null()) { c.accuracy = e.at("accuracy").get<double>(); }
        if (e.contains("error")) { c.error = e.at("error").get<std::string>(); }
      }
      return table;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed results JSON: ") + e.what());
    }
  }

} // namespace mvst
