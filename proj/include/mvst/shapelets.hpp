#pragma once

// Contracted random shapelet search and the shapelet transform for multivariate series.
//
// Three variants share the search loop and differ only in what a candidate is and how it
// is matched against an instance:
//   Independent       one channel taken from one dimension, slid along that same dimension;
//   MultiDependent    all d channels at one position, slid together with a shared offset;
//   MultiIndependent  all d channels at one position, each slid along its own dimension.

#include <mvst/data.hpp>
#include <mvst/distances.hpp>
#include <mvst/error.hpp>
#include <mvst/parallel.hpp>
#include <mvst/random.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mvst {

  enum class ShapeletVariant { Independent, MultiDependent, MultiIndependent };

  inline std::string_view to_string(ShapeletVariant v) {
    switch (v) {
      case ShapeletVariant::Independent: return "independent";
      case ShapeletVariant::MultiDependent: return "multi-dependent";
      case ShapeletVariant::MultiIndependent: return "multi-independent";
    }
    return "?";
  }

  inline ShapeletVariant parse_shapelet_variant(std::string_view s) {
    if (s == "independent" || s == "indep" || s == "st-indep") { return ShapeletVariant::Independent; }
    if (s == "multi-dependent" || s == "shapelet-d" || s == "st-d") { return ShapeletVariant::MultiDependent; }
    if (s == "multi-independent" || s == "shapelet-i" || s == "st-i") { return ShapeletVariant::MultiIndependent; }
    throw ConfigError("unknown shapelet variant '" + std::string(s) + "'");
  }

  /// Where a candidate was cut from. `dim` is always 0 for the multi-channel variants.
  struct ShapeletCoordinates {
    std::size_t instance = 0;
    std::size_t dim = 0;
    std::size_t position = 0;
    std::size_t length = 0;

    friend bool operator==(const ShapeletCoordinates&, const ShapeletCoordinates&) = default;
  };

  struct ShapeletCandidate {
    ShapeletVariant variant = ShapeletVariant::MultiDependent;
    /// One channel (Independent) or d channels, each of `coords.length` values.
    std::vector<std::vector<double>> channels;
    ShapeletCoordinates coords;
    std::optional<double> quality;
    std::string target_class;
    /// Channels are z-normalized and windows are z-normalized when matching.
    bool normalized = true;

    [[nodiscard]] std::size_t length() const { return coords.length; }
  };

  struct SearchConfig {
    ShapeletVariant variant = ShapeletVariant::MultiDependent;
    std::optional<std::size_t> min_length; // default min(3, m)
    std::optional<std::size_t> max_length; // default m
    std::optional<std::size_t> k;          // default min(10 c, candidate count)
    std::uint64_t seed = 0;
    std::optional<double> time_budget;               // seconds
    std::optional<std::uint64_t> total_shapelets;
    bool normalize = true;
    unsigned threads = 1;
  };

  /// SearchConfig with every default filled in for a particular dataset.
  struct ResolvedSearchConfig {
    ShapeletVariant variant;
    std::size_t min_length;
    std::size_t max_length;
    std::size_t k;
    std::uint64_t seed;
    std::optional<double> time_budget;
    std::optional<std::uint64_t> total_shapelets;
    bool normalize;
    unsigned threads;
  };

  namespace detail {

    inline std::uint64_t windows_per_series(std::size_t m, std::size_t min_len, std::size_t max_len) {
      std::uint64_t total = 0;
      for (std::size_t len = min_len; len <= max_len; ++len) { total += m - len + 1; }
      return total;
    }

    inline void validate_lengths(const Dataset& data, std::size_t min_len, std::size_t max_len) {
      const std::size_t m = data.length();
      if (min_len < 1) { throw ConfigError("min shapelet length must be at least 1"); }
      if (min_len > max_len) {
        throw ConfigError("min shapelet length " + std::to_string(min_len) + " exceeds max "
                          + std::to_string(max_len));
      }
      if (max_len > m) {
        throw ConfigError("max shapelet length " + std::to_string(max_len) + " exceeds series length "
                          + std::to_string(m));
      }
    }

  } // namespace detail

  /// Size of the candidate space: per instance, one candidate per (dim, length, position) for
  /// Independent and one per (length, position) for the multi-channel variants.
  inline std::uint64_t count_candidates(const Dataset& data, ShapeletVariant variant, std::size_t min_len,
                                        std::size_t max_len) {
    detail::validate_lengths(data, min_len, max_len);
    const std::uint64_t per_series = detail::windows_per_series(data.length(), min_len, max_len);
    const std::uint64_t series_per_instance = variant == ShapeletVariant::Independent ? data.dimensions() : 1;
    return static_cast<std::uint64_t>(data.size()) * series_per_instance * per_series;
  }

  /// Length bounds after defaults: min = min(3, m), max = m.
  inline std::pair<std::size_t, std::size_t> resolve_lengths(const SearchConfig& config, const Dataset& data) {
    const std::size_t m = data.length();
    const std::size_t lo = config.min_length.value_or(std::min<std::size_t>(3, m));
    const std::size_t hi = config.max_length.value_or(m);
    detail::validate_lengths(data, lo, hi);
    return {lo, hi};
  }

  inline ResolvedSearchConfig resolve(const SearchConfig& config, const Dataset& data) {
    ResolvedSearchConfig r{};
    r.variant = config.variant;
    std::tie(r.min_length, r.max_length) = resolve_lengths(config, data);
    const std::uint64_t space = count_candidates(data, r.variant, r.min_length, r.max_length);
    if (config.k) {
      if (*config.k == 0) { throw ConfigError("k must be at least 1"); }
      r.k = *config.k;
    } else {
      r.k = static_cast<std::size_t>(std::min<std::uint64_t>(10 * data.num_classes(), space));
    }
    if (!config.time_budget && !config.total_shapelets) {
      throw ConfigError("a time budget or a total shapelet count must be set");
    }
    if (config.time_budget && !(*config.time_budget >= 0.0)) { throw ConfigError("time budget must be >= 0"); }
    r.seed = config.seed;
    r.time_budget = config.time_budget;
    r.total_shapelets = config.total_shapelets;
    r.normalize = config.normalize;
    r.threads = std::max(1u, config.threads);
    return r;
  }

  inline std::uint64_t count_candidates(const Dataset& data, const SearchConfig& config) {
    const auto [lo, hi] = resolve_lengths(config, data);
    return count_candidates(data, config.variant, lo, hi);
  }

  /// Map an index in [0, count_candidates) to coordinates. Instance-major, then dimension
  /// (Independent only), then length ascending, then position.
  inline ShapeletCoordinates decode_candidate(std::uint64_t index, const Dataset& data, ShapeletVariant variant,
                                              std::size_t min_len, std::size_t max_len) {
    const std::size_t m = data.length();
    const std::uint64_t per_series = detail::windows_per_series(m, min_len, max_len);
    const std::uint64_t series_per_instance = variant == ShapeletVariant::Independent ? data.dimensions() : 1;
    const std::uint64_t per_instance = per_series * series_per_instance;
    ShapeletCoordinates c;
    c.instance = static_cast<std::size_t>(index / per_instance);
    std::uint64_t rem = index % per_instance;
    c.dim = static_cast<std::size_t>(rem / per_series);
    rem %= per_series;
    for (std::size_t len = min_len; len <= max_len; ++len) {
      const std::uint64_t positions = m - len + 1;
      if (rem < positions) {
        c.length = len;
        c.position = static_cast<std::size_t>(rem);
        break;
      }
      rem -= positions;
    }
    return c;
  }

  /// Cut a candidate at the given coordinates; channels are z-normalized when `normalize`.
  inline ShapeletCandidate extract_candidate(const Dataset& data, ShapeletVariant variant,
                                             const ShapeletCoordinates& coords, bool normalize) {
    const auto& inst = data[coords.instance];
    ShapeletCandidate s;
    s.variant = variant;
    s.coords = coords;
    s.target_class = inst.label();
    s.normalized = normalize;
    auto cut = [&](std::size_t dim) {
      auto slice = subsequence(inst, dim, coords.position, coords.length);
      std::vector<double> values(slice.begin(), slice.end());
      return normalize ? z_normalize(values) : values;
    };
    if (variant == ShapeletVariant::Independent) {
      s.channels.push_back(cut(coords.dim));
    } else {
      s.coords.dim = 0;
      for (std::size_t j = 0; j < inst.dimensions(); ++j) { s.channels.push_back(cut(j)); }
    }
    return s;
  }

  /// Draw one candidate uniformly over the candidate space (with replacement).
  inline ShapeletCandidate sample_candidate(Rng& rng, const Dataset& data, const SearchConfig& config) {
    const auto [lo, hi] = resolve_lengths(config, data);
    const std::uint64_t space = count_candidates(data, config.variant, lo, hi);
    const auto coords = decode_candidate(uniform_below(rng, space), data, config.variant, lo, hi);
    return extract_candidate(data, config.variant, coords, config.normalize);
  }

  // --- --- --- Matching

  namespace detail {

    inline double dependent_distance(const ShapeletCandidate& s, const MultivariateInstance& inst) {
      const std::size_t len = s.length();
      const std::size_t m = inst.length();
      double best = std::numeric_limits<double>::infinity();
      std::vector<double> window(len);
      for (std::size_t p = 0; p + len <= m; ++p) {
        double total = 0.0;
        for (std::size_t j = 0; j < s.channels.size(); ++j) {
          auto raw = inst.dim(j).values().subspan(p, len);
          if (s.normalized) {
            z_normalize_into(raw, window);
            total += squared_euclidean(s.channels[j], window);
          } else {
            total += squared_euclidean(s.channels[j], raw);
          }
        }
        best = std::min(best, total);
      }
      return std::sqrt(best);
    }

  } // namespace detail

  /// Distance from a shapelet to an instance under the shapelet's own variant.
  inline double shapelet_distance(const ShapeletCandidate& s, const MultivariateInstance& inst) {
    if (s.length() == 0 || s.channels.empty()) { throw DimensionError("empty shapelet"); }
    if (s.length() > inst.length()) {
      throw DimensionError("shapelet length " + std::to_string(s.length()) + " exceeds series length "
                           + std::to_string(inst.length()));
    }
    switch (s.variant) {
      case ShapeletVariant::Independent:
        if (s.channels.size() != 1) { throw DimensionError("independent shapelet must have one channel"); }
        if (s.coords.dim >= inst.dimensions()) {
          throw DimensionError("shapelet dimension " + std::to_string(s.coords.dim) + " not present in instance");
        }
        return detail::sliding_min_distance(s.channels[0], inst.dim(s.coords.dim).values(), s.normalized);
      case ShapeletVariant::MultiDependent:
        if (s.channels.size() != inst.dimensions()) {
          throw DimensionError("shapelet has " + std::to_string(s.channels.size()) + " channels, instance has "
                               + std::to_string(inst.dimensions()) + " dimensions");
        }
        return detail::dependent_distance(s, inst);
      case ShapeletVariant::MultiIndependent: {
        if (s.channels.size() != inst.dimensions()) {
          throw DimensionError("shapelet has " + std::to_string(s.channels.size()) + " channels, instance has "
                               + std::to_string(inst.dimensions()) + " dimensions");
        }
        double total = 0.0;
        for (std::size_t j = 0; j < s.channels.size(); ++j) {
          total += detail::sliding_min_distance(s.channels[j], inst.dim(j).values(), s.normalized);
        }
        return total;
      }
    }
    throw ConfigError("unknown shapelet variant");
  }

  // --- --- --- Quality

  enum class BinaryLabel : unsigned char { Negative = 0, Positive = 1 };

  /// One-vs-all encoding against `target`.
  inline std::vector<BinaryLabel> binary_labels(std::span<const std::string> labels, const std::string& target) {
    std::vector<BinaryLabel> out;
    out.reserve(labels.size());
    for (const auto& l : labels) { out.push_back(l == target ? BinaryLabel::Positive : BinaryLabel::Negative); }
    return out;
  }

  namespace detail {
    inline double binary_entropy(std::size_t positives, std::size_t total) {
      if (total == 0 || positives == 0 || positives == total) { return 0.0; }
      const double p = static_cast<double>(positives) / static_cast<double>(total);
      const double q = 1.0 - p;
      return -(p * std::log2(p) + q * std::log2(q));
    }
  } // namespace detail

  /// Best information gain (base 2) over orderline splits placed between consecutive distinct distances.
  inline double information_gain(std::span<const double> distances, std::span<const BinaryLabel> labels) {
    if (distances.size() != labels.size()) {
      throw StatisticsError("distances and labels differ in length");
    }
    const std::size_t n = distances.size();
    if (n < 2) { throw StatisticsError("information gain needs at least two items"); }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) { order[i] = i; }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return distances[a] < distances[b]; });

    std::size_t positives = 0;
    for (auto l : labels) { positives += l == BinaryLabel::Positive; }
    const double parent = detail::binary_entropy(positives, n);

    double best = 0.0;
    std::size_t left_pos = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left_pos += labels[order[i]] == BinaryLabel::Positive;
      if (!(distances[order[i]] < distances[order[i + 1]])) { continue; }
      const std::size_t left = i + 1;
      const std::size_t right = n - left;
      const double children = (static_cast<double>(left) / static_cast<double>(n))
                                * detail::binary_entropy(left_pos, left)
                              + (static_cast<double>(right) / static_cast<double>(n))
                                  * detail::binary_entropy(positives - left_pos, right);
      best = std::max(best, parent - children);
    }
    return std::clamp(best, 0.0, 1.0);
  }

  /// Quality of S: information gain of its distance orderline against S's target class.
  /// Also stores the result in S.quality.
  inline double assess_candidate(ShapeletCandidate& s, const Dataset& data) {
    std::vector<double> distances(data.size());
    std::vector<BinaryLabel> labels(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      distances[i] = shapelet_distance(s, data[i]);
      labels[i] = data[i].label() == s.target_class ? BinaryLabel::Positive : BinaryLabel::Negative;
    }
    const double q = information_gain(distances, labels);
    s.quality = q;
    return q;
  }

  // --- --- --- Search

  namespace detail {

    // Sampling without replacement from [0, space) via a lazily materialized Fisher-Yates shuffle.
    class DistinctSampler {
    public:
      DistinctSampler(std::uint64_t space, std::uint64_t seed) : space_(space), rng_(seed) {}

      [[nodiscard]] std::uint64_t remaining() const { return space_ - drawn_; }

      std::uint64_t next() {
        const std::uint64_t j = drawn_ + uniform_below(rng_, space_ - drawn_);
        const std::uint64_t at_j = lookup(j);
        swapped_[j] = lookup(drawn_);
        ++drawn_;
        return at_j;
      }

    private:
      std::uint64_t lookup(std::uint64_t i) const {
        auto it = swapped_.find(i);
        return it == swapped_.end() ? i : it->second;
      }

      std::uint64_t space_;
      std::uint64_t drawn_ = 0;
      Rng rng_;
      std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
    };

    struct ScoredCandidate {
      ShapeletCoordinates coords;
      double quality;
      std::size_t class_index;
    };

    // Higher quality first; ties to shorter, then lower (instance, position, dim).
    inline bool better(const ScoredCandidate& a, const ScoredCandidate& b) {
      if (a.quality != b.quality) { return a.quality > b.quality; }
      if (a.coords.length != b.coords.length) { return a.coords.length < b.coords.length; }
      if (a.coords.instance != b.coords.instance) { return a.coords.instance < b.coords.instance; }
      if (a.coords.position != b.coords.position) { return a.coords.position < b.coords.position; }
      return a.coords.dim < b.coords.dim;
    }

  } // namespace detail

  struct SearchResult {
    std::vector<ShapeletCandidate> shapelets;
    std::uint64_t evaluated = 0;
    std::uint64_t space = 0;
    bool exhaustive = false;
    double seconds = 0.0;
    ResolvedSearchConfig config;
  };

  /// Keep the k best, at most ceil(k / c) per target class, backfilling by global order
  /// when a class runs short. Input must be sorted with detail::better.
  inline std::vector<std::size_t> select_balanced(std::span<const detail::ScoredCandidate> sorted, std::size_t k,
                                                  std::size_t num_classes) {
    const std::size_t cap = (k + num_classes - 1) / num_classes;
    std::vector<std::size_t> per_class(num_classes, 0);
    std::vector<bool> taken(sorted.size(), false);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < sorted.size() && kept < k; ++i) {
      if (per_class[sorted[i].class_index] < cap) {
        ++per_class[sorted[i].class_index];
        taken[i] = true;
        ++kept;
      }
    }
    for (std::size_t i = 0; i < sorted.size() && kept < k; ++i) {
      if (!taken[i]) {
        taken[i] = true;
        ++kept;
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (taken[i]) { out.push_back(i); }
    }
    return out;
  }

  /// Contracted shapelet search. Evaluates `total_shapelets` distinct candidates (all of them
  /// when the space is no larger), or samples until `time_budget` seconds elapse, whichever
  /// comes first. Reproducible for a fixed seed when the count governs.
  inline SearchResult search_detailed(const Dataset& data, const SearchConfig& config) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    const auto cfg = resolve(config, data);
    const std::uint64_t space = count_candidates(data, cfg.variant, cfg.min_length, cfg.max_length);
    const std::uint64_t target = cfg.total_shapelets ? std::min(*cfg.total_shapelets, space) : space;
    const bool exhaustive = target == space;

    detail::DistinctSampler sampler(space, mix_seed(cfg.seed, 0x5ea7c4));
    std::vector<detail::ScoredCandidate> pool;
    pool.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(target, 1u << 20)));

    const std::size_t fixed_batch = std::max<std::size_t>(64, 8 * cfg.threads);
    std::size_t batch = cfg.time_budget ? cfg.threads : fixed_batch;
    double last_batch_seconds = 0.0;
    std::uint64_t next_index = 0;

    while (pool.size() < target) {
      if (cfg.time_budget) {
        const double now = elapsed();
        if (now >= *cfg.time_budget || now + last_batch_seconds > *cfg.time_budget) { break; }
      }
      const auto b = static_cast<std::size_t>(std::min<std::uint64_t>(batch, target - pool.size()));
      std::vector<ShapeletCoordinates> coords(b);
      for (auto& c : coords) {
        const std::uint64_t idx = exhaustive ? next_index++ : sampler.next();
        c = decode_candidate(idx, data, cfg.variant, cfg.min_length, cfg.max_length);
      }
      std::vector<double> quality(b);
      const double batch_start = elapsed();
      parallel_for(b, cfg.threads, [&](std::size_t i) {
        auto cand = extract_candidate(data, cfg.variant, coords[i], cfg.normalize);
        quality[i] = assess_candidate(cand, data);
      });
      last_batch_seconds = elapsed() - batch_start;
      for (std::size_t i = 0; i < b; ++i) {
        pool.push_back({coords[i], quality[i], data.label_index(coords[i].instance)});
      }
      if (cfg.time_budget) {
        // Aim for roughly 1/50 of the budget per batch, capped at half a second.
        const double per_candidate = last_batch_seconds / static_cast<double>(b);
        const double goal = std::min(0.5, *cfg.time_budget / 50.0);
        auto want = per_candidate > 0.0 ? static_cast<std::size_t>(goal / per_candidate) : fixed_batch;
        want = std::clamp<std::size_t>(want, cfg.threads, 4096);
        last_batch_seconds = per_candidate * static_cast<double>(want);
        batch = want;
      }
    }

    if (pool.empty()) { throw ContractError("shapelet search evaluated zero candidates within its budget"); }

    std::sort(pool.begin(), pool.end(), detail::better);
    const auto chosen = select_balanced(pool, cfg.k, data.num_classes());

    SearchResult result;
    result.config = cfg;
    result.space = space;
    result.evaluated = pool.size();
    result.exhaustive = pool.size() == space;
    for (auto idx : chosen) {
      auto cand = extract_candidate(data, cfg.variant, pool[idx].coords, cfg.normalize);
      cand.quality = pool[idx].quality;
      result.shapelets.push_back(std::move(cand));
    }
    result.seconds = elapsed();
    return result;
  }

  inline std::vector<ShapeletCandidate> search(const Dataset& data, const SearchConfig& config) {
    return search_detailed(data, config).shapelets;
  }

  // --- --- --- Transform

  /// n x k matrix of shapelet distances; row i is instance i, column j is shapelet j.
  struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    std::vector<ShapeletCandidate> shapelets;
    std::vector<std::string> labels;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
      return std::span<const double>(values).subspan(i * cols, cols);
    }
  };

  inline FeatureMatrix transform(const Dataset& data, std::span<const ShapeletCandidate> shapelets,
                                 unsigned threads = 1) {
    if (shapelets.empty()) { throw ConfigError("transform needs at least one shapelet"); }
    FeatureMatrix fm;
    fm.rows = data.size();
    fm.cols = shapelets.size();
    fm.values.assign(fm.rows * fm.cols, 0.0);
    fm.shapelets.assign(shapelets.begin(), shapelets.end());
    fm.labels = data.labels();
    parallel_for(fm.rows, threads, [&](std::size_t i) {
      for (std::size_t j = 0; j < fm.cols; ++j) { fm.values[i * fm.cols + j] = shapelet_distance(shapelets[j], data[i]); }
    });
    return fm;
  }

  // --- --- --- Budget estimation

  struct ThroughputEstimate {
    std::uint64_t space = 0;
    std::size_t pilot = 0;
    double seconds_per_candidate = 0.0;
    double candidates_per_hour = 0.0;
    double budget_seconds = 0.0;
    double candidates_in_budget = 0.0;
    /// Fraction of the space that fits in the budget, capped at 1.
    double feasible_proportion = 0.0;
    [[nodiscard]] bool full_enumeration_feasible() const {
      return static_cast<double>(space) <= candidates_in_budget;
    }
  };

  /// Time `pilot` sampled candidates and project how much of the space fits in `budget_seconds`.
  inline ThroughputEstimate estimate_throughput(const Dataset& data, const SearchConfig& config, double budget_seconds,
                                                std::size_t pilot = 100) {
    if (!(budget_seconds > 0.0)) { throw ConfigError("time budget must be positive"); }
    if (pilot == 0) { throw ConfigError("pilot sample must contain at least one candidate"); }
    ThroughputEstimate est;
    est.space = count_candidates(data, config);
    est.pilot = pilot;
    est.budget_seconds = budget_seconds;
    Rng rng(mix_seed(config.seed, 0xe571));
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < pilot; ++i) {
      auto cand = sample_candidate(rng, data, config);
      assess_candidate(cand, data);
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    est.seconds_per_candidate = std::max(secs / static_cast<double>(pilot), 1e-12);
    est.candidates_per_hour = 3600.0 / est.seconds_per_candidate;
    est.candidates_in_budget = budget_seconds / est.seconds_per_candidate;
    est.feasible_proportion = std::min(1.0, est.candidates_in_budget / static_cast<double>(est.space));
    return est;
  }

} // namespace mvst
