#pragma once

#include <mvst/error.hpp>
#include <mvst/random.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mvst {

  // --- --- --- Time series

  /// A univariate series of m >= 1 finite samples.
  class TimeSeries {
  public:
    TimeSeries() = default;

    explicit TimeSeries(std::vector<double> values) : values_(std::move(values)) {
      if (values_.empty()) { throw DimensionError("time series must contain at least one value"); }
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
          throw DimensionError("time series value at index " + std::to_string(i) + " is not finite");
        }
      }
    }

    TimeSeries(std::initializer_list<double> values) : TimeSeries(std::vector<double>(values)) {}

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] auto begin() const { return values_.begin(); }
    [[nodiscard]] auto end() const { return values_.end(); }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

  private:
    std::vector<double> values_;
  };

  // --- --- --- z-normalization

  namespace detail {
    // Relative spread below which a window is treated as constant.
    inline constexpr double flat_tolerance = 1e-12;
  }

  /// Z-normalize `in` into `out` (same size) using the population standard deviation.
  /// Constant input (zero spread, or spread negligible relative to its magnitude) maps to zeros.
  inline void z_normalize_into(std::span<const double> in, std::span<double> out) {
    const auto n = static_cast<double>(in.size());
    double sum = 0.0;
    for (double v : in) { sum += v; }
    const double mean = sum / n;
    double ss = 0.0;
    double scale = 0.0;
    for (double v : in) {
      const double d = v - mean;
      ss += d * d;
      scale = std::max(scale, std::abs(v));
    }
    const double sd = std::sqrt(ss / n);
    if (sd <= detail::flat_tolerance * std::max(1.0, scale)) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    for (std::size_t i = 0; i < in.size(); ++i) { out[i] = (in[i] - mean) / sd; }
  }

  inline std::vector<double> z_normalize(std::span<const double> values) {
    std::vector<double> out(values.size());
    z_normalize_into(values, out);
    return out;
  }

  inline TimeSeries z_normalize(const TimeSeries& series) {
    return TimeSeries(z_normalize(series.values()));
  }

  // --- --- --- Instances and datasets

  /// d aligned series of equal length sharing one class label.
  class MultivariateInstance {
  public:
    MultivariateInstance() = default;

    MultivariateInstance(std::vector<TimeSeries> dimensions, std::string label)
      : dims_(std::move(dimensions)), label_(std::move(label)) {
      if (dims_.empty()) { throw DimensionError("instance must have at least one dimension"); }
      const std::size_t m = dims_.front().size();
      if (m == 0) { throw DimensionError("instance series must be non-empty"); }
      for (std::size_t j = 1; j < dims_.size(); ++j) {
        if (dims_[j].size() != m) {
          throw DimensionError("dimension " + std::to_string(j) + " has length " + std::to_string(dims_[j].size())
                               + ", expected " + std::to_string(m));
        }
      }
    }

    [[nodiscard]] std::size_t dimensions() const { return dims_.size(); }
    [[nodiscard]] std::size_t length() const { return dims_.empty() ? 0 : dims_.front().size(); }
    [[nodiscard]] const TimeSeries& dim(std::size_t j) const { return dims_.at(j); }
    [[nodiscard]] const std::vector<TimeSeries>& dims() const { return dims_; }
    [[nodiscard]] const std::string& label() const { return label_; }

    friend bool operator==(const MultivariateInstance&, const MultivariateInstance&) = default;

  private:
    std::vector<TimeSeries> dims_;
    std::string label_;
  };

  /// Contiguous slice [start, start+len) of dimension `dim`.
  inline TimeSeries subsequence(const MultivariateInstance& instance, std::size_t dim, std::size_t start,
                                std::size_t len) {
    if (dim >= instance.dimensions()) {
      throw BoundsError("dim " + std::to_string(dim) + " out of range (d = " + std::to_string(instance.dimensions())
                        + ")");
    }
    if (len == 0) { throw BoundsError("len must be at least 1"); }
    const std::size_t m = instance.length();
    if (start >= m) {
      throw BoundsError("start " + std::to_string(start) + " out of range (m = " + std::to_string(m) + ")");
    }
    if (start + len > m) {
      throw BoundsError("start + len = " + std::to_string(start + len) + " exceeds m = " + std::to_string(m));
    }
    auto values = instance.dim(dim).values().subspan(start, len);
    return TimeSeries(std::vector<double>(values.begin(), values.end()));
  }

  /// A named, rectangular collection of labelled instances.
  class Dataset {
  public:
    Dataset() = default;

    /// `classes` fixes the class alphabet and its order; every label must belong to it.
    Dataset(std::string name, std::vector<MultivariateInstance> instances, std::vector<std::string> classes)
      : name_(std::move(name)), instances_(std::move(instances)), classes_(std::move(classes)) {
      if (instances_.empty()) { throw DimensionError("dataset '" + name_ + "' has no instances"); }
      if (classes_.empty()) { throw ConfigError("dataset '" + name_ + "' has an empty class alphabet"); }
      for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (!class_index_.emplace(classes_[c], c).second) {
          throw ConfigError("duplicate class label '" + classes_[c] + "'");
        }
      }
      const std::size_t d = instances_.front().dimensions();
      const std::size_t m = instances_.front().length();
      label_indices_.reserve(instances_.size());
      for (std::size_t i = 0; i < instances_.size(); ++i) {
        const auto& inst = instances_[i];
        if (inst.dimensions() != d || inst.length() != m) {
          throw DimensionError("instance " + std::to_string(i) + " has shape " + std::to_string(inst.dimensions())
                               + "x" + std::to_string(inst.length()) + ", expected " + std::to_string(d) + "x"
                               + std::to_string(m));
        }
        auto it = class_index_.find(inst.label());
        if (it == class_index_.end()) {
          throw ConfigError("instance " + std::to_string(i) + " has unknown label '" + inst.label() + "'");
        }
        label_indices_.push_back(it->second);
      }
    }

    /// Build with the class alphabet inferred from the labels (sorted).
    static Dataset from_instances(std::string name, std::vector<MultivariateInstance> instances) {
      std::vector<std::string> classes;
      for (const auto& inst : instances) { classes.push_back(inst.label()); }
      std::sort(classes.begin(), classes.end());
      classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
      return Dataset(std::move(name), std::move(instances), std::move(classes));
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] std::size_t size() const { return instances_.size(); }
    [[nodiscard]] std::size_t dimensions() const { return instances_.front().dimensions(); }
    [[nodiscard]] std::size_t length() const { return instances_.front().length(); }
    [[nodiscard]] std::size_t num_classes() const { return classes_.size(); }
    [[nodiscard]] const std::vector<std::string>& classes() const { return classes_; }
    [[nodiscard]] const std::vector<MultivariateInstance>& instances() const { return instances_; }
    [[nodiscard]] const MultivariateInstance& operator[](std::size_t i) const { return instances_[i]; }
    [[nodiscard]] auto begin() const { return instances_.begin(); }
    [[nodiscard]] auto end() const { return instances_.end(); }

    /// Position of instance i's label in the class alphabet.
    [[nodiscard]] std::size_t label_index(std::size_t i) const { return label_indices_[i]; }

    [[nodiscard]] std::size_t class_index(const std::string& label) const {
      auto it = class_index_.find(label);
      if (it == class_index_.end()) { throw ConfigError("unknown class label '" + label + "'"); }
      return it->second;
    }

    [[nodiscard]] bool has_class(const std::string& label) const { return class_index_.contains(label); }

    [[nodiscard]] std::vector<std::string> labels() const {
      std::vector<std::string> out;
      out.reserve(instances_.size());
      for (const auto& inst : instances_) { out.push_back(inst.label()); }
      return out;
    }

    /// Per-class instance counts aligned with classes().
    [[nodiscard]] std::vector<std::size_t> class_counts() const {
      std::vector<std::size_t> counts(classes_.size(), 0);
      for (auto c : label_indices_) { ++counts[c]; }
      return counts;
    }

    friend bool operator==(const Dataset& a, const Dataset& b) {
      return a.name_ == b.name_ && a.instances_ == b.instances_ && a.classes_ == b.classes_;
    }

  private:
    std::string name_;
    std::vector<MultivariateInstance> instances_;
    std::vector<std::string> classes_;
    std::map<std::string, std::size_t> class_index_;
    std::vector<std::size_t> label_indices_;
  };

  // --- --- --- Resampling

  struct ResampleSpec {
    std::size_t fold = 0;
    std::uint64_t seed = 0;
    /// Only consulted when splitting a single pooled dataset.
    double train_proportion = 0.5;
  };

  namespace detail {
    inline void check_compatible(const Dataset& train, const Dataset& test) {
      if (train.dimensions() != test.dimensions() || train.length() != test.length()) {
        throw DimensionError("train and test shapes differ: " + std::to_string(train.dimensions()) + "x"
                             + std::to_string(train.length()) + " vs " + std::to_string(test.dimensions()) + "x"
                             + std::to_string(test.length()));
      }
    }

    // Draw `train_counts[c]` instances of class c from the pool; the rest go to test.
    // Output keeps pooled order within each split.
    inline std::pair<Dataset, Dataset> split_pool(const std::string& train_name, const std::string& test_name,
                                                  const std::vector<const MultivariateInstance*>& pool,
                                                  const std::vector<std::size_t>& pool_classes,
                                                  const std::vector<std::string>& classes,
                                                  const std::vector<std::size_t>& train_counts, Rng& rng) {
      std::vector<std::vector<std::size_t>> by_class(classes.size());
      for (std::size_t i = 0; i < pool.size(); ++i) { by_class[pool_classes[i]].push_back(i); }
      std::vector<bool> in_train(pool.size(), false);
      for (std::size_t c = 0; c < classes.size(); ++c) {
        auto& members = by_class[c];
        shuffle(std::span(members), rng);
        for (std::size_t k = 0; k < train_counts[c]; ++k) { in_train[members[k]] = true; }
      }
      std::vector<MultivariateInstance> tr, te;
      for (std::size_t i = 0; i < pool.size(); ++i) { (in_train[i] ? tr : te).push_back(*pool[i]); }
      if (te.empty()) { throw StratificationError("resample leaves the test split empty"); }
      return {Dataset(train_name, std::move(tr), classes), Dataset(test_name, std::move(te), classes)};
    }
  } // namespace detail

  /// Stratified re-split of pooled train+test. Fold 0 returns the original split;
  /// fold f > 0 redraws with the original per-class train counts, seeded by (seed, f).
  inline std::pair<Dataset, Dataset> stratified_resample(const Dataset& train, const Dataset& test,
                                                         const ResampleSpec& spec) {
    detail::check_compatible(train, test);
    if (train.classes() != test.classes()) {
      for (const auto& label : test.classes()) {
        if (!train.has_class(label)) {
          throw StratificationError("class '" + label + "' is present in test but absent from train");
        }
      }
      throw StratificationError("train and test class alphabets differ");
    }
    const auto train_counts = train.class_counts();
    const auto test_counts = test.class_counts();
    for (std::size_t c = 0; c < train_counts.size(); ++c) {
      if (train_counts[c] == 0 && test_counts[c] > 0) {
        throw StratificationError("class '" + train.classes()[c] + "' is present in test but absent from train");
      }
    }
    if (spec.fold == 0) { return {train, test}; }

    std::vector<const MultivariateInstance*> pool;
    std::vector<std::size_t> pool_classes;
    for (std::size_t i = 0; i < train.size(); ++i) {
      pool.push_back(&train[i]);
      pool_classes.push_back(train.label_index(i));
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
      pool.push_back(&test[i]);
      pool_classes.push_back(test.label_index(i));
    }
    Rng rng(mix_seed(spec.seed, spec.fold));
    return detail::split_pool(train.name(), test.name(), pool, pool_classes, train.classes(), train_counts, rng);
  }

  /// Stratified split of a single dataset with no original split: each class contributes
  /// round(train_proportion * count) instances to train, at least one to each side when it has two or more.
  inline std::pair<Dataset, Dataset> stratified_resample(const Dataset& all, const ResampleSpec& spec) {
    if (!(spec.train_proportion > 0.0 && spec.train_proportion < 1.0)) {
      throw ConfigError("train proportion must lie in (0, 1)");
    }
    const auto counts = all.class_counts();
    std::vector<std::size_t> train_counts(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
      auto k = static_cast<std::size_t>(std::llround(spec.train_proportion * static_cast<double>(counts[c])));
      if (counts[c] >= 2) { k = std::clamp<std::size_t>(k, 1, counts[c] - 1); }
      train_counts[c] = std::min(k, counts[c]);
    }
    std::vector<const MultivariateInstance*> pool;
    std::vector<std::size_t> pool_classes;
    for (std::size_t i = 0; i < all.size(); ++i) {
      pool.push_back(&all[i]);
      pool_classes.push_back(all.label_index(i));
    }
    Rng rng(mix_seed(spec.seed, spec.fold));
    return detail::split_pool(all.name(), all.name(), pool, pool_classes, all.classes(), train_counts, rng);
  }

} // namespace mvst
