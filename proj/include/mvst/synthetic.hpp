#pragma once

// Planted-pattern datasets: Gaussian noise with a class-specific waveform injected at a random phase.

#include <mvst/data.hpp>
#include <mvst/random.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mvst::synthetic {

  struct PlantedConfig {
    std::string name = "Planted";
    std::size_t classes = 4;
    std::size_t dimensions = 3;
    std::size_t length = 100;
    std::size_t train_size = 40;
    std::size_t test_size = 40;
    std::size_t pattern_length = 20;
    double amplitude = 1.0;
    double noise = 0.25;
    /// Same phase in every dimension when true; independent phase per dimension otherwise.
    bool aligned = true;
    std::uint64_t seed = 1;
  };

  inline constexpr std::size_t waveform_count = 8;

  /// Shape `shape` evaluated at u in [0, 1].
  inline double waveform(std::size_t shape, double u) {
    constexpr double pi = 3.14159265358979323846;
    switch (shape % waveform_count) {
      case 0: return std::sin(2.0 * pi * u);
      case 1: return u < 0.5 ? 1.0 : -1.0;
      case 2: return 1.0 - 4.0 * std::abs(u - 0.5);
      case 3: return std::sin(2.0 * pi * (1.0 + 2.0 * u) * u);
      case 4: return 2.0 * std::exp(-std::pow((u - 0.5) / 0.12, 2.0)) - 1.0;
      case 5: return 2.0 * u - 1.0;
      case 6: return std::cos(4.0 * pi * u);
      default: return std::abs(std::sin(3.0 * pi * u)) * 2.0 - 1.0;
    }
  }

  /// Shape used by class k in dimension j; distinct across classes within each dimension.
  inline std::size_t class_shape(std::size_t k, std::size_t j) { return (k + 3 * j) % waveform_count; }

  /// Where the pattern of one generated instance was planted (one offset per dimension).
  struct PlantedInstanceInfo {
    std::size_t class_index;
    std::vector<std::size_t> offsets;
  };

  struct PlantedData {
    Dataset train;
    Dataset test;
    std::vector<PlantedInstanceInfo> train_info;
    std::vector<PlantedInstanceInfo> test_info;
  };

  namespace detail {
    inline std::string class_name(std::size_t k) { return "c" + std::to_string(k); }

    inline std::pair<MultivariateInstance, PlantedInstanceInfo> make_instance(const PlantedConfig& cfg, std::size_t k,
                                                                              Rng& rng) {
      const std::size_t span = cfg.length - cfg.pattern_length + 1;
      PlantedInstanceInfo info{k, {}};
      const std::size_t shared = static_cast<std::size_t>(uniform_below(rng, span));
      std::vector<TimeSeries> dims;
      for (std::size_t j = 0; j < cfg.dimensions; ++j) {
        const std::size_t offset = cfg.aligned ? shared : static_cast<std::size_t>(uniform_below(rng, span));
        info.offsets.push_back(offset);
        std::vector<double> values(cfg.length);
        for (auto& v : values) { v = cfg.noise * standard_normal(rng); }
        for (std::size_t t = 0; t < cfg.pattern_length; ++t) {
          const double u = cfg.pattern_length == 1
                             ? 0.5
                             : static_cast<double>(t) / static_cast<double>(cfg.pattern_length - 1);
          values[offset + t] += cfg.amplitude * waveform(class_shape(k, j), u);
        }
        dims.emplace_back(std::move(values));
      }
      return {MultivariateInstance(std::move(dims), class_name(k)), std::move(info)};
    }

    inline Dataset make_split(const PlantedConfig& cfg, std::size_t count, Rng& rng,
                              std::vector<PlantedInstanceInfo>& info, const std::vector<std::string>& classes) {
      std::vector<MultivariateInstance> instances;
      for (std::size_t i = 0; i < count; ++i) {
        auto [inst, meta] = make_instance(cfg, i % cfg.classes, rng);
        instances.push_back(std::move(inst));
        info.push_back(std::move(meta));
      }
      return Dataset(cfg.name, std::move(instances), classes);
    }
  } // namespace detail

  /// Balanced train/test splits (instance i has class i mod c).
  inline PlantedData planted(const PlantedConfig& cfg) {
    std::vector<std::string> classes;
    for (std::size_t k = 0; k < cfg.classes; ++k) { classes.push_back(detail::class_name(k)); }
    Rng rng(mix_seed(cfg.seed, 0x91a7));
    PlantedData out;
    out.train = detail::make_split(cfg, cfg.train_size, rng, out.train_info, classes);
    out.test = detail::make_split(cfg, cfg.test_size, rng, out.test_info, classes);
    return out;
  }

} // namespace mvst::synthetic
