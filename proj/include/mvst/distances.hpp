#pragma once

#include <mvst/data.hpp>
#include <mvst/error.hpp>
#include <mvst/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mvst {

  // --- --- --- Rigid distances

  inline double squared_euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
      throw DimensionError("length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double diff = a[i] - b[i];
      acc += diff * diff;
    }
    return acc;
  }

  inline double euclidean_dist(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_euclidean(a, b));
  }

  inline double euclidean_dist(const TimeSeries& a, const TimeSeries& b) {
    return euclidean_dist(a.values(), b.values());
  }

  namespace detail {

    // Minimum Euclidean distance between `shapelet` (already prepared) and every window of `series`.
    // With `normalize`, each window is z-normalized before comparison.
    inline double sliding_min_distance(std::span<const double> shapelet, std::span<const double> series,
                                       bool normalize) {
      const std::size_t len = shapelet.size();
      double best = std::numeric_limits<double>::infinity();
      std::vector<double> window(len);
      for (std::size_t p = 0; p + len <= series.size(); ++p) {
        auto raw = series.subspan(p, len);
        if (normalize) {
          z_normalize_into(raw, window);
          best = std::min(best, squared_euclidean(shapelet, window));
        } else {
          best = std::min(best, squared_euclidean(shapelet, raw));
        }
      }
      return std::sqrt(best);
    }

  } // namespace detail

  /// Sliding-window distance: the minimum Euclidean distance between S and any |S|-length window of T.
  /// With `normalize`, S and each window are z-normalized first.
  inline double sdist(std::span<const double> s, std::span<const double> t, bool normalize) {
    if (s.empty()) { throw DimensionError("shapelet must be non-empty"); }
    if (s.size() > t.size()) {
      throw DimensionError("shapelet length " + std::to_string(s.size()) + " exceeds series length "
                           + std::to_string(t.size()));
    }
    if (normalize) {
      const auto zs = z_normalize(s);
      return detail::sliding_min_distance(zs, t, true);
    }
    return detail::sliding_min_distance(s, t, false);
  }

  inline double sdist(const TimeSeries& s, const TimeSeries& t, bool normalize) {
    return sdist(s.values(), t.values(), normalize);
  }

  // --- --- --- Dynamic time warping

  /// Sakoe-Chiba band given as a fraction of the series length. 1 = unconstrained.
  class WarpingWindow {
  public:
    constexpr WarpingWindow() = default;

    explicit WarpingWindow(double fraction) : fraction_(fraction) {
      if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ConfigError("warping window fraction must lie in [0, 1], got " + std::to_string(fraction));
      }
    }

    static WarpingWindow full() { return WarpingWindow(1.0); }

    [[nodiscard]] double fraction() const { return fraction_; }

    /// Cell (i, j) is legal iff |i - j| <= band(m).
    [[nodiscard]] std::size_t band(std::size_t m) const {
      return static_cast<std::size_t>(std::ceil(fraction_ * static_cast<double>(m)));
    }

  private:
    double fraction_ = 1.0;
  };

  enum class DtwVariant { Independent, Dependent, Adaptive };

  inline std::string to_string(DtwVariant v) {
    switch (v) {
      case DtwVariant::Independent: return "independent";
      case DtwVariant::Dependent: return "dependent";
      case DtwVariant::Adaptive: return "adaptive";
    }
    return "?";
  }

  namespace detail {

    // Banded DTW over an m x m grid. cell_cost(i, j) yields the local cost; the result is
    // the minimum accumulated cost from (0,0) to (m-1,m-1), no square root.
    template<typename CellCost>
    double dtw_accumulate(std::size_t m, std::size_t band, CellCost&& cell_cost) {
      constexpr double inf = std::numeric_limits<double>::infinity();
      band = std::min(band, m - 1);
      std::vector<double> prev(m, inf), curr(m, inf);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t lo = i > band ? i - band : 0;
        const std::size_t hi = std::min(m - 1, i + band);
        std::fill(curr.begin(), curr.end(), inf);
        for (std::size_t j = lo; j <= hi; ++j) {
          double best;
          if (i == 0 && j == 0) {
            best = 0.0;
          } else {
            best = inf;
            if (i > 0) { best = std::min(best, prev[j]); }
            if (j > 0) { best = std::min(best, curr[j - 1]); }
            if (i > 0 && j > 0) { best = std::min(best, prev[j - 1]); }
          }
          curr[j] = best + cell_cost(i, j);
        }
        std::swap(prev, curr);
      }
      return prev[m - 1];
    }

    inline void check_same_shape(const MultivariateInstance& q, const MultivariateInstance& c) {
      if (q.dimensions() != c.dimensions()) {
        throw DimensionError("dimension count mismatch: " + std::to_string(q.dimensions()) + " vs "
                             + std::to_string(c.dimensions()));
      }
      if (q.length() != c.length()) {
        throw DimensionError("length mismatch: " + std::to_string(q.length()) + " vs "
                             + std::to_string(c.length()));
      }
    }

  } // namespace detail

  /// Univariate DTW with squared-difference cell cost, returning the accumulated cost.
  inline double dtw(std::span<const double> a, std::span<const double> b, WarpingWindow window = {}) {
    if (a.size() != b.size()) {
      throw DimensionError("dtw requires equal lengths: " + std::to_string(a.size()) + " vs "
                           + std::to_string(b.size()));
    }
    if (a.empty()) { throw DimensionError("dtw requires non-empty series"); }
    return detail::dtw_accumulate(a.size(), window.band(a.size()), [&](std::size_t i, std::size_t j) {
      const double diff = a[i] - b[j];
      return diff * diff;
    });
  }

  inline double dtw(const TimeSeries& a, const TimeSeries& b, WarpingWindow window = {}) {
    return dtw(a.values(), b.values(), window);
  }

  /// Dependent multivariate DTW: one warping path, cell cost summed over dimensions.
  inline double dtw_d(const MultivariateInstance& q, const MultivariateInstance& c, WarpingWindow window = {}) {
    detail::check_same_shape(q, c);
    const std::size_t d = q.dimensions();
    const std::size_t m = q.length();
    return detail::dtw_accumulate(m, window.band(m), [&](std::size_t i, std::size_t j) {
      double cost = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = q.dim(k)[i] - c.dim(k)[j];
        cost += diff * diff;
      }
      return cost;
    });
  }

  /// Independent multivariate DTW: per-dimension DTW, summed.
  inline double dtw_i(const MultivariateInstance& q, const MultivariateInstance& c, WarpingWindow window = {}) {
    detail::check_same_shape(q, c);
    double total = 0.0;
    for (std::size_t k = 0; k < q.dimensions(); ++k) { total += dtw(q.dim(k), c.dim(k), window); }
    return total;
  }

  /// Distance for a resolved (non-adaptive) variant.
  inline double dtw_multivariate(DtwVariant variant, const MultivariateInstance& q, const MultivariateInstance& c,
                                 WarpingWindow window = {}) {
    switch (variant) {
      case DtwVariant::Independent: return dtw_i(q, c, window);
      case DtwVariant::Dependent: return dtw_d(q, c, window);
      case DtwVariant::Adaptive: break;
    }
    throw ConfigError("adaptive DTW must be resolved with dtw_a_select before use");
  }

  namespace detail {

    // Full symmetric pairwise distance matrix (row-major n x n).
    template<typename Dist>
    std::vector<double> pairwise(const Dataset& data, unsigned threads, Dist&& dist) {
      const std::size_t n = data.size();
      std::vector<double> matrix(n * n, 0.0);
      parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) { matrix[i * n + j] = dist(data[i], data[j]); }
      });
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) { matrix[i * n + j] = matrix[j * n + i]; }
      }
      return matrix;
    }

    // Leave-one-out 1-NN correct count; ties go to the lowest index.
    inline std::size_t loo_correct(const Dataset& data, const std::vector<double>& matrix) {
      const std::size_t n = data.size();
      std::size_t correct = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t best_j = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) { continue; }
          if (best_j == n || matrix[i * n + j] < best) {
            best = matrix[i * n + j];
            best_j = j;
          }
        }
        if (data.label_index(best_j) == data.label_index(i)) { ++correct; }
      }
      return correct;
    }

  } // namespace detail

  struct AdaptiveSelection {
    DtwVariant variant;
    std::size_t independent_correct;
    std::size_t dependent_correct;
  };

  /// Resolve adaptive DTW for a training set: whichever of DTW_I / DTW_D has the higher
  /// leave-one-out 1-NN accuracy, ties to Dependent.
  inline AdaptiveSelection dtw_a_select_detailed(const Dataset& train, WarpingWindow window = {},
                                                 unsigned threads = 1) {
    if (train.size() < 2) { throw ConfigError("adaptive DTW selection needs at least two training instances"); }
    const auto indep = detail::pairwise(train, threads, [&](const auto& a, const auto& b) {
      return dtw_i(a, b, window);
    });
    const auto dep = detail::pairwise(train, threads, [&](const auto& a, const auto& b) {
      return dtw_d(a, b, window);
    });
    const std::size_t ci = detail::loo_correct(train, indep);
    const std::size_t cd = detail::loo_correct(train, dep);
    return {ci > cd ? DtwVariant::Independent : DtwVariant::Dependent, ci, cd};
  }

  inline DtwVariant dtw_a_select(const Dataset& train, WarpingWindow window = {}, unsigned threads = 1) {
    return dtw_a_select_detailed(train, window, threads).variant;
  }

} // namespace mvst
