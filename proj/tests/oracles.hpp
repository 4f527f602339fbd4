#pragma once

// Brute-force reference computations for tests. Nothing here calls into the library's
// distance, quality or statistics code; only the plain data types are shared.

#include <mvst/data.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

  inline std::vector<double> znorm(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) { mean += v; }
    mean /= n;
    double var = 0.0;
    double scale = 0.0;
    for (double v : x) {
      var += (v - mean) * (v - mean);
      scale = std::max(scale, std::abs(v));
    }
    const double sd = std::sqrt(var / n);
    std::vector<double> out(x.size(), 0.0);
    if (sd <= 1e-12 * std::max(1.0, scale)) { return out; }
    for (std::size_t i = 0; i < x.size(); ++i) { out[i] = (x[i] - mean) / sd; }
    return out;
  }

  inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) { s += (a[i] - b[i]) * (a[i] - b[i]); }
    return std::sqrt(s);
  }

  inline std::vector<double> window(const std::vector<double>& t, std::size_t p, std::size_t len) {
    return std::vector<double>(t.begin() + static_cast<long>(p), t.begin() + static_cast<long>(p + len));
  }

  /// Exhaustive minimum over every window of T.
  inline double sdist(const std::vector<double>& s, const std::vector<double>& t, bool normalize) {
    const auto ss = normalize ? znorm(s) : s;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p + s.size() <= t.size(); ++p) {
      auto w = window(t, p, s.size());
      if (normalize) { w = znorm(w); }
      best = std::min(best, euclid(ss, w));
    }
    return best;
  }

  /// Minimum path cost over every monotone, continuous warping path inside the band |i-j| <= band.
  inline double dtw_paths(std::size_t m, std::size_t band, const std::function<double(std::size_t, std::size_t)>& cost) {
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap > band) { return; }
      acc += cost(i, j);
      if (i == m - 1 && j == m - 1) {
        best = std::min(best, acc);
        return;
      }
      if (i + 1 < m) { walk(i + 1, j, acc); }
      if (j + 1 < m) { walk(i, j + 1, acc); }
      if (i + 1 < m && j + 1 < m) { walk(i + 1, j + 1, acc); }
    };
    walk(0, 0, 0.0);
    return best;
  }

  inline double dtw_paths(const std::vector<double>& a, const std::vector<double>& b, std::size_t band) {
    return dtw_paths(a.size(), band, [&](std::size_t i, std::size_t j) { return (a[i] - b[j]) * (a[i] - b[j]); });
  }

  inline double dtw_d_paths(const mvst::MultivariateInstance& q, const mvst::MultivariateInstance& c,
                            std::size_t band) {
    return dtw_paths(q.length(), band, [&](std::size_t i, std::size_t j) {
      double s = 0.0;
      for (std::size_t k = 0; k < q.dimensions(); ++k) {
        const double diff = q.dim(k)[i] - c.dim(k)[j];
        s += diff * diff;
      }
      return s;
    });
  }

  /// Textbook full-matrix DTW (no band), used where path enumeration is too slow.
  inline double dtw_full_matrix(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> D(n + 1, std::vector<double>(n + 1, inf));
    D[0][0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        const double c = (a[i - 1] - b[j - 1]) * (a[i - 1] - b[j - 1]);
        D[i][j] = c + std::min({D[i - 1][j], D[i][j - 1], D[i - 1][j - 1]});
      }
    }
    return D[n][n];
  }

  inline double entropy(std::size_t pos, std::size_t total) {
    if (total == 0 || pos == 0 || pos == total) { return 0.0; }
    const double p = static_cast<double>(pos) / static_cast<double>(total);
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  }

  /// For every distinct distance value v except the largest, split into {d <= v} and {d > v}
  /// and recount from scratch.
  inline double information_gain(const std::vector<double>& d, const std::vector<int>& positive) {
    const std::size_t n = d.size();
    std::size_t pos = 0;
    for (int p : positive) { pos += p != 0; }
    const double parent = entropy(pos, n);
    const double dmax = *std::max_element(d.begin(), d.end());
    double best = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const double v = d[s];
      if (v == dmax) { continue; }
      std::size_t ln = 0, lp = 0, rn = 0, rp = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d[i] <= v) {
          ++ln;
          lp += positive[i] != 0;
        } else {
          ++rn;
          rp += positive[i] != 0;
        }
      }
      const double gain = parent - (static_cast<double>(ln) / static_cast<double>(n)) * entropy(lp, ln)
                          - (static_cast<double>(rn) / static_cast<double>(n)) * entropy(rp, rn);
      best = std::max(best, gain);
    }
    return std::clamp(best, 0.0, 1.0);
  }

  /// Two-sided signed-rank p-value by enumerating every sign assignment.
  inline double wilcoxon_enumerate(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] - b[i] != 0.0) { d.push_back(a[i] - b[i]); }
    }
    const std::size_t n = d.size();
    if (n == 0) { return 1.0; }
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t less = 0, equal = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(d[j]) < std::abs(d[i])) { ++less; }
        if (std::abs(d[j]) == std::abs(d[i])) { ++equal; }
      }
      rank[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    double observed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] > 0) { observed += rank[i]; }
    }
    std::uint64_t le = 0, ge = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      double w = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) { w += rank[i]; }
      }
      le += w <= observed;
      ge += w >= observed;
    }
    return std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / static_cast<double>(total));
  }

} // namespace oracle
