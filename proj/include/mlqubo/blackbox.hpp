#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlqubo/random.hpp"

// Parameter-setting strategies for the variational loop: plain random search
// and a tree-structured Parzen estimator over mixed continuous/categorical
// spaces. Both are pure functions of (history, space, seed), so a sequential
// suggest -> evaluate -> report loop is fully reproducible.

namespace mlqubo {

struct ContinuousDim {
  std::string name;
  double low, high;
};

struct CategoricalDim {
  std::string name;
  int options;
};

struct SearchSpace {
  std::vector<ContinuousDim> continuous;
  std::vector<CategoricalDim> categorical;

  void validate() const {
    for (const auto& d : continuous)
      if (!(d.low < d.high))
        throw std::invalid_argument("continuous dim needs low < high");
    for (const auto& d : categorical)
      if (d.options < 1)
        throw std::invalid_argument("categorical dim needs options >= 1");
  }
};

struct Point {
  std::vector<double> x;  // continuous coordinates
  std::vector<int> c;     // categorical choices
};

struct TrialRecord {
  Point point;
  double value;  // lower is better
};

enum class SearchStrategy : std::uint8_t { Random, Tpe };

inline SearchStrategy strategy_from_string(const std::string& s) {
  if (s == "random") return SearchStrategy::Random;
  if (s == "tpe") return SearchStrategy::Tpe;
  throw std::invalid_argument("unknown optimizer strategy: " + s);
}

struct TpeOptions {
  int n_startup = 10;      // random trials before the model kicks in
  double quantile = 0.25;  // fraction of history forming the "good" set
  int candidates = 24;     // continuous candidates ranked per suggestion
};

namespace detail {

inline Point random_point(const SearchSpace& space, std::mt19937_64& rng) {
  Point p;
  for (const auto& d : space.continuous) {
    std::uniform_real_distribution<double> dist(d.low, d.high);
    p.x.push_back(dist(rng));
  }
  for (const auto& d : space.categorical) {
    std::uniform_int_distribution<int> dist(0, d.options - 1);
    p.c.push_back(dist(rng));
  }
  return p;
}

// Scott-rule bandwidth; fallback when the sample is a single point.
inline double scott_bandwidth(const std::vector<double>& values, double low,
                              double high) {
  const std::size_t m = values.size();
  if (m < 2) return (high - low) / 4.0;
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / m;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (m - 1);
  const double scott = std::sqrt(var) * std::pow(static_cast<double>(m), -0.2);
  return std::max(scott, 0.01 * (high - low));
}

// One-dimensional adaptive Parzen estimator: one Gaussian kernel per observed
// point whose width is the larger neighbor gap (clipped), plus one uniform
// prior component over the whole interval. Kernels tighten where points
// cluster, which lets the model refine around a basin, while the prior keeps
// unexplored regions reachable and the good/bad ratio finite.
struct Kde1d {
  std::vector<double> centers;     // sorted
  std::vector<double> bandwidths;  // per kernel
  double low = 0.0, high = 1.0;

  static Kde1d fit(std::vector<double> values, double lo, double hi) {
    Kde1d kde;
    kde.low = lo;
    kde.high = hi;
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    const double bw_max = hi - lo;
    const double bw_min =
        bw_max / std::min(100.0, static_cast<double>(m) + 1.0);
    kde.bandwidths.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      double gap = m < 2 ? scott_bandwidth(values, lo, hi) : 0.0;
      if (k > 0) gap = std::max(gap, values[k] - values[k - 1]);
      if (k + 1 < m) gap = std::max(gap, values[k + 1] - values[k]);
      kde.bandwidths[k] = std::clamp(gap, bw_min, bw_max);
    }
    kde.centers = std::move(values);
    return kde;
  }

  double log_density(double x) const {
    double density = 1.0 / (high - low);  // prior component
    constexpr double inv_sqrt_2pi = 0.3989422804014327;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double inv = 1.0 / bandwidths[k];
      const double t = (x - centers[k]) * inv;
      density += inv * inv_sqrt_2pi * std::exp(-0.5 * t * t);
    }
    return std::log(density / static_cast<double>(centers.size() + 1));
  }

  double draw(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, centers.size());
    const std::size_t k = pick(rng);
    if (k == centers.size()) {  // prior
      std::uniform_real_distribution<double> uniform(low, high);
      return uniform(rng);
    }
    std::normal_distribution<double> kernel(centers[k], bandwidths[k]);
    return std::clamp(kernel(rng), low, high);
  }
};

}  // namespace detail

inline Point suggest_random(const SearchSpace& space, std::uint64_t seed,
                            std::size_t trial_index) {
  space.validate();
  auto rng = make_rng(seed, trial_index);
  return detail::random_point(space, rng);
}

// TPE: split the history at the quantile into good/bad sets. Continuous
// coordinates are proposed by sampling `candidates` points from a Gaussian
// KDE over the good set and keeping the candidate with the best good/bad
// log-density ratio; categorical coordinates are sampled from the good set's
// Laplace-smoothed category frequencies.
inline Point suggest_tpe(const std::vector<TrialRecord>& history,
                         const SearchSpace& space, std::uint64_t seed,
                         const TpeOptions& opt = {}) {
  space.validate();
  auto rng = make_rng(seed, history.size());
  if (static_cast<int>(history.size()) < opt.n_startup)
    return detail::random_point(space, rng);

  std::vector<std::size_t> order(history.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return history[a].value < history[b].value;
  });
  const std::size_t n_good = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::ceil(opt.quantile * static_cast<double>(history.size()))));

  Point p;
  // categorical: smoothed frequencies of the good set
  for (std::size_t d = 0; d < space.categorical.size(); ++d) {
    const int options = space.categorical[d].options;
    std::vector<double> weight(static_cast<std::size_t>(options), 1.0);
    for (std::size_t k = 0; k < n_good; ++k)
      weight[history[order[k]].point.c[d]] += 1.0;
    std::discrete_distribution<int> dist(weight.begin(), weight.end());
    p.c.push_back(dist(rng));
  }
  // continuous: candidate ranking by good/bad density ratio
  if (!space.continuous.empty()) {
    const std::size_t dims = space.continuous.size();
    std::vector<detail::Kde1d> good_model, bad_model;
    for (std::size_t d = 0; d < dims; ++d) {
      std::vector<double> good, bad;
      for (std::size_t k = 0; k < history.size(); ++k)
        (k < n_good ? good : bad).push_back(history[order[k]].point.x[d]);
      const auto& dim = space.continuous[d];
      good_model.push_back(
          detail::Kde1d::fit(std::move(good), dim.low, dim.high));
      bad_model.push_back(
          detail::Kde1d::fit(std::move(bad), dim.low, dim.high));
    }
    std::vector<double> best_x(dims);
    double best_score = -std::numeric_limits<double>::infinity();
    for (int cand = 0; cand < opt.candidates; ++cand) {
      std::vector<double> x(dims);
      double score = 0.0;
      for (std::size_t d = 0; d < dims; ++d) {
        x[d] = good_model[d].draw(rng);
        score += good_model[d].log_density(x[d]) -
                 bad_model[d].log_density(x[d]);
      }
      if (score > best_score) {
        best_score = score;
        best_x = std::move(x);
      }
    }
    p.x = std::move(best_x);
  }
  return p;
}

inline Point suggest(const std::vector<TrialRecord>& history,
                     const SearchSpace& space, SearchStrategy strategy,
                     std::uint64_t seed, const TpeOptions& opt = {}) {
  if (strategy == SearchStrategy::Random)
    return suggest_random(space, seed, history.size());
  return suggest_tpe(history, space, seed, opt);
}

inline void report(std::vector<TrialRecord>& history, Point point,
                   double value) {
  history.push_back(TrialRecord{std::move(point), value});
}

inline const TrialRecord& best_trial(const std::vector<TrialRecord>& history) {
  if (history.empty()) throw std::invalid_argument("empty history");
  std::size_t best = 0;
  for (std::size_t k = 1; k < history.size(); ++k)
    if (history[k].value < history[best].value) best = k;
  return history[best];
}

// CSV trial log: trial index, one column per dimension, objective value.
inline void write_trial_log(std::ostream& out,
                            const std::vector<TrialRecord>& history,
                            const SearchSpace& space) {
  out << "trial";
  for (const auto& d : space.continuous) out << ',' << d.name;
  for (const auto& d : space.categorical) out << ',' << d.name;
  out << ",value\n";
  for (std::size_t t = 0; t < history.size(); ++t) {
    out << t;
    for (double x : history[t].point.x) out << ',' << x;
    for (int c : history[t].point.c) out << ',' << c;
    out << ',' << history[t].value << '\n';
  }
}

}  // namespace mlqubo
