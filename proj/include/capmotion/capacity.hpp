#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capmotion/geometry.hpp"
#include "capmotion/parallel.hpp"
#include "capmotion/rng.hpp"

namespace capmotion {

// Sum of log|w_j - w_k| over all pairs j < k. Returns -infinity when two
// points of the tuple coincide.
inline double log_vandermonde(const std::vector<Complex>& tuple) {
  if (tuple.size() < 2) throw std::invalid_argument("log_vandermonde: need >= 2 points");
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < tuple.size(); ++j) {
    for (std::size_t k = j + 1; k < tuple.size(); ++k) {
      double d = std::abs(tuple[j] - tuple[k]);
      if (d == 0.0) return -std::numeric_limits<double>::infinity();
      sum += std::log(d);
    }
  }
  return sum;
}

// Geometric-mean pairwise distance of an n-tuple: exp(2 V / (n(n-1))) with
// V the log-Vandermonde sum. Zero for tuples with a repeated point.
inline double nth_diameter(const std::vector<Complex>& tuple) {
  double v = log_vandermonde(tuple);
  if (v == -std::numeric_limits<double>::infinity()) return 0.0;
  double n = static_cast<double>(tuple.size());
  return std::exp(2.0 * v / (n * (n - 1.0)));
}

namespace detail {

// Lowest-index argmax over [0, n). Values may contain -inf.
template <typename Get>
std::size_t argmax_lowest(std::size_t n, Get&& get) {
  std::size_t best = 0;
  double best_v = get(0);
  for (std::size_t i = 1; i < n; ++i) {
    double v = get(i);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

// Greedy point selection: seed with the two farthest candidates, then add
// the candidate maximizing the sum of log-distances to the chosen set.
// Ties break toward the lowest candidate index, making the result
// deterministic.
inline std::vector<std::size_t> leja_sequence(const PointCloud& candidates, std::size_t n) {
  const auto& pts = candidates.points;
  if (n < 2) throw std::invalid_argument("leja_sequence: need n >= 2");
  if (pts.size() < n) throw std::invalid_argument("leja_sequence: not enough candidates");

  std::size_t m = pts.size();
  std::size_t seed_a = 0, seed_b = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double d = std::abs(pts[i] - pts[j]);
      if (d > best) {
        best = d;
        seed_a = i;
        seed_b = j;
      }
    }
  }

  std::vector<std::size_t> chosen = {seed_a, seed_b};
  // score[i] accumulates sum over chosen points of log|pts[i] - chosen|.
  std::vector<double> score(m, 0.0);
  std::vector<char> used(m, 0);
  used[seed_a] = used[seed_b] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    double da = std::abs(pts[i] - pts[seed_a]);
    double db = std::abs(pts[i] - pts[seed_b]);
    score[i] = (da == 0.0 || db == 0.0) ? -std::numeric_limits<double>::infinity()
                                        : std::log(da) + std::log(db);
  }
  while (chosen.size() < n) {
    std::size_t pick = detail::argmax_lowest(m, [&](std::size_t i) {
      return used[i] ? -std::numeric_limits<double>::infinity() : score[i];
    });
    used[pick] = 1;
    chosen.push_back(pick);
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      double d = std::abs(pts[i] - pts[pick]);
      score[i] = (d == 0.0) ? -std::numeric_limits<double>::infinity() : score[i] + std::log(d);
    }
  }
  return chosen;
}

struct ExchangeStats {
  std::size_t passes = 0;
  std::size_t exchanges = 0;
  double initial_log_vandermonde = 0.0;
  double final_log_vandermonde = 0.0;
};

struct ExchangeResult {
  std::vector<std::size_t> indices;  // into the candidate cloud
  std::vector<Complex> tuple;
  double log_vandermonde = 0.0;
  double diameter = 0.0;
  ExchangeStats stats;
};

// Local search for a maximal-Vandermonde n-tuple drawn from the candidate
// cloud. Starts from the greedy sequence; each pass offers every slot its
// best single-point replacement and accepts strict improvements. The search
// is deterministic (lowest-index tie break); `seed` is recorded for
// provenance but the current strategy draws nothing from it.
inline ExchangeResult fekete_exchange(const PointCloud& candidates, std::size_t n,
                                      std::size_t max_passes = 6, std::uint64_t seed = 0,
                                      int workers = 1) {
  (void)seed;
  const auto& pts = candidates.points;
  if (pts.size() < n) throw std::invalid_argument("fekete_exchange: not enough candidates");

  ExchangeResult res;
  res.indices = leja_sequence(candidates, n);

  std::size_t m = pts.size();
  std::vector<char> in_tuple(m, 0);
  for (std::size_t idx : res.indices) in_tuple[idx] = 1;

  // own_sum[s] = sum over other slots t of log|w_s - w_t|.
  auto tuple_point = [&](std::size_t s) { return pts[res.indices[s]]; };
  std::vector<double> own_sum(n, 0.0);
  auto recompute_own = [&]() {
    for (std::size_t s = 0; s < n; ++s) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        if (t == s) continue;
        acc += std::log(std::abs(tuple_point(s) - tuple_point(t)));
      }
      own_sum[s] = acc;
    }
  };
  recompute_own();

  double log_v = 0.0;
  for (std::size_t s = 0; s < n; ++s) log_v += own_sum[s];
  log_v /= 2.0;
  res.stats.initial_log_vandermonde = log_v;

  // total[i] = sum over slots of log|pts[i] - w_slot| (-inf when pts[i]
  // coincides with a tuple point, which correctly kills the move).
  std::vector<double> total(m, 0.0);
  auto recompute_totals = [&](int wk) {
    parallel_for(m, wk, [&](std::size_t i) {
      double acc = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        double d = std::abs(pts[i] - tuple_point(s));
        if (d == 0.0) {
          acc = -std::numeric_limits<double>::infinity();
          break;
        }
        acc += std::log(d);
      }
      total[i] = acc;
    });
  };
  recompute_totals(workers);

  const double accept_eps = 1e-13 * std::max(1.0, std::abs(log_v));
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    ++res.stats.passes;
    bool any_accept = false;
    if (pass > 0) recompute_totals(workers);  // shed incremental rounding
    for (std::size_t s = 0; s < n; ++s) {
      Complex ws = tuple_point(s);
      // Replacing slot s by candidate i changes V by
      // total[i] - log|pts[i] - w_s| - own_sum[s].
      std::size_t best_i = m;
      double best_gain = accept_eps;
      for (std::size_t i = 0; i < m; ++i) {
        if (in_tuple[i]) continue;
        double ti = total[i];
        if (!(ti > -std::numeric_limits<double>::infinity())) continue;
        double d = std::abs(pts[i] - ws);
        double gain = ti - std::log(d) - own_sum[s];
        if (gain > best_gain) {
          best_gain = gain;
          best_i = i;
        }
      }
      if (best_i == m) continue;

      any_accept = true;
      ++res.stats.exchanges;
      in_tuple[res.indices[s]] = 0;
      in_tuple[best_i] = 1;
      res.indices[s] = best_i;
      log_v += best_gain;
      // Incremental update of totals and own sums for the swapped point.
      Complex wn = pts[best_i];
      parallel_for(m, workers, [&](std::size_t i) {
        if (!(total[i] > -std::numeric_limits<double>::infinity())) {
          // Rebuild: the -inf may have been caused solely by the removed point.
          double acc = 0.0;
          for (std::size_t t = 0; t < n; ++t) {
            double d = std::abs(pts[i] - tuple_point(t));
            if (d == 0.0) {
              acc = -std::numeric_limits<double>::infinity();
              break;
            }
            acc += std::log(d);
          }
          total[i] = acc;
          return;
        }
        double d_old = std::abs(pts[i] - ws);
        double d_new = std::abs(pts[i] - wn);
        if (d_old == 0.0 || d_new == 0.0) {
          double acc = 0.0;
          for (std::size_t t = 0; t < n; ++t) {
            double d = std::abs(pts[i] - tuple_point(t));
            if (d == 0.0) {
              acc = -std::numeric_limits<double>::infinity();
              break;
            }
            acc += std::log(d);
          }
          total[i] = acc;
          return;
        }
        total[i] += std::log(d_new) - std::log(d_old);
      });
      recompute_own();
    }
    if (!any_accept) break;
  }

  res.tuple.reserve(n);
  for (std::size_t idx : res.indices) res.tuple.push_back(pts[idx]);
  res.log_vandermonde = log_vandermonde(res.tuple);
  res.diameter = nth_diameter(res.tuple);
  res.stats.final_log_vandermonde = res.log_vandermonde;
  return res;
}

struct CapacityReport {
  std::vector<std::pair<std::size_t, double>> diameters;  // (n, diameter estimate)
  double raw_estimate = 0.0;
  double extrapolated = 0.0;
  std::string method;
  std::size_t optimizer_passes = 0;
  std::size_t optimizer_exchanges = 0;
  bool monotone = true;          // estimates nonincreasing in n
  double worst_increase = 0.0;   // largest observed increase, 0 when monotone

  // Half-width of the [extrapolated, raw] bracket, used as a coarse
  // uncertainty figure in sweep rows.
  double bracket_error() const { return std::abs(raw_estimate - extrapolated); }
};

// Reduces a diameter ladder to a capacity figure. The raw estimate is the
// diameter at the largest n; the extrapolated value is the intercept of a
// least-squares line in 1/n fitted over the largest half of the n-range.
// The fit model is a reporting convention, so both numbers are kept.
inline CapacityReport capacity_from_diameters(
    const std::vector<std::pair<std::size_t, double>>& diameters,
    const std::string& method = "fekete-exchange") {
  if (diameters.size() < 3)
    throw std::invalid_argument("capacity_from_diameters: need >= 3 ladder entries");
  for (std::size_t i = 1; i < diameters.size(); ++i)
    if (diameters[i].first <= diameters[i - 1].first)
      throw std::invalid_argument("capacity_from_diameters: n values must increase");

  CapacityReport rep;
  rep.diameters = diameters;
  rep.method = method;
  rep.raw_estimate = diameters.back().second;

  for (std::size_t i = 1; i < diameters.size(); ++i) {
    double inc = diameters[i].second - diameters[i - 1].second;
    if (inc > 1e-9) {
      rep.monotone = false;
      rep.worst_increase = std::max(rep.worst_increase, inc);
    }
  }

  double n_lo = static_cast<double>(diameters.front().first);
  double n_hi = static_cast<double>(diameters.back().first);
  double cut = 0.5 * (n_lo + n_hi);
  std::vector<std::pair<double, double>> fit_pts;  // (1/n, delta)
  for (const auto& [n, d] : diameters)
    if (static_cast<double>(n) >= cut) fit_pts.emplace_back(1.0 / static_cast<double>(n), d);
  if (fit_pts.size() < 2) {
    std::size_t take = (diameters.size() + 1) / 2;
    fit_pts.clear();
    for (std::size_t i = diameters.size() - take; i < diameters.size(); ++i)
      fit_pts.emplace_back(1.0 / static_cast<double>(diameters[i].first), diameters[i].second);
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (auto [x, y] : fit_pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double k = static_cast<double>(fit_pts.size());
  double denom = k * sxx - sx * sx;
  if (denom == 0.0) {
    rep.extrapolated = rep.raw_estimate;
  } else {
    double slope = (k * sxy - sx * sy) / denom;
    rep.extrapolated = (sy - slope * sx) / k;
  }
  return rep;
}

// Convenience ladder: runs the exchange optimizer at every n in n_values.
inline CapacityReport fekete_capacity(const PointCloud& candidates,
                                      const std::vector<std::size_t>& n_values,
                                      std::size_t max_passes = 6, std::uint64_t seed = 0,
                                      int workers = 1) {
  std::vector<std::pair<std::size_t, double>> ladder;
  std::size_t passes = 0, exchanges = 0;
  for (std::size_t n : n_values) {
    ExchangeResult r = fekete_exchange(candidates, n, max_passes, seed, workers);
    ladder.emplace_back(n, r.diameter);
    passes += r.stats.passes;
    exchanges += r.stats.exchanges;
  }
  CapacityReport rep = capacity_from_diameters(ladder);
  rep.optimizer_passes = passes;
  rep.optimizer_exchanges = exchanges;
  return rep;
}

struct EnergyEstimate {
  std::size_t pair_count = 0;
  std::size_t skipped_pairs = 0;  // coincident pairs encountered while sampling
  double mean_neg_log_distance = 0.0;
  double capacity = 0.0;
};

// Pairwise-energy capacity estimate: averages -log|z_i - z_j| over index
// pairs and exponentiates. When max_pairs covers all unordered pairs the
// sum is enumerated exactly; otherwise pairs are drawn from per-pair seeded
// streams. Meaningful when the cloud approximates the energy-minimizing
// distribution of its support.
inline EnergyEstimate energy_capacity(const PointCloud& samples, std::size_t max_pairs,
                                      std::uint64_t seed, int workers = 1) {
  const auto& pts = samples.points;
  if (pts.size() < 2) throw std::invalid_argument("energy_capacity: need >= 2 points");
  bool any_distinct = false;
  for (const Complex& p : pts)
    if (p != pts[0]) {
      any_distinct = true;
      break;
    }
  if (!any_distinct) throw std::invalid_argument("energy_capacity: all points coincide");
  if (max_pairs == 0) throw std::invalid_argument("energy_capacity: max_pairs must be positive");

  std::size_t m = pts.size();
  EnergyEstimate est;
  std::size_t all_pairs = m * (m - 1) / 2;

  if (max_pairs >= all_pairs) {
    // Exact enumeration; deterministic regardless of seed.
    double sum = 0.0;
    std::size_t used = 0, skipped = 0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        double d = std::abs(pts[j] - pts[k]);
        if (d == 0.0) {
          ++skipped;
          continue;
        }
        sum += -std::log(d);
        ++used;
      }
    }
    if (used == 0) throw std::invalid_argument("energy_capacity: all sampled pairs coincide");
    est.pair_count = used;
    est.skipped_pairs = skipped;
    est.mean_neg_log_distance = sum / static_cast<double>(used);
  } else {
    std::vector<double> vals(max_pairs);
    std::vector<char> ok(max_pairs, 0);
    parallel_for(max_pairs, workers, [&](std::size_t p) {
      SeededStream rng(seed, p);
      std::size_t i = rng.next_below(m);
      std::size_t j = rng.next_below(m - 1);
      if (j >= i) ++j;
      double d = std::abs(pts[i] - pts[j]);
      if (d > 0.0) {
        vals[p] = -std::log(d);
        ok[p] = 1;
      }
    });
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t p = 0; p < max_pairs; ++p) {
      if (!ok[p]) continue;
      sum += vals[p];
      ++used;
    }
    if (used == 0) throw std::invalid_argument("energy_capacity: all sampled pairs coincide");
    est.pair_count = used;
    est.skipped_pairs = max_pairs - used;
    est.mean_neg_log_distance = sum / static_cast<double>(used);
  }
  est.capacity = std::exp(-est.mean_neg_log_distance);
  return est;
}

}  // namespace capmotion
