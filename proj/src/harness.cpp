#include "tts/harness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "tts/errors.hpp"
#include "tts/rng.hpp"

namespace tts {

std::vector<RunResult> run_many(const EdgeStream& s, EstimatorConfig cfg,
                                std::size_t runs, std::uint64_t base_seed,
                                unsigned threads) {
  std::vector<RunResult> results(runs);
  if (runs == 0) return results;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, runs));

  if (threads <= 1) {
    for (std::size_t i = 0; i < runs; ++i) {
      cfg.seed = base_seed + i;
      results[i] = run_step(s, cfg);
    }
    return results;
  }

  std::vector<std::future<void>> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w]() {
      EstimatorConfig local = cfg;
      for (std::size_t i = w; i < runs; i += threads) {
        local.seed = base_seed + i;
        results[i] = run_step(s, local);
      }
    }));
  }
  for (auto& worker : workers) worker.get();
  return results;
}

TrialReport run_trials(const EdgeStream& s, const EstimatorConfig& cfg,
                       std::size_t runs, std::uint64_t base_seed,
                       const std::optional<KindCounts>& exact,
                       std::string predictor_label) {
  if (runs < 1) throw ArgumentError("runs must be at least 1");
  const std::vector<RunResult> results = run_many(s, cfg, runs, base_seed);

  TrialReport report;
  report.runs = runs;
  report.single_run = (runs == 1);
  report.exact_available = exact.has_value();
  report.delta = cfg.delta;
  report.p = cfg.p;
  report.base_seed = base_seed;
  report.predictor = std::move(predictor_label);

  double peak_sum = 0.0;
  for (const RunResult& r : results) {
    peak_sum += static_cast<double>(r.stats.peak_live_edges);
    report.max_peak_live_edges =
        std::max(report.max_peak_live_edges, r.stats.peak_live_edges);
  }
  report.mean_peak_live_edges = peak_sum / static_cast<double>(runs);

  for (int kind = 0; kind < kNumTriangleKinds; ++kind) {
    TrialKindStats& stats = report.per_kind[kind];
    double mean = 0.0;
    for (const RunResult& r : results) mean += r.estimates[kind];
    mean /= static_cast<double>(runs);
    stats.mean_estimate = mean;
    if (!exact.has_value()) continue;
    stats.exact = (*exact)[kind];
    if (stats.exact == 0) continue;  // MAE undefined, reported as null

    const double denom = static_cast<double>(stats.exact);
    std::vector<double> rel_errors;
    rel_errors.reserve(runs);
    for (const RunResult& r : results) {
      rel_errors.push_back(std::abs(r.estimates[kind] - denom) / denom);
    }
    double err_mean = 0.0;
    for (double e : rel_errors) err_mean += e;
    err_mean /= static_cast<double>(runs);
    stats.mae = err_mean;
    if (runs == 1) {
      stats.std_dev = 0.0;
    } else {
      double ss = 0.0;
      for (double e : rel_errors) ss += (e - err_mean) * (e - err_mean);
      stats.std_dev = std::sqrt(ss / static_cast<double>(runs - 1));
    }
  }
  return report;
}

CorrelationReport correlation(const RankedEdges& perfect,
                              const std::vector<EdgeIdx>& predicted,
                              std::uint64_t k) {
  if (k == 0) throw ArgumentError("K must be at least 1");
  if (perfect.order.empty()) throw ArgumentError("empty perfect ranking");
  const std::uint64_t k_top =
      std::min<std::uint64_t>(k, perfect.order.size());
  std::unordered_set<EdgeIdx> top(perfect.order.begin(),
                                  perfect.order.begin() + k_top);
  std::unordered_set<EdgeIdx> pred(predicted.begin(), predicted.end());

  std::size_t inter = 0;
  for (EdgeIdx idx : pred) inter += top.count(idx);
  const std::size_t uni = top.size() + pred.size() - inter;

  CorrelationReport report;
  report.k_perfect = k_top;
  report.k_predicted = pred.size();
  report.jaccard = uni == 0 ? 0.0
                            : static_cast<double>(inter) /
                                  static_cast<double>(uni);
  if (!pred.empty()) {
    report.v_metric =
        static_cast<double>(inter) / static_cast<double>(pred.size());
  }
  return report;
}

std::pair<EdgeStream, EdgeStream> split_stream(const EdgeStream& s,
                                               double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ArgumentError("fraction must be in (0, 1)");
  }
  const std::size_t cut = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(s.size())));
  if (cut == 0) {
    std::cerr << "warning: training split is empty (fraction*m < 1)"
              << std::endl;
  }
  EdgeStream train;
  EdgeStream test;
  train.num_nodes = s.num_nodes;
  test.num_nodes = s.num_nodes;
  train.edges.assign(s.edges.begin(), s.edges.begin() + cut);
  test.edges.assign(s.edges.begin() + cut, s.edges.end());
  return {std::move(train), std::move(test)};
}

EdgeStream gen_random(std::uint64_t n, std::uint64_t m, Timestamp horizon,
                      std::uint64_t seed) {
  if (n < 3) throw ArgumentError("n must be at least 3");
  if (m < 1) throw ArgumentError("m must be at least 1");
  if (horizon < 0) throw ArgumentError("horizon must be non-negative");
  Rng rng(seed);
  // Cubed uniforms put polynomially more mass on low node ids, a power-law
  // style skew with hubs near id 0. Plain multiplications keep the draw
  // bit-stable across platforms.
  auto skewed_node = [&]() -> NodeId {
    const double u = rng.uniform01();
    auto id = static_cast<std::uint64_t>(u * u * u * static_cast<double>(n));
    return std::min<std::uint64_t>(id, n - 1);
  };
  EdgeStream raw;
  raw.edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    TemporalEdge e;
    e.src = skewed_node();
    do {
      e.dst = skewed_node();
    } while (e.dst == e.src);
    e.t = static_cast<Timestamp>(
        rng.below(static_cast<std::uint64_t>(horizon) + 1));
    e.idx = i;
    raw.edges.push_back(e);
  }
  return preprocess(raw).first;
}

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  const NodeId lo = std::min(a, b);
  const NodeId hi = std::max(a, b);
  return (lo << 32) | hi;
}

// Uniform sample of min(count, pool.size()) distinct elements.
std::vector<NodeId> sample_distinct(std::vector<NodeId> pool,
                                    std::size_t count, Rng& rng) {
  if (pool.size() <= count) return pool;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

AugmentResult augment_bipartite(const EdgeStream& s, const AugmentConfig& cfg,
                                std::uint64_t seed) {
  if (s.num_nodes >= (1ULL << 32)) {
    throw ArgumentError("augmentation supports up to 2^32 nodes");
  }
  // Distinct neighbors per node (first-appearance order) and the temporal
  // edges available on each static pair.
  std::vector<std::vector<NodeId>> neighbors(s.num_nodes);
  std::unordered_map<std::uint64_t, std::vector<Timestamp>> pair_times;
  {
    std::vector<std::unordered_set<NodeId>> seen(s.num_nodes);
    for (const TemporalEdge& e : s.edges) {
      if (seen[e.src].insert(e.dst).second) neighbors[e.src].push_back(e.dst);
      if (seen[e.dst].insert(e.src).second) neighbors[e.dst].push_back(e.src);
      pair_times[pair_key(e.src, e.dst)].push_back(e.t);
    }
  }

  Rng rng(seed);
  AugmentResult result;
  for (NodeId v = 0; v < s.num_nodes; ++v) {
    if (neighbors[v].empty()) continue;
    const std::vector<NodeId> first_hop =
        sample_distinct(neighbors[v], cfg.neighbors, rng);
    std::vector<std::pair<NodeId, NodeId>> contexts;
    for (NodeId x : first_hop) {
      for (NodeId y : sample_distinct(neighbors[x], cfg.second_hop, rng)) {
        if (y != v) contexts.emplace_back(x, y);
      }
    }
    if (contexts.empty()) continue;
    for (std::size_t w = 0; w < cfg.wedges; ++w) {
      const auto [x, y] = contexts[rng.below(contexts.size())];
      const auto& vx = pair_times.at(pair_key(v, x));
      const auto& xy = pair_times.at(pair_key(x, y));
      const Timestamp t1 = vx[rng.below(vx.size())];
      const Timestamp t2 = xy[rng.below(xy.size())];
      const Timestamp lo = std::min(t1, t2);
      const Timestamp hi = std::max(t1, t2);
      const Timestamp t3 =
          lo + static_cast<Timestamp>(
                   rng.below(static_cast<std::uint64_t>(hi - lo) + 1));
      TemporalEdge closing;
      if (rng.below(2) == 0) {
        closing = {v, y, t3, 0};
      } else {
        closing = {y, v, t3, 0};
      }
      result.added.push_back(closing);
      result.spans.emplace_back(lo, hi);
    }
  }

  EdgeStream merged;
  merged.edges = s.edges;
  merged.edges.reserve(s.size() + result.added.size());
  EdgeIdx next_idx = s.empty() ? 0 : s.edges.back().idx + 1;
  for (TemporalEdge e : result.added) {
    e.idx = next_idx++;
    merged.edges.push_back(e);
  }
  result.stream = preprocess(merged).first;
  return result;
}

}  // namespace tts
