#include "tts/step.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "tts/errors.hpp"

namespace tts {

SampleState::SampleState(std::uint64_t num_nodes) : nodes_(num_nodes) {}

void SampleState::NodeList::pop_front() {
  ++head;
  if (head > 64 && head * 2 >= entries.size()) {
    entries.erase(entries.begin(), entries.begin() + head);
    head = 0;
  }
}

TemporalEdge SampleState::entry_to_edge(NodeId node, const Entry& en) const {
  return en.out ? TemporalEdge{node, en.other, en.t, en.idx}
                : TemporalEdge{en.other, node, en.t, en.idx};
}

void SampleState::cleanup(Timestamp cutoff) {
  while (!window_.empty() && window_.front().edge.t < cutoff) {
    const StoredEdge& old = window_.front();
    nodes_[old.edge.src].pop_front();
    nodes_[old.edge.dst].pop_front();
    if (old.heavy) --heavy_count_;
    window_.pop_front();
  }
}

void SampleState::insert(const TemporalEdge& e, bool heavy) {
  if (e.src >= nodes_.size() || e.dst >= nodes_.size()) {
    throw ContractError("node id beyond num_nodes; stream not preprocessed");
  }
  window_.push_back({e, heavy});
  nodes_[e.src].entries.push_back({e.dst, e.t, e.idx, true, heavy});
  nodes_[e.dst].entries.push_back({e.src, e.t, e.idx, false, heavy});
  if (heavy) ++heavy_count_;
}

std::size_t SampleState::live_degree(NodeId node) const {
  return node < nodes_.size() ? nodes_[node].degree() : 0;
}

std::vector<StoredEdge> SampleState::snapshot() const {
  return {window_.begin(), window_.end()};
}

WedgeBuckets SampleState::collect_wedges(const TemporalEdge& e) {
  WedgeBuckets buckets;
  // x = endpoint with the smaller live degree, ties resolved to the source.
  NodeId x = e.src;
  NodeId y = e.dst;
  if (live_degree(e.dst) < live_degree(e.src)) {
    x = e.dst;
    y = e.src;
  }
  const NodeList& xs = nodes_[x];
  if (xs.degree() == 0) return buckets;

  y_by_other_.clear();
  const NodeList& ys = nodes_[y];
  for (std::size_t i = ys.head; i < ys.entries.size(); ++i) {
    const Entry& en = ys.entries[i];
    if (en.other != x) y_by_other_[en.other].push_back(en);
  }
  if (y_by_other_.empty()) return buckets;

  for (std::size_t i = xs.head; i < xs.entries.size(); ++i) {
    const Entry& ex = xs.entries[i];
    if (ex.other == y) continue;
    auto it = y_by_other_.find(ex.other);
    if (it == y_by_other_.end()) continue;
    const TemporalEdge edge_x = entry_to_edge(x, ex);
    for (const Entry& ey : it->second) {
      const TemporalEdge edge_y = entry_to_edge(y, ey);
      const bool x_first = ex.idx < ey.idx;
      WedgePair pair{x_first ? edge_x : edge_y, x_first ? edge_y : edge_x};
      if (ex.heavy && ey.heavy) {
        buckets.heavy_heavy.push_back(pair);
      } else if (ex.heavy || ey.heavy) {
        buckets.heavy_light.push_back(pair);
      } else {
        buckets.light_light.push_back(pair);
      }
    }
  }
  return buckets;
}

void update_counters(Counters& counters, const std::vector<WedgePair>& wedges,
                     const TemporalEdge& e, int bank) {
  if (bank < 0 || bank > 2) throw ArgumentError("bank must be 0, 1 or 2");
  for (const WedgePair& w : wedges) {
    if (auto kind = classify_triangle(w.first, w.second, e)) {
      ++counters.c[*kind][bank];
    }
  }
}

RunResult run_step(const EdgeStream& s, const EstimatorConfig& cfg) {
  if (cfg.predictor == nullptr) {
    throw ArgumentError("estimator config has no predictor");
  }
  if (!(cfg.p > 0.0 && cfg.p <= 1.0)) {
    throw ArgumentError("sampling probability must be in (0, 1]");
  }
  if (cfg.delta <= 0) throw ArgumentError("delta must be positive");
  if (!validate_sorted(s)) throw ContractError("stream is not sorted");

  const auto start = std::chrono::steady_clock::now();
  const PredictorSpec& spec = *cfg.predictor;
  const EdgeIdx base = s.idx_begin();

  // O(1) classification: flatten the heavy set onto stream positions.
  std::vector<char> heavy_flag(s.size(), 0);
  for (EdgeIdx idx : spec.heavy_set) {
    if (idx >= base && idx - base < s.size()) heavy_flag[idx - base] = 1;
  }

  Rng rng(cfg.seed);
  SampleState state(s.num_nodes);
  RunResult result;
  RunStats& stats = result.stats;

  for (std::size_t pos = 0; pos < s.edges.size(); ++pos) {
    const TemporalEdge& e = s.edges[pos];
    if (!spec.covers(e.idx)) {
      throw ContractError("predictor cannot classify edge idx " +
                          std::to_string(e.idx));
    }
    state.cleanup(e.t - cfg.delta);
    WedgeBuckets wedges = state.collect_wedges(e);
    update_counters(result.counters, wedges.light_light, e, 0);
    update_counters(result.counters, wedges.heavy_light, e, 1);
    update_counters(result.counters, wedges.heavy_heavy, e, 2);
    stats.wedges_examined += wedges.total();

    if (spec.kind != PredictorKind::kNever && heavy_flag[pos]) {
      state.insert(e, true);
      ++stats.edges_retained;
    } else if (rng.flip(cfg.p)) {
      state.insert(e, false);
      ++stats.edges_retained;
    }
    stats.peak_live_edges = std::max(stats.peak_live_edges, state.live_size());
    stats.peak_heavy = std::max(stats.peak_heavy, state.heavy_size());
  }

  const double inv_p = 1.0 / cfg.p;
  for (int i = 0; i < kNumTriangleKinds; ++i) {
    result.estimates[i] =
        static_cast<double>(result.counters.c[i][0]) * inv_p * inv_p +
        static_cast<double>(result.counters.c[i][1]) * inv_p +
        static_cast<double>(result.counters.c[i][2]);
  }
  stats.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return result;
}

}  // namespace tts
