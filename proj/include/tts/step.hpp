#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "tts/edge.hpp"
#include "tts/oracle.hpp"
#include "tts/predictor.hpp"
#include "tts/rng.hpp"

namespace tts {

// Triangle completions partitioned by the heaviness of their first two
// stream edges: bank 0 = light-light, 1 = heavy-light, 2 = heavy-heavy.
struct Counters {
  std::array<std::array<std::uint64_t, 3>, kNumTriangleKinds> c{};

  std::uint64_t bank_total(int kind) const {
    return c[kind][0] + c[kind][1] + c[kind][2];
  }
};

struct EstimatorConfig {
  Timestamp delta = 0;
  double p = 1.0;
  std::uint64_t seed = 0;
  const PredictorSpec* predictor = nullptr;
};

struct RunStats {
  std::size_t peak_live_edges = 0;  // max over time of |H| + |S_L|
  std::size_t peak_heavy = 0;       // max over time of |H|
  std::uint64_t wedges_examined = 0;
  std::uint64_t edges_retained = 0;  // total insertions into H or S_L
  double elapsed_ms = 0.0;           // excluded from determinism guarantees
};

struct RunResult {
  KindEstimates estimates{};
  Counters counters;
  RunStats stats;
};

struct StoredEdge {
  TemporalEdge edge;
  bool heavy = false;
};

// A wedge: two stored edges in (t, idx) order that close into a triangle
// with the arriving edge.
struct WedgePair {
  TemporalEdge first;
  TemporalEdge second;
};

struct WedgeBuckets {
  std::vector<WedgePair> heavy_heavy;
  std::vector<WedgePair> heavy_light;
  std::vector<WedgePair> light_light;

  std::size_t total() const {
    return heavy_heavy.size() + heavy_light.size() + light_light.size();
  }
};

// The estimator's retained window: heavy edges H, sampled light edges S_L,
// and a per-node index over both. Insertions arrive in stream order, so each
// node's live edges form a queue evicted from the front.
class SampleState {
 public:
  explicit SampleState(std::uint64_t num_nodes);

  // Drops every stored edge with t' < cutoff from both sets and from the
  // per-node index. Amortized O(1) per removed edge.
  void cleanup(Timestamp cutoff);

  void insert(const TemporalEdge& e, bool heavy);

  // All stored-edge pairs that close into a triangle with e, partitioned by
  // tag. x is e's endpoint with the smaller live degree (ties: e's source);
  // pairs run over stored edges {x,z} and {y,z} with z outside {x,y}.
  WedgeBuckets collect_wedges(const TemporalEdge& e);

  std::size_t heavy_size() const { return heavy_count_; }
  std::size_t light_size() const { return window_.size() - heavy_count_; }
  std::size_t live_size() const { return window_.size(); }
  std::size_t live_degree(NodeId node) const;

  // Stored edges in stream order (test and debugging aid).
  std::vector<StoredEdge> snapshot() const;

 private:
  struct Entry {
    NodeId other;
    Timestamp t;
    EdgeIdx idx;
    bool out;    // the indexed node is the edge's source
    bool heavy;
  };
  struct NodeList {
    std::vector<Entry> entries;
    std::size_t head = 0;  // entries before head are evicted

    std::size_t degree() const { return entries.size() - head; }
    void pop_front();
  };

  TemporalEdge entry_to_edge(NodeId node, const Entry& en) const;

  std::vector<NodeList> nodes_;
  std::deque<StoredEdge> window_;  // stream order, both tags
  std::size_t heavy_count_ = 0;
  // scratch for collect_wedges: maps z -> y-side live entries
  std::unordered_map<NodeId, std::vector<Entry>> y_by_other_;
};

// Classifies each wedge against the closing edge e and bumps the matching
// kind in the requested bank. Wedges must satisfy first < second < e in
// (t, idx) order with t(e) - t(first) <= delta.
void update_counters(Counters& counters, const std::vector<WedgePair>& wedges,
                     const TemporalEdge& e, int bank);

// One single-pass run: per edge, CleanUp both sets, collect and partition
// wedges, update the three banks, then classify the edge (heavy -> H, light
// -> S_L with probability p). Returns c_i = c0/p^2 + c1/p + c2 per kind.
// Deterministic given (s, cfg) including the seed.
RunResult run_step(const EdgeStream& s, const EstimatorConfig& cfg);

}  // namespace tts
