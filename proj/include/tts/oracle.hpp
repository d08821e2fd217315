#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "tts/edge.hpp"

namespace tts {

inline constexpr int kNumTriangleKinds = 8;

// Canonical class of a temporal triangle, a code in [0,7]. With the first
// edge relabeled as a->b and c the third vertex:
//   bit 2: second edge lies on pair {b,c} (1) or {a,c} (0)
//   bit 1: second edge leaves the vertex it shares with the first edge's
//          chosen endpoint (b when bit2=1, a when bit2=0)
//   bit 0: third edge runs from the first-edge vertex of the remaining pair
//          towards c (a->c when bit2=1, b->c when bit2=0)
using TriangleKind = std::uint8_t;

using KindCounts = std::array<std::uint64_t, kNumTriangleKinds>;
using KindEstimates = std::array<double, kNumTriangleKinds>;

// Per-edge triangle participation. Indexed by stream position; the stream's
// idx_begin() anchors idx-based lookups.
struct EdgeWeights {
  EdgeIdx idx_begin = 0;
  std::vector<std::array<std::uint64_t, kNumTriangleKinds>> per_kind;
  std::vector<std::uint64_t> total;

  std::size_t size() const { return total.size(); }
  std::uint64_t total_of(EdgeIdx idx) const { return total[idx - idx_begin]; }
  std::uint64_t kind_of(EdgeIdx idx, int kind) const {
    return per_kind[idx - idx_begin][kind];
  }
};

// Classifies an ordered triple of edges (e1 before e2 before e3 in (t, idx)
// order). Returns the kind iff the edges span exactly three distinct vertices
// and three distinct unordered pairs; the caller enforces the delta
// constraint. Degenerate triples return nothing.
std::optional<TriangleKind> classify_triangle(const TemporalEdge& e1,
                                              const TemporalEdge& e2,
                                              const TemporalEdge& e3);

// Exact count of delta-instances per kind: ordered triples e1 < e2 < e3 in
// (t, idx) order with t3 - t1 <= delta. Windowed sweep with per-node
// adjacency; semantically identical to full triple enumeration.
// Requires a preprocessed, sorted stream and delta > 0.
KindCounts enumerate_exact(const EdgeStream& s, Timestamp delta);

// W_i(e) = number of delta-instances of kind i containing e, W(e) their sum.
// Satisfies sum_e W_i(e) = 3 * counts[i].
EdgeWeights edge_weights(const EdgeStream& s, Timestamp delta);

}  // namespace tts
