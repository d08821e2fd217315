#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tts/edge.hpp"
#include "tts/oracle.hpp"
#include "tts/rng.hpp"

namespace tts {

class Rng;

enum class PredictorKind {
  kNever,
  kPerfect,
  kMinDegree,
  kStatic,
  kHybrid,
  kThreshold,
  kNoisy,
};

// A materialized heaviness classifier. Every builder resolves to a sorted set
// of heavy edge idx plus the idx range the spec was built on; classification
// is a pure function of the edge idx. kNever covers every stream.
struct PredictorSpec {
  PredictorKind kind = PredictorKind::kNever;
  std::vector<EdgeIdx> heavy_set;  // sorted ascending
  std::uint64_t threshold = 0;     // zeta, kThreshold only
  std::uint64_t budget = 0;        // K, budget-based kinds
  EdgeIdx idx_begin = 0;
  EdgeIdx idx_end = 0;  // exclusive; kNever uses [0, UINT64_MAX)

  bool covers(EdgeIdx idx) const {
    return kind == PredictorKind::kNever ||
           (idx >= idx_begin && idx < idx_end);
  }
  bool is_heavy(EdgeIdx idx) const;
};

// Edge idx sorted by non-increasing weight, ties broken by ascending idx.
// weights[i] is the weight of order[i].
struct RankedEdges {
  std::vector<EdgeIdx> order;
  std::vector<std::uint64_t> weights;
};

// Ranks a stream's edges by per-position weights (ties by ascending idx).
RankedEdges rank_edges(const EdgeStream& s,
                       const std::vector<std::uint64_t>& weights);

// Per-position weight functions used by the practical predictors.
// min_degree: w_md(e) = min over e's endpoints of the number of incident
// edges (e included) with timestamp in the closed window [t-delta, t+delta].
std::vector<std::uint64_t> min_degree_weights(const EdgeStream& s,
                                              Timestamp delta);
// static: w_st(e) = min over endpoints of the distinct-neighbor count over
// the whole stream, ignoring direction and time.
std::vector<std::uint64_t> static_weights(const EdgeStream& s);
// hybrid: like min_degree but counting distinct neighbor nodes in the window
// instead of edge multiplicity.
std::vector<std::uint64_t> hybrid_weights(const EdgeStream& s,
                                          Timestamp delta);

// Top-K of the oracle weight ranking W(e). K > m clamps with a warning.
PredictorSpec build_perfect(const EdgeStream& s, const EdgeWeights& w,
                            std::uint64_t k);

// Temporal min-degree predictor; also returns the full ranking for
// correlation studies and threshold learning.
std::pair<PredictorSpec, RankedEdges> build_min_degree(const EdgeStream& s,
                                                       Timestamp delta,
                                                       std::uint64_t k);

PredictorSpec build_static(const EdgeStream& s, std::uint64_t k);
PredictorSpec build_hybrid(const EdgeStream& s, Timestamp delta,
                           std::uint64_t k);

// zeta = w_md of the K-th edge in the non-increasing w_md ordering of the
// training stream (ties by idx). K beyond the stream falls back to the
// smallest training weight.
std::uint64_t learn_threshold(const EdgeStream& train, Timestamp delta,
                              std::uint64_t k);

// Heavy set {e : w_md(e) >= zeta} on the test stream, w_md computed offline
// with full delta lookahead. No budget cap.
PredictorSpec build_threshold(const EdgeStream& test, Timestamp delta,
                              std::uint64_t zeta);

// alpha-noisy K-ranking classification: ranks 1..K-a-1 stay heavy, ranks
// K+a+1..m stay light, and a uniformly random (a+1)-subset of the middle
// 2a+1 ranks becomes heavy. alpha = 0 is the noiseless top-K.
PredictorSpec apply_noise(const RankedEdges& ranked, std::uint64_t k,
                          std::uint64_t alpha, Rng& rng);

// CLI-facing spec strings: perfect:K, mindeg:K, static:K, hybrid:K,
// threshold:ZETA, noisy:K:ALPHA, never.
struct PredictorRequest {
  PredictorKind kind = PredictorKind::kNever;
  std::uint64_t k = 0;
  std::uint64_t alpha = 0;
  std::uint64_t zeta = 0;
};

PredictorRequest parse_predictor_request(std::string_view text);
std::string format_predictor_request(const PredictorRequest& req);

// Materializes a request against a concrete stream. perfect/noisy run the
// exact oracle to obtain weights; noisy draws its middle block from a child
// stream of `seed`.
PredictorSpec resolve_predictor(const PredictorRequest& req,
                                const EdgeStream& s, Timestamp delta,
                                std::uint64_t seed);

}  // namespace tts
