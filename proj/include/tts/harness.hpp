#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tts/edge.hpp"
#include "tts/oracle.hpp"
#include "tts/predictor.hpp"
#include "tts/step.hpp"

namespace tts {

struct TrialKindStats {
  std::uint64_t exact = 0;
  double mean_estimate = 0.0;
  std::optional<double> mae;      // null when exact is 0 or unavailable
  std::optional<double> std_dev;  // sample std of the relative errors
};

struct TrialReport {
  std::array<TrialKindStats, kNumTriangleKinds> per_kind{};
  std::size_t runs = 0;
  bool single_run = false;
  bool exact_available = false;
  Timestamp delta = 0;
  double p = 1.0;
  std::uint64_t base_seed = 0;
  std::string predictor;
  double mean_peak_live_edges = 0.0;
  std::size_t max_peak_live_edges = 0;
};

struct CorrelationReport {
  double jaccard = 0.0;
  std::optional<double> v_metric;  // null when the predicted set is empty
  std::uint64_t k_perfect = 0;
  std::uint64_t k_predicted = 0;
};

// Executes run_step for seeds base_seed .. base_seed+runs-1, possibly across
// threads; results come back in seed order.
std::vector<RunResult> run_many(const EdgeStream& s, EstimatorConfig cfg,
                                std::size_t runs, std::uint64_t base_seed,
                                unsigned threads = 0);

// Multi-seed trial: MAE per kind = mean over runs of |c_i - exact_i|/exact_i
// for kinds with exact_i > 0 (null otherwise); std is the sample standard
// deviation of those relative errors. exact = nullopt reports raw estimates
// without MAE.
TrialReport run_trials(const EdgeStream& s, const EstimatorConfig& cfg,
                       std::size_t runs, std::uint64_t base_seed,
                       const std::optional<KindCounts>& exact,
                       std::string predictor_label = {});

// Jaccard |A n B| / |A u B| and V-metric |A n B| / |B| between the perfect
// top-K (A) and a predicted heavy set (B).
CorrelationReport correlation(const RankedEdges& perfect,
                              const std::vector<EdgeIdx>& predicted,
                              std::uint64_t k);

// First floor(fraction * m) edges and the remainder, both keeping their idx
// so that concatenation reproduces the input.
std::pair<EdgeStream, EdgeStream> split_stream(const EdgeStream& s,
                                               double fraction);

// Random preprocessed stream: endpoints from a skewed (power-law-like) node
// distribution, timestamps uniform in [0, horizon]. Deterministic per seed.
EdgeStream gen_random(std::uint64_t n, std::uint64_t m, Timestamp horizon,
                      std::uint64_t seed);

struct AugmentConfig {
  std::size_t neighbors = 8;   // first-hop sample size per node
  std::size_t second_hop = 8;  // second-hop sample size per first-hop node
  std::size_t wedges = 16;     // wedges closed per node
};

struct AugmentResult {
  EdgeStream stream;                 // s + closures, re-preprocessed
  std::vector<TemporalEdge> added;   // closing edges before preprocessing
  std::vector<std::pair<Timestamp, Timestamp>> spans;  // wedge time spans
};

// Bipartite-augmentation generator: per node, sample neighbor and second-hop
// sets, close sampled wedges <(v,x,t1),(x,y,t2)> with an edge between v and
// y (direction uniform) at a timestamp uniform in the wedge's span.
AugmentResult augment_bipartite(const EdgeStream& s, const AugmentConfig& cfg,
                                std::uint64_t seed);

}  // namespace tts
