#include "tts/predictor.hpp"

#include <algorithm>
#include <charconv>
#include <iostream>
#include <numeric>
#include <unordered_set>

#include "tts/errors.hpp"
#include "tts/oracle.hpp"

namespace tts {

namespace {

void require_preprocessed(const EdgeStream& s) {
  for (const TemporalEdge& e : s.edges) {
    if (e.src >= s.num_nodes || e.dst >= s.num_nodes) {
      throw ContractError("node id beyond num_nodes; stream not preprocessed");
    }
  }
}

std::uint64_t clamp_budget(std::uint64_t k, std::uint64_t m,
                           const char* what) {
  if (k > m) {
    std::cerr << "warning: " << what << " budget K=" << k << " exceeds m=" << m
              << ", clamping" << std::endl;
    return m;
  }
  return k;
}

RankedEdges rank_weights(EdgeIdx idx_begin,
                         const std::vector<std::uint64_t>& weights) {
  RankedEdges ranked;
  std::vector<std::size_t> pos(weights.size());
  std::iota(pos.begin(), pos.end(), 0);
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    return weights[a] != weights[b] ? weights[a] > weights[b] : a < b;
  });
  ranked.order.reserve(pos.size());
  ranked.weights.reserve(pos.size());
  for (std::size_t p : pos) {
    ranked.order.push_back(idx_begin + p);
    ranked.weights.push_back(weights[p]);
  }
  return ranked;
}

PredictorSpec spec_from_top_k(PredictorKind kind, const RankedEdges& ranked,
                              std::uint64_t k, EdgeIdx idx_begin,
                              std::uint64_t m) {
  PredictorSpec spec;
  spec.kind = kind;
  spec.budget = k;
  spec.idx_begin = idx_begin;
  spec.idx_end = idx_begin + m;
  spec.heavy_set.assign(ranked.order.begin(), ranked.order.begin() + k);
  std::sort(spec.heavy_set.begin(), spec.heavy_set.end());
  return spec;
}

// Timestamps of incident edges per node, in stream order (already sorted).
std::vector<std::vector<Timestamp>> incidence_times(const EdgeStream& s) {
  std::vector<std::vector<Timestamp>> times(s.num_nodes);
  for (const TemporalEdge& e : s.edges) {
    times[e.src].push_back(e.t);
    times[e.dst].push_back(e.t);
  }
  return times;
}

}  // namespace

bool PredictorSpec::is_heavy(EdgeIdx idx) const {
  return std::binary_search(heavy_set.begin(), heavy_set.end(), idx);
}

RankedEdges rank_edges(const EdgeStream& s,
                       const std::vector<std::uint64_t>& weights) {
  if (weights.size() != s.size()) {
    throw ArgumentError("weights size does not match stream");
  }
  return rank_weights(s.idx_begin(), weights);
}

std::vector<std::uint64_t> min_degree_weights(const EdgeStream& s,
                                              Timestamp delta) {
  if (delta <= 0) throw ArgumentError("delta must be positive");
  require_preprocessed(s);
  const auto times = incidence_times(s);
  std::vector<std::uint64_t> weights(s.size());
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const TemporalEdge& e = s.edges[i];
    auto window_count = [&](NodeId node) -> std::uint64_t {
      const auto& ts = times[node];
      auto lo = std::lower_bound(ts.begin(), ts.end(), e.t - delta);
      auto hi = std::upper_bound(ts.begin(), ts.end(), e.t + delta);
      return static_cast<std::uint64_t>(hi - lo);
    };
    weights[i] = std::min(window_count(e.src), window_count(e.dst));
  }
  return weights;
}

std::vector<std::uint64_t> static_weights(const EdgeStream& s) {
  require_preprocessed(s);
  std::vector<std::unordered_set<NodeId>> nbrs(s.num_nodes);
  for (const TemporalEdge& e : s.edges) {
    nbrs[e.src].insert(e.dst);
    nbrs[e.dst].insert(e.src);
  }
  std::vector<std::uint64_t> weights(s.size());
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    weights[i] = std::min(nbrs[s.edges[i].src].size(),
                          nbrs[s.edges[i].dst].size());
  }
  return weights;
}

std::vector<std::uint64_t> hybrid_weights(const EdgeStream& s,
                                          Timestamp delta) {
  if (delta <= 0) throw ArgumentError("delta must be positive");
  require_preprocessed(s);
  // (t, other) per node in stream order; distinct neighbors inside the
  // window are counted with a scratch set per query.
  std::vector<std::vector<std::pair<Timestamp, NodeId>>> inc(s.num_nodes);
  for (const TemporalEdge& e : s.edges) {
    inc[e.src].emplace_back(e.t, e.dst);
    inc[e.dst].emplace_back(e.t, e.src);
  }
  std::vector<std::uint64_t> weights(s.size());
  std::unordered_set<NodeId> distinct;
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const TemporalEdge& e = s.edges[i];
    auto window_distinct = [&](NodeId node) -> std::uint64_t {
      const auto& entries = inc[node];
      auto lo = std::lower_bound(
          entries.begin(), entries.end(), e.t - delta,
          [](const auto& en, Timestamp t) { return en.first < t; });
      distinct.clear();
      for (auto it = lo; it != entries.end() && it->first <= e.t + delta;
           ++it) {
        distinct.insert(it->second);
      }
      return distinct.size();
    };
    weights[i] = std::min(window_distinct(e.src), window_distinct(e.dst));
  }
  return weights;
}

PredictorSpec build_perfect(const EdgeStream& s, const EdgeWeights& w,
                            std::uint64_t k) {
  if (w.size() != s.size() || w.idx_begin != s.idx_begin()) {
    throw ArgumentError("weights were not computed on this stream");
  }
  k = clamp_budget(k, w.size(), "perfect");
  RankedEdges ranked = rank_weights(w.idx_begin, w.total);
  return spec_from_top_k(PredictorKind::kPerfect, ranked, k, w.idx_begin,
                         w.size());
}

std::pair<PredictorSpec, RankedEdges> build_min_degree(const EdgeStream& s,
                                                       Timestamp delta,
                                                       std::uint64_t k) {
  k = clamp_budget(k, s.size(), "min-degree");
  RankedEdges ranked = rank_edges(s, min_degree_weights(s, delta));
  PredictorSpec spec = spec_from_top_k(PredictorKind::kMinDegree, ranked, k,
                                       s.idx_begin(), s.size());
  return {std::move(spec), std::move(ranked)};
}

PredictorSpec build_static(const EdgeStream& s, std::uint64_t k) {
  k = clamp_budget(k, s.size(), "static");
  RankedEdges ranked = rank_edges(s, static_weights(s));
  return spec_from_top_k(PredictorKind::kStatic, ranked, k, s.idx_begin(),
                         s.size());
}

PredictorSpec build_hybrid(const EdgeStream& s, Timestamp delta,
                           std::uint64_t k) {
  k = clamp_budget(k, s.size(), "hybrid");
  RankedEdges ranked = rank_edges(s, hybrid_weights(s, delta));
  return spec_from_top_k(PredictorKind::kHybrid, ranked, k, s.idx_begin(),
                         s.size());
}

std::uint64_t learn_threshold(const EdgeStream& train, Timestamp delta,
                              std::uint64_t k) {
  if (train.empty()) throw ArgumentError("empty training stream");
  if (k == 0) throw ArgumentError("K must be at least 1");
  RankedEdges ranked = rank_edges(train, min_degree_weights(train, delta));
  if (k > ranked.weights.size()) return ranked.weights.back();
  return ranked.weights[k - 1];
}

PredictorSpec build_threshold(const EdgeStream& test, Timestamp delta,
                              std::uint64_t zeta) {
  const std::vector<std::uint64_t> weights = min_degree_weights(test, delta);
  PredictorSpec spec;
  spec.kind = PredictorKind::kThreshold;
  spec.threshold = zeta;
  spec.idx_begin = test.idx_begin();
  spec.idx_end = test.idx_begin() + test.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] >= zeta) spec.heavy_set.push_back(test.idx_begin() + i);
  }
  return spec;
}

PredictorSpec apply_noise(const RankedEdges& ranked, std::uint64_t k,
                          std::uint64_t alpha, Rng& rng) {
  const std::uint64_t m = ranked.order.size();
  if (k == 0 || k > m) throw ArgumentError("K must be in [1, m]");
  if (alpha == 0) {
    PredictorSpec spec = spec_from_top_k(PredictorKind::kNoisy, ranked, k,
                                         0, 0);
    // idx range reconstructed from the ranking itself
    auto [lo, hi] = std::minmax_element(ranked.order.begin(),
                                        ranked.order.end());
    spec.idx_begin = m ? *lo : 0;
    spec.idx_end = m ? *hi + 1 : 0;
    return spec;
  }
  if (alpha > std::min(m - k + 1, k - 1)) {
    throw ArgumentError("alpha exceeds min(m-K+1, K-1)");
  }

  // 1-based ranks: 1..K-a-1 fixed heavy, the middle block K-a..min(K+a, m)
  // contributes a uniformly random (a+1)-subset.
  const std::uint64_t fixed_heavy = k - alpha - 1;
  const std::uint64_t lo = k - alpha;
  const std::uint64_t hi = std::min(m, k + alpha);
  std::vector<std::uint64_t> block;
  block.reserve(hi - lo + 1);
  for (std::uint64_t r = lo; r <= hi; ++r) block.push_back(r);
  for (std::uint64_t i = 0; i <= alpha; ++i) {
    const std::uint64_t j = i + rng.below(block.size() - i);
    std::swap(block[i], block[j]);
  }

  PredictorSpec spec;
  spec.kind = PredictorKind::kNoisy;
  spec.budget = k;
  for (std::uint64_t r = 1; r <= fixed_heavy; ++r) {
    spec.heavy_set.push_back(ranked.order[r - 1]);
  }
  for (std::uint64_t i = 0; i <= alpha; ++i) {
    spec.heavy_set.push_back(ranked.order[block[i] - 1]);
  }
  std::sort(spec.heavy_set.begin(), spec.heavy_set.end());
  auto [mn, mx] = std::minmax_element(ranked.order.begin(),
                                      ranked.order.end());
  spec.idx_begin = *mn;
  spec.idx_end = *mx + 1;
  return spec;
}

PredictorRequest parse_predictor_request(std::string_view text) {
  auto split = [](std::string_view v) {
    std::vector<std::string_view> parts;
    while (true) {
      std::size_t colon = v.find(':');
      if (colon == std::string_view::npos) {
        parts.push_back(v);
        return parts;
      }
      parts.push_back(v.substr(0, colon));
      v.remove_prefix(colon + 1);
    }
  };
  auto number = [&](std::string_view token) -> std::uint64_t {
    std::uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ArgumentError("bad number '" + std::string(token) +
                          "' in predictor spec");
    }
    return value;
  };

  const auto parts = split(text);
  PredictorRequest req;
  const std::string_view name = parts[0];
  auto expect = [&](std::size_t n) {
    if (parts.size() != n) {
      throw ArgumentError("predictor spec '" + std::string(text) +
                          "' has the wrong number of fields");
    }
  };
  if (name == "never") {
    expect(1);
    req.kind = PredictorKind::kNever;
  } else if (name == "perfect") {
    expect(2);
    req.kind = PredictorKind::kPerfect;
    req.k = number(parts[1]);
  } else if (name == "mindeg") {
    expect(2);
    req.kind = PredictorKind::kMinDegree;
    req.k = number(parts[1]);
  } else if (name == "static") {
    expect(2);
    req.kind = PredictorKind::kStatic;
    req.k = number(parts[1]);
  } else if (name == "hybrid") {
    expect(2);
    req.kind = PredictorKind::kHybrid;
    req.k = number(parts[1]);
  } else if (name == "threshold") {
    expect(2);
    req.kind = PredictorKind::kThreshold;
    req.zeta = number(parts[1]);
  } else if (name == "noisy") {
    expect(3);
    req.kind = PredictorKind::kNoisy;
    req.k = number(parts[1]);
    req.alpha = number(parts[2]);
  } else {
    throw ArgumentError("unknown predictor '" + std::string(name) + "'");
  }
  return req;
}

std::string format_predictor_request(const PredictorRequest& req) {
  switch (req.kind) {
    case PredictorKind::kNever:
      return "never";
    case PredictorKind::kPerfect:
      return "perfect:" + std::to_string(req.k);
    case PredictorKind::kMinDegree:
      return "mindeg:" + std::to_string(req.k);
    case PredictorKind::kStatic:
      return "static:" + std::to_string(req.k);
    case PredictorKind::kHybrid:
      return "hybrid:" + std::to_string(req.k);
    case PredictorKind::kThreshold:
      return "threshold:" + std::to_string(req.zeta);
    case PredictorKind::kNoisy:
      return "noisy:" + std::to_string(req.k) + ":" +
             std::to_string(req.alpha);
  }
  return "never";
}

PredictorSpec resolve_predictor(const PredictorRequest& req,
                                const EdgeStream& s, Timestamp delta,
                                std::uint64_t seed) {
  switch (req.kind) {
    case PredictorKind::kNever:
      return PredictorSpec{};
    case PredictorKind::kPerfect:
      return build_perfect(s, edge_weights(s, delta), req.k);
    case PredictorKind::kMinDegree:
      return build_min_degree(s, delta, req.k).first;
    case PredictorKind::kStatic:
      return build_static(s, req.k);
    case PredictorKind::kHybrid:
      return build_hybrid(s, delta, req.k);
    case PredictorKind::kThreshold:
      return build_threshold(s, delta, req.zeta);
    case PredictorKind::kNoisy: {
      const EdgeWeights w = edge_weights(s, delta);
      RankedEdges ranked = rank_edges(s, w.total);
      Rng noise_rng = Rng(seed).split();
      const std::uint64_t k = clamp_budget(req.k, s.size(), "noisy");
      return apply_noise(ranked, k, req.alpha, noise_rng);
    }
  }
  throw ArgumentError("unhandled predictor kind");
}

}  // namespace tts
