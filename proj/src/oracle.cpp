#include "tts/oracle.hpp"

#include <cassert>
#include <deque>
#include <unordered_map>
#include <vector>

#include "tts/errors.hpp"

namespace tts {

std::optional<TriangleKind> classify_triangle(const TemporalEdge& e1,
                                              const TemporalEdge& e2,
                                              const TemporalEdge& e3) {
  const NodeId a = e1.src;
  const NodeId b = e1.dst;
  if (a == b || e2.src == e2.dst || e3.src == e3.dst) return std::nullopt;

  // e2 must touch exactly one endpoint of e1; the other end is the third
  // vertex c. Both-in means a repeated pair, neither-in a fourth vertex.
  const bool src_in = (e2.src == a || e2.src == b);
  const bool dst_in = (e2.dst == a || e2.dst == b);
  if (src_in == dst_in) return std::nullopt;
  const NodeId shared = src_in ? e2.src : e2.dst;
  const NodeId c = src_in ? e2.dst : e2.src;

  const bool bit2 = (shared == b);
  const bool bit1 = (e2.src == shared);

  // The remaining pair joins c with whichever of {a,b} e2 did not use.
  const NodeId anchor = bit2 ? a : b;
  if (!((e3.src == anchor && e3.dst == c) ||
        (e3.src == c && e3.dst == anchor))) {
    return std::nullopt;
  }
  const bool bit0 = (e3.src == anchor);
  return static_cast<TriangleKind>(4 * bit2 + 2 * bit1 + bit0);
}

namespace {

// Live delta-window with per-node adjacency, shaped like the estimator's
// sample but untagged and retaining everything. The sweep enumerates, for
// each arriving edge, every stored pair that closes a triangle with it; that
// is exactly the set of delta-instances whose last edge is the arrival.
class ExactSweep {
 public:
  ExactSweep(const EdgeStream& s, Timestamp delta)
      : stream_(s), delta_(delta), nodes_(s.num_nodes) {
    if (delta <= 0) throw ArgumentError("delta must be positive");
    if (!validate_sorted(s)) throw ContractError("stream is not sorted");
  }

  // visit(kind, pos1, pos2, pos3) runs once per delta-instance, positions in
  // (t, idx) order.
  template <typename Visit>
  void run(Visit&& visit) {
    const EdgeIdx base = stream_.idx_begin();
    for (const TemporalEdge& e : stream_.edges) {
      if (e.src >= nodes_.size() || e.dst >= nodes_.size()) {
        throw ContractError("node id beyond num_nodes; stream not "
                            "preprocessed");
      }
      evict(e.t - delta_);
      scan(e, base, visit);
      push(e);
    }
  }

 private:
  struct Entry {
    NodeId other;
    Timestamp t;
    EdgeIdx idx;
    bool out;
  };
  struct NodeList {
    std::vector<Entry> entries;
    std::size_t head = 0;
    std::size_t degree() const { return entries.size() - head; }
  };

  void push(const TemporalEdge& e) {
    window_.push_back(e);
    nodes_[e.src].entries.push_back({e.dst, e.t, e.idx, true});
    nodes_[e.dst].entries.push_back({e.src, e.t, e.idx, false});
  }

  void evict(Timestamp cutoff) {
    while (!window_.empty() && window_.front().t < cutoff) {
      const TemporalEdge& old = window_.front();
      pop_node(nodes_[old.src]);
      pop_node(nodes_[old.dst]);
      window_.pop_front();
    }
  }

  static void pop_node(NodeList& list) {
    ++list.head;
    if (list.head > 64 && list.head * 2 >= list.entries.size()) {
      list.entries.erase(list.entries.begin(),
                         list.entries.begin() + list.head);
      list.head = 0;
    }
  }

  TemporalEdge to_edge(NodeId node, const Entry& en) const {
    return en.out ? TemporalEdge{node, en.other, en.t, en.idx}
                  : TemporalEdge{en.other, node, en.t, en.idx};
  }

  template <typename Visit>
  void scan(const TemporalEdge& e, EdgeIdx base, Visit&& visit) {
    NodeId x = e.src;
    NodeId y = e.dst;
    if (nodes_[y].degree() < nodes_[x].degree()) std::swap(x, y);
    const NodeList& xs = nodes_[x];
    if (xs.degree() == 0) return;

    y_side_.clear();
    const NodeList& ys = nodes_[y];
    for (std::size_t i = ys.head; i < ys.entries.size(); ++i) {
      const Entry& en = ys.entries[i];
      if (en.other != x) y_side_[en.other].push_back(en);
    }
    if (y_side_.empty()) return;

    for (std::size_t i = xs.head; i < xs.entries.size(); ++i) {
      const Entry& ex = xs.entries[i];
      if (ex.other == y) continue;
      auto it = y_side_.find(ex.other);
      if (it == y_side_.end()) continue;
      const TemporalEdge edge_x = to_edge(x, ex);
      for (const Entry& ey : it->second) {
        const TemporalEdge edge_y = to_edge(y, ey);
        const bool x_first = ex.idx < ey.idx;
        const TemporalEdge& first = x_first ? edge_x : edge_y;
        const TemporalEdge& second = x_first ? edge_y : edge_x;
        auto kind = classify_triangle(first, second, e);
        assert(kind.has_value());
        visit(*kind, first.idx - base, second.idx - base, e.idx - base);
      }
    }
  }

  const EdgeStream& stream_;
  Timestamp delta_;
  std::vector<NodeList> nodes_;
  std::deque<TemporalEdge> window_;
  std::unordered_map<NodeId, std::vector<Entry>> y_side_;
};

}  // namespace

KindCounts enumerate_exact(const EdgeStream& s, Timestamp delta) {
  KindCounts counts{};
  if (s.size() < 3) {
    if (delta <= 0) throw ArgumentError("delta must be positive");
    return counts;
  }
  ExactSweep sweep(s, delta);
  sweep.run([&](TriangleKind kind, std::size_t, std::size_t, std::size_t) {
    ++counts[kind];
  });
  return counts;
}

EdgeWeights edge_weights(const EdgeStream& s, Timestamp delta) {
  EdgeWeights w;
  w.idx_begin = s.idx_begin();
  w.per_kind.assign(s.size(), {});
  w.total.assign(s.size(), 0);
  if (s.size() < 3) {
    if (delta <= 0) throw ArgumentError("delta must be positive");
    return w;
  }
  ExactSweep sweep(s, delta);
  sweep.run([&](TriangleKind kind, std::size_t p1, std::size_t p2,
                std::size_t p3) {
    for (std::size_t pos : {p1, p2, p3}) {
      ++w.per_kind[pos][kind];
      ++w.total[pos];
    }
  });
  return w;
}

}  // namespace tts
