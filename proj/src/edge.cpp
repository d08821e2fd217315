#include "tts/edge.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tts/errors.hpp"

namespace tts {

namespace {

struct TripleKey {
  NodeId src;
  NodeId dst;
  Timestamp t;
  bool operator==(const TripleKey&) const = default;
};

struct TripleHash {
  std::size_t operator()(const TripleKey& k) const {
    std::uint64_t h = k.src * 0x9E3779B97F4A7C15ULL;
    h ^= k.dst + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.t) + 0x9E3779B97F4A7C15ULL + (h << 6) +
         (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Parses one base-10 field, rejecting anything that is not a plain integer.
template <typename T>
bool parse_field(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

EdgeStream parse_stream(std::istream& in) {
  EdgeStream out;
  std::unordered_set<NodeId> nodes;
  std::string line;
  std::size_t line_no = 0;
  EdgeIdx next_idx = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    // strip a trailing CR from files with DOS endings
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    std::size_t start = view.find_first_not_of(" \t");
    if (start == std::string_view::npos) continue;
    if (view[start] == '#') continue;

    std::istringstream fields(line);
    std::string a, b, c, extra;
    if (!(fields >> a >> b >> c) || (fields >> extra)) {
      throw ParseError("expected \"src dst t\"", line_no);
    }
    TemporalEdge e;
    if (!parse_field(a, e.src)) {
      throw ParseError("bad source node '" + a + "'", line_no);
    }
    if (!parse_field(b, e.dst)) {
      throw ParseError("bad destination node '" + b + "'", line_no);
    }
    if (!parse_field(c, e.t)) {
      throw ParseError("bad timestamp '" + c + "'", line_no);
    }
    if (e.t < 0) {
      throw ParseError("negative timestamp", line_no);
    }
    e.idx = next_idx++;
    nodes.insert(e.src);
    nodes.insert(e.dst);
    out.edges.push_back(e);
  }
  out.num_nodes = nodes.size();
  return out;
}

EdgeStream parse_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_stream(in);
}

std::pair<EdgeStream, PreprocessReport> preprocess(const EdgeStream& s) {
  PreprocessReport report;
  EdgeStream out;
  out.edges.reserve(s.edges.size());
  for (const TemporalEdge& e : s.edges) {
    if (e.src == e.dst) {
      ++report.removed_self_loops;
    } else {
      out.edges.push_back(e);
    }
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const TemporalEdge& a, const TemporalEdge& b) {
              return a.t != b.t ? a.t < b.t : a.idx < b.idx;
            });

  // Duplicates of a triple share the timestamp, so the first survivor in
  // (t, idx) order is the one with the smallest original idx.
  std::unordered_set<TripleKey, TripleHash> seen;
  seen.reserve(out.edges.size());
  std::size_t kept = 0;
  for (const TemporalEdge& e : out.edges) {
    if (seen.insert({e.src, e.dst, e.t}).second) {
      out.edges[kept++] = e;
    } else {
      ++report.removed_duplicates;
    }
  }
  out.edges.resize(kept);

  // Ids are assigned in order of first appearance in the sorted output, so a
  // second preprocess pass is the identity.
  std::unordered_map<NodeId, NodeId> remap;
  remap.reserve(2 * kept);
  for (TemporalEdge& e : out.edges) {
    auto assign = [&](NodeId raw) {
      auto [it, inserted] = remap.emplace(raw, remap.size());
      return it->second;
    };
    e.src = assign(e.src);
    e.dst = assign(e.dst);
  }
  // remapped_nodes counts nodes whose id changed, not total nodes seen.
  for (const auto& [raw, mapped] : remap) {
    if (raw != mapped) ++report.remapped_nodes;
  }

  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    out.edges[i].idx = static_cast<EdgeIdx>(i);
  }
  out.num_nodes = remap.size();
  report.final_m = out.edges.size();
  return {std::move(out), report};
}

void verify_preprocessed(EdgeStream& s) {
  std::unordered_set<TripleKey, TripleHash> seen;
  seen.reserve(s.edges.size());
  NodeId max_node = 0;
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    const TemporalEdge& e = s.edges[i];
    if (e.src == e.dst) {
      throw ContractError("self-loop at idx " + std::to_string(e.idx));
    }
    if (e.idx != s.edges.front().idx + i) {
      throw ContractError("non-contiguous idx at position " +
                          std::to_string(i));
    }
    if (i > 0 && e.t < s.edges[i - 1].t) {
      throw ContractError("timestamps decrease at idx " +
                          std::to_string(e.idx));
    }
    if (!seen.insert({e.src, e.dst, e.t}).second) {
      throw ContractError("duplicate triple at idx " + std::to_string(e.idx));
    }
    max_node = std::max({max_node, e.src, e.dst});
  }
  s.num_nodes = s.edges.empty() ? 0 : max_node + 1;
}

std::uint64_t compute_m_delta(const EdgeStream& s, Timestamp delta) {
  if (delta < 0) throw ArgumentError("delta must be non-negative");
  if (!validate_sorted(s)) throw ContractError("stream is not sorted");
  std::uint64_t best = 0;
  std::size_t right = 0;
  for (std::size_t left = 0; left < s.edges.size(); ++left) {
    const Timestamp limit = s.edges[left].t + delta;
    if (right < left) right = left;
    while (right < s.edges.size() && s.edges[right].t <= limit) ++right;
    best = std::max<std::uint64_t>(best, right - left);
  }
  return best;
}

bool validate_sorted(const EdgeStream& s) {
  for (std::size_t i = 1; i < s.edges.size(); ++i) {
    if (s.edges[i].t < s.edges[i - 1].t) return false;
  }
  return true;
}

void write_stream(std::ostream& out, const EdgeStream& s) {
  for (const TemporalEdge& e : s.edges) {
    out << e.src << ' ' << e.dst << ' ' << e.t << '\n';
  }
}

void write_stream_file(const std::string& path, const EdgeStream& s) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_stream(out, s);
}

}  // namespace tts
