#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace tts {

// Timestamps are integer ticks at dataset precision (seconds, microseconds,
// ...). Integer ticks keep every window comparison exact.
using Timestamp = std::int64_t;
using NodeId = std::uint64_t;
using EdgeIdx = std::uint64_t;

// A directed edge with a timestamp and its position in the stream. idx is
// assigned at load and, after preprocessing, equals the position in the
// sorted stream; (t, idx) is the total order used everywhere.
struct TemporalEdge {
  NodeId src = 0;
  NodeId dst = 0;
  Timestamp t = 0;
  EdgeIdx idx = 0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

// A temporally ordered edge sequence. After preprocess(): sorted by (t, idx),
// node ids remapped to [0, num_nodes), idx contiguous from idx_begin().
struct EdgeStream {
  std::vector<TemporalEdge> edges;
  std::uint64_t num_nodes = 0;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  // First idx of the stream; slices produced by split_stream keep the parent
  // idx values, so positions are idx - idx_begin().
  EdgeIdx idx_begin() const { return edges.empty() ? 0 : edges.front().idx; }
};

struct PreprocessReport {
  std::uint64_t removed_self_loops = 0;
  std::uint64_t removed_duplicates = 0;
  std::uint64_t remapped_nodes = 0;  // nodes whose id changed
  std::uint64_t final_m = 0;
};

// Parses "src dst t" lines (ASCII decimal, whitespace separated, '#' comments
// allowed). idx follows file order; no validation or sorting happens here.
// Throws ParseError with the offending line number on malformed input or
// negative timestamps.
EdgeStream parse_stream(std::istream& in);
EdgeStream parse_stream_file(const std::string& path);

// Removes self-loops and exact duplicate (src,dst,t) triples (keeping the
// first), remaps node ids to [0, n) in order of first appearance in the
// sorted output, sorts by (t, original idx) and reassigns idx contiguously.
// Idempotent: a second pass reports all zeros and changes nothing.
std::pair<EdgeStream, PreprocessReport> preprocess(const EdgeStream& s);

// Checks the cleanliness contract of a preprocessed stream in O(m) without
// sorting (used by --skip-preprocess). Sets num_nodes on success.
void verify_preprocessed(EdgeStream& s);

// Maximum number of edges whose timestamp falls in any closed window
// [t, t + delta]; two-pointer sweep anchored at each edge. delta = 0 is the
// maximum timestamp multiplicity; delta < 0 is an error.
std::uint64_t compute_m_delta(const EdgeStream& s, Timestamp delta);

// True iff timestamps are non-decreasing in stream order.
bool validate_sorted(const EdgeStream& s);

// Writes the stream back out in the "src dst t" text format.
void write_stream(std::ostream& out, const EdgeStream& s);
void write_stream_file(const std::string& path, const EdgeStream& s);

}  // namespace tts
