#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dicut/graph.hpp"

namespace dicut {

// Doubly rooted labeled ball around an edge. Local vertex indices; the
// complete flag records whether all neighbors of the vertex in the host graph
// are present (true iff the vertex sat at distance <= ell-1 from the roots at
// extraction time).
struct BallGraph {
  std::vector<std::uint32_t> labels;
  std::vector<std::uint8_t> complete;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::int32_t root_tail = 0;
  std::int32_t root_head = 1;
  std::int32_t ell = 1;

  std::int32_t vertex_count() const { return static_cast<std::int32_t>(labels.size()); }
};

// Canonical byte string for the isomorphism class (roots ordered, labels,
// directions, and complete flags respected). The bytes fully encode the
// canonical representative and can be decoded back into a BallGraph.
struct TypeId {
  std::string bytes;
  std::int32_t size = 0;

  bool operator==(const TypeId& o) const { return bytes == o.bytes; }
  bool operator<(const TypeId& o) const { return bytes < o.bytes; }
};

struct TypeIdHash {
  std::size_t operator()(const TypeId& t) const { return std::hash<std::string>{}(t.bytes); }
};

using TypeCountMap = std::map<TypeId, std::int64_t>;

struct TypeDistribution {
  std::map<TypeId, double> mass;
  void validate() const;  // nonnegative, sums to 1 within 1e-9
};

// Induced radius-ell ball around edge edge_index. Throws
// "degree bound exceeded in ball" when a reached vertex has degree > D.
BallGraph ball_extract(const DirectedMultigraph& g, const std::vector<std::uint32_t>& labels,
                       int ell, std::int64_t D, std::int64_t edge_index);

// Lexicographically minimal serialization over all vertex orderings fixing
// the roots at positions 0 and 1, pruned by invariant refinement. If
// canonical_order is non-null it receives the winning ordering
// (canonical position -> original local index).
TypeId canonicalize(const BallGraph& b, std::vector<std::int32_t>* canonical_order = nullptr);

// Inverse of canonicalize's serialization.
BallGraph decode_type(const TypeId& id);

TypeCountMap edge_type_counts(const DirectedMultigraph& g,
                              const std::vector<std::uint32_t>& labels, int ell,
                              std::int64_t D);
TypeDistribution edge_type_distribution(const DirectedMultigraph& g,
                                        const std::vector<std::uint32_t>& labels, int ell,
                                        std::int64_t D);

double tv_distance(const TypeDistribution& d1, const TypeDistribution& d2);

// mass(T) = a_T p^{-|T|} / sum_T' a_T' p^{-|T'|}. Throws
// std::runtime_error("empty sample") when every count is zero.
TypeDistribution rescaled_distribution(const TypeCountMap& counts, double p);

// Counts a_T over the induced subgraph on `sampled`: an edge counts iff every
// vertex within distance ell-1 of its endpoints (inside the induced subgraph)
// has induced degree equal to its recorded full degree.
TypeCountMap sampled_type_counts(const DirectedMultigraph& g_full,
                                 const std::vector<VertexId>& sampled,
                                 const std::vector<std::uint32_t>& labels, int ell,
                                 std::int64_t D,
                                 const std::unordered_map<VertexId, std::int64_t>& deg_map);

// Same certification on an already-materialized graph whose per-vertex full
// degrees are given directly (the streaming engine's path).
TypeCountMap certified_type_counts(const DirectedMultigraph& g,
                                   const std::vector<std::uint32_t>& labels, int ell,
                                   std::int64_t D,
                                   const std::vector<std::int64_t>& full_degree);

TypeDistribution distribution_from_counts(const TypeCountMap& counts);

// CSV rows "type-id-hex,size,mass".
void write_distribution_csv(std::ostream& out, const TypeDistribution& d);

}  // namespace dicut
