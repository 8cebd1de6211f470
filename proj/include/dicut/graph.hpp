#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dicut/rng.hpp"

namespace dicut {

using VertexId = std::int32_t;

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  bool operator==(const Edge&) const = default;
};

// Directed multigraph. The edge order is the stream order and is preserved
// exactly as constructed. Self-loops are rejected.
struct DirectedMultigraph {
  VertexId n = 0;
  std::vector<Edge> edges;

  std::int64_t m() const { return static_cast<std::int64_t>(edges.size()); }

  // Validating factory; throws std::invalid_argument on a bad endpoint or
  // self-loop.
  static DirectedMultigraph make(VertexId n, std::vector<Edge> edges);

  // Incident-edge count per vertex (in-degree + out-degree).
  std::vector<std::int64_t> degrees() const;
};

// Ordered bipartition; in_left[v] == true places v in L.
struct Dicut {
  std::vector<bool> in_left;
};

struct FractionalAssignment {
  std::vector<double> rho;  // values in [0,1], one per vertex
};

// Number of edges crossing L -> R. Exact integer form of dicut_value.
std::int64_t dicut_cut_count(const DirectedMultigraph& g, const Dicut& cut);
double dicut_value(const DirectedMultigraph& g, const Dicut& cut);

// sum over u->v of rho(u)(1 - rho(v)) / m.
double expected_dicut(const DirectedMultigraph& g, const FractionalAssignment& rho);

struct CutResult {
  std::int64_t cut_edges = 0;
  std::int64_t total_edges = 0;
  Dicut witness;
  double value() const { return static_cast<double>(cut_edges) / static_cast<double>(total_edges); }
};

inline constexpr VertexId kDefaultExactCap = 26;

// Exhaustive maximum over all 2^n ordered bipartitions, Gray-code order with
// incremental cut maintenance. Throws when n exceeds vertex_cap.
CutResult max_dicut_exact(const DirectedMultigraph& g, VertexId vertex_cap = kDefaultExactCap);

// Best 1-flip-local optimum over `restarts` random starts. Always a real cut,
// so the value lower-bounds Max-DICUT. Deterministic given seed.
CutResult max_dicut_localsearch(const DirectedMultigraph& g, int restarts, std::uint64_t seed);

enum class GraphKind { kUniformRandom, kPlantedDicut, kPowerLaw };

struct GeneratorParams {
  double plant_fraction = 0.9;  // planted-dicut
  double exponent = 2.5;        // power-law
};

struct GeneratedGraph {
  DirectedMultigraph graph;
  std::optional<double> planted_value;  // set for planted-dicut
  Dicut planted_cut;                    // valid when planted_value is set
};

GeneratedGraph generate(GraphKind kind, VertexId n, std::int64_t m,
                        const GeneratorParams& params, std::uint64_t seed);

// Edge-list text format: first line "n m", then m lines "u v" (0-indexed
// tail, head). Lines beginning with '#' are skipped. Line order = stream order.
DirectedMultigraph read_edge_list(std::istream& in);
DirectedMultigraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const DirectedMultigraph& g,
                     const std::vector<std::string>& header_comments = {});
void write_edge_list_file(const std::string& path, const DirectedMultigraph& g,
                          const std::vector<std::string>& header_comments = {});

}  // namespace dicut
