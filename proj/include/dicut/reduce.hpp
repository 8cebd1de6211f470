#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dicut/graph.hpp"

namespace dicut {

// Per-vertex degree oracle: exact below n^zeta, within a (1 +- eps'/100)
// multiplicative band at or above it.
struct ApproxDegrees {
  std::vector<std::int64_t> ad;
  double zeta = 0.0;
  double epsilon_prime = 1.0;

  // Throws std::invalid_argument("invalid degree oracle") when the band is
  // violated against g's true degrees.
  void validate(const DirectedMultigraph& g) const;
};

enum class DegreeMode { kExact, kPerturbed };

ApproxDegrees make_approx_degrees(const DirectedMultigraph& g, double zeta,
                                  double epsilon_prime, DegreeMode mode,
                                  std::uint64_t seed);

struct CopyVertex {
  VertexId parent = 0;
  std::int64_t index = 0;
};

// Output of the degree reduction. Copy vertex (v,i), i in [deg(v)), maps to
// dense id copy_offset[v] + i; the dense count is always 2m.
struct ReducedGraph {
  std::vector<std::int64_t> copy_offset;  // size n+1, copy_offset[n] == 2m
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // dense ids
  std::int64_t d = 0;
  std::int64_t degree_cap = 0;        // 11d
  std::int64_t precap_edge_count = 0; // accepted samples before capping
  std::int64_t capped_vertices = 0;

  std::int64_t vertex_count() const { return copy_offset.back(); }
  CopyVertex copy_of(std::int64_t dense_id) const;
  std::int64_t dense_id(VertexId parent, std::int64_t index) const {
    return copy_offset[static_cast<std::size_t>(parent)] + index;
  }
  std::vector<std::int64_t> copy_degrees() const;

  // View as a plain multigraph for the oracles.
  DirectedMultigraph as_graph() const;
};

// ceil(80 / eps'^2)
std::int64_t trevisan_d(double epsilon_prime);

// Degree reduction with the stated d and cap. Every edge in stream order gets
// d sampling rounds keyed by its stream position; a round is accepted iff both
// sampled indices fall below the true degrees. Capping removes, in one sweep
// computed from pre-cap degrees, every edge incident on a copy vertex whose
// degree exceeds the cap.
ReducedGraph trevisan_reduce_d(const DirectedMultigraph& g, const ApproxDegrees& ad,
                               std::int64_t d, std::int64_t degree_cap,
                               std::uint64_t seed);

// d = ceil(80/eps'^2), cap = 11d.
ReducedGraph trevisan_reduce(const DirectedMultigraph& g, const ApproxDegrees& ad,
                             double epsilon_prime, std::uint64_t seed);

// rho(v) = fraction of v's copies placed in L; isolated vertices get 1/2.
FractionalAssignment lift_cut(const DirectedMultigraph& g, const ReducedGraph& reduced,
                              const Dicut& cut_on_reduced);

// Edge-list format over dense copy ids, preceded by a comment line mapping
// each dense id to its (parent, index) pair.
void write_reduced(std::ostream& out, const ReducedGraph& reduced);

}  // namespace dicut
