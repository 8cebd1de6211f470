#pragma once

#include <cstdint>
#include <vector>

#include "dicut/graph.hpp"
#include "dicut/rng.hpp"

namespace dicut {

class EdgeStream;

// Uniform edge sample of size min(m, k), reservoir-built in one pass.
struct CoreSet {
  std::vector<Edge> sample;
  std::int64_t original_m = 0;
  std::int64_t k = 0;
  VertexId n = 0;
};

CoreSet coreset_pass1(EdgeStream& stream, std::int64_t k, const KeyedRng& rng);

// Max-DICUT of the graph induced by the sampled edges (endpoints relabeled
// densely): exact when small enough, local search otherwise. Throws on an
// empty core-set.
double coreset_estimate(const CoreSet& cs, std::uint64_t seed,
                        int exact_cap = kDefaultExactCap, int restarts = 8);

}  // namespace dicut
