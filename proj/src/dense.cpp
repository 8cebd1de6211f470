#include "dicut/dense.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "dicut/stream.hpp"

namespace dicut {

CoreSet coreset_pass1(EdgeStream& stream, std::int64_t k, const KeyedRng& rng) {
  if (k < 1) throw std::invalid_argument("core-set size must be >= 1");
  CoreSet cs;
  cs.k = k;
  cs.n = stream.n();
  stream.begin_pass();
  Edge e;
  std::int64_t pos = 0;
  while (stream.next(e)) {
    if (static_cast<std::int64_t>(cs.sample.size()) < k) {
      cs.sample.push_back(e);
    } else {
      Substream sub = rng.at(rng_purpose::kReservoir, static_cast<std::uint64_t>(pos));
      const std::int64_t slot = sub.below_i(pos + 1);
      if (slot < k) cs.sample[static_cast<std::size_t>(slot)] = e;
    }
    ++pos;
  }
  cs.original_m = pos;
  return cs;
}

double coreset_estimate(const CoreSet& cs, std::uint64_t seed, int exact_cap, int restarts) {
  if (cs.sample.empty()) throw std::invalid_argument("empty core-set");
  std::vector<VertexId> ids;
  ids.reserve(cs.sample.size() * 2);
  for (const Edge& e : cs.sample) {
    ids.push_back(e.tail);
    ids.push_back(e.head);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<VertexId, VertexId> remap;
  remap.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = static_cast<VertexId>(i);
  std::vector<Edge> edges;
  edges.reserve(cs.sample.size());
  for (const Edge& e : cs.sample) edges.push_back({remap[e.tail], remap[e.head]});
  DirectedMultigraph g =
      DirectedMultigraph::make(static_cast<VertexId>(ids.size()), std::move(edges));
  if (g.n <= exact_cap) return max_dicut_exact(g, exact_cap).value();
  return max_dicut_localsearch(g, restarts, seed).value();
}

}  // namespace dicut
