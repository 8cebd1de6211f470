#include "dicut/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dicut {

void ApproxDegrees::validate(const DirectedMultigraph& g) const {
  const auto deg = g.degrees();
  if (ad.size() != deg.size()) throw std::invalid_argument("invalid degree oracle");
  if (!(epsilon_prime > 0.0 && epsilon_prime <= 1.0) || !(zeta > 0.0))
    throw std::invalid_argument("invalid degree oracle");
  const double threshold = std::pow(static_cast<double>(g.n), zeta);
  for (std::size_t v = 0; v < deg.size(); ++v) {
    const double dv = static_cast<double>(deg[v]);
    if (dv < threshold) {
      if (ad[v] != deg[v]) throw std::invalid_argument("invalid degree oracle");
    } else {
      const double lo = (1.0 - epsilon_prime / 100.0) * dv;
      const double hi = (1.0 + epsilon_prime / 100.0) * dv;
      const double av = static_cast<double>(ad[v]);
      if (av < lo || av > hi) throw std::invalid_argument("invalid degree oracle");
    }
  }
}

ApproxDegrees make_approx_degrees(const DirectedMultigraph& g, double zeta,
                                  double epsilon_prime, DegreeMode mode,
                                  std::uint64_t seed) {
  if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
  if (!(epsilon_prime > 0.0 && epsilon_prime <= 1.0))
    throw std::invalid_argument("epsilon' must lie in (0,1]");
  ApproxDegrees out;
  out.zeta = zeta;
  out.epsilon_prime = epsilon_prime;
  const auto deg = g.degrees();
  out.ad.assign(deg.begin(), deg.end());
  if (mode == DegreeMode::kPerturbed) {
    const double threshold = std::pow(static_cast<double>(g.n), zeta);
    KeyedRng rng(seed);
    for (std::size_t v = 0; v < deg.size(); ++v) {
      const double dv = static_cast<double>(deg[v]);
      if (dv < threshold) continue;
      Substream sub = rng.at(rng_purpose::kPerturb, static_cast<std::uint64_t>(v));
      const double factor = sub.in_range(1.0 - epsilon_prime / 100.0,
                                         1.0 + epsilon_prime / 100.0);
      std::int64_t a = std::llround(factor * dv);
      // rounding may step outside the band; clamp back (never empty: deg fits)
      const std::int64_t lo = static_cast<std::int64_t>(std::ceil((1.0 - epsilon_prime / 100.0) * dv));
      const std::int64_t hi = static_cast<std::int64_t>(std::floor((1.0 + epsilon_prime / 100.0) * dv));
      out.ad[v] = std::clamp(a, lo, hi);
    }
  }
  return out;
}

CopyVertex ReducedGraph::copy_of(std::int64_t dense) const {
  auto it = std::upper_bound(copy_offset.begin(), copy_offset.end(), dense);
  const VertexId parent = static_cast<VertexId>(it - copy_offset.begin() - 1);
  return {parent, dense - copy_offset[static_cast<std::size_t>(parent)]};
}

std::vector<std::int64_t> ReducedGraph::copy_degrees() const {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(vertex_count()), 0);
  for (const auto& [a, b] : edges) {
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  return deg;
}

DirectedMultigraph ReducedGraph::as_graph() const {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [a, b] : edges)
    es.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
  return DirectedMultigraph::make(static_cast<VertexId>(vertex_count()), std::move(es));
}

std::int64_t trevisan_d(double epsilon_prime) {
  if (!(epsilon_prime > 0.0 && epsilon_prime <= 1.0))
    throw std::invalid_argument("epsilon' must lie in (0,1]");
  return static_cast<std::int64_t>(std::ceil(80.0 / (epsilon_prime * epsilon_prime)));
}

ReducedGraph trevisan_reduce_d(const DirectedMultigraph& g, const ApproxDegrees& ad,
                               std::int64_t d, std::int64_t degree_cap,
                               std::uint64_t seed) {
  if (g.edges.empty()) throw std::invalid_argument("undefined on empty graph");
  ad.validate(g);
  const auto deg = g.degrees();

  ReducedGraph out;
  out.d = d;
  out.degree_cap = degree_cap;
  out.copy_offset.assign(static_cast<std::size_t>(g.n) + 1, 0);
  for (VertexId v = 0; v < g.n; ++v)
    out.copy_offset[static_cast<std::size_t>(v) + 1] =
        out.copy_offset[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];

  KeyedRng rng(seed);
  for (std::size_t pos = 0; pos < g.edges.size(); ++pos) {
    const Edge& e = g.edges[pos];
    Substream sub = rng.at(rng_purpose::kEdgeRounds, static_cast<std::uint64_t>(pos));
    const std::int64_t adu = ad.ad[static_cast<std::size_t>(e.tail)];
    const std::int64_t adv = ad.ad[static_cast<std::size_t>(e.head)];
    for (std::int64_t round = 0; round < d; ++round) {
      const std::int64_t i1 = sub.below_i(adu);
      const std::int64_t i2 = sub.below_i(adv);
      if (i1 < deg[static_cast<std::size_t>(e.tail)] &&
          i2 < deg[static_cast<std::size_t>(e.head)])
        out.edges.emplace_back(out.dense_id(e.tail, i1), out.dense_id(e.head, i2));
    }
  }
  out.precap_edge_count = static_cast<std::int64_t>(out.edges.size());

  // single capping sweep from pre-cap degrees
  const auto cdeg = out.copy_degrees();
  std::vector<char> over(cdeg.size(), 0);
  for (std::size_t i = 0; i < cdeg.size(); ++i)
    if (cdeg[i] > degree_cap) {
      over[i] = 1;
      ++out.capped_vertices;
    }
  if (out.capped_vertices > 0) {
    std::erase_if(out.edges, [&](const auto& e) {
      return over[static_cast<std::size_t>(e.first)] || over[static_cast<std::size_t>(e.second)];
    });
  }
  return out;
}

ReducedGraph trevisan_reduce(const DirectedMultigraph& g, const ApproxDegrees& ad,
                             double epsilon_prime, std::uint64_t seed) {
  const std::int64_t d = trevisan_d(epsilon_prime);
  return trevisan_reduce_d(g, ad, d, 11 * d, seed);
}

FractionalAssignment lift_cut(const DirectedMultigraph& g, const ReducedGraph& reduced,
                              const Dicut& cut_on_reduced) {
  if (static_cast<std::int64_t>(cut_on_reduced.in_left.size()) != reduced.vertex_count())
    throw std::invalid_argument("cut size does not match copy-vertex count");
  FractionalAssignment rho;
  rho.rho.assign(static_cast<std::size_t>(g.n), 0.5);
  const auto deg = g.degrees();
  for (VertexId v = 0; v < g.n; ++v) {
    const std::int64_t dv = deg[static_cast<std::size_t>(v)];
    if (dv == 0) continue;
    std::int64_t in_l = 0;
    const std::int64_t base = reduced.copy_offset[static_cast<std::size_t>(v)];
    for (std::int64_t i = 0; i < dv; ++i)
      if (cut_on_reduced.in_left[static_cast<std::size_t>(base + i)]) ++in_l;
    rho.rho[static_cast<std::size_t>(v)] = static_cast<double>(in_l) / static_cast<double>(dv);
  }
  return rho;
}

void write_reduced(std::ostream& out, const ReducedGraph& reduced) {
  out << "# copies";
  const std::int64_t total = reduced.vertex_count();
  for (std::int64_t id = 0; id < total; ++id) {
    const CopyVertex c = reduced.copy_of(id);
    out << " " << c.parent << ":" << c.index;
  }
  out << "\n";
  out << total << " " << reduced.edges.size() << "\n";
  for (const auto& [a, b] : reduced.edges) out << a << " " << b << "\n";
}

}  // namespace dicut
