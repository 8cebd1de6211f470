#include "dicut/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dicut {

DirectedMultigraph DirectedMultigraph::make(VertexId n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (const Edge& e : edges) {
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.tail == e.head) throw std::invalid_argument("self-loop not allowed");
  }
  DirectedMultigraph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

std::vector<std::int64_t> DirectedMultigraph::degrees() const {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    ++deg[static_cast<std::size_t>(e.tail)];
    ++deg[static_cast<std::size_t>(e.head)];
  }
  return deg;
}

namespace {

void require_nonempty(const DirectedMultigraph& g) {
  if (g.edges.empty()) throw std::invalid_argument("undefined on empty graph");
}

}  // namespace

std::int64_t dicut_cut_count(const DirectedMultigraph& g, const Dicut& cut) {
  require_nonempty(g);
  if (static_cast<VertexId>(cut.in_left.size()) != g.n)
    throw std::invalid_argument("cut size does not match vertex count");
  std::int64_t c = 0;
  for (const Edge& e : g.edges)
    if (cut.in_left[static_cast<std::size_t>(e.tail)] &&
        !cut.in_left[static_cast<std::size_t>(e.head)])
      ++c;
  return c;
}

double dicut_value(const DirectedMultigraph& g, const Dicut& cut) {
  return static_cast<double>(dicut_cut_count(g, cut)) / static_cast<double>(g.m());
}

double expected_dicut(const DirectedMultigraph& g, const FractionalAssignment& rho) {
  require_nonempty(g);
  if (static_cast<VertexId>(rho.rho.size()) != g.n)
    throw std::invalid_argument("assignment size does not match vertex count");
  for (double r : rho.rho)
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("rho value outside [0,1]");
  double acc = 0.0;
  for (const Edge& e : g.edges)
    acc += rho.rho[static_cast<std::size_t>(e.tail)] *
           (1.0 - rho.rho[static_cast<std::size_t>(e.head)]);
  return acc / static_cast<double>(g.m());
}

CutResult max_dicut_exact(const DirectedMultigraph& g, VertexId vertex_cap) {
  require_nonempty(g);
  if (g.n > vertex_cap) throw std::invalid_argument("instance too large for exact oracle");
  const int n = g.n;

  // Collapse parallel edges into weights; keeps the Gray-code flips O(n).
  std::vector<std::int64_t> w(static_cast<std::size_t>(n) * n, 0);
  for (const Edge& e : g.edges) w[static_cast<std::size_t>(e.tail) * n + e.head]++;
  std::vector<std::vector<std::pair<int, std::int64_t>>> out(n), in(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      std::int64_t c = w[static_cast<std::size_t>(u) * n + v];
      if (c > 0) {
        out[u].emplace_back(v, c);
        in[v].emplace_back(u, c);
      }
    }

  std::uint32_t mask = 0;  // bit v set <=> v in L
  std::int64_t cur = 0, best = 0;
  std::uint32_t best_mask = 0;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t s = 1; s < total; ++s) {
    const int b = std::countr_zero(s);
    const std::uint32_t bit = 1u << b;
    if (!(mask & bit)) {
      // b enters L: edges b->u with u in R start crossing; u->b with u in L stop.
      for (auto [u, c] : out[b])
        if (!(mask & (1u << u))) cur += c;
      for (auto [u, c] : in[b])
        if (mask & (1u << u)) cur -= c;
    } else {
      for (auto [u, c] : out[b])
        if (!(mask & (1u << u))) cur -= c;
      for (auto [u, c] : in[b])
        if (mask & (1u << u)) cur += c;
    }
    mask ^= bit;
    if (cur > best) {
      best = cur;
      best_mask = mask;
    }
  }

  CutResult r;
  r.cut_edges = best;
  r.total_edges = g.m();
  r.witness.in_left.assign(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v)
    if (best_mask & (1u << v)) r.witness.in_left[static_cast<std::size_t>(v)] = true;
  return r;
}

CutResult max_dicut_localsearch(const DirectedMultigraph& g, int restarts, std::uint64_t seed) {
  require_nonempty(g);
  if (restarts < 1) restarts = 1;
  const VertexId n = g.n;

  // (other endpoint, +count of v->other, +count of other->v)
  std::vector<std::vector<std::pair<VertexId, std::pair<std::int32_t, std::int32_t>>>> adj(
      static_cast<std::size_t>(n));
  {
    std::vector<std::vector<std::pair<VertexId, bool>>> raw(static_cast<std::size_t>(n));
    for (const Edge& e : g.edges) {
      raw[static_cast<std::size_t>(e.tail)].emplace_back(e.head, true);
      raw[static_cast<std::size_t>(e.head)].emplace_back(e.tail, false);
    }
    for (VertexId v = 0; v < n; ++v) {
      auto& rv = raw[static_cast<std::size_t>(v)];
      std::sort(rv.begin(), rv.end());
      for (std::size_t i = 0; i < rv.size();) {
        std::size_t j = i;
        std::int32_t o = 0, in = 0;
        while (j < rv.size() && rv[j].first == rv[i].first) {
          if (rv[j].second) ++o; else ++in;
          ++j;
        }
        adj[static_cast<std::size_t>(v)].emplace_back(rv[i].first, std::make_pair(o, in));
        i = j;
      }
    }
  }

  KeyedRng rng(seed);
  std::int64_t best = -1;
  std::vector<bool> best_left;
  for (int r = 0; r < restarts; ++r) {
    Substream sub = rng.at(rng_purpose::kLocalSearch, static_cast<std::uint64_t>(r));
    std::vector<bool> left(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) left[static_cast<std::size_t>(v)] = sub.bernoulli(0.5);

    Dicut cut{left};
    std::int64_t cur = dicut_cut_count(g, cut);
    bool improved = true;
    while (improved) {
      improved = false;
      for (VertexId v = 0; v < n; ++v) {
        std::int64_t gain = 0;
        const bool vl = cut.in_left[static_cast<std::size_t>(v)];
        for (const auto& [u, cnt] : adj[static_cast<std::size_t>(v)]) {
          const bool ul = cut.in_left[static_cast<std::size_t>(u)];
          const std::int64_t vo = cnt.first, vi = cnt.second;
          if (vl) {
            // flip v to R: lose v->u crossings (u in R), gain u->v (u in L)
            gain += (ul ? vi : -vo);
          } else {
            // flip v to L: gain v->u (u in R), lose u->v crossings (u in L)
            gain += (ul ? -vi : vo);
          }
        }
        if (gain > 0) {
          cut.in_left[static_cast<std::size_t>(v)] = !vl;
          cur += gain;
          improved = true;
        }
      }
    }
    if (cur > best) {
      best = cur;
      best_left = cut.in_left;
    }
  }

  CutResult res;
  res.cut_edges = best;
  res.total_edges = g.m();
  res.witness.in_left = std::move(best_left);
  return res;
}

GeneratedGraph generate(GraphKind kind, VertexId n, std::int64_t m,
                        const GeneratorParams& params, std::uint64_t seed) {
  if (m > 0 && n < 2) throw std::invalid_argument("need at least 2 vertices for edges");
  if (m < 0 || n < 0) throw std::invalid_argument("negative size");
  KeyedRng rng(seed);
  Substream sub = rng.at(rng_purpose::kGenerate, 0);

  GeneratedGraph out;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));

  switch (kind) {
    case GraphKind::kUniformRandom: {
      for (std::int64_t i = 0; i < m; ++i) {
        VertexId u = static_cast<VertexId>(sub.below(static_cast<std::uint64_t>(n)));
        VertexId v = static_cast<VertexId>(sub.below(static_cast<std::uint64_t>(n - 1)));
        if (v >= u) ++v;
        edges.push_back({u, v});
      }
      break;
    }
    case GraphKind::kPlantedDicut: {
      const double f = params.plant_fraction;
      if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("plant fraction outside [0,1]");
      std::vector<bool> left(static_cast<std::size_t>(n));
      for (VertexId v = 0; v < n; ++v) left[static_cast<std::size_t>(v)] = sub.bernoulli(0.5);
      // both sides must be nonempty
      if (std::find(left.begin(), left.end(), true) == left.end()) left[0] = true;
      if (std::find(left.begin(), left.end(), false) == left.end()) left[static_cast<std::size_t>(n - 1)] = false;
      std::vector<VertexId> ls, rs;
      for (VertexId v = 0; v < n; ++v) (left[static_cast<std::size_t>(v)] ? ls : rs).push_back(v);

      const std::int64_t crossing = static_cast<std::int64_t>(std::ceil(f * static_cast<double>(m)));
      for (std::int64_t i = 0; i < m; ++i) {
        if (i < crossing) {
          VertexId u = ls[sub.below(ls.size())];
          VertexId v = rs[sub.below(rs.size())];
          edges.push_back({u, v});
        } else {
          // reverse-direction edges never cross the planted cut
          VertexId u = rs[sub.below(rs.size())];
          VertexId v = ls[sub.below(ls.size())];
          edges.push_back({u, v});
        }
      }
      // shuffle so the stream order carries no plant signal
      for (std::size_t i = edges.size(); i > 1; --i)
        std::swap(edges[i - 1], edges[sub.below(i)]);
      out.planted_value = m > 0 ? static_cast<double>(crossing) / static_cast<double>(m) : 1.0;
      out.planted_cut.in_left = left;
      break;
    }
    case GraphKind::kPowerLaw: {
      const double gamma = params.exponent;
      if (!(gamma > 1.0)) throw std::invalid_argument("power-law exponent must exceed 1");
      std::vector<double> cum(static_cast<std::size_t>(n));
      double acc = 0.0;
      for (VertexId v = 0; v < n; ++v) {
        acc += std::pow(static_cast<double>(v + 1), -1.0 / (gamma - 1.0));
        cum[static_cast<std::size_t>(v)] = acc;
      }
      auto draw = [&]() {
        const double x = sub.next_unit() * acc;
        return static_cast<VertexId>(
            std::lower_bound(cum.begin(), cum.end(), x) - cum.begin());
      };
      for (std::int64_t i = 0; i < m; ++i) {
        VertexId u = draw(), v = draw();
        while (v == u) v = draw();
        edges.push_back({u, v});
      }
      break;
    }
  }

  out.graph = DirectedMultigraph::make(n, std::move(edges));
  return out;
}

DirectedMultigraph read_edge_list(std::istream& in) {
  std::string line;
  VertexId n = -1;
  std::int64_t m = -1;
  std::vector<Edge> edges;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw std::runtime_error("bad header at line " + std::to_string(lineno));
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    Edge e;
    if (!(ls >> e.tail >> e.head))
      throw std::runtime_error("bad edge at line " + std::to_string(lineno));
    edges.push_back(e);
  }
  if (n < 0) throw std::runtime_error("missing header line");
  if (static_cast<std::int64_t>(edges.size()) != m)
    throw std::runtime_error("edge count does not match header");
  return DirectedMultigraph::make(n, std::move(edges));
}

DirectedMultigraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const DirectedMultigraph& g,
                     const std::vector<std::string>& header_comments) {
  for (const std::string& c : header_comments) out << "# " << c << "\n";
  out << g.n << " " << g.m() << "\n";
  for (const Edge& e : g.edges) out << e.tail << " " << e.head << "\n";
}

void write_edge_list_file(const std::string& path, const DirectedMultigraph& g,
                          const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_edge_list(out, g, header_comments);
}

}  // namespace dicut
