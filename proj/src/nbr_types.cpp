#include "dicut/nbr_types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace dicut {

namespace {

void put_u8(std::string& s, std::uint8_t x) { s.push_back(static_cast<char>(x)); }

void put_u16(std::string& s, std::uint16_t x) {
  s.push_back(static_cast<char>(x >> 8));
  s.push_back(static_cast<char>(x & 0xff));
}

void put_u32(std::string& s, std::uint32_t x) {
  s.push_back(static_cast<char>(x >> 24));
  s.push_back(static_cast<char>((x >> 16) & 0xff));
  s.push_back(static_cast<char>((x >> 8) & 0xff));
  s.push_back(static_cast<char>(x & 0xff));
}

std::uint8_t get_u8(const std::string& s, std::size_t& at) {
  return static_cast<std::uint8_t>(s.at(at++));
}

std::uint16_t get_u16(const std::string& s, std::size_t& at) {
  std::uint16_t x = static_cast<std::uint8_t>(s.at(at));
  x = static_cast<std::uint16_t>((x << 8) | static_cast<std::uint8_t>(s.at(at + 1)));
  at += 2;
  return x;
}

std::uint32_t get_u32(const std::string& s, std::size_t& at) {
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) x = (x << 8) | static_cast<std::uint8_t>(s.at(at + static_cast<std::size_t>(i)));
  at += 4;
  return x;
}

constexpr std::int32_t kUnreached = 1 << 30;

// Collapsed multi-edge adjacency of a ball.
struct BallAdj {
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> out, in;  // (other, count)

  explicit BallAdj(const BallGraph& b) {
    const std::size_t n = static_cast<std::size_t>(b.vertex_count());
    out.assign(n, {});
    in.assign(n, {});
    std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> cnt;
    for (const auto& e : b.edges) ++cnt[e];
    for (const auto& [pair, c] : cnt) {
      out[static_cast<std::size_t>(pair.first)].emplace_back(pair.second, c);
      in[static_cast<std::size_t>(pair.second)].emplace_back(pair.first, c);
    }
  }

  std::int32_t count(std::int32_t u, std::int32_t v) const {
    for (const auto& [w, c] : out[static_cast<std::size_t>(u)])
      if (w == v) return c;
    return 0;
  }
};

std::string serialize_ordered(const BallGraph& b, const std::vector<std::int32_t>& order) {
  const std::int32_t n = b.vertex_count();
  std::vector<std::int32_t> pos(static_cast<std::size_t>(n));
  for (std::int32_t p = 0; p < n; ++p) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;

  std::string s;
  s.reserve(16 + static_cast<std::size_t>(n) * 5 + b.edges.size() * 8);
  put_u8(s, 'B');
  put_u16(s, static_cast<std::uint16_t>(b.ell));
  put_u32(s, static_cast<std::uint32_t>(n));
  put_u32(s, static_cast<std::uint32_t>(b.edges.size()));
  for (std::int32_t p = 0; p < n; ++p) {
    const std::int32_t v = order[static_cast<std::size_t>(p)];
    put_u32(s, b.labels[static_cast<std::size_t>(v)]);
    put_u8(s, b.complete[static_cast<std::size_t>(v)] ? 1 : 0);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> es;
  es.reserve(b.edges.size());
  for (const auto& e : b.edges)
    es.emplace_back(static_cast<std::uint32_t>(pos[static_cast<std::size_t>(e.first)]),
                    static_cast<std::uint32_t>(pos[static_cast<std::size_t>(e.second)]));
  std::sort(es.begin(), es.end());
  for (const auto& [a, c] : es) {
    put_u32(s, a);
    put_u32(s, c);
  }
  return s;
}

struct CanonSearch {
  const BallGraph& b;
  const BallAdj adj;
  std::int32_t n;
  std::vector<std::int32_t> dist_t, dist_h;

  std::string best;
  std::vector<std::int32_t> best_order;
  bool have_best = false;

  using Partition = std::vector<std::vector<std::int32_t>>;

  explicit CanonSearch(const BallGraph& ball) : b(ball), adj(ball), n(ball.vertex_count()) {
    dist_t = bfs(b.root_tail);
    dist_h = bfs(b.root_head);
  }

  std::vector<std::int32_t> bfs(std::int32_t src) const {
    std::vector<std::int32_t> dist(static_cast<std::size_t>(n), kUnreached);
    std::queue<std::int32_t> q;
    dist[static_cast<std::size_t>(src)] = 0;
    q.push(src);
    while (!q.empty()) {
      const std::int32_t v = q.front();
      q.pop();
      auto visit = [&](std::int32_t w) {
        if (dist[static_cast<std::size_t>(w)] == kUnreached) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          q.push(w);
        }
      };
      for (const auto& [w, c] : adj.out[static_cast<std::size_t>(v)]) visit(w);
      for (const auto& [w, c] : adj.in[static_cast<std::size_t>(v)]) visit(w);
    }
    return dist;
  }

  // Split every multi-member cell by neighbor-cell signatures until stable.
  void refine(Partition& cells) const {
    bool changed = true;
    std::vector<std::int32_t> cell_of(static_cast<std::size_t>(n));
    while (changed) {
      changed = false;
      for (std::size_t ci = 0; ci < cells.size(); ++ci)
        for (std::int32_t v : cells[ci]) cell_of[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(ci);
      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        if (cells[ci].size() < 2) continue;
        using Sig = std::vector<std::int64_t>;
        std::vector<std::pair<Sig, std::int32_t>> keyed;
        keyed.reserve(cells[ci].size());
        for (std::int32_t v : cells[ci]) {
          Sig sig;
          for (const auto& [w, c] : adj.out[static_cast<std::size_t>(v)])
            sig.push_back((static_cast<std::int64_t>(cell_of[static_cast<std::size_t>(w)]) << 33) | (1ll << 32) | c);
          for (const auto& [w, c] : adj.in[static_cast<std::size_t>(v)])
            sig.push_back((static_cast<std::int64_t>(cell_of[static_cast<std::size_t>(w)]) << 33) | c);
          std::sort(sig.begin(), sig.end());
          keyed.emplace_back(std::move(sig), v);
        }
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& c) { return a.first < c.first; });
        bool split = false;
        for (std::size_t i = 1; i < keyed.size(); ++i)
          if (keyed[i].first != keyed[0].first) {
            split = true;
            break;
          }
        if (!split) continue;
        Partition sub;
        for (std::size_t i = 0; i < keyed.size();) {
          std::size_t j = i;
          std::vector<std::int32_t> cell;
          while (j < keyed.size() && keyed[j].first == keyed[i].first) cell.push_back(keyed[j++].second);
          sub.push_back(std::move(cell));
          i = j;
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(ci));
        cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(ci), sub.begin(), sub.end());
        changed = true;
        break;
      }
    }
  }

  // Swapping u,v is an automorphism when their footprints agree everywhere
  // else and their mutual multiplicities are symmetric.
  bool interchangeable(std::int32_t u, std::int32_t v) const {
    auto agree = [&](const auto& lu, const auto& lv) {
      std::size_t i = 0, j = 0;
      while (i < lu.size() || j < lv.size()) {
        while (i < lu.size() && (lu[i].first == u || lu[i].first == v)) ++i;
        while (j < lv.size() && (lv[j].first == u || lv[j].first == v)) ++j;
        const bool ei = i >= lu.size(), ej = j >= lv.size();
        if (ei != ej) return false;
        if (ei) break;
        if (lu[i] != lv[j]) return false;
        ++i;
        ++j;
      }
      return true;
    };
    if (!agree(adj.out[static_cast<std::size_t>(u)], adj.out[static_cast<std::size_t>(v)])) return false;
    if (!agree(adj.in[static_cast<std::size_t>(u)], adj.in[static_cast<std::size_t>(v)])) return false;
    return adj.count(u, v) == adj.count(v, u);
  }

  void search(Partition cells) {
    refine(cells);
    std::size_t branch_cell = cells.size();
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
      if (cells[ci].size() > 1) {
        branch_cell = ci;
        break;
      }
    if (branch_cell == cells.size()) {
      std::vector<std::int32_t> order;
      order.reserve(static_cast<std::size_t>(n));
      for (const auto& cell : cells) order.push_back(cell[0]);
      std::string s = serialize_ordered(b, order);
      if (!have_best || s < best) {
        best = std::move(s);
        best_order = std::move(order);
        have_best = true;
      }
      return;
    }
    const std::vector<std::int32_t> cell = cells[branch_cell];
    std::vector<std::int32_t> reps;
    for (std::int32_t cand : cell) {
      bool dup = false;
      for (std::int32_t r : reps)
        if (interchangeable(cand, r)) {
          dup = true;
          break;
        }
      if (dup) continue;
      reps.push_back(cand);
      Partition child = cells;
      std::vector<std::int32_t> rest;
      for (std::int32_t v : cell)
        if (v != cand) rest.push_back(v);
      child[branch_cell] = {cand};
      child.insert(child.begin() + static_cast<std::ptrdiff_t>(branch_cell) + 1, std::move(rest));
      search(std::move(child));
    }
  }
};

}  // namespace

TypeId canonicalize(const BallGraph& b, std::vector<std::int32_t>* canonical_order) {
  const std::int32_t n = b.vertex_count();
  if (n < 2) throw std::invalid_argument("ball must contain both roots");
  if (b.root_tail < 0 || b.root_tail >= n || b.root_head < 0 || b.root_head >= n ||
      b.root_tail == b.root_head)
    throw std::invalid_argument("bad ball roots");
  for (const auto& e : b.edges)
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
      throw std::invalid_argument("ball edge endpoint out of range");

  CanonSearch cs(b);

  // roots first, then non-roots grouped by an invariant key
  using Key = std::array<std::int64_t, 6>;
  std::vector<std::pair<Key, std::int32_t>> rest;
  for (std::int32_t v = 0; v < n; ++v) {
    if (v == b.root_tail || v == b.root_head) continue;
    std::int64_t outdeg = 0, indeg = 0;
    for (const auto& [w, c] : cs.adj.out[static_cast<std::size_t>(v)]) outdeg += c;
    for (const auto& [w, c] : cs.adj.in[static_cast<std::size_t>(v)]) indeg += c;
    rest.push_back({{static_cast<std::int64_t>(b.labels[static_cast<std::size_t>(v)]),
                     b.complete[static_cast<std::size_t>(v)] ? 1 : 0,
                     cs.dist_t[static_cast<std::size_t>(v)], cs.dist_h[static_cast<std::size_t>(v)],
                     outdeg, indeg},
                    v});
  }
  std::sort(rest.begin(), rest.end());

  CanonSearch::Partition cells;
  cells.push_back({b.root_tail});
  cells.push_back({b.root_head});
  for (std::size_t i = 0; i < rest.size();) {
    std::size_t j = i;
    std::vector<std::int32_t> cell;
    while (j < rest.size() && rest[j].first == rest[i].first) cell.push_back(rest[j++].second);
    cells.push_back(std::move(cell));
    i = j;
  }

  cs.search(std::move(cells));

  if (canonical_order) *canonical_order = cs.best_order;
  TypeId id;
  id.bytes = std::move(cs.best);
  id.size = n;
  return id;
}

BallGraph decode_type(const TypeId& id) {
  std::size_t at = 0;
  const std::string& s = id.bytes;
  if (get_u8(s, at) != 'B') throw std::invalid_argument("bad type id");
  BallGraph b;
  b.ell = get_u16(s, at);
  const std::uint32_t n = get_u32(s, at);
  const std::uint32_t m = get_u32(s, at);
  b.labels.resize(n);
  b.complete.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    b.labels[v] = get_u32(s, at);
    b.complete[v] = get_u8(s, at);
  }
  b.edges.reserve(m);
  for (std::uint32_t e = 0; e < m; ++e) {
    const std::int32_t a = static_cast<std::int32_t>(get_u32(s, at));
    const std::int32_t c = static_cast<std::int32_t>(get_u32(s, at));
    b.edges.emplace_back(a, c);
  }
  b.root_tail = 0;
  b.root_head = 1;
  return b;
}

namespace {

struct AdjIndex {
  std::vector<std::vector<std::int64_t>> incident;  // edge ids, both endpoints

  explicit AdjIndex(const DirectedMultigraph& g) {
    incident.assign(static_cast<std::size_t>(g.n), {});
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      incident[static_cast<std::size_t>(g.edges[i].tail)].push_back(static_cast<std::int64_t>(i));
      incident[static_cast<std::size_t>(g.edges[i].head)].push_back(static_cast<std::int64_t>(i));
    }
  }
};

struct Extraction {
  BallGraph ball;
  std::vector<VertexId> orig;  // local index -> host vertex
};

Extraction extract_ball(const DirectedMultigraph& g, const AdjIndex& idx,
                        const std::vector<std::uint32_t>& labels, int ell, std::int64_t D,
                        std::int64_t edge_index, std::vector<std::int32_t>& dist,
                        std::vector<std::int32_t>& local, std::vector<char>& edge_seen) {
  if (edge_index < 0 || edge_index >= g.m()) throw std::invalid_argument("edge index out of range");
  const Edge root_edge = g.edges[static_cast<std::size_t>(edge_index)];

  Extraction ex;
  ex.ball.ell = ell;
  ex.ball.root_tail = 0;
  ex.ball.root_head = 1;

  std::vector<VertexId>& order = ex.orig;
  auto add = [&](VertexId v, std::int32_t dv) {
    dist[static_cast<std::size_t>(v)] = dv;
    local[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(order.size());
    order.push_back(v);
  };
  add(root_edge.tail, 0);
  add(root_edge.head, 0);

  std::size_t qhead = 0;
  while (qhead < order.size()) {
    const VertexId v = order[qhead++];
    if (static_cast<std::int64_t>(idx.incident[static_cast<std::size_t>(v)].size()) > D) {
      for (VertexId w : order) {
        dist[static_cast<std::size_t>(w)] = -1;
        local[static_cast<std::size_t>(w)] = -1;
      }
      throw std::runtime_error("degree bound exceeded in ball");
    }
    if (dist[static_cast<std::size_t>(v)] >= ell) continue;
    for (std::int64_t eid : idx.incident[static_cast<std::size_t>(v)]) {
      const Edge& e = g.edges[static_cast<std::size_t>(eid)];
      const VertexId w = (e.tail == v) ? e.head : e.tail;
      if (dist[static_cast<std::size_t>(w)] < 0) add(w, dist[static_cast<std::size_t>(v)] + 1);
    }
  }

  const std::size_t count = order.size();
  ex.ball.labels.resize(count);
  ex.ball.complete.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const VertexId v = order[i];
    ex.ball.labels[i] = labels[static_cast<std::size_t>(v)];
    ex.ball.complete[i] = dist[static_cast<std::size_t>(v)] <= ell - 1 ? 1 : 0;
  }

  std::vector<std::int64_t> ball_edges;
  for (VertexId v : order)
    for (std::int64_t eid : idx.incident[static_cast<std::size_t>(v)]) {
      if (edge_seen[static_cast<std::size_t>(eid)]) continue;
      const Edge& e = g.edges[static_cast<std::size_t>(eid)];
      if (local[static_cast<std::size_t>(e.tail)] >= 0 && local[static_cast<std::size_t>(e.head)] >= 0) {
        edge_seen[static_cast<std::size_t>(eid)] = 1;
        ball_edges.push_back(eid);
      }
    }
  std::sort(ball_edges.begin(), ball_edges.end());
  for (std::int64_t eid : ball_edges) {
    const Edge& e = g.edges[static_cast<std::size_t>(eid)];
    ex.ball.edges.emplace_back(local[static_cast<std::size_t>(e.tail)],
                               local[static_cast<std::size_t>(e.head)]);
    edge_seen[static_cast<std::size_t>(eid)] = 0;
  }

  for (VertexId w : order) {
    dist[static_cast<std::size_t>(w)] = -1;
    local[static_cast<std::size_t>(w)] = -1;
  }
  return ex;
}

void check_label_size(const DirectedMultigraph& g, const std::vector<std::uint32_t>& labels) {
  if (static_cast<VertexId>(labels.size()) != g.n)
    throw std::invalid_argument("label array size does not match vertex count");
}

}  // namespace

BallGraph ball_extract(const DirectedMultigraph& g, const std::vector<std::uint32_t>& labels,
                       int ell, std::int64_t D, std::int64_t edge_index) {
  check_label_size(g, labels);
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  AdjIndex idx(g);
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n), -1);
  std::vector<std::int32_t> local(static_cast<std::size_t>(g.n), -1);
  std::vector<char> edge_seen(g.edges.size(), 0);
  return extract_ball(g, idx, labels, ell, D, edge_index, dist, local, edge_seen).ball;
}

TypeCountMap edge_type_counts(const DirectedMultigraph& g,
                              const std::vector<std::uint32_t>& labels, int ell,
                              std::int64_t D) {
  check_label_size(g, labels);
  if (g.edges.empty()) throw std::invalid_argument("undefined on empty graph");
  AdjIndex idx(g);
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n), -1);
  std::vector<std::int32_t> local(static_cast<std::size_t>(g.n), -1);
  std::vector<char> edge_seen(g.edges.size(), 0);
  TypeCountMap counts;
  for (std::int64_t eid = 0; eid < g.m(); ++eid) {
    Extraction ex = extract_ball(g, idx, labels, ell, D, eid, dist, local, edge_seen);
    ++counts[canonicalize(ex.ball)];
  }
  return counts;
}

TypeDistribution distribution_from_counts(const TypeCountMap& counts) {
  std::int64_t total = 0;
  for (const auto& [id, c] : counts) total += c;
  if (total <= 0) throw std::runtime_error("empty sample");
  TypeDistribution d;
  for (const auto& [id, c] : counts)
    if (c > 0) d.mass[id] = static_cast<double>(c) / static_cast<double>(total);
  return d;
}

TypeDistribution edge_type_distribution(const DirectedMultigraph& g,
                                        const std::vector<std::uint32_t>& labels, int ell,
                                        std::int64_t D) {
  return distribution_from_counts(edge_type_counts(g, labels, ell, D));
}

void TypeDistribution::validate() const {
  double sum = 0.0;
  for (const auto& [id, p] : mass) {
    if (p < 0.0) throw std::invalid_argument("negative mass");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("masses do not sum to 1");
}

double tv_distance(const TypeDistribution& d1, const TypeDistribution& d2) {
  double acc = 0.0;
  auto i1 = d1.mass.begin();
  auto i2 = d2.mass.begin();
  while (i1 != d1.mass.end() || i2 != d2.mass.end()) {
    if (i2 == d2.mass.end() || (i1 != d1.mass.end() && i1->first < i2->first)) {
      acc += std::abs(i1->second);
      ++i1;
    } else if (i1 == d1.mass.end() || i2->first < i1->first) {
      acc += std::abs(i2->second);
      ++i2;
    } else {
      acc += std::abs(i1->second - i2->second);
      ++i1;
      ++i2;
    }
  }
  return acc / 2.0;
}

TypeDistribution rescaled_distribution(const TypeCountMap& counts, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("sampling probability outside (0,1]");
  const double ln_inv_p = -std::log(p);
  double max_exp = -1.0;
  for (const auto& [id, a] : counts)
    if (a > 0) max_exp = std::max(max_exp, static_cast<double>(id.size) * ln_inv_p);
  if (max_exp < 0.0) throw std::runtime_error("empty sample");

  long double total = 0.0L;
  std::map<TypeId, long double> w;
  for (const auto& [id, a] : counts) {
    if (a <= 0) continue;
    const long double weight =
        static_cast<long double>(a) *
        std::exp(static_cast<long double>(id.size) * static_cast<long double>(ln_inv_p) -
                 static_cast<long double>(max_exp));
    w[id] = weight;
    total += weight;
  }
  TypeDistribution d;
  for (const auto& [id, weight] : w) d.mass[id] = static_cast<double>(weight / total);
  return d;
}

TypeCountMap certified_type_counts(const DirectedMultigraph& g,
                                   const std::vector<std::uint32_t>& labels, int ell,
                                   std::int64_t D,
                                   const std::vector<std::int64_t>& full_degree) {
  check_label_size(g, labels);
  if (static_cast<VertexId>(full_degree.size()) != g.n)
    throw std::invalid_argument("degree array size does not match vertex count");
  AdjIndex idx(g);
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n), -1);
  std::vector<std::int32_t> local(static_cast<std::size_t>(g.n), -1);
  std::vector<char> edge_seen(g.edges.size(), 0);
  TypeCountMap counts;
  for (std::int64_t eid = 0; eid < g.m(); ++eid) {
    Extraction ex = extract_ball(g, idx, labels, ell, D, eid, dist, local, edge_seen);
    // complete flag marks exactly the vertices within distance ell-1
    bool certified = true;
    for (std::size_t i = 0; i < ex.orig.size() && certified; ++i) {
      if (!ex.ball.complete[i]) continue;
      const VertexId v = ex.orig[i];
      const std::int64_t induced = static_cast<std::int64_t>(idx.incident[static_cast<std::size_t>(v)].size());
      if (induced != full_degree[static_cast<std::size_t>(v)]) certified = false;
    }
    if (certified) ++counts[canonicalize(ex.ball)];
  }
  return counts;
}

TypeCountMap sampled_type_counts(const DirectedMultigraph& g_full,
                                 const std::vector<VertexId>& sampled,
                                 const std::vector<std::uint32_t>& labels, int ell,
                                 std::int64_t D,
                                 const std::unordered_map<VertexId, std::int64_t>& deg_map) {
  check_label_size(g_full, labels);
  std::vector<std::int32_t> new_id(static_cast<std::size_t>(g_full.n), -1);
  std::vector<VertexId> order(sampled);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<std::uint32_t> sub_labels;
  std::vector<std::int64_t> sub_full_degree;
  sub_labels.reserve(order.size());
  sub_full_degree.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId v = order[i];
    new_id[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(i);
    sub_labels.push_back(labels[static_cast<std::size_t>(v)]);
    auto it = deg_map.find(v);
    if (it == deg_map.end()) throw std::invalid_argument("sampled vertex missing from degree map");
    sub_full_degree.push_back(it->second);
  }

  std::vector<Edge> sub_edges;
  for (const Edge& e : g_full.edges) {
    const std::int32_t a = new_id[static_cast<std::size_t>(e.tail)];
    const std::int32_t b = new_id[static_cast<std::size_t>(e.head)];
    if (a >= 0 && b >= 0) sub_edges.push_back({a, b});
  }
  const DirectedMultigraph sub =
      DirectedMultigraph::make(static_cast<VertexId>(order.size()), std::move(sub_edges));
  return certified_type_counts(sub, sub_labels, ell, D, sub_full_degree);
}

void write_distribution_csv(std::ostream& out, const TypeDistribution& d) {
  out << "type-id-hex,size,mass\n";
  static const char* hex = "0123456789abcdef";
  for (const auto& [id, p] : d.mass) {
    std::string h;
    h.reserve(id.bytes.size() * 2);
    for (char c : id.bytes) {
      const std::uint8_t b = static_cast<std::uint8_t>(c);
      h.push_back(hex[b >> 4]);
      h.push_back(hex[b & 0xf]);
    }
    out << h << "," << id.size << "," << p << "\n";
  }
}

}  // namespace dicut
