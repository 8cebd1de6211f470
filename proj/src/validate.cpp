#include "dicut/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "dicut/dense.hpp"
#include "dicut/local_sim.hpp"
#include "dicut/stream.hpp"

namespace dicut {

namespace {

double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-13) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-13) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi_squared_p_value(double stat, double df) {
  if (stat <= 0.0) return 1.0;
  const double a = df / 2.0, x = stat / 2.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

// ---------------------------------------------------------------------------
// instance builders

DirectedMultigraph bounded_degree_mix_graph(VertexId n, std::uint64_t seed) {
  Substream sub = KeyedRng(seed).at(rng_purpose::kGenerate, 1);
  std::vector<Edge> edges;
  VertexId next = 0;
  // Component kinds: single edge, 2-cycle, double edge, (2,1) bundle, triple
  // edge. All radius-1 ball types have two vertices, which keeps every type
  // reachable by vertex sampling at moderate p; the weight sits on the dense
  // bundles because a kind's count noise scales with its edges per component.
  static constexpr double kCum[5] = {0.10, 0.10, 0.10, 0.55, 1.00};
  while (next + 2 <= n) {
    const double r = sub.next_unit();
    int kind = 0;
    while (kind < 4 && r > kCum[kind]) ++kind;
    const VertexId a = next, b = next + 1;
    switch (kind) {
      case 0: edges.push_back({a, b}); break;
      case 1: edges.push_back({a, b}); edges.push_back({b, a}); break;
      case 2: edges.push_back({a, b}); edges.push_back({a, b}); break;
      case 3:
        edges.push_back({a, b});
        edges.push_back({a, b});
        edges.push_back({b, a});
        break;
      case 4:
        edges.push_back({a, b});
        edges.push_back({a, b});
        edges.push_back({a, b});
        break;
    }
    next += 2;
  }
  return DirectedMultigraph::make(n, std::move(edges));
}

namespace {

// Small degree-<=3 component shapes on local ids; optimum brute-forced.
std::vector<Edge> component_shape(int kind, Substream& sub, VertexId& size) {
  switch (kind) {
    case 0: size = 2; return {{0, 1}};
    case 1: size = 2; return {{0, 1}, {1, 0}};
    case 2: size = 2; return {{0, 1}, {0, 1}};
    case 3: size = 2; return {{0, 1}, {0, 1}, {1, 0}};
    case 4: size = 3; return {{0, 1}, {1, 2}};
    case 5: size = 4; return {{0, 1}, {1, 2}, {2, 3}};
    case 6: size = 4; return {{0, 1}, {0, 2}, {0, 3}};          // out-star
    case 7: size = 4; return {{1, 0}, {2, 0}, {3, 0}};          // in-star
    case 8: size = 3; return {{0, 1}, {1, 2}, {2, 0}};          // 3-cycle
    case 9: size = 4; return {{0, 1}, {1, 2}, {2, 3}, {3, 0}};  // 4-cycle
    default: {
      // random degree-<=3 component on 4 or 5 vertices
      size = 4 + static_cast<VertexId>(sub.below(2));
      std::vector<Edge> es;
      std::vector<int> deg(static_cast<std::size_t>(size), 0);
      const int target = 2 + static_cast<int>(sub.below(static_cast<std::uint64_t>(size)));
      int guard = 0;
      while (static_cast<int>(es.size()) < target && guard++ < 50) {
        const VertexId u = static_cast<VertexId>(sub.below(static_cast<std::uint64_t>(size)));
        VertexId v = static_cast<VertexId>(sub.below(static_cast<std::uint64_t>(size - 1)));
        if (v >= u) ++v;
        if (deg[static_cast<std::size_t>(u)] >= 3 || deg[static_cast<std::size_t>(v)] >= 3) continue;
        es.push_back({u, v});
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
      }
      if (es.empty()) es.push_back({0, 1});
      return es;
    }
  }
}

}  // namespace

KnownOptInstance known_opt_union(VertexId min_n, VertexId max_n, std::uint64_t seed) {
  Substream sub = KeyedRng(seed).at(rng_purpose::kGenerate, 2);
  const VertexId target =
      min_n + static_cast<VertexId>(sub.below(static_cast<std::uint64_t>(max_n - min_n + 1)));
  std::vector<Edge> edges;
  VertexId next = 0;
  std::int64_t best_total = 0;
  while (next < target) {
    const int kind = static_cast<int>(sub.below(11));
    VertexId size = 0;
    std::vector<Edge> shape = component_shape(kind, sub, size);
    if (next + size > target + 4) break;
    DirectedMultigraph comp = DirectedMultigraph::make(size, shape);
    best_total += max_dicut_exact(comp).cut_edges;
    for (const Edge& e : shape)
      edges.push_back({static_cast<VertexId>(e.tail + next), static_cast<VertexId>(e.head + next)});
    next = static_cast<VertexId>(next + size);
  }
  KnownOptInstance out;
  const VertexId n = std::max(next, target);
  out.g = DirectedMultigraph::make(n, std::move(edges));
  out.opt = static_cast<double>(best_total) / static_cast<double>(out.g.m());
  return out;
}

BallGraph random_ball(std::uint64_t seed, int label_alphabet) {
  Substream sub = KeyedRng(seed).at(rng_purpose::kGenerate, 3);
  BallGraph b;
  const std::int32_t n = 3 + static_cast<std::int32_t>(sub.below(8));
  b.labels.resize(static_cast<std::size_t>(n));
  b.complete.resize(static_cast<std::size_t>(n));
  for (std::int32_t v = 0; v < n; ++v) {
    b.labels[static_cast<std::size_t>(v)] =
        static_cast<std::uint32_t>(sub.below(static_cast<std::uint64_t>(label_alphabet)));
    b.complete[static_cast<std::size_t>(v)] = sub.bernoulli(0.7) ? 1 : 0;
  }
  b.root_tail = 0;
  b.root_head = 1;
  b.ell = 2;
  b.edges.emplace_back(0, 1);
  const std::int32_t extra = static_cast<std::int32_t>(sub.below(static_cast<std::uint64_t>(2 * n)));
  for (std::int32_t i = 0; i < extra; ++i) {
    const std::int32_t u = static_cast<std::int32_t>(sub.below(static_cast<std::uint64_t>(n)));
    std::int32_t v = static_cast<std::int32_t>(sub.below(static_cast<std::uint64_t>(n - 1)));
    if (v >= u) ++v;
    b.edges.emplace_back(u, v);
  }
  return b;
}

BallGraph permuted_ball(const BallGraph& b, std::uint64_t seed) {
  Substream sub = KeyedRng(seed).at(rng_purpose::kGenerate, 4);
  const std::int32_t n = b.vertex_count();
  std::vector<std::int32_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[sub.below(i)]);
  BallGraph out;
  out.ell = b.ell;
  out.labels.resize(static_cast<std::size_t>(n));
  out.complete.resize(static_cast<std::size_t>(n));
  for (std::int32_t v = 0; v < n; ++v) {
    out.labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
        b.labels[static_cast<std::size_t>(v)];
    out.complete[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
        b.complete[static_cast<std::size_t>(v)];
  }
  for (const auto& e : b.edges)
    out.edges.emplace_back(perm[static_cast<std::size_t>(e.first)],
                           perm[static_cast<std::size_t>(e.second)]);
  out.root_tail = perm[static_cast<std::size_t>(b.root_tail)];
  out.root_head = perm[static_cast<std::size_t>(b.root_head)];
  return out;
}

// ---------------------------------------------------------------------------
// experiment kernels

TrialCount oracle_identity_checks(std::uint64_t seed) {
  TrialCount tc;
  KeyedRng rng(seed);
  for (int t = 0; t < 50; ++t) {
    Substream sub = rng.at(rng_purpose::kGenerate, 100 + static_cast<std::uint64_t>(t));
    const VertexId n = 2 + static_cast<VertexId>(sub.below(9));
    const std::int64_t m = 1 + static_cast<std::int64_t>(sub.below(20));
    const DirectedMultigraph g =
        generate(GraphKind::kUniformRandom, n, m, {}, seed * 1000 + static_cast<std::uint64_t>(t)).graph;
    bool ok = true;
    for (int r = 0; r < 5; ++r) {
      Dicut cut;
      cut.in_left.resize(static_cast<std::size_t>(n));
      FractionalAssignment rho;
      rho.rho.resize(static_cast<std::size_t>(n));
      for (VertexId v = 0; v < n; ++v) {
        const bool left = sub.bernoulli(0.5);
        cut.in_left[static_cast<std::size_t>(v)] = left;
        rho.rho[static_cast<std::size_t>(v)] = left ? 1.0 : 0.0;
      }
      if (expected_dicut(g, rho) != dicut_value(g, cut)) ok = false;
    }
    ++tc.trials;
    if (ok) ++tc.passed;
  }
  return tc;
}

TrialCount full_sample_consistency(std::uint64_t seed) {
  TrialCount tc;
  for (int t = 0; t < 25; ++t) {
    const DirectedMultigraph g =
        bounded_degree_mix_graph(60, seed + static_cast<std::uint64_t>(t));
    Substream sub = KeyedRng(seed).at(rng_purpose::kGenerate, 200 + static_cast<std::uint64_t>(t));
    std::vector<std::uint32_t> labels(static_cast<std::size_t>(g.n));
    for (auto& l : labels) l = static_cast<std::uint32_t>(sub.below(4));
    const auto deg = g.degrees();
    std::vector<VertexId> all(static_cast<std::size_t>(g.n));
    std::iota(all.begin(), all.end(), 0);
    std::unordered_map<VertexId, std::int64_t> deg_map;
    for (VertexId v = 0; v < g.n; ++v) deg_map[v] = deg[static_cast<std::size_t>(v)];
    const TypeCountMap counts = sampled_type_counts(g, all, labels, 1, 3, deg_map);
    const TypeDistribution rescaled = rescaled_distribution(counts, 1.0);
    const TypeDistribution exact = edge_type_distribution(g, labels, 1, 3);
    bool ok = rescaled.mass.size() == exact.mass.size();
    if (ok) {
      auto it1 = rescaled.mass.begin();
      auto it2 = exact.mass.begin();
      for (; it1 != rescaled.mass.end(); ++it1, ++it2)
        if (!(it1->first == it2->first) || it1->second != it2->second) {
          ok = false;
          break;
        }
    }
    ++tc.trials;
    if (ok) ++tc.passed;
  }
  return tc;
}

TrialCount canonical_invariance(int pairs, std::uint64_t seed) {
  TrialCount tc;
  for (int t = 0; t < pairs; ++t) {
    const int alphabet = 1 << (t % 3);  // 1, 2, 4 labels
    const BallGraph b = random_ball(seed + static_cast<std::uint64_t>(t), alphabet);
    const BallGraph p = permuted_ball(b, seed ^ (static_cast<std::uint64_t>(t) << 20));
    ++tc.trials;
    if (canonicalize(b) == canonicalize(p)) ++tc.passed;
  }
  return tc;
}

TrialCount reduction_fidelity(int trials, double eps_prime, DegreeMode mode,
                              std::uint64_t seed) {
  TrialCount tc;
  KeyedRng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Substream sub = rng.at(rng_purpose::kGenerate, 300 + static_cast<std::uint64_t>(t));
    const VertexId n = 2 + static_cast<VertexId>(sub.below(7));
    const std::int64_t m = 1 + static_cast<std::int64_t>(sub.below(8));
    const std::uint64_t gseed = seed * 7919 + static_cast<std::uint64_t>(t);
    const DirectedMultigraph g = generate(GraphKind::kUniformRandom, n, m, {}, gseed).graph;
    const double opt_g = max_dicut_exact(g).value();
    const ApproxDegrees ad = make_approx_degrees(g, 0.1, eps_prime, mode, gseed + 1);
    const ReducedGraph red = trevisan_reduce(g, ad, eps_prime, gseed + 2);
    const DirectedMultigraph rg = red.as_graph();
    const double opt_r = rg.edges.empty() ? 0.0 : max_dicut_exact(rg).value();
    ++tc.trials;
    if (std::fabs(opt_r - opt_g) <= eps_prime) ++tc.passed;
  }
  return tc;
}

TrialCount type_estimation(int trials, VertexId n, double p, int ell, double tol,
                           std::uint64_t seed) {
  TrialCount tc;
  KeyedRng rng(seed);
  double tv_sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const DirectedMultigraph g =
        bounded_degree_mix_graph(n, seed * 131 + static_cast<std::uint64_t>(t));
    const std::vector<std::uint32_t> labels(static_cast<std::size_t>(g.n), 0);
    const TypeDistribution exact = edge_type_distribution(g, labels, ell, 3);

    Substream sub = rng.at(rng_purpose::kGenerate, 400 + static_cast<std::uint64_t>(t));
    std::vector<VertexId> sampled;
    const auto deg = g.degrees();
    std::unordered_map<VertexId, std::int64_t> deg_map;
    for (VertexId v = 0; v < g.n; ++v)
      if (sub.bernoulli(p)) {
        sampled.push_back(v);
        deg_map[v] = deg[static_cast<std::size_t>(v)];
      }
    ++tc.trials;
    try {
      const TypeCountMap counts = sampled_type_counts(g, sampled, labels, ell, 3, deg_map);
      const TypeDistribution rescaled = rescaled_distribution(counts, p);
      const double tv = tv_distance(rescaled, exact);
      tv_sum += tv;
      if (tv <= tol) ++tc.passed;
    } catch (const std::runtime_error&) {
      // empty sample: failed trial
    }
  }
  std::ostringstream os;
  os << "mean TV " << tv_sum / std::max(1, tc.trials);
  tc.detail = os.str();
  return tc;
}

namespace {

DirectedMultigraph claim52_fixture() {
  std::vector<Edge> edges = {{0, 1}, {0, 1}, {0, 2}, {2, 1}, {2, 3}, {3, 0}, {3, 4},
                             {4, 5}, {5, 0}, {0, 6}, {6, 1}, {2, 6}, {6, 3}, {4, 6},
                             {6, 5}, {0, 7}, {7, 1}, {7, 2}, {3, 7}, {4, 7}};
  return DirectedMultigraph::make(8, std::move(edges));
}

double binom_pmf(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r * std::pow(0.5, n);
}

}  // namespace

double claim52_p_value(int trials, std::uint64_t seed) {
  const DirectedMultigraph g = claim52_fixture();
  const auto deg = g.degrees();
  ParameterSet params = ParameterSet::practical(g.n);
  params.beta = std::log(2.0) / std::log(static_cast<double>(g.n));  // n^{-beta} = 1/2
  params.validate();

  VectorEdgeStream stream(g);
  std::vector<std::vector<std::int64_t>> obs(static_cast<std::size_t>(g.n));
  for (VertexId v = 0; v < g.n; ++v)
    obs[static_cast<std::size_t>(v)].assign(static_cast<std::size_t>(deg[static_cast<std::size_t>(v)]) + 1, 0);

  for (int t = 0; t < trials; ++t) {
    SamplerState state;
    KeyedRng rng(seed + static_cast<std::uint64_t>(t));
    pass1_sample(stream, params, rng, false, state);
    for (VertexId v = 0; v < g.n; ++v) {
      const auto it = state.count.find(v);
      const std::int64_t c = it == state.count.end() ? 0 : it->second;
      ++obs[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
    }
  }

  // pooled goodness-of-fit against Binomial(deg, 1/2), cells merged to
  // expected counts >= 5
  double stat = 0.0;
  double df = 0.0;
  for (VertexId v = 0; v < g.n; ++v) {
    const int dv = static_cast<int>(deg[static_cast<std::size_t>(v)]);
    if (dv == 0) continue;
    std::vector<double> exp_cells;
    std::vector<double> obs_cells;
    double exp_acc = 0.0, obs_acc = 0.0;
    for (int c = 0; c <= dv; ++c) {
      exp_acc += trials * binom_pmf(dv, c);
      obs_acc += static_cast<double>(obs[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)]);
      if (exp_acc >= 5.0) {
        exp_cells.push_back(exp_acc);
        obs_cells.push_back(obs_acc);
        exp_acc = obs_acc = 0.0;
      }
    }
    if (exp_acc > 0.0 && !exp_cells.empty()) {
      exp_cells.back() += exp_acc;
      obs_cells.back() += obs_acc;
    }
    if (exp_cells.size() < 2) continue;
    for (std::size_t i = 0; i < exp_cells.size(); ++i) {
      const double d = obs_cells[i] - exp_cells[i];
      stat += d * d / exp_cells[i];
    }
    df += static_cast<double>(exp_cells.size()) - 1.0;
  }
  return chi_squared_p_value(stat, df);
}

namespace {

ParameterSet coupling_params(VertexId n) {
  ParameterSet p = ParameterSet::practical(n);
  p.beta = 0.0;
  p.d = 8;
  p.degree_cap = 88;
  p.D = 88;
  p.ell = 1;
  p.c = 4;
  p.rule.priority_bits = 2;
  p.rule.coin_bits = 2;
  p.small_m_threshold = 0.0;
  p.storedeg_threshold_exponent = 2.0;  // n^2 above every degree
  return p;
}

std::vector<std::array<std::int64_t, 4>> edge_multiset(const std::vector<CopyEdgeRec>& el) {
  std::vector<std::array<std::int64_t, 4>> v;
  v.reserve(el.size());
  for (const CopyEdgeRec& r : el)
    v.push_back({static_cast<std::int64_t>(r.u), r.i, static_cast<std::int64_t>(r.v), r.j});
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TrialCount coupling_equality(int runs, std::uint64_t seed) {
  TrialCount tc;
  for (int t = 0; t < runs; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 30, 60, {}, s).graph;
    const ParameterSet params = coupling_params(g.n);
    VectorEdgeStream s3(g), s2(g);
    SamplerState st3, st2;
    const EstimateReport r3 = three_pass_estimate(s3, params, s, &st3);
    const EstimateReport r2 = two_pass_estimate(s2, params, s, &st2);
    ++tc.trials;
    const bool edges_match = edge_multiset(st3.eprime) == edge_multiset(st2.epp);
    const bool values_match =
        r3.value.has_value() == r2.value.has_value() &&
        (!r3.value || *r3.value == *r2.value);
    if (edges_match && values_match) ++tc.passed;
  }
  return tc;
}

SoundnessCount local_soundness(int trials, std::uint64_t seed) {
  SoundnessCount sc;
  LocalRule rule;
  rule.priority_bits = 4;
  rule.coin_bits = 4;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed * 613 + static_cast<std::uint64_t>(t);
    const KnownOptInstance inst = known_opt_union(50, 200, s);
    const PairwiseHash h = sample_hash(static_cast<std::uint64_t>(inst.g.n), 8, s + 1);
    std::vector<std::uint32_t> labels(static_cast<std::size_t>(inst.g.n));
    for (VertexId v = 0; v < inst.g.n; ++v)
      labels[static_cast<std::size_t>(v)] = h.eval(static_cast<std::uint64_t>(v));
    const TypeDistribution d = edge_type_distribution(inst.g, labels, 3, 3);
    const double est = estimate(d, rule);
    ++sc.trials;
    if (est >= inst.opt / 2.0 - 0.15) ++sc.lower_ok;
    if (est <= inst.opt + 0.05) ++sc.upper_ok;
  }
  return sc;
}

MetaSuiteResult meta_suite(int runs, std::uint64_t seed) {
  MetaSuiteResult res;
  std::ostringstream detail;
  for (int t = 0; t < runs; ++t) {
    const std::uint64_t s = seed * 271 + static_cast<std::uint64_t>(t);
    DirectedMultigraph g;
    double opt = 0.0;
    Substream sub = KeyedRng(s).at(rng_purpose::kGenerate, 5);
    if (t % 2 == 0) {
      const VertexId n = 6 + static_cast<VertexId>(sub.below(17));
      const std::int64_t m =
          n + static_cast<std::int64_t>(sub.below(static_cast<std::uint64_t>(2 * n + 1)));
      g = generate(GraphKind::kUniformRandom, n, m, {}, s).graph;
      opt = max_dicut_exact(g).value();
    } else {
      GeneratorParams gp;
      gp.plant_fraction = 0.9;
      GeneratedGraph gen = generate(GraphKind::kPlantedDicut, 2000, 50000, gp, s);
      g = std::move(gen.graph);
      opt = std::max(*gen.planted_value,
                     max_dicut_localsearch(g, 4, s + 17).value());
    }

    ParameterSet params = ParameterSet::practical(g.n);
    params.epsilon = 0.25;
    params.beta = 0.15;
    params.d = 32;
    params.degree_cap = 11 * params.d;
    params.D = params.degree_cap;
    params.ell = 2;
    params.c = 8;
    params.rule.priority_bits = 4;
    params.rule.coin_bits = 4;
    params.estdeg_increment_exponent = params.beta / 4.0;
    params.storedeg_threshold_exponent = 2.0 * params.beta / 3.0;
    // At this scale every non-isolated vertex gets a nonzero estimate, so the
    // sublinear paper cap would fire on every instance; audit against n^2.
    params.estdeg_nonzero_cap_exponent = 2.0;
    params.small_m_threshold = std::pow(static_cast<double>(g.n), 1.7);
    params.dense_dispatch_threshold =
        std::max(std::pow(static_cast<double>(g.n), 1.25), 10.0 * static_cast<double>(g.n));
    params.vprime_cap = 1e18;
    params.eprime_cap = 1e18;
    params.caps_disabled = false;

    VectorEdgeStream stream(g);
    const EstimateReport rep = meta_estimate(stream, params, s);
    ++res.runs;
    if (!rep.value) {
      ++res.terminated;
    } else if (*rep.value >= opt / 2.0 - 0.15 && *rep.value <= opt + 0.1) {
      ++res.in_range;
    } else {
      detail << "run " << t << " branch " << branch_name(rep.branch) << " value " << *rep.value
             << " opt " << opt << "; ";
    }
    const AuditResult audit = memory_audit(rep, params);
    if (audit.within_caps) ++res.audits_ok;
  }
  res.detail = detail.str();
  return res;
}

TrialCount dense_planted(int seeds, std::uint64_t seed) {
  TrialCount tc;
  for (int t = 0; t < seeds; ++t) {
    const std::uint64_t s = seed * 433 + static_cast<std::uint64_t>(t);
    GeneratorParams gp;
    gp.plant_fraction = 0.9;
    GeneratedGraph gen = generate(GraphKind::kPlantedDicut, 500, 6000, gp, s);
    ParameterSet params = ParameterSet::practical(500);
    params.beta = 0.15;
    params.estdeg_increment_exponent = params.beta / 4.0;
    params.storedeg_threshold_exponent = 2.0 * params.beta / 3.0;
    params.estdeg_nonzero_cap_exponent = 1.0 - params.beta / 8.0;
    params.dense_dispatch_threshold = std::pow(500.0, 1.25);
    VectorEdgeStream stream(gen.graph);
    const EstimateReport rep = meta_estimate(stream, params, s);
    ++tc.trials;
    if (rep.branch == Branch::kDense && rep.value && *rep.value >= 0.8) ++tc.passed;
  }
  return tc;
}

// ---------------------------------------------------------------------------
// named suites

namespace {

PropertyResult make_result(const std::string& name, bool pass, const std::string& stats) {
  return {name, pass, stats};
}

std::string frac(int num, int den) {
  std::ostringstream os;
  os << num << "/" << den;
  return os.str();
}

std::vector<PropertyResult> suite_reduction(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  KeyedRng rng(seed);

  {
    bool ok = true;
    std::int64_t max_deg_seen = 0;
    for (int t = 0; t < 25 && ok; ++t) {
      Substream sub = rng.at(rng_purpose::kGenerate, 500 + static_cast<std::uint64_t>(t));
      const VertexId n = 2 + static_cast<VertexId>(sub.below(9));
      const std::int64_t m = 1 + static_cast<std::int64_t>(sub.below(12));
      const DirectedMultigraph g =
          generate(GraphKind::kUniformRandom, n, m, {}, seed + static_cast<std::uint64_t>(t)).graph;
      const ApproxDegrees ad = make_approx_degrees(g, 0.5, 0.5, DegreeMode::kExact, seed);
      const ReducedGraph red = trevisan_reduce(g, ad, 0.5, seed + static_cast<std::uint64_t>(t));
      if (red.vertex_count() != 2 * g.m()) ok = false;
      if (red.precap_edge_count != red.d * g.m()) ok = false;  // exact degrees accept all
      for (std::int64_t dv : red.copy_degrees())
        if (dv > red.degree_cap) ok = false;
      for (std::int64_t dv : red.copy_degrees()) max_deg_seen = std::max(max_deg_seen, dv);
      if (static_cast<std::int64_t>(red.edges.size()) > red.d * g.m()) ok = false;
    }
    out.push_back(make_result("reduction.shape", ok, "vc=2m, precap=dm, caps hold"));
  }

  {
    const DirectedMultigraph g = DirectedMultigraph::make(2, {{0, 1}});
    const ApproxDegrees ad = make_approx_degrees(g, 0.5, 1.0, DegreeMode::kExact, seed);
    const ReducedGraph red = trevisan_reduce(g, ad, 1.0, seed);
    const bool ok = red.vertex_count() == 2 && red.d == 80 &&
                    static_cast<std::int64_t>(red.edges.size()) == 80 &&
                    max_dicut_exact(red.as_graph()).value() == 1.0;
    out.push_back(make_result("reduction.single-edge", ok, "80 parallel copies, value 1"));
  }

  {
    // acceptance rate with an inflated degree oracle: star center degree 200
    std::vector<Edge> edges;
    for (int i = 0; i < 200; ++i) edges.push_back({0, static_cast<VertexId>(1 + (i % 200))});
    const DirectedMultigraph g = DirectedMultigraph::make(201, std::move(edges));
    ApproxDegrees ad = make_approx_degrees(g, 0.1, 1.0, DegreeMode::kExact, seed);
    ad.epsilon_prime = 1.0;
    ad.ad[0] = 202;  // within the (1 +- 1/100) band
    const std::int64_t d = 50;
    const ReducedGraph red = trevisan_reduce_d(g, ad, d, 11 * d, seed);
    const double p_accept = 200.0 / 202.0;
    const double mean = static_cast<double>(d * g.m()) * p_accept;
    const double sigma = std::sqrt(static_cast<double>(d * g.m()) * p_accept * (1.0 - p_accept));
    const double got = static_cast<double>(red.precap_edge_count);
    const bool ok = std::fabs(got - mean) <= 3.0 * sigma;
    std::ostringstream os;
    os << "accepted " << got << " expected " << mean << " sigma " << sigma;
    out.push_back(make_result("reduction.acceptance-rate", ok, os.str()));
  }

  {
    int good = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      Substream sub = rng.at(rng_purpose::kGenerate, 600 + static_cast<std::uint64_t>(t));
      const VertexId n = 3 + static_cast<VertexId>(sub.below(8));
      const std::int64_t m = 2 + static_cast<std::int64_t>(sub.below(10));
      const DirectedMultigraph g =
          generate(GraphKind::kUniformRandom, n, m, {}, seed * 31 + static_cast<std::uint64_t>(t)).graph;
      const ApproxDegrees ad = make_approx_degrees(g, 0.5, 0.5, DegreeMode::kExact, seed);
      const ReducedGraph red = trevisan_reduce(g, ad, 0.5, seed * 37 + static_cast<std::uint64_t>(t));
      const std::int64_t deleted = red.precap_edge_count - static_cast<std::int64_t>(red.edges.size());
      if (static_cast<double>(deleted) <= 0.5 * static_cast<double>(red.precap_edge_count) / 8.0)
        ++good;
    }
    out.push_back(make_result("reduction.capped-mass", good >= 18, frac(good, trials)));
  }

  {
    const TrialCount tc = reduction_fidelity(100, 0.25, DegreeMode::kExact, seed);
    out.push_back(make_result("reduction.fidelity", tc.passed >= 83, frac(tc.passed, tc.trials)));
  }

  {
    // 0/1 lift round trip
    bool ok = true;
    for (int t = 0; t < 10 && ok; ++t) {
      const std::uint64_t s = seed * 41 + static_cast<std::uint64_t>(t);
      const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 6, 8, {}, s).graph;
      const ApproxDegrees ad = make_approx_degrees(g, 0.5, 1.0, DegreeMode::kExact, s);
      const ReducedGraph red = trevisan_reduce(g, ad, 1.0, s);
      Substream sub = KeyedRng(s).at(rng_purpose::kGenerate, 6);
      std::vector<bool> rho_star(static_cast<std::size_t>(g.n));
      for (VertexId v = 0; v < g.n; ++v) rho_star[static_cast<std::size_t>(v)] = sub.bernoulli(0.5);
      Dicut lifted;
      lifted.in_left.assign(static_cast<std::size_t>(red.vertex_count()), false);
      for (std::int64_t id = 0; id < red.vertex_count(); ++id)
        lifted.in_left[static_cast<std::size_t>(id)] =
            rho_star[static_cast<std::size_t>(red.copy_of(id).parent)];
      const FractionalAssignment back = lift_cut(g, red, lifted);
      const auto deg = g.degrees();
      for (VertexId v = 0; v < g.n; ++v) {
        if (deg[static_cast<std::size_t>(v)] == 0) continue;
        if (back.rho[static_cast<std::size_t>(v)] !=
            (rho_star[static_cast<std::size_t>(v)] ? 1.0 : 0.0))
          ok = false;
      }
    }
    out.push_back(make_result("reduction.lift-roundtrip", ok, "0/1 assignments recovered"));
  }

  return out;
}

std::vector<PropertyResult> suite_types(std::uint64_t seed) {
  std::vector<PropertyResult> out;

  {
    const TrialCount tc = canonical_invariance(1000, seed);
    out.push_back(make_result("types.canonical-invariance", tc.passed == tc.trials,
                              frac(tc.passed, tc.trials)));
  }

  {
    bool ok = true;
    for (int t = 0; t < 25 && ok; ++t) {
      const DirectedMultigraph g = bounded_degree_mix_graph(50, seed + static_cast<std::uint64_t>(t));
      const std::vector<std::uint32_t> labels(static_cast<std::size_t>(g.n), 0);
      const TypeCountMap counts = edge_type_counts(g, labels, 1, 3);
      std::int64_t total = 0;
      for (const auto& [id, c] : counts) total += c;
      if (total != g.m()) ok = false;
    }
    out.push_back(make_result("types.counts-sum-exact", ok, "sum of counts = m"));
  }

  {
    const TrialCount tc = full_sample_consistency(seed);
    out.push_back(make_result("types.full-sample-consistency", tc.passed == tc.trials,
                              frac(tc.passed, tc.trials)));
  }

  {
    // rescaling: two types with sizes 2 and 3, unit counts, p = 1/2
    BallGraph b2;
    b2.labels = {0, 0};
    b2.complete = {1, 1};
    b2.edges = {{0, 1}};
    b2.ell = 1;
    BallGraph b3;
    b3.labels = {0, 0, 0};
    b3.complete = {1, 1, 0};
    b3.edges = {{0, 1}, {1, 2}};
    b3.ell = 1;
    TypeCountMap counts;
    counts[canonicalize(b2)] = 1;
    counts[canonicalize(b3)] = 1;
    const TypeDistribution d = rescaled_distribution(counts, 0.5);
    bool ok = true;
    for (const auto& [id, mass] : d.mass) {
      if (id.size == 2 && std::fabs(mass - 1.0 / 3.0) > 1e-12) ok = false;
      if (id.size == 3 && std::fabs(mass - 2.0 / 3.0) > 1e-12) ok = false;
    }
    out.push_back(make_result("types.rescale-formula", ok, "(1/3, 2/3) at p=1/2"));
  }

  {
    // tv axioms
    BallGraph b2;
    b2.labels = {0, 0};
    b2.complete = {1, 1};
    b2.edges = {{0, 1}};
    b2.ell = 1;
    BallGraph b2b = b2;
    b2b.labels = {1, 1};
    TypeDistribution da, db, dc;
    da.mass[canonicalize(b2)] = 1.0;
    db.mass[canonicalize(b2b)] = 1.0;
    dc.mass[canonicalize(b2)] = 0.5;
    dc.mass[canonicalize(b2b)] = 0.5;
    const bool ok = tv_distance(da, da) == 0.0 && tv_distance(da, db) == 1.0 &&
                    std::fabs(tv_distance(dc, db) - 0.5) < 1e-12;
    out.push_back(make_result("types.tv-axioms", ok, "identity, disjoint, mixture"));
  }

  {
    const TrialCount tc = type_estimation(100, 2000, 0.3, 1, 0.1, seed);
    out.push_back(make_result("types.sampled-estimation", tc.passed >= 85,
                              frac(tc.passed, tc.trials) + " " + tc.detail));
  }

  return out;
}

std::vector<PropertyResult> suite_local(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  LocalRule rule;
  rule.priority_bits = 4;
  rule.coin_bits = 4;

  {
    int good = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
      const BallGraph b = random_ball(seed * 3 + static_cast<std::uint64_t>(t), 256);
      const BallGraph p = permuted_ball(b, seed ^ (static_cast<std::uint64_t>(t) * 7));
      if (local_eval(b, rule) == local_eval(p, rule)) ++good;
    }
    out.push_back(make_result("local.eval-invariance", good == trials, frac(good, trials)));
  }

  {
    bool ok = true;
    for (int t = 0; t < 300 && ok; ++t) {
      const BallGraph b = random_ball(seed * 5 + static_cast<std::uint64_t>(t), 16);
      const double v = local_eval(b, rule);
      if (v != 0.0 && v != 0.25 && v != 0.5 && v != 1.0) ok = false;
    }
    out.push_back(make_result("local.value-lattice", ok, "values in {0, 1/4, 1/2, 1}"));
  }

  {
    // directed path, priorities strictly increasing away from the rooted edge
    BallGraph b;
    const int n = 7;
    b.labels.resize(n);
    b.complete.resize(n);
    b.ell = 3;
    b.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
    b.root_tail = 3;
    b.root_head = 4;
    const int dist[7] = {3, 2, 1, 0, 0, 1, 2};
    for (int v = 0; v < n; ++v) {
      b.labels[static_cast<std::size_t>(v)] =
          static_cast<std::uint32_t>(dist[v] << 4) | static_cast<std::uint32_t>(v);
      b.complete[static_cast<std::size_t>(v)] = dist[v] <= 2 ? 1 : 0;
    }
    const auto values = resolve_assignments(b, rule);
    bool ok = values[0] == 0.5;  // distance ell, incomplete
    for (int v = 1; v < n; ++v)
      if (values[static_cast<std::size_t>(v)] == 0.5) ok = false;
    out.push_back(make_result("local.priority-chain", ok, "complete prefix resolves"));
  }

  {
    const SoundnessCount sc = local_soundness(100, seed);
    const bool ok = sc.lower_ok >= 85 && sc.upper_ok >= 95;
    out.push_back(make_result("local.soundness",
                              ok, "lower " + frac(sc.lower_ok, sc.trials) + " upper " +
                                      frac(sc.upper_ok, sc.trials)));
  }

  return out;
}

std::vector<PropertyResult> suite_stream(std::uint64_t seed) {
  std::vector<PropertyResult> out;

  {
    const double p = claim52_p_value(10000, seed);
    std::ostringstream os;
    os << "p = " << p;
    out.push_back(make_result("stream.claim52-relabeling", p > 0.01, os.str()));
  }

  {
    // store-deg exactness for low-degree sampled vertices
    bool ok = true;
    for (int t = 0; t < 10 && ok; ++t) {
      const std::uint64_t s = seed * 53 + static_cast<std::uint64_t>(t);
      const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 40, 80, {}, s).graph;
      ParameterSet params = coupling_params(g.n);
      VectorEdgeStream stream(g);
      SamplerState st;
      two_pass_estimate(stream, params, s, &st);
      const auto deg = g.degrees();
      const double thresh = params.storedeg_threshold();
      for (VertexId v = 0; v < g.n; ++v) {
        const auto it = st.count.find(v);
        if (it == st.count.end() || it->second <= 0) continue;
        if (static_cast<double>(deg[static_cast<std::size_t>(v)]) >= thresh) continue;
        const auto sd = st.store_deg.find(v);
        const std::int64_t got = sd == st.store_deg.end() ? 0 : sd->second;
        if (got != deg[static_cast<std::size_t>(v)]) ok = false;
      }
    }
    out.push_back(make_result("stream.storedeg-exact", ok, "store-deg = deg below threshold"));
  }

  {
    // beta = 0: streamed sampling equals an offline reduction on the same tape
    bool ok = true;
    for (int t = 0; t < 10 && ok; ++t) {
      const std::uint64_t s = seed * 59 + static_cast<std::uint64_t>(t);
      const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 24, 48, {}, s).graph;
      const ParameterSet params = coupling_params(g.n);
      VectorEdgeStream stream(g);
      SamplerState st;
      three_pass_estimate(stream, params, s, &st);
      const ApproxDegrees ad = make_approx_degrees(g, 0.5, 1.0, DegreeMode::kExact, s);
      const ReducedGraph red = trevisan_reduce_d(g, ad, params.d, params.degree_cap, s);
      // edge multisets
      std::vector<std::pair<std::int64_t, std::int64_t>> offline(red.edges);
      std::vector<std::pair<std::int64_t, std::int64_t>> streamed;
      for (const CopyEdgeRec& r : st.eprime)
        streamed.emplace_back(red.dense_id(r.u, r.i), red.dense_id(r.v, r.j));
      std::sort(offline.begin(), offline.end());
      std::sort(streamed.begin(), streamed.end());
      if (offline != streamed) ok = false;
      // degree counters match the reduced graph
      const auto cdeg = red.copy_degrees();
      for (const auto& [v, ctrs] : st.dctr)
        for (std::size_t i = 0; i < ctrs.size(); ++i)
          if (ctrs[i] != cdeg[static_cast<std::size_t>(red.dense_id(v, static_cast<std::int64_t>(i)))])
            ok = false;
    }
    out.push_back(make_result("stream.beta0-offline-consistency", ok,
                              "E' and d(v,i) match the reduction"));
  }

  {
    const TrialCount tc = coupling_equality(100, seed);
    out.push_back(make_result("stream.two-three-coupling", tc.passed == tc.trials,
                              frac(tc.passed, tc.trials)));
  }

  {
    // est-deg accuracy on a high-degree vertex (Hoeffding-level frequency)
    const VertexId n = 30000;
    std::vector<Edge> edges;
    edges.reserve(50000);
    for (int i = 0; i < 50000; ++i)
      edges.push_back({0, static_cast<VertexId>(1 + (i % (n - 1)))});
    const DirectedMultigraph g = DirectedMultigraph::make(n, std::move(edges));
    ParameterSet params = ParameterSet::practical(n);
    params.epsilon = 0.49;
    params.beta = 0.2;
    params.estdeg_increment_exponent = params.beta / 4.0;
    params.storedeg_threshold_exponent = 2.0 * params.beta / 3.0;
    params.estdeg_nonzero_cap_exponent = 1.0 - params.beta / 8.0;
    VectorEdgeStream stream(g);
    const double degv = 50000.0;
    const double band = params.epsilon / 100.0 * degv;
    const double incr = params.estdeg_increment();
    const double hoeffding =
        2.0 * std::exp(-2.0 * band * band / (degv * incr * incr));
    int in_band = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
      SamplerState st;
      KeyedRng rng(seed + static_cast<std::uint64_t>(t));
      pass1_sample(stream, params, rng, true, st);
      const double est = st.est_deg.count(0) ? st.est_deg[0] : 0.0;
      if (est >= degv - band && est <= degv + band) ++in_band;
    }
    const double freq = static_cast<double>(in_band) / trials;
    const double required = std::max(0.0, 1.0 - hoeffding);
    std::ostringstream os;
    os << "freq " << freq << " >= " << required;
    out.push_back(make_result("stream.estdeg-accuracy", freq >= required, os.str()));
  }

  return out;
}

}  // namespace

std::vector<PropertyResult> validate_suite(const std::string& name, std::uint64_t seed) {
  if (name == "reduction") return suite_reduction(seed);
  if (name == "types") return suite_types(seed);
  if (name == "local") return suite_local(seed);
  if (name == "stream") return suite_stream(seed);
  if (name == "all") {
    std::vector<PropertyResult> out;
    for (const char* s : {"reduction", "types", "local", "stream"}) {
      auto part = validate_suite(s, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace dicut
