#include "dicut/local_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicut {

namespace {

bool is_prime_u64(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (x % p == 0) return x == p;
  }
  // deterministic Miller-Rabin for 64-bit
  std::uint64_t d = x - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [&](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % x);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t res = 1;
    a %= x;
    while (e) {
      if (e & 1) res = mulmod(res, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return res;
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t v = powmod(a, d);
    if (v == 1 || v == x - 1) continue;
    bool witness = true;
    for (int i = 0; i < r - 1; ++i) {
      v = mulmod(v, v);
      if (v == x - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace

PairwiseHash sample_hash(std::uint64_t n_domain, int c, std::uint64_t seed) {
  if (c < 1 || c > 31) throw std::invalid_argument("label width must lie in [1,31]");
  PairwiseHash h;
  h.c = c;
  std::uint64_t q = std::max<std::uint64_t>(n_domain, 1ull << c);
  if (q < 2) q = 2;
  while (!is_prime_u64(q)) ++q;
  h.q = q;
  Substream sub = KeyedRng(seed).at(rng_purpose::kHash, 0);
  h.a = sub.below(q);
  h.b = sub.below(q);
  return h;
}

namespace {

struct ResolvedBall {
  std::vector<double> values;  // by original local index
};

ResolvedBall resolve_impl(const BallGraph& b, const LocalRule& rule) {
  const std::int32_t n = b.vertex_count();
  ResolvedBall out;
  out.values.assign(static_cast<std::size_t>(n), 0.5);

  if (rule.kind == LocalRuleKind::kObliviousBias) {
    std::vector<std::int64_t> outdeg(static_cast<std::size_t>(n), 0), indeg(static_cast<std::size_t>(n), 0);
    for (const auto& e : b.edges) {
      ++outdeg[static_cast<std::size_t>(e.first)];
      ++indeg[static_cast<std::size_t>(e.second)];
    }
    for (std::int32_t v = 0; v < n; ++v) {
      if (!b.complete[static_cast<std::size_t>(v)]) continue;
      if (outdeg[static_cast<std::size_t>(v)] > indeg[static_cast<std::size_t>(v)])
        out.values[static_cast<std::size_t>(v)] = 1.0;
      else if (outdeg[static_cast<std::size_t>(v)] < indeg[static_cast<std::size_t>(v)])
        out.values[static_cast<std::size_t>(v)] = 0.0;
    }
    return out;
  }

  if (rule.priority_bits < 1) throw std::invalid_argument("priority bits must be >= 1");
  if (rule.coin_bits < 0) throw std::invalid_argument("coin bits must be >= 0");

  // Canonical positions break priority ties, keeping the rule a function of
  // the isomorphism class.
  std::vector<std::int32_t> canon_order;
  canonicalize(b, &canon_order);
  std::vector<std::int32_t> canon_pos(static_cast<std::size_t>(n));
  for (std::int32_t p = 0; p < n; ++p)
    canon_pos[static_cast<std::size_t>(canon_order[static_cast<std::size_t>(p)])] = p;

  const std::uint32_t coin_mask = rule.coin_bits >= 32 ? ~0u : ((1u << rule.coin_bits) - 1u);
  const double coin_scale = std::pow(2.0, -rule.coin_bits);
  auto priority_of = [&](std::int32_t v) {
    return static_cast<std::uint64_t>(b.labels[static_cast<std::size_t>(v)] >> rule.coin_bits);
  };
  auto coin_of = [&](std::int32_t v) {
    if (rule.coin_bits == 0) return 0.0;
    return static_cast<double>(b.labels[static_cast<std::size_t>(v)] & coin_mask) * coin_scale;
  };

  // total order: (priority bits, canonical position)
  std::vector<std::int32_t> order(static_cast<std::size_t>(n));
  for (std::int32_t v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  std::sort(order.begin(), order.end(), [&](std::int32_t x, std::int32_t y) {
    const auto px = priority_of(x), py = priority_of(y);
    if (px != py) return px < py;
    return canon_pos[static_cast<std::size_t>(x)] < canon_pos[static_cast<std::size_t>(y)];
  });
  std::vector<std::int32_t> rank(static_cast<std::size_t>(n));
  for (std::int32_t i = 0; i < n; ++i) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  std::vector<std::vector<std::int32_t>> nbrs(static_cast<std::size_t>(n));
  for (const auto& e : b.edges) {
    nbrs[static_cast<std::size_t>(e.first)].push_back(e.second);
    nbrs[static_cast<std::size_t>(e.second)].push_back(e.first);
  }

  // Dependencies point strictly down the total order, so one pass in
  // increasing rank computes the least fixed point.
  std::vector<char> resolvable(static_cast<std::size_t>(n), 0);
  for (std::int32_t i = 0; i < n; ++i) {
    const std::int32_t v = order[static_cast<std::size_t>(i)];
    if (!b.complete[static_cast<std::size_t>(v)]) continue;
    bool ok = true;
    for (std::int32_t w : nbrs[static_cast<std::size_t>(v)])
      if (rank[static_cast<std::size_t>(w)] < rank[static_cast<std::size_t>(v)] &&
          !resolvable[static_cast<std::size_t>(w)]) {
        ok = false;
        break;
      }
    resolvable[static_cast<std::size_t>(v)] = ok ? 1 : 0;
  }

  // double-greedy decisions in increasing rank
  enum : char { kUndecided = 0, kLeft = 1, kRight = 2 };
  std::vector<char> state(static_cast<std::size_t>(n), kUndecided);
  for (std::int32_t i = 0; i < n; ++i) {
    const std::int32_t v = order[static_cast<std::size_t>(i)];
    if (!resolvable[static_cast<std::size_t>(v)]) continue;
    std::int64_t a = 0, bb = 0;
    for (const auto& e : b.edges) {
      if (e.first == v) {
        const char su = state[static_cast<std::size_t>(e.second)];
        if (su != kLeft) ++a;
        if (su == kRight) --bb;
      }
      if (e.second == v) {
        const char su = state[static_cast<std::size_t>(e.first)];
        if (su == kLeft) --a;
        if (su != kRight) ++bb;
      }
    }
    const double ap = a > 0 ? static_cast<double>(a) : 0.0;
    const double bp = bb > 0 ? static_cast<double>(bb) : 0.0;
    const bool left = (ap + bp == 0.0) || coin_of(v) < ap / (ap + bp);
    state[static_cast<std::size_t>(v)] = left ? kLeft : kRight;
    out.values[static_cast<std::size_t>(v)] = left ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace

std::vector<double> resolve_assignments(const BallGraph& b, const LocalRule& rule) {
  return resolve_impl(b, rule).values;
}

double local_eval(const BallGraph& b, const LocalRule& rule) {
  const auto values = resolve_impl(b, rule).values;
  return values[static_cast<std::size_t>(b.root_tail)] *
         (1.0 - values[static_cast<std::size_t>(b.root_head)]);
}

double local_eval(const TypeId& id, const LocalRule& rule) {
  return local_eval(decode_type(id), rule);
}

double LocalEvaluator::eval(const TypeId& id) {
  auto it = cache_.find(id.bytes);
  if (it != cache_.end()) return it->second;
  const double v = local_eval(id, rule_);
  cache_.emplace(id.bytes, v);
  return v;
}

double estimate(const TypeDistribution& d, const LocalRule& rule) {
  LocalEvaluator ev(rule);
  double acc = 0.0;
  for (const auto& [id, mass] : d.mass) acc += mass * ev.eval(id);
  return acc;
}

}  // namespace dicut
