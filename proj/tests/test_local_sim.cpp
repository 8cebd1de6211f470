#include <cmath>
#include <sstream>

#include "dicut/local_sim.hpp"
#include "dicut/validate.hpp"
#include "doctest.h"

using namespace dicut;

namespace {

LocalRule greedy_rule(int cp = 4, int cf = 4) {
  LocalRule r;
  r.priority_bits = cp;
  r.coin_bits = cf;
  return r;
}

BallGraph isolated_edge_ball(std::uint32_t la = 0, std::uint32_t lb = 0) {
  BallGraph b;
  b.labels = {la, lb};
  b.complete = {1, 1};
  b.edges = {{0, 1}};
  b.ell = 1;
  return b;
}

}  // namespace

TEST_CASE("pairwise hash") {
  // a = 0 collapses to a constant
  PairwiseHash h{/*q=*/17, /*a=*/0, /*b=*/5, /*c=*/3};
  for (std::uint64_t x = 0; x < 10; ++x) CHECK(h.eval(x) == 5);

  // same seed, same function
  const PairwiseHash h1 = sample_hash(100, 4, 77);
  const PairwiseHash h2 = sample_hash(100, 4, 77);
  CHECK(h1.a == h2.a);
  CHECK(h1.b == h2.b);
  CHECK(h1.q == h2.q);
  CHECK(h1.q >= 100);

  // c=1, q=3: enumerate the 9-member family; the truncated joint
  // probabilities stay within 0.2 of uniform
  for (std::uint64_t x = 0; x < 3; ++x)
    for (std::uint64_t y = 0; y < 3; ++y) {
      if (x == y) continue;
      for (std::uint32_t alpha = 0; alpha < 2; ++alpha)
        for (std::uint32_t beta = 0; beta < 2; ++beta) {
          int hits = 0;
          for (std::uint64_t a = 0; a < 3; ++a)
            for (std::uint64_t b = 0; b < 3; ++b) {
              PairwiseHash f{3, a, b, 1};
              if (f.eval(x) == alpha && f.eval(y) == beta) ++hits;
            }
          CHECK(std::fabs(hits / 9.0 - 0.25) <= 0.2);
        }
    }
}

TEST_CASE("isolated edge resolves to a forced cut") {
  for (std::uint32_t la : {0u, 17u, 255u})
    for (std::uint32_t lb : {0u, 9u, 254u}) {
      const BallGraph b = isolated_edge_ball(la, lb);
      const auto values = resolve_assignments(b, greedy_rule());
      CHECK(values[0] == 1.0);
      CHECK(values[1] == 0.0);
      CHECK(local_eval(b, greedy_rule()) == 1.0);
    }
}

TEST_CASE("incomplete vertices stay at one half") {
  BallGraph b = isolated_edge_ball();
  b.complete = {0, 0};
  const auto values = resolve_assignments(b, greedy_rule());
  CHECK(values[0] == 0.5);
  CHECK(values[1] == 0.5);
  CHECK(local_eval(b, greedy_rule()) == 0.25);
}

TEST_CASE("root tail forced right annihilates the product") {
  // w (lowest priority) feeds two edges into the tail; after w goes Left the
  // tail's left-marginal is negative and it lands Right
  BallGraph b;
  b.labels = {1u << 4, 2u << 4, 0u << 4};
  b.complete = {1, 1, 1};
  b.edges = {{0, 1}, {2, 0}, {2, 0}};
  b.root_tail = 0;
  b.root_head = 1;
  b.ell = 1;
  const auto values = resolve_assignments(b, greedy_rule());
  CHECK(values[2] == 1.0);
  CHECK(values[0] == 0.0);
  CHECK(local_eval(b, greedy_rule()) == 0.0);
}

TEST_CASE("roots resolve independently of higher-priority side branches") {
  // vertices 2,3 hang off the tail through strictly higher priorities; 3 is
  // incomplete but cannot block the roots
  BallGraph b;
  b.labels = {0u << 4, 1u << 4, 2u << 4, 3u << 4};
  b.complete = {1, 1, 1, 0};
  b.edges = {{0, 1}, {0, 2}, {2, 3}};
  b.root_tail = 0;
  b.root_head = 1;
  b.ell = 2;
  const auto values = resolve_assignments(b, greedy_rule());
  CHECK(values[0] != 0.5);
  CHECK(values[1] != 0.5);
  CHECK(values[3] == 0.5);
}

TEST_CASE("oblivious bias rule") {
  LocalRule rule;
  rule.kind = LocalRuleKind::kObliviousBias;
  BallGraph b = isolated_edge_ball();
  const auto values = resolve_assignments(b, rule);
  CHECK(values[0] == 1.0);  // out > in
  CHECK(values[1] == 0.0);  // in > out
  CHECK(local_eval(b, rule) == 1.0);

  BallGraph cyc;
  cyc.labels = {0, 0};
  cyc.complete = {1, 1};
  cyc.edges = {{0, 1}, {1, 0}};
  cyc.ell = 1;
  const auto balanced = resolve_assignments(cyc, rule);
  CHECK(balanced[0] == 0.5);
  CHECK(balanced[1] == 0.5);
}

TEST_CASE("local eval is a class function") {
  const LocalRule rule = greedy_rule();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const BallGraph b = random_ball(seed * 13 + 1, 256);
    const BallGraph p = permuted_ball(b, seed ^ 0xf00dull);
    CHECK(local_eval(b, rule) == local_eval(p, rule));
  }
}

TEST_CASE("local eval lands on the value lattice") {
  const LocalRule rule = greedy_rule();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const double v = local_eval(random_ball(seed * 17 + 3, 8), rule);
    const bool on_lattice = v == 0.0 || v == 0.25 || v == 0.5 || v == 1.0;
    CHECK(on_lattice);
  }
}

TEST_CASE("estimate is linear and memoized") {
  const LocalRule rule = greedy_rule();
  const TypeId t_edge = canonicalize(isolated_edge_ball());
  BallGraph unresolved = isolated_edge_ball();
  unresolved.complete = {0, 0};
  const TypeId t_half = canonicalize(unresolved);

  TypeDistribution point;
  point.mass[t_edge] = 1.0;
  CHECK(estimate(point, rule) == 1.0);

  TypeDistribution mix;
  mix.mass[t_edge] = 0.5;
  mix.mass[t_half] = 0.5;
  CHECK(estimate(mix, rule) == doctest::Approx(0.5 * 1.0 + 0.5 * 0.25));

  LocalEvaluator ev(rule);
  CHECK(ev.eval(t_edge) == ev.eval(t_edge));
}

TEST_CASE("end-to-end soundness sample") {
  const SoundnessCount sc = local_soundness(30, 99);
  CHECK(sc.lower_ok >= 25);
  CHECK(sc.upper_ok >= 28);
}
