#include <algorithm>
#include <sstream>

#include "dicut/graph.hpp"
#include "doctest.h"

using namespace dicut;

namespace {

DirectedMultigraph triangle() { return DirectedMultigraph::make(3, {{0, 1}, {1, 2}, {2, 0}}); }

// independent exhaustive enumerator, kept deliberately naive
std::int64_t brute_best_cut(const DirectedMultigraph& g) {
  std::int64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    std::int64_t c = 0;
    for (const Edge& e : g.edges)
      if (((mask >> e.tail) & 1u) && !((mask >> e.head) & 1u)) ++c;
    best = std::max(best, c);
  }
  return best;
}

Dicut cut_of_mask(VertexId n, std::uint32_t mask) {
  Dicut cut;
  cut.in_left.resize(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) cut.in_left[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
  return cut;
}

}  // namespace

TEST_CASE("dicut value on fixed instances") {
  const DirectedMultigraph single = DirectedMultigraph::make(2, {{0, 1}});
  CHECK(dicut_value(single, cut_of_mask(2, 0b01)) == 1.0);

  const DirectedMultigraph pair = DirectedMultigraph::make(2, {{0, 1}, {1, 0}});
  CHECK(dicut_value(pair, cut_of_mask(2, 0b01)) == 0.5);

  // best over all 8 cuts of the 3-cycle is 1 edge
  const DirectedMultigraph tri = triangle();
  CHECK(brute_best_cut(tri) == 1);
  CHECK(dicut_value(tri, cut_of_mask(3, 0b001)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("dicut value errors and invariance") {
  const DirectedMultigraph empty = DirectedMultigraph::make(3, {});
  CHECK_THROWS_WITH_AS(dicut_value(empty, cut_of_mask(3, 1)), "undefined on empty graph",
                       std::invalid_argument);

  // value does not depend on stream order
  DirectedMultigraph g = generate(GraphKind::kUniformRandom, 8, 20, {}, 7).graph;
  const Dicut cut = cut_of_mask(8, 0b10110101);
  const std::int64_t before = dicut_cut_count(g, cut);
  std::reverse(g.edges.begin(), g.edges.end());
  CHECK(dicut_cut_count(g, cut) == before);
}

TEST_CASE("expected dicut") {
  const DirectedMultigraph tri = triangle();
  FractionalAssignment half{std::vector<double>(3, 0.5)};
  CHECK(expected_dicut(tri, half) == doctest::Approx(0.25));

  FractionalAssignment mixed{{1.0, 0.0, 0.5}};
  CHECK(expected_dicut(tri, mixed) == doctest::Approx(1.0 / 3.0));

  // 0/1 assignments collapse to dicut_value, exactly
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 6, 12, {}, seed).graph;
    for (std::uint32_t mask = 0; mask < 64; mask += 7) {
      FractionalAssignment rho;
      rho.rho.resize(6);
      for (int v = 0; v < 6; ++v) rho.rho[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
      CHECK(expected_dicut(g, rho) == dicut_value(g, cut_of_mask(6, mask)));
    }
  }
}

TEST_CASE("exact oracle") {
  const DirectedMultigraph single = DirectedMultigraph::make(2, {{0, 1}});
  const CutResult r = max_dicut_exact(single);
  CHECK(r.value() == 1.0);
  CHECK(r.witness.in_left[0]);
  CHECK_FALSE(r.witness.in_left[1]);

  const DirectedMultigraph path = DirectedMultigraph::make(3, {{0, 1}, {1, 2}});
  CHECK(max_dicut_exact(path).value() == doctest::Approx(0.5));
  CHECK(brute_best_cut(path) == 1);

  CHECK(max_dicut_exact(triangle()).value() == doctest::Approx(1.0 / 3.0));

  const DirectedMultigraph big = DirectedMultigraph::make(30, {{0, 1}});
  CHECK_THROWS_WITH_AS(max_dicut_exact(big), "instance too large for exact oracle",
                       std::invalid_argument);
}

TEST_CASE("exact oracle agrees with an independent enumerator") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Substream sub = KeyedRng(seed).at(rng_purpose::kGenerate, 99);
    const VertexId n = 2 + static_cast<VertexId>(sub.below(9));
    const std::int64_t m = 1 + static_cast<std::int64_t>(sub.below(15));
    const DirectedMultigraph g = generate(GraphKind::kUniformRandom, n, m, {}, seed).graph;
    const CutResult r = max_dicut_exact(g);
    CHECK(r.cut_edges == brute_best_cut(g));
    CHECK(dicut_cut_count(g, r.witness) == r.cut_edges);  // witness attains the value
    CHECK(4 * r.cut_edges >= g.m());                      // random-assignment bound
  }
}

TEST_CASE("local search") {
  const DirectedMultigraph single = DirectedMultigraph::make(2, {{0, 1}});
  CHECK(max_dicut_localsearch(single, 1, 3).value() == 1.0);

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 12, 30, {}, seed).graph;
    const CutResult ls = max_dicut_localsearch(g, 8, seed);
    const CutResult ex = max_dicut_exact(g);
    CHECK(ls.cut_edges <= ex.cut_edges);
    CHECK(ls.value() >= 0.25);
    CHECK(dicut_cut_count(g, ls.witness) == ls.cut_edges);
  }

  // deterministic given seed
  const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 20, 60, {}, 5).graph;
  CHECK(max_dicut_localsearch(g, 4, 11).cut_edges == max_dicut_localsearch(g, 4, 11).cut_edges);
}

TEST_CASE("generators") {
  CHECK_THROWS_AS(generate(GraphKind::kUniformRandom, 1, 3, {}, 0), std::invalid_argument);

  // n=2 m=1: the only possible edge up to direction
  const DirectedMultigraph two = generate(GraphKind::kUniformRandom, 2, 1, {}, 42).graph;
  CHECK(two.m() == 1);
  CHECK(two.edges[0].tail != two.edges[0].head);

  GeneratorParams gp;
  gp.plant_fraction = 1.0;
  const GeneratedGraph planted = generate(GraphKind::kPlantedDicut, 10, 40, gp, 3);
  CHECK(*planted.planted_value == 1.0);
  CHECK(max_dicut_exact(planted.graph).value() == 1.0);

  gp.plant_fraction = 0.75;
  const GeneratedGraph p75 = generate(GraphKind::kPlantedDicut, 12, 40, gp, 4);
  CHECK(*p75.planted_value == doctest::Approx(0.75));
  CHECK(dicut_value(p75.graph, p75.planted_cut) == doctest::Approx(*p75.planted_value));
  CHECK(max_dicut_exact(p75.graph).value() >= 0.75);

  // power law: heavy head beats 5x the average degree in >= 90% of seeds
  int heavy = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorParams pl;
    pl.exponent = 2.5;
    const DirectedMultigraph g = generate(GraphKind::kPowerLaw, 1000, 5000, pl, seed).graph;
    const auto deg = g.degrees();
    const std::int64_t maxdeg = *std::max_element(deg.begin(), deg.end());
    const double avg = 2.0 * static_cast<double>(g.m()) / static_cast<double>(g.n);
    if (static_cast<double>(maxdeg) > 5.0 * avg) ++heavy;
  }
  CHECK(heavy >= 90);
}

TEST_CASE("edge list io") {
  const GeneratedGraph gen = generate(GraphKind::kUniformRandom, 9, 17, {}, 8);
  std::ostringstream os;
  write_edge_list(os, gen.graph, {"generated fixture"});
  std::istringstream is(os.str());
  const DirectedMultigraph back = read_edge_list(is);
  CHECK(back.n == gen.graph.n);
  CHECK(back.edges == gen.graph.edges);

  std::istringstream commented("# leading comment\n2 1\n# mid comment\n0 1\n");
  const DirectedMultigraph c = read_edge_list(commented);
  CHECK(c.m() == 1);

  std::istringstream bad("2 1\n0 5\n");
  CHECK_THROWS(read_edge_list(bad));
}

TEST_CASE("graph construction invariants") {
  CHECK_THROWS_AS(DirectedMultigraph::make(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(DirectedMultigraph::make(2, {{0, 2}}), std::invalid_argument);
  const DirectedMultigraph g = DirectedMultigraph::make(3, {{0, 1}, {0, 1}, {2, 1}});
  const auto deg = g.degrees();
  CHECK(deg[0] == 2);
  CHECK(deg[1] == 3);
  CHECK(deg[2] == 1);
}
