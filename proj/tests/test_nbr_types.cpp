#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dicut/nbr_types.hpp"
#include "dicut/validate.hpp"
#include "doctest.h"

using namespace dicut;

namespace {

std::vector<std::uint32_t> const_labels(VertexId n, std::uint32_t v = 0) {
  return std::vector<std::uint32_t>(static_cast<std::size_t>(n), v);
}

}  // namespace

TEST_CASE("ball extraction") {
  const DirectedMultigraph single = DirectedMultigraph::make(2, {{0, 1}});
  const BallGraph b = ball_extract(single, const_labels(2), 1, 4, 0);
  CHECK(b.vertex_count() == 2);
  CHECK(b.edges.size() == 1);
  CHECK(b.complete[0] == 1);
  CHECK(b.complete[1] == 1);

  // path 0->1->2->3, rooted at the middle edge, radius 1
  const DirectedMultigraph path = DirectedMultigraph::make(4, {{0, 1}, {1, 2}, {2, 3}});
  const BallGraph pb = ball_extract(path, const_labels(4), 1, 4, 1);
  CHECK(pb.vertex_count() == 4);
  // roots are local 0 and 1 (host 1 and 2); they sit at distance 0
  CHECK(pb.complete[0] == 1);
  CHECK(pb.complete[1] == 1);
  CHECK(pb.complete[2] == 0);
  CHECK(pb.complete[3] == 0);

  // parallel edges are both kept
  const DirectedMultigraph multi = DirectedMultigraph::make(2, {{0, 1}, {0, 1}});
  const BallGraph mb = ball_extract(multi, const_labels(2), 1, 4, 0);
  CHECK(mb.edges.size() == 2);

  // degree bound enforced
  const DirectedMultigraph starg =
      DirectedMultigraph::make(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK_THROWS_WITH(ball_extract(starg, const_labels(5), 1, 3, 0),
                    "degree bound exceeded in ball");
}

TEST_CASE("canonicalization basics") {
  // labels distinguish
  BallGraph ab;
  ab.labels = {1, 2};
  ab.complete = {1, 1};
  ab.edges = {{0, 1}};
  ab.ell = 1;
  BallGraph ba = ab;
  ba.labels = {2, 1};
  CHECK_FALSE(canonicalize(ab) == canonicalize(ba));

  // direction relative to the ordered roots distinguishes
  BallGraph fwd;
  fwd.labels = {0, 0};
  fwd.complete = {1, 1};
  fwd.edges = {{0, 1}};
  fwd.ell = 1;
  BallGraph rev = fwd;
  rev.edges = {{1, 0}};
  CHECK_FALSE(canonicalize(fwd) == canonicalize(rev));

  // complete flags are part of the type
  BallGraph flagged = fwd;
  flagged.complete = {1, 0};
  CHECK_FALSE(canonicalize(fwd) == canonicalize(flagged));

  CHECK(canonicalize(fwd).size == 2);
}

TEST_CASE("canonicalization is isomorphism invariant") {
  const TrialCount tc = canonical_invariance(300, 2024);
  CHECK(tc.passed == tc.trials);
}

TEST_CASE("canonical ids decode to the same class") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BallGraph b = random_ball(seed, 4);
    const TypeId id = canonicalize(b);
    const BallGraph back = decode_type(id);
    CHECK(back.vertex_count() == b.vertex_count());
    CHECK(canonicalize(back) == id);
  }
}

TEST_CASE("three-cycle has one rotational type") {
  const DirectedMultigraph tri = DirectedMultigraph::make(3, {{0, 1}, {1, 2}, {2, 0}});
  const TypeDistribution d = edge_type_distribution(tri, const_labels(3), 1, 2);
  CHECK(d.mass.size() == 1);
  CHECK(d.mass.begin()->second == doctest::Approx(1.0));
}

TEST_CASE("edge type distribution on unions of isolated edges") {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) edges.push_back({static_cast<VertexId>(2 * i), static_cast<VertexId>(2 * i + 1)});
  const DirectedMultigraph g = DirectedMultigraph::make(10, std::move(edges));
  const TypeDistribution same = edge_type_distribution(g, const_labels(10), 1, 2);
  CHECK(same.mass.size() == 1);

  std::vector<std::uint32_t> labels = const_labels(10, 7);
  labels[0] = 1;
  labels[1] = 2;  // one edge gets a distinct label pair
  const TypeDistribution two = edge_type_distribution(g, labels, 1, 2);
  CHECK(two.mass.size() == 2);
}

TEST_CASE("two distinct isolated edges split mass evenly") {
  const DirectedMultigraph g = DirectedMultigraph::make(4, {{0, 1}, {2, 3}});
  std::vector<std::uint32_t> labels = {1, 1, 2, 2};
  const TypeDistribution d = edge_type_distribution(g, labels, 1, 2);
  REQUIRE(d.mass.size() == 2);
  for (const auto& [id, mass] : d.mass) CHECK(mass == doctest::Approx(0.5));
}

TEST_CASE("tv distance") {
  BallGraph a;
  a.labels = {0, 0};
  a.complete = {1, 1};
  a.edges = {{0, 1}};
  a.ell = 1;
  BallGraph b = a;
  b.labels = {3, 3};
  TypeDistribution da, db, dmix;
  da.mass[canonicalize(a)] = 1.0;
  db.mass[canonicalize(b)] = 1.0;
  dmix.mass[canonicalize(a)] = 0.5;
  dmix.mass[canonicalize(b)] = 0.5;
  CHECK(tv_distance(da, da) == 0.0);
  CHECK(tv_distance(da, db) == 1.0);
  CHECK(tv_distance(dmix, db) == doctest::Approx(0.5));
}

TEST_CASE("rescaled distribution") {
  BallGraph a;
  a.labels = {0, 0};
  a.complete = {1, 1};
  a.edges = {{0, 1}};
  a.ell = 1;
  BallGraph b3;
  b3.labels = {0, 0, 0};
  b3.complete = {1, 1, 0};
  b3.edges = {{0, 1}, {1, 2}};
  b3.ell = 1;

  TypeCountMap counts;
  counts[canonicalize(a)] = 3;
  counts[canonicalize(b3)] = 5;
  const TypeDistribution unit = rescaled_distribution(counts, 1.0);
  CHECK(unit.mass.at(canonicalize(a)) == doctest::Approx(3.0 / 8.0));

  TypeCountMap ones;
  ones[canonicalize(a)] = 1;
  ones[canonicalize(b3)] = 1;
  const TypeDistribution half = rescaled_distribution(ones, 0.5);
  CHECK(half.mass.at(canonicalize(a)) == doctest::Approx(1.0 / 3.0));
  CHECK(half.mass.at(canonicalize(b3)) == doctest::Approx(2.0 / 3.0));

  TypeCountMap solo;
  solo[canonicalize(b3)] = 4;
  CHECK(rescaled_distribution(solo, 0.25).mass.at(canonicalize(b3)) == doctest::Approx(1.0));

  TypeCountMap zeros;
  zeros[canonicalize(a)] = 0;
  CHECK_THROWS_WITH_AS(rescaled_distribution(zeros, 0.5), "empty sample", std::runtime_error);
}

TEST_CASE("sampled type counts") {
  const DirectedMultigraph path = DirectedMultigraph::make(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto labels = const_labels(4);
  const auto deg = path.degrees();

  // full sample reproduces the exact counts
  std::vector<VertexId> all(4);
  std::iota(all.begin(), all.end(), 0);
  std::unordered_map<VertexId, std::int64_t> deg_map;
  for (VertexId v = 0; v < 4; ++v) deg_map[v] = deg[static_cast<std::size_t>(v)];
  const TypeCountMap full = sampled_type_counts(path, all, labels, 1, 3, deg_map);
  const TypeCountMap exact = edge_type_counts(path, labels, 1, 3);
  CHECK(full == exact);

  // sample {1,2}: the middle edge is present but its endpoints lost a
  // neighbor, so nothing is certified
  std::unordered_map<VertexId, std::int64_t> mid_deg{{1, deg[1]}, {2, deg[2]}};
  const TypeCountMap mid = sampled_type_counts(path, {1, 2}, labels, 1, 3, mid_deg);
  std::int64_t total = 0;
  for (const auto& [id, c] : mid) total += c;
  CHECK(total == 0);

  // missing endpoint of the only edge: nothing counted
  const DirectedMultigraph single = DirectedMultigraph::make(2, {{0, 1}});
  const TypeCountMap none =
      sampled_type_counts(single, {0}, const_labels(2), 1, 2, {{0, 1}});
  CHECK(none.empty());

  // missing degree record is an error
  CHECK_THROWS_AS(sampled_type_counts(path, {0, 1}, labels, 1, 3, {{0, 1LL}}),
                  std::invalid_argument);
}

TEST_CASE("distribution csv") {
  const DirectedMultigraph g = DirectedMultigraph::make(2, {{0, 1}});
  const TypeDistribution d = edge_type_distribution(g, const_labels(2), 1, 2);
  std::ostringstream os;
  write_distribution_csv(os, d);
  CHECK(os.str().find("type-id-hex,size,mass") == 0);
  CHECK(os.str().find(",2,1") != std::string::npos);
}
