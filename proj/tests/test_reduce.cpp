#include <cmath>
#include <sstream>

#include "dicut/reduce.hpp"
#include "doctest.h"

using namespace dicut;

namespace {

DirectedMultigraph star(int leaves) {
  std::vector<Edge> edges;
  for (int i = 0; i < leaves; ++i) edges.push_back({0, static_cast<VertexId>(i + 1)});
  return DirectedMultigraph::make(static_cast<VertexId>(leaves + 1), std::move(edges));
}

}  // namespace

TEST_CASE("approx degrees") {
  const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 10, 25, {}, 1).graph;
  const ApproxDegrees exact = make_approx_degrees(g, 0.3, 0.5, DegreeMode::kExact, 1);
  const auto deg = g.degrees();
  for (VertexId v = 0; v < g.n; ++v) CHECK(exact.ad[static_cast<std::size_t>(v)] == deg[static_cast<std::size_t>(v)]);
  exact.validate(g);

  // star with center degree 100, threshold 50: center lands in [99,101]
  const DirectedMultigraph s = star(100);
  const double zeta = std::log(50.0) / std::log(101.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ApproxDegrees p = make_approx_degrees(s, zeta, 1.0, DegreeMode::kPerturbed, seed);
    CHECK(p.ad[0] >= 99);
    CHECK(p.ad[0] <= 101);
    for (int leaf = 1; leaf <= 100; ++leaf) CHECK(p.ad[static_cast<std::size_t>(leaf)] == 1);
    p.validate(s);
  }

  // perturbation respects the band across many degree profiles
  int vertices_checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorParams pl;
    pl.exponent = 2.2;
    const DirectedMultigraph h = generate(GraphKind::kPowerLaw, 60, 300, pl, seed).graph;
    const ApproxDegrees p = make_approx_degrees(h, 0.2, 0.8, DegreeMode::kPerturbed, seed);
    p.validate(h);
    vertices_checked += h.n;
  }
  CHECK(vertices_checked >= 1000);

  ApproxDegrees bad = exact;
  bad.ad[0] += 5;
  CHECK_THROWS_WITH_AS(bad.validate(g), "invalid degree oracle", std::invalid_argument);
}

TEST_CASE("trevisan d parameter") {
  CHECK(trevisan_d(1.0) == 80);
  CHECK(trevisan_d(0.25) == 1280);
  CHECK(trevisan_d(0.5) == 320);
  CHECK_THROWS_AS(trevisan_d(0.0), std::invalid_argument);
}

TEST_CASE("single edge reduction") {
  const DirectedMultigraph g = DirectedMultigraph::make(2, {{0, 1}});
  const ApproxDegrees ad = make_approx_degrees(g, 0.5, 1.0, DegreeMode::kExact, 9);
  const ReducedGraph red = trevisan_reduce(g, ad, 1.0, 9);
  CHECK(red.d == 80);
  CHECK(red.vertex_count() == 2);
  CHECK(red.edges.size() == 80);  // forced sampling, nothing capped
  CHECK(red.capped_vertices == 0);
  CHECK(max_dicut_exact(red.as_graph()).value() == 1.0);
}

TEST_CASE("exact degrees accept every sample") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 8, 12, {}, seed).graph;
    const ApproxDegrees ad = make_approx_degrees(g, 0.5, 0.5, DegreeMode::kExact, seed);
    const ReducedGraph red = trevisan_reduce(g, ad, 0.5, seed);
    CHECK(red.precap_edge_count == red.d * g.m());
    CHECK(red.vertex_count() == 2 * g.m());
    for (std::int64_t dv : red.copy_degrees()) CHECK(dv <= red.degree_cap);
  }
}

TEST_CASE("inflated oracle rejection rate") {
  // center degree 200, oracle says 202: per-round rejection 1 - 200/202
  std::vector<Edge> edges;
  for (int i = 0; i < 200; ++i) edges.push_back({0, static_cast<VertexId>(1 + (i % 200))});
  const DirectedMultigraph g = DirectedMultigraph::make(201, std::move(edges));
  ApproxDegrees ad = make_approx_degrees(g, 0.1, 1.0, DegreeMode::kExact, 0);
  ad.ad[0] = 202;
  ad.validate(g);
  const std::int64_t d = 50;
  const ReducedGraph red = trevisan_reduce_d(g, ad, d, 11 * d, 123);
  const double p = 200.0 / 202.0;
  const double mean = static_cast<double>(d * g.m()) * p;
  const double sigma = std::sqrt(static_cast<double>(d * g.m()) * p * (1.0 - p));
  CHECK(std::fabs(static_cast<double>(red.precap_edge_count) - mean) <= 3.0 * sigma);
}

TEST_CASE("lift cut") {
  const DirectedMultigraph g = DirectedMultigraph::make(4, {{0, 1}, {0, 1}, {2, 1}});
  const ApproxDegrees ad = make_approx_degrees(g, 0.5, 1.0, DegreeMode::kExact, 2);
  const ReducedGraph red = trevisan_reduce(g, ad, 1.0, 2);

  Dicut all_left;
  all_left.in_left.assign(static_cast<std::size_t>(red.vertex_count()), true);
  const FractionalAssignment rho = lift_cut(g, red, all_left);
  CHECK(rho.rho[0] == 1.0);
  CHECK(rho.rho[1] == 1.0);
  CHECK(rho.rho[2] == 1.0);
  CHECK(rho.rho[3] == 0.5);  // isolated

  Dicut half;
  half.in_left.assign(static_cast<std::size_t>(red.vertex_count()), false);
  half.in_left[static_cast<std::size_t>(red.dense_id(0, 0))] = true;  // one of two copies
  const FractionalAssignment rho2 = lift_cut(g, red, half);
  CHECK(rho2.rho[0] == 0.5);
}

TEST_CASE("reduction rejects a broken oracle") {
  const DirectedMultigraph g = generate(GraphKind::kUniformRandom, 6, 9, {}, 4).graph;
  ApproxDegrees ad = make_approx_degrees(g, 0.5, 0.5, DegreeMode::kExact, 4);
  ad.ad[2] += 3;
  CHECK_THROWS_WITH_AS(trevisan_reduce(g, ad, 0.5, 4), "invalid degree oracle",
                       std::invalid_argument);
}

TEST_CASE("reduced graph serialization") {
  const DirectedMultigraph g = DirectedMultigraph::make(2, {{0, 1}});
  const ApproxDegrees ad = make_approx_degrees(g, 0.5, 1.0, DegreeMode::kExact, 5);
  const ReducedGraph red = trevisan_reduce(g, ad, 1.0, 5);
  std::ostringstream os;
  write_reduced(os, red);
  const std::string body = os.str();
  CHECK(body.find("# copies 0:0 1:0") == 0);
  CHECK(body.find("2 80") != std::string::npos);

  // the copy-map line is a comment, so the standard reader accepts the file
  std::istringstream is(body);
  const DirectedMultigraph back = read_edge_list(is);
  CHECK(back.n == 2);
  CHECK(back.m() == 80);
}
