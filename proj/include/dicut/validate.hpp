#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dicut/graph.hpp"
#include "dicut/nbr_types.hpp"
#include "dicut/reduce.hpp"

namespace dicut {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string stats;
};

// Upper-tail p-value of a chi-squared statistic.
double chi_squared_p_value(double stat, double df);

// ---- instance builders shared by the property and acceptance suites ----

// Degree-<=3 graph assembled from random small components (single edges,
// edge bundles, 2-paths); the shapes keep radius-1 balls small enough for
// vertex-sampled estimation at moderate p.
DirectedMultigraph bounded_degree_mix_graph(VertexId n, std::uint64_t seed);

struct KnownOptInstance {
  DirectedMultigraph g;
  double opt = 0.0;
};

// Union of small degree-<=3 components; the optimum is assembled exactly from
// per-component brute force.
KnownOptInstance known_opt_union(VertexId min_n, VertexId max_n, std::uint64_t seed);

BallGraph random_ball(std::uint64_t seed, int label_alphabet);
// Isomorphic copy under a random relabeling (roots remapped).
BallGraph permuted_ball(const BallGraph& b, std::uint64_t seed);

// ---- experiment kernels ----

struct TrialCount {
  int trials = 0;
  int passed = 0;
  std::string detail;
};

TrialCount oracle_identity_checks(std::uint64_t seed);
TrialCount full_sample_consistency(std::uint64_t seed);
TrialCount canonical_invariance(int pairs, std::uint64_t seed);

// |Max-DICUT(reduced) - Max-DICUT(g)| <= eps' on random graphs with n <= 8,
// m <= 8, both sides brute-forced.
TrialCount reduction_fidelity(int trials, double eps_prime, DegreeMode mode,
                              std::uint64_t seed);

// TV(rescaled sampled distribution, exact distribution) <= tol on
// bounded_degree_mix_graph instances.
TrialCount type_estimation(int trials, VertexId n, double p, int ell, double tol,
                           std::uint64_t seed);

// Pass-1 copy sampling versus direct Bernoulli sampling over the copy set of
// a fixed 20-edge graph; pooled goodness-of-fit p-value.
double claim52_p_value(int trials, std::uint64_t seed);

// Exact equality of the two-pass E'' and three-pass E' edge multisets under
// beta = 0 and aligned tapes, all degrees below the store-deg threshold.
TrialCount coupling_equality(int runs, std::uint64_t seed);

struct SoundnessCount {
  int trials = 0;
  int lower_ok = 0;  // estimate >= opt/2 - 0.15
  int upper_ok = 0;  // estimate <= opt + 0.05
};
SoundnessCount local_soundness(int trials, std::uint64_t seed);

struct MetaSuiteResult {
  int runs = 0;
  int terminated = 0;
  int in_range = 0;   // value in [opt/2 - 0.15, opt + 0.1]
  int audits_ok = 0;  // memory audit clean, including the Ehat bound
  std::string detail;
};
MetaSuiteResult meta_suite(int runs, std::uint64_t seed);

// Dense-branch check: planted 0.9, average degree >= sqrt(n), estimate >= 0.8
// and the dispatcher must pick the dense branch.
TrialCount dense_planted(int seeds, std::uint64_t seed);

// ---- named property suites for the CLI ----
// Throws std::invalid_argument on an unknown suite name.
std::vector<PropertyResult> validate_suite(const std::string& name, std::uint64_t seed);

}  // namespace dicut
