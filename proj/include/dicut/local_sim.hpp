#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dicut/nbr_types.hpp"
#include "dicut/rng.hpp"

namespace dicut {

// h(x) = ((a x + b) mod q) mod 2^c with q prime and >= 2^c.
struct PairwiseHash {
  std::uint64_t q = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  int c = 0;

  std::uint32_t eval(std::uint64_t x) const {
    const std::uint64_t lin = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * x + b) % q);
    return static_cast<std::uint32_t>(lin & ((1ull << c) - 1));
  }
};

// q = smallest prime >= max(n_domain, 2^c); a, b uniform in [0, q).
PairwiseHash sample_hash(std::uint64_t n_domain, int c, std::uint64_t seed);

enum class LocalRuleKind { kPriorityDoubleGreedy, kObliviousBias };

struct LocalRule {
  LocalRuleKind kind = LocalRuleKind::kPriorityDoubleGreedy;
  int priority_bits = 4;  // c_p >= 1
  int coin_bits = 4;      // c_f; c_p + c_f = c
};

// Per-vertex values in {0, 1/2, 1}, indexed by the ball's local vertex ids.
// Ties in priority are broken by the canonical vertex order, so the result is
// invariant under root-preserving relabelings.
std::vector<double> resolve_assignments(const BallGraph& b, const LocalRule& rule);

// rho(root-tail) * (1 - rho(root-head)); a function of the isomorphism class.
double local_eval(const BallGraph& b, const LocalRule& rule);
double local_eval(const TypeId& id, const LocalRule& rule);

// Memoizing evaluator. The cache is instance-local, so keep one evaluator per
// thread; estimate() below creates its own.
class LocalEvaluator {
 public:
  explicit LocalEvaluator(LocalRule rule) : rule_(rule) {}
  double eval(const TypeId& id);

 private:
  LocalRule rule_;
  std::unordered_map<std::string, double> cache_;
};

// E_{T ~ d}[Local(T)], memoized by TypeId.
double estimate(const TypeDistribution& d, const LocalRule& rule);

}  // namespace dicut
