#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dicut/graph.hpp"
#include "dicut/local_sim.hpp"
#include "dicut/nbr_types.hpp"
#include "dicut/rng.hpp"

namespace dicut {

// Replayable edge source. Every pass yields the identical sequence.
class EdgeStream {
 public:
  virtual ~EdgeStream() = default;
  virtual VertexId n() const = 0;
  virtual void begin_pass() = 0;
  virtual bool next(Edge& out) = 0;
  int passes() const { return passes_; }

 protected:
  int passes_ = 0;
};

class VectorEdgeStream final : public EdgeStream {
 public:
  explicit VectorEdgeStream(DirectedMultigraph g) : g_(std::move(g)) {}
  VertexId n() const override { return g_.n; }
  void begin_pass() override {
    ++passes_;
    at_ = 0;
  }
  bool next(Edge& out) override {
    if (at_ >= g_.edges.size()) return false;
    out = g_.edges[at_++];
    return true;
  }

 private:
  DirectedMultigraph g_;
  std::size_t at_ = 0;
};

// Re-reads the file on every pass; only the header stays resident.
class FileEdgeStream final : public EdgeStream {
 public:
  explicit FileEdgeStream(std::string path);
  ~FileEdgeStream() override;
  FileEdgeStream(const FileEdgeStream&) = delete;
  FileEdgeStream& operator=(const FileEdgeStream&) = delete;
  VertexId n() const override { return n_; }
  void begin_pass() override;
  bool next(Edge& out) override;

 private:
  std::string path_;
  VertexId n_ = 0;
  std::int64_t m_ = 0;
  struct Impl;
  Impl* impl_ = nullptr;
};

enum class ParamMode { kPaperFaithful, kPractical };

// Epsilon plus every derived threshold. Paper-faithful mode derives the whole
// set from (epsilon, n); practical mode starts from beta = 0 full-sampling
// defaults and accepts direct overrides.
struct ParameterSet {
  double epsilon = 0.25;
  ParamMode mode = ParamMode::kPractical;
  VertexId n = 0;

  double beta = 0.0;
  std::int64_t d = 32;
  double delta = 0.0;
  double small_m_threshold = 0.0;
  double vprime_cap = 0.0;
  double eprime_cap = 0.0;
  double estdeg_increment_exponent = 0.0;    // beta/4
  double storedeg_threshold_exponent = 0.0;  // 2*beta/3
  double estdeg_nonzero_cap_exponent = 1.0;  // 1 - beta/8
  std::int64_t degree_cap = 352;             // 11d
  double dense_dispatch_threshold = 0.0;
  int ell = 1;
  int c = 8;
  std::int64_t D = 352;
  bool caps_disabled = false;

  LocalRule rule;
  std::int64_t coreset_k = 0;  // 0 -> 20 n ln n
  int exact_oracle_cap = kDefaultExactCap;
  int localsearch_restarts = 8;

  static ParameterSet paper_faithful(double epsilon, VertexId n);
  static ParameterSet practical(VertexId n);
  void validate() const;

  double sampling_prob() const;       // n^{-beta}
  double estdeg_prob() const;         // n^{-beta/4}
  double estdeg_increment() const;    // n^{beta/4}
  double storedeg_threshold() const;  // n^{2beta/3}
  double estdeg_nonzero_cap() const;  // n^{1-beta/8}
  std::int64_t default_coreset_k() const;

  // read-only diagnostics from the sampled-estimation analysis
  static constexpr double kTheoremAlpha = 0.94;
  double theorem_beta0() const;                    // 1/(4 D^ell)
  double theorem_log2_n0(double log2_r) const;     // r = |type space|
};

inline constexpr std::int64_t kBotIndex = -1;  // half-edge sentinel endpoint

// One sampled reduced-graph edge record; i/j are copy indices of the parents
// (kBotIndex when the endpoint was never drawn).
struct CopyEdgeRec {
  VertexId u = 0;
  std::int64_t i = 0;
  VertexId v = 0;
  std::int64_t j = 0;
};

struct MemoryPeaks {
  std::int64_t vprime = 0;
  std::int64_t eprime = 0;
  std::int64_t epp = 0;
  std::int64_t ehat = 0;
  std::int64_t estdeg_nonzero = 0;
  std::int64_t storedeg_nonzero = 0;
  std::int64_t count_nonzero = 0;
  std::int64_t degmap = 0;
  std::int64_t exact_stored = 0;
  bool caps_disabled = false;
};

struct CopyVertexRef {
  VertexId parent = 0;
  std::int64_t index = 0;
};

// Streaming bookkeeping shared by the two- and three-pass estimators.
struct SamplerState {
  std::unordered_map<VertexId, std::int64_t> count;
  std::unordered_map<VertexId, double> est_deg;
  std::unordered_map<VertexId, std::int64_t> store_deg;
  std::vector<CopyVertexRef> vprime;
  std::vector<CopyEdgeRec> eprime;
  std::vector<CopyEdgeRec> epp;
  std::vector<std::pair<Edge, std::int64_t>> ehat;  // (edge, stream position)
  std::unordered_map<VertexId, std::vector<std::int64_t>> dctr;
  std::unordered_map<VertexId, std::int64_t> deg;  // pass-2 recorded degrees
  std::int64_t m = 0;
  MemoryPeaks peaks;
  bool terminated = false;
  std::string terminated_cap;

  bool in_vprime(VertexId parent, std::int64_t index) const {
    auto it = count.find(parent);
    return it != count.end() && index >= 0 && index < it->second;
  }
};

enum class Branch { kExactSmall, kTwoPass, kThreePass, kDense };
const char* branch_name(Branch b);

struct EstimateReport {
  std::optional<double> value;
  Branch branch = Branch::kTwoPass;
  bool terminated_early = false;
  std::string terminated_cap;  // "vprime-cap" | "eprime-cap" | "estdeg-cap" | "empty-sample"
  MemoryPeaks peaks;
  std::uint64_t seed = 0;
  std::int64_t m = 0;
  VertexId n = 0;
  int passes_used = 0;
  bool oracle_was_heuristic = false;  // exact branch fell back to local search
};

std::string report_csv_header();
std::string report_csv_row(const EstimateReport& r);

// First pass: per edge, two Bernoulli(n^{-beta}) copy draws feeding V' and
// count; with_estdeg additionally runs the Bernoulli(n^{-beta/4}) degree
// estimation. Returns false when a cap terminated the pass.
bool pass1_sample(EdgeStream& stream, const ParameterSet& params, const KeyedRng& rng,
                  bool with_estdeg, SamplerState& state);

// When final_state is non-null it receives the bookkeeping as it stood at the
// end of the run (post-processing applied), for coupling checks.
EstimateReport three_pass_estimate(EdgeStream& stream, const ParameterSet& params,
                                   std::uint64_t seed, SamplerState* final_state = nullptr);
EstimateReport two_pass_estimate(EdgeStream& stream, const ParameterSet& params,
                                 std::uint64_t seed, SamplerState* final_state = nullptr);
EstimateReport meta_estimate(EdgeStream& stream, const ParameterSet& params,
                             std::uint64_t seed);

struct AuditResult {
  MemoryPeaks peaks;
  bool within_caps = true;
  bool caps_disabled = false;
  std::vector<std::string> violations;
};

// Per-structure peak counts checked against their caps, including the derived
// |Ehat| <= |V'| n^{2beta/3} bound.
AuditResult memory_audit(const EstimateReport& report, const ParameterSet& params);

}  // namespace dicut
