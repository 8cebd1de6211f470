#include "dicut/stream.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dicut/dense.hpp"

namespace dicut {

struct FileEdgeStream::Impl {
  std::ifstream in;
  std::int64_t remaining = 0;
};

FileEdgeStream::FileEdgeStream(std::string path) : path_(std::move(path)), impl_(new Impl) {
  std::ifstream probe(path_);
  if (!probe) throw std::runtime_error("cannot open " + path_);
  std::string line;
  while (std::getline(probe, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!(ls >> n_ >> m_)) throw std::runtime_error("bad header in " + path_);
    return;
  }
  throw std::runtime_error("missing header in " + path_);
}

FileEdgeStream::~FileEdgeStream() { delete impl_; }

void FileEdgeStream::begin_pass() {
  ++passes_;
  impl_->in.close();
  impl_->in.clear();
  impl_->in.open(path_);
  if (!impl_->in) throw std::runtime_error("cannot open " + path_);
  // skip up to and including the header
  std::string line;
  while (std::getline(impl_->in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    break;
  }
  impl_->remaining = m_;
}

bool FileEdgeStream::next(Edge& out) {
  if (impl_->remaining <= 0) return false;
  std::string line;
  while (std::getline(impl_->in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!(ls >> out.tail >> out.head)) throw std::runtime_error("bad edge line in " + path_);
    --impl_->remaining;
    return true;
  }
  throw std::runtime_error("edge stream shorter than header in " + path_);
}

ParameterSet ParameterSet::paper_faithful(double epsilon, VertexId n) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  ParameterSet p;
  p.mode = ParamMode::kPaperFaithful;
  p.epsilon = epsilon;
  p.n = n;
  const double nd = static_cast<double>(n);
  p.beta = std::pow(epsilon, 20.0 / epsilon);
  p.delta = std::pow(epsilon, 25.0 / epsilon);
  p.d = static_cast<std::int64_t>(std::ceil(320.0 / (epsilon * epsilon)));
  p.small_m_threshold = std::pow(nd, 1.0 - std::pow(epsilon, 1.0 / epsilon));
  p.vprime_cap = std::pow(nd, 1.0 - 3.0 * p.beta / 4.0);
  p.eprime_cap = std::pow(nd, 1.0 - p.delta);
  p.estdeg_increment_exponent = p.beta / 4.0;
  p.storedeg_threshold_exponent = 2.0 * p.beta / 3.0;
  p.estdeg_nonzero_cap_exponent = 1.0 - p.beta / 8.0;
  p.degree_cap = 11 * p.d;
  p.dense_dispatch_threshold = std::pow(nd, 1.0 + std::pow(epsilon, 4.0 / epsilon));
  p.ell = static_cast<int>(std::ceil(1.0 / epsilon));
  p.c = std::max(2, 2 * static_cast<int>(std::ceil(std::log2(1.0 / epsilon))) + 2);
  p.D = p.degree_cap;
  p.rule.priority_bits = (p.c + 1) / 2;
  p.rule.coin_bits = p.c - p.rule.priority_bits;
  return p;
}

ParameterSet ParameterSet::practical(VertexId n) {
  ParameterSet p;
  p.mode = ParamMode::kPractical;
  p.n = n;
  p.beta = 0.0;
  p.d = 32;
  p.delta = 0.0;
  p.small_m_threshold = 0.0;
  p.vprime_cap = 1e18;
  p.eprime_cap = 1e18;
  p.estdeg_increment_exponent = 0.0;
  p.storedeg_threshold_exponent = 0.0;
  p.estdeg_nonzero_cap_exponent = 1.0;
  p.degree_cap = 11 * p.d;
  p.dense_dispatch_threshold = 1e18;
  p.ell = 1;
  p.c = 8;
  p.D = p.degree_cap;
  p.caps_disabled = true;
  p.rule.priority_bits = 4;
  p.rule.coin_bits = 4;
  return p;
}

void ParameterSet::validate() const {
  if (mode == ParamMode::kPaperFaithful && !(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in [0,1)");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (vprime_cap < 1 || eprime_cap < 1) throw std::invalid_argument("caps must be >= 1");
  if (ell < 1) throw std::invalid_argument("ell must be >= 1");
  if (c < 1 || c > 31) throw std::invalid_argument("c must lie in [1,31]");
  if (rule.priority_bits < 1 || rule.priority_bits + rule.coin_bits != c)
    throw std::invalid_argument("priority/coin split must partition c with c_p >= 1");
  if (degree_cap < 1 || D < 1) throw std::invalid_argument("degree bounds must be >= 1");
}

double ParameterSet::sampling_prob() const { return std::pow(static_cast<double>(n), -beta); }
double ParameterSet::estdeg_prob() const {
  return std::pow(static_cast<double>(n), -estdeg_increment_exponent);
}
double ParameterSet::estdeg_increment() const {
  return std::pow(static_cast<double>(n), estdeg_increment_exponent);
}
double ParameterSet::storedeg_threshold() const {
  return std::pow(static_cast<double>(n), storedeg_threshold_exponent);
}
double ParameterSet::estdeg_nonzero_cap() const {
  return std::pow(static_cast<double>(n), estdeg_nonzero_cap_exponent);
}
std::int64_t ParameterSet::default_coreset_k() const {
  if (coreset_k > 0) return coreset_k;
  const double nd = std::max(2.0, static_cast<double>(n));
  return static_cast<std::int64_t>(std::ceil(20.0 * nd * std::log(nd)));
}
double ParameterSet::theorem_beta0() const {
  return 1.0 / (4.0 * std::pow(static_cast<double>(D), ell));
}
double ParameterSet::theorem_log2_n0(double log2_r) const {
  const double eps2 = epsilon / 8.0;
  return 2.0 * (std::log2(20.0) + 3.0 * log2_r +
                (2.0 * ell + 1.0) * std::log2(static_cast<double>(D)) -
                2.0 * std::log2(eps2) - std::log2(1.0 - kTheoremAlpha));
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::kExactSmall: return "exact-small";
    case Branch::kTwoPass: return "two-pass";
    case Branch::kThreePass: return "three-pass";
    case Branch::kDense: return "dense";
  }
  return "?";
}

std::string report_csv_header() { return "seed,branch,value,terminated,peakV,peakE,peakEhat,m,n"; }

std::string report_csv_row(const EstimateReport& r) {
  std::ostringstream os;
  os << r.seed << "," << branch_name(r.branch) << ",";
  if (r.value) {
    os.precision(12);
    os << *r.value;
  } else {
    os << "NA";
  }
  os << "," << (r.terminated_early ? r.terminated_cap : std::string("none")) << ","
     << r.peaks.vprime << "," << std::max(r.peaks.eprime, r.peaks.epp) << "," << r.peaks.ehat
     << "," << r.m << "," << r.n;
  return os.str();
}

namespace {

void bump(std::int64_t& peak, std::int64_t value) {
  if (value > peak) peak = value;
}

bool over_cap(double size, double cap, bool caps_disabled) {
  return !caps_disabled && size > cap;
}

// round(est-deg) as the integer modulus for Unif[est-deg]
std::int64_t estdeg_modulus(double est) { return std::llround(est); }

}  // namespace

bool pass1_sample(EdgeStream& stream, const ParameterSet& params, const KeyedRng& rng,
                  bool with_estdeg, SamplerState& state) {
  const double p_copy = params.sampling_prob();
  const double p_est = params.estdeg_prob();
  const double incr = params.estdeg_increment();
  const double vcap = params.vprime_cap;
  const double edcap = params.estdeg_nonzero_cap();

  stream.begin_pass();
  Edge e;
  std::int64_t pos = 0;
  while (stream.next(e)) {
    ++state.m;
    Substream sub = rng.at(rng_purpose::kPass1Vertex, static_cast<std::uint64_t>(pos));
    const bool z1 = sub.bernoulli(p_copy);
    const bool z2 = sub.bernoulli(p_copy);
    if (z1) {
      std::int64_t& c = state.count[e.tail];
      state.vprime.push_back({e.tail, c});
      ++c;
    }
    if (z2) {
      std::int64_t& c = state.count[e.head];
      state.vprime.push_back({e.head, c});
      ++c;
    }
    bump(state.peaks.vprime, static_cast<std::int64_t>(state.vprime.size()));
    bump(state.peaks.count_nonzero, static_cast<std::int64_t>(state.count.size()));
    if (over_cap(static_cast<double>(state.vprime.size()), vcap, params.caps_disabled)) {
      state.terminated = true;
      state.terminated_cap = "vprime-cap";
      return false;
    }
    if (with_estdeg) {
      Substream sub2 = rng.at(rng_purpose::kPass1EstDeg, static_cast<std::uint64_t>(pos));
      const bool y1 = sub2.bernoulli(p_est);
      const bool y2 = sub2.bernoulli(p_est);
      if (y1) state.est_deg[e.tail] += incr;
      if (y2) state.est_deg[e.head] += incr;
      bump(state.peaks.estdeg_nonzero, static_cast<std::int64_t>(state.est_deg.size()));
      if (over_cap(static_cast<double>(state.est_deg.size()), edcap, params.caps_disabled)) {
        state.terminated = true;
        state.terminated_cap = "estdeg-cap";
        return false;
      }
    }
    ++pos;
  }
  return true;
}

namespace {

EstimateReport make_terminated(const SamplerState& state, const ParameterSet& params,
                               std::uint64_t seed, Branch branch) {
  EstimateReport r;
  r.branch = branch;
  r.terminated_early = true;
  r.terminated_cap = state.terminated_cap;
  r.peaks = state.peaks;
  r.peaks.caps_disabled = params.caps_disabled;
  r.seed = seed;
  r.m = state.m;
  r.n = params.n;
  return r;
}

// "Store all the edges and compute the Max-DICUT value": compact to the
// touched vertices, exact when small enough, otherwise local search.
void run_exact_small(const std::vector<Edge>& stored, const ParameterSet& params,
                     std::uint64_t seed, EstimateReport& report) {
  report.branch = Branch::kExactSmall;
  report.peaks.exact_stored = static_cast<std::int64_t>(stored.size());
  if (stored.empty()) {
    report.value = 0.0;
    return;
  }
  std::vector<VertexId> ids;
  ids.reserve(stored.size() * 2);
  for (const Edge& e : stored) {
    ids.push_back(e.tail);
    ids.push_back(e.head);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<VertexId, VertexId> remap;
  for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = static_cast<VertexId>(i);
  std::vector<Edge> compact;
  compact.reserve(stored.size());
  for (const Edge& e : stored) compact.push_back({remap[e.tail], remap[e.head]});
  DirectedMultigraph g =
      DirectedMultigraph::make(static_cast<VertexId>(ids.size()), std::move(compact));
  if (g.n <= params.exact_oracle_cap) {
    report.value = max_dicut_exact(g, params.exact_oracle_cap).value();
  } else {
    report.value = max_dicut_localsearch(g, params.localsearch_restarts, seed).value();
    report.oracle_was_heuristic = true;
  }
}

// Post-processing shared by both estimators: capping sweep from a snapshot of
// the pre-cap d values, labels from a fresh pairwise hash, certified type
// counts, rescaling by p = n^{-beta}, and the Local expectation.
void finish_with_types(SamplerState& state, const ParameterSet& params, const KeyedRng& rng,
                       std::vector<CopyEdgeRec>& el, EstimateReport& report) {
  // capping snapshot
  std::vector<std::pair<VertexId, std::int64_t>> capped;
  for (auto& [v, ctrs] : state.dctr)
    for (std::size_t i = 0; i < ctrs.size(); ++i)
      if (ctrs[i] > params.degree_cap) capped.emplace_back(v, static_cast<std::int64_t>(i));
  if (!capped.empty()) {
    auto is_capped = [&](VertexId p, std::int64_t idx) {
      for (const auto& [cp, ci] : capped)
        if (cp == p && ci == idx) return true;
      return false;
    };
    std::vector<CopyEdgeRec> kept;
    kept.reserve(el.size());
    for (const CopyEdgeRec& rec : el) {
      if (is_capped(rec.u, rec.i) || is_capped(rec.v, rec.j)) {
        if (state.in_vprime(rec.u, rec.i)) --state.dctr[rec.u][static_cast<std::size_t>(rec.i)];
        if (state.in_vprime(rec.v, rec.j)) --state.dctr[rec.v][static_cast<std::size_t>(rec.j)];
      } else {
        kept.push_back(rec);
      }
    }
    el.swap(kept);
    for (const auto& [cp, ci] : capped) state.dctr[cp][static_cast<std::size_t>(ci)] = 0;
  }

  // dense ids over V' = {(v,i) : i < count[v]}
  std::vector<VertexId> parents;
  parents.reserve(state.count.size());
  for (const auto& [v, c] : state.count)
    if (c > 0) parents.push_back(v);
  std::sort(parents.begin(), parents.end());
  std::unordered_map<VertexId, std::int64_t> base;
  std::int64_t total = 0;
  std::int64_t max_copies = 1;
  for (VertexId v : parents) {
    base[v] = total;
    const std::int64_t c = state.count[v];
    total += c;
    max_copies = std::max(max_copies, c);
  }

  if (total == 0 || el.empty()) {
    report.terminated_early = true;
    report.terminated_cap = "empty-sample";
    return;
  }

  PairwiseHash h = sample_hash(static_cast<std::uint64_t>(params.n) *
                                   static_cast<std::uint64_t>(max_copies),
                               params.c, rng.seed());
  std::vector<std::uint32_t> labels(static_cast<std::size_t>(total));
  std::vector<std::int64_t> full_degree(static_cast<std::size_t>(total), 0);
  for (VertexId v : parents) {
    const std::int64_t b = base[v];
    const auto& ctrs = state.dctr[v];
    for (std::int64_t i = 0; i < state.count[v]; ++i) {
      labels[static_cast<std::size_t>(b + i)] =
          h.eval(static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(max_copies) +
                 static_cast<std::uint64_t>(i));
      full_degree[static_cast<std::size_t>(b + i)] =
          i < static_cast<std::int64_t>(ctrs.size()) ? ctrs[static_cast<std::size_t>(i)] : 0;
    }
  }

  std::vector<Edge> ges;
  ges.reserve(el.size());
  for (const CopyEdgeRec& rec : el)
    ges.push_back({static_cast<VertexId>(base[rec.u] + rec.i),
                   static_cast<VertexId>(base[rec.v] + rec.j)});
  DirectedMultigraph gsub =
      DirectedMultigraph::make(static_cast<VertexId>(total), std::move(ges));

  TypeCountMap counts =
      certified_type_counts(gsub, labels, params.ell, params.D, full_degree);
  TypeDistribution dist;
  try {
    dist = rescaled_distribution(counts, params.sampling_prob());
  } catch (const std::runtime_error&) {
    report.terminated_early = true;
    report.terminated_cap = "empty-sample";
    return;
  }
  report.value = estimate(dist, params.rule);
}

// Pass-2 degree recording: every vertex incident to an edge that touches a
// parent of V' gets its degree recorded; pass 3 reads only the count>0 ones.
void record_pass2_degrees(EdgeStream& stream, SamplerState& state) {
  stream.begin_pass();
  Edge e;
  while (stream.next(e)) {
    const bool tu = state.count.count(e.tail) > 0;
    const bool tv = state.count.count(e.head) > 0;
    if (tu || tv) {
      ++state.deg[e.tail];
      ++state.deg[e.head];
    }
  }
  bump(state.peaks.degmap, static_cast<std::int64_t>(state.deg.size()));
  for (const auto& [v, c] : state.count)
    if (c > 0) state.dctr[v].assign(static_cast<std::size_t>(c), 0);
}

}  // namespace

EstimateReport three_pass_estimate(EdgeStream& stream, const ParameterSet& params,
                                   std::uint64_t seed, SamplerState* final_state) {
  params.validate();
  KeyedRng rng(seed);
  SamplerState state;

  if (!pass1_sample(stream, params, rng, /*with_estdeg=*/false, state)) {
    if (final_state) *final_state = state;
    return make_terminated(state, params, seed, Branch::kThreePass);
  }

  EstimateReport report;
  report.branch = Branch::kThreePass;
  report.seed = seed;
  report.m = state.m;
  report.n = params.n;
  report.peaks.caps_disabled = params.caps_disabled;

  // second pass
  if (static_cast<double>(state.m) <= params.small_m_threshold) {
    std::vector<Edge> stored;
    stored.reserve(static_cast<std::size_t>(state.m));
    stream.begin_pass();
    Edge e;
    while (stream.next(e)) stored.push_back(e);
    run_exact_small(stored, params, seed, report);
    report.peaks = state.peaks;
    report.peaks.caps_disabled = params.caps_disabled;
    report.peaks.exact_stored = static_cast<std::int64_t>(stored.size());
    report.passes_used = stream.passes();
    if (final_state) *final_state = state;
    return report;
  }
  record_pass2_degrees(stream, state);

  // third pass
  stream.begin_pass();
  Edge e;
  std::int64_t pos = 0;
  while (stream.next(e)) {
    Substream sub = rng.at(rng_purpose::kEdgeRounds, static_cast<std::uint64_t>(pos));
    const auto cu = state.count.find(e.tail);
    const auto cv = state.count.find(e.head);
    const bool su = cu != state.count.end() && cu->second > 0;
    const bool sv = cv != state.count.end() && cv->second > 0;
    if (su || sv) {
      const std::int64_t degu = su ? state.deg[e.tail] : 0;
      const std::int64_t degv = sv ? state.deg[e.head] : 0;
      for (std::int64_t round = 0; round < params.d; ++round) {
        std::int64_t i1 = kBotIndex, i2 = kBotIndex;
        if (su) {
          i1 = sub.below_i(degu);
          if (i1 < cu->second) ++state.dctr[e.tail][static_cast<std::size_t>(i1)];
        }
        if (sv) {
          i2 = sub.below_i(degv);
          if (i2 < cv->second) ++state.dctr[e.head][static_cast<std::size_t>(i2)];
        }
        if (su && sv && i1 < cu->second && i2 < cv->second) {
          state.eprime.push_back({e.tail, i1, e.head, i2});
          bump(state.peaks.eprime, static_cast<std::int64_t>(state.eprime.size()));
          if (over_cap(static_cast<double>(state.eprime.size()), params.eprime_cap,
                       params.caps_disabled)) {
            state.terminated = true;
            state.terminated_cap = "eprime-cap";
            if (final_state) *final_state = state;
            return make_terminated(state, params, seed, Branch::kThreePass);
          }
        }
      }
    }
    ++pos;
  }

  finish_with_types(state, params, rng, state.eprime, report);
  report.peaks = state.peaks;
  report.peaks.caps_disabled = params.caps_disabled;
  report.passes_used = stream.passes();
  if (final_state) *final_state = state;
  return report;
}

namespace {

// Pass 2 onward of the two-pass estimator; `state` holds a completed pass 1.
EstimateReport two_pass_continue(EdgeStream& stream, const ParameterSet& params,
                                 const KeyedRng& rng, std::uint64_t seed,
                                 SamplerState& state, SamplerState* final_state) {
  for (const auto& [v, c] : state.count)
    if (c > 0) state.dctr[v].assign(static_cast<std::size_t>(c), 0);

  EstimateReport report;
  report.branch = Branch::kTwoPass;
  report.seed = seed;
  report.m = state.m;
  report.n = params.n;
  report.peaks.caps_disabled = params.caps_disabled;

  if (static_cast<double>(state.m) <= params.small_m_threshold) {
    std::vector<Edge> stored;
    stored.reserve(static_cast<std::size_t>(state.m));
    stream.begin_pass();
    Edge e;
    while (stream.next(e)) stored.push_back(e);
    run_exact_small(stored, params, seed, report);
    report.peaks = state.peaks;
    report.peaks.caps_disabled = params.caps_disabled;
    report.peaks.exact_stored = static_cast<std::int64_t>(stored.size());
    report.passes_used = stream.passes();
    if (final_state) *final_state = state;
    return report;
  }

  const double sd_thresh = params.storedeg_threshold();

  // second pass
  stream.begin_pass();
  Edge e;
  std::int64_t pos = 0;
  while (stream.next(e)) {
    const auto cu = state.count.find(e.tail);
    const auto cv = state.count.find(e.head);
    const bool su = cu != state.count.end() && cu->second > 0;
    const bool sv = cv != state.count.end() && cv->second > 0;

    // Ehat capture
    bool added = false;
    if (su && static_cast<double>(state.store_deg[e.tail]) < sd_thresh) {
      state.ehat.emplace_back(e, pos);
      added = true;
      ++state.store_deg[e.tail];
    }
    if (sv && static_cast<double>(state.store_deg[e.head]) < sd_thresh) {
      if (!added) state.ehat.emplace_back(e, pos);
      ++state.store_deg[e.head];
    }
    bump(state.peaks.ehat, static_cast<std::int64_t>(state.ehat.size()));
    bump(state.peaks.storedeg_nonzero, static_cast<std::int64_t>(state.store_deg.size()));

    if (su || sv) {
      const double edu = su ? state.est_deg[e.tail] : 0.0;
      const double edv = sv ? state.est_deg[e.head] : 0.0;
      const bool du = su && edu > 0.0;
      const bool dv = sv && edv > 0.0;
      Substream sub = rng.at(rng_purpose::kEdgeRounds, static_cast<std::uint64_t>(pos));
      for (std::int64_t round = 0; round < params.d; ++round) {
        std::int64_t i1 = kBotIndex, i2 = kBotIndex;
        if (du) {
          i1 = sub.below_i(estdeg_modulus(edu));
          if (i1 < cu->second) ++state.dctr[e.tail][static_cast<std::size_t>(i1)];
        }
        if (dv) {
          i2 = sub.below_i(estdeg_modulus(edv));
          if (i2 < cv->second) ++state.dctr[e.head][static_cast<std::size_t>(i2)];
        }
        const bool clause_u = du && i1 < cu->second;
        const bool clause_v = dv && i2 < cv->second;
        if (clause_u || clause_v) {
          // complete the opposite endpoint: reuse its draw when it exists,
          // otherwise draw from est-deg if possible, else attach the sentinel
          std::int64_t a = i1, b = i2;
          if (!du) {
            const auto edit = state.est_deg.find(e.tail);
            if (edit != state.est_deg.end() && edit->second > 0.0)
              a = sub.below_i(estdeg_modulus(edit->second));
          }
          if (!dv) {
            const auto edit = state.est_deg.find(e.head);
            if (edit != state.est_deg.end() && edit->second > 0.0)
              b = sub.below_i(estdeg_modulus(edit->second));
          }
          state.eprime.push_back({e.tail, a, e.head, b});
          bump(state.peaks.eprime, static_cast<std::int64_t>(state.eprime.size()));
          if (over_cap(static_cast<double>(state.eprime.size()), params.eprime_cap,
                       params.caps_disabled)) {
            state.terminated = true;
            state.terminated_cap = "eprime-cap";
            if (final_state) *final_state = state;
            return make_terminated(state, params, seed, Branch::kTwoPass);
          }
        }
      }
    }
    ++pos;
  }

  // Post-processing I: resample edges incident to low-degree vertices.
  state.epp = state.eprime;
  auto low = [&](VertexId v) {
    const auto it = state.count.find(v);
    if (it == state.count.end() || it->second <= 0) return false;
    const auto sd = state.store_deg.find(v);
    const std::int64_t s = sd == state.store_deg.end() ? 0 : sd->second;
    return static_cast<double>(s) < sd_thresh;
  };
  {
    std::vector<CopyEdgeRec> kept;
    kept.reserve(state.epp.size());
    for (const CopyEdgeRec& rec : state.epp) {
      const bool del = (low(rec.u) && rec.i != kBotIndex) || (low(rec.v) && rec.j != kBotIndex);
      if (del) {
        if (state.in_vprime(rec.u, rec.i)) --state.dctr[rec.u][static_cast<std::size_t>(rec.i)];
        if (state.in_vprime(rec.v, rec.j)) --state.dctr[rec.v][static_cast<std::size_t>(rec.j)];
      } else {
        kept.push_back(rec);
      }
    }
    state.epp.swap(kept);
  }

  for (const auto& [ehat_edge, ehat_pos] : state.ehat) {
    const VertexId u = ehat_edge.tail, v = ehat_edge.head;
    const auto cu = state.count.find(u);
    const auto cv = state.count.find(v);
    const std::int64_t cntu = cu == state.count.end() ? 0 : cu->second;
    const std::int64_t cntv = cv == state.count.end() ? 0 : cv->second;
    Substream sub = rng.at(rng_purpose::kEdgeRounds, static_cast<std::uint64_t>(ehat_pos));
    for (std::int64_t round = 0; round < params.d; ++round) {
      if (low(u)) {
        const std::int64_t j1 = sub.below_i(std::max<std::int64_t>(1, state.store_deg[u]));
        if (j1 < cntu) ++state.dctr[u][static_cast<std::size_t>(j1)];
        if (cntv > 0) {
          std::int64_t j2 = kBotIndex;
          if (low(v)) {
            j2 = sub.below_i(std::max<std::int64_t>(1, state.store_deg[v]));
          } else {
            const auto edit = state.est_deg.find(v);
            if (edit != state.est_deg.end() && edit->second > 0.0)
              j2 = sub.below_i(estdeg_modulus(edit->second));
          }
          if (j2 != kBotIndex && j2 < cntv) {
            ++state.dctr[v][static_cast<std::size_t>(j2)];
            if (j1 < cntu) {
              state.epp.push_back({u, j1, v, j2});
              bump(state.peaks.epp, static_cast<std::int64_t>(state.epp.size()));
            }
          }
        }
      } else if (low(v)) {
        const std::int64_t j2 = sub.below_i(std::max<std::int64_t>(1, state.store_deg[v]));
        if (j2 < cntv) ++state.dctr[v][static_cast<std::size_t>(j2)];
        if (cntu > 0) {
          const auto edit = state.est_deg.find(u);
          if (edit != state.est_deg.end() && edit->second > 0.0) {
            const std::int64_t j1 = sub.below_i(estdeg_modulus(edit->second));
            if (j1 < cntu) {
              ++state.dctr[u][static_cast<std::size_t>(j1)];
              if (j2 < cntv) {
                state.epp.push_back({u, j1, v, j2});
                bump(state.peaks.epp, static_cast<std::int64_t>(state.epp.size()));
              }
            }
          }
        }
      }
    }
  }

  // final deletion: no surviving non-V' endpoints (also removes sentinels)
  std::erase_if(state.epp, [&](const CopyEdgeRec& rec) {
    return !state.in_vprime(rec.u, rec.i) || !state.in_vprime(rec.v, rec.j);
  });

  finish_with_types(state, params, rng, state.epp, report);
  report.peaks = state.peaks;
  report.peaks.caps_disabled = params.caps_disabled;
  report.passes_used = stream.passes();
  if (final_state) *final_state = state;
  return report;
}

}  // namespace

EstimateReport two_pass_estimate(EdgeStream& stream, const ParameterSet& params,
                                 std::uint64_t seed, SamplerState* final_state) {
  params.validate();
  KeyedRng rng(seed);
  SamplerState state;
  if (!pass1_sample(stream, params, rng, /*with_estdeg=*/true, state)) {
    if (final_state) *final_state = state;
    return make_terminated(state, params, seed, Branch::kTwoPass);
  }
  return two_pass_continue(stream, params, rng, seed, state, final_state);
}

EstimateReport meta_estimate(EdgeStream& stream, const ParameterSet& params,
                             std::uint64_t seed) {
  params.validate();
  KeyedRng rng(seed);

  // pass 1: two-pass sampling and the core-set reservoir side by side
  SamplerState state;
  const double p_copy = params.sampling_prob();
  const double p_est = params.estdeg_prob();
  const double incr = params.estdeg_increment();
  const std::int64_t k = params.default_coreset_k();
  std::vector<Edge> reservoir;
  reservoir.reserve(static_cast<std::size_t>(std::min<std::int64_t>(k, 1 << 20)));

  bool sparse_dead = false;
  std::string sparse_cap;

  stream.begin_pass();
  Edge e;
  std::int64_t pos = 0;
  while (stream.next(e)) {
    ++state.m;
    if (!sparse_dead) {
      Substream sub = rng.at(rng_purpose::kPass1Vertex, static_cast<std::uint64_t>(pos));
      const bool z1 = sub.bernoulli(p_copy);
      const bool z2 = sub.bernoulli(p_copy);
      if (z1) {
        std::int64_t& c = state.count[e.tail];
        state.vprime.push_back({e.tail, c});
        ++c;
      }
      if (z2) {
        std::int64_t& c = state.count[e.head];
        state.vprime.push_back({e.head, c});
        ++c;
      }
      bump(state.peaks.vprime, static_cast<std::int64_t>(state.vprime.size()));
      bump(state.peaks.count_nonzero, static_cast<std::int64_t>(state.count.size()));
      if (over_cap(static_cast<double>(state.vprime.size()), params.vprime_cap,
                   params.caps_disabled)) {
        sparse_dead = true;
        sparse_cap = "vprime-cap";
      }
      Substream sub2 = rng.at(rng_purpose::kPass1EstDeg, static_cast<std::uint64_t>(pos));
      const bool y1 = sub2.bernoulli(p_est);
      const bool y2 = sub2.bernoulli(p_est);
      if (y1) state.est_deg[e.tail] += incr;
      if (y2) state.est_deg[e.head] += incr;
      bump(state.peaks.estdeg_nonzero, static_cast<std::int64_t>(state.est_deg.size()));
      if (over_cap(static_cast<double>(state.est_deg.size()), params.estdeg_nonzero_cap(),
                   params.caps_disabled)) {
        sparse_dead = true;
        sparse_cap = "estdeg-cap";
      }
    }
    // reservoir
    if (static_cast<std::int64_t>(reservoir.size()) < k) {
      reservoir.push_back(e);
    } else {
      Substream rsub = rng.at(rng_purpose::kReservoir, static_cast<std::uint64_t>(pos));
      const std::int64_t slot = rsub.below_i(pos + 1);
      if (slot < k) reservoir[static_cast<std::size_t>(slot)] = e;
    }
    ++pos;
  }

  if (static_cast<double>(state.m) <= params.dense_dispatch_threshold) {
    // sparse route: abandon the core-set, continue the two-pass estimator
    if (sparse_dead) {
      state.terminated = true;
      state.terminated_cap = sparse_cap;
      return make_terminated(state, params, seed, Branch::kTwoPass);
    }
    return two_pass_continue(stream, params, rng, seed, state, nullptr);
  }

  EstimateReport report;
  report.branch = Branch::kDense;
  report.seed = seed;
  report.m = state.m;
  report.n = params.n;
  report.peaks = state.peaks;
  report.peaks.caps_disabled = params.caps_disabled;
  report.passes_used = stream.passes();
  CoreSet cs;
  cs.sample = std::move(reservoir);
  cs.original_m = state.m;
  cs.k = k;
  cs.n = params.n;
  if (cs.sample.empty()) {
    report.terminated_early = true;
    report.terminated_cap = "empty-sample";
    return report;
  }
  report.value = coreset_estimate(cs, seed, params.exact_oracle_cap, params.localsearch_restarts);
  return report;
}

AuditResult memory_audit(const EstimateReport& report, const ParameterSet& params) {
  AuditResult a;
  a.peaks = report.peaks;
  a.caps_disabled = report.peaks.caps_disabled;
  auto check = [&](const char* name, std::int64_t peak, double cap) {
    if (a.caps_disabled) return;
    if (static_cast<double>(peak) > cap) {
      a.within_caps = false;
      a.violations.push_back(std::string(name) + " peak exceeds cap");
    }
  };
  check("vprime", a.peaks.vprime, params.vprime_cap);
  check("eprime", a.peaks.eprime, params.eprime_cap);
  check("estdeg", a.peaks.estdeg_nonzero, params.estdeg_nonzero_cap());
  // derived bound, checked regardless of cap enforcement
  const double ehat_bound =
      static_cast<double>(a.peaks.vprime) * params.storedeg_threshold() + 1e-9;
  if (static_cast<double>(a.peaks.ehat) > ehat_bound) {
    a.within_caps = false;
    a.violations.push_back("ehat exceeds |V'| * n^{2beta/3}");
  }
  return a;
}

}  // namespace dicut
