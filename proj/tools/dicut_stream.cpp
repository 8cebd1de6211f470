// Command-line front end: instance generation, estimator runs, property
// suites, experiment sweeps, and an SVG plotter for the sweep output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dicut/dense.hpp"
#include "dicut/graph.hpp"
#include "dicut/local_sim.hpp"
#include "dicut/stream.hpp"
#include "dicut/validate.hpp"

using namespace dicut;

namespace {

// ---- key/value config shared by --config files and experiment specs ----

std::map<std::string, std::string> parse_kv(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
    auto trim = [](std::string s) {
      const std::size_t a = s.find_first_not_of(" \t\r");
      const std::size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_kv(in);
}

bool apply_param(ParameterSet& p, const std::string& key, const std::string& value) {
  const double d = std::atof(value.c_str());
  if (key == "epsilon") p.epsilon = d;
  else if (key == "beta") p.beta = d;
  else if (key == "d") p.d = std::atoll(value.c_str());
  else if (key == "delta") p.delta = d;
  else if (key == "small-m-threshold") p.small_m_threshold = d;
  else if (key == "vprime-cap") p.vprime_cap = d;
  else if (key == "eprime-cap") p.eprime_cap = d;
  else if (key == "estdeg-increment-exponent") p.estdeg_increment_exponent = d;
  else if (key == "storedeg-threshold-exponent") p.storedeg_threshold_exponent = d;
  else if (key == "estdeg-nonzero-cap-exponent") p.estdeg_nonzero_cap_exponent = d;
  else if (key == "degree-cap") p.degree_cap = std::atoll(value.c_str());
  else if (key == "dense-dispatch-threshold") p.dense_dispatch_threshold = d;
  else if (key == "ell") p.ell = std::atoi(value.c_str());
  else if (key == "c") p.c = std::atoi(value.c_str());
  else if (key == "priority-bits") p.rule.priority_bits = std::atoi(value.c_str());
  else if (key == "D") p.D = std::atoll(value.c_str());
  else if (key == "coreset-k") p.coreset_k = std::atoll(value.c_str());
  else if (key == "caps-disabled") p.caps_disabled = value == "1" || value == "true";
  else if (key == "exact-cap") p.exact_oracle_cap = std::atoi(value.c_str());
  else if (key == "restarts") p.localsearch_restarts = std::atoi(value.c_str());
  else if (key == "rule") {
    if (value == "priority-double-greedy") p.rule.kind = LocalRuleKind::kPriorityDoubleGreedy;
    else if (value == "oblivious-bias") p.rule.kind = LocalRuleKind::kObliviousBias;
    else throw std::runtime_error("unknown rule: " + value);
  } else {
    return false;
  }
  return true;
}

void finish_rule_split(ParameterSet& p, bool priority_bits_set) {
  if (!priority_bits_set) p.rule.priority_bits = (p.c + 1) / 2;
  p.rule.coin_bits = p.c - p.rule.priority_bits;
}

struct ParamCli {
  std::string mode = "practical";
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;  // in flag order

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "parameter mode: practical | paper-faithful");
    cmd->add_option("--config", config_path, "key=value parameter file");
    auto capture = [this](const std::string& key) {
      return [this, key](const std::string& v) { overrides.emplace_back(key, v); };
    };
    cmd->add_option_function<std::string>("--epsilon", capture("epsilon"), "epsilon in (0,1/2)");
    cmd->add_option_function<std::string>("--beta", capture("beta"), "vertex-sampling exponent");
    cmd->add_option_function<std::string>("--d", capture("d"), "per-edge sampling rounds");
    cmd->add_option_function<std::string>("--ell", capture("ell"), "ball radius");
    cmd->add_option_function<std::string>("--c", capture("c"), "label bits");
    cmd->add_option_function<std::string>("--priority-bits", capture("priority-bits"),
                                          "priority bits of the label split");
    cmd->add_option_function<std::string>("--rule", capture("rule"),
                                          "priority-double-greedy | oblivious-bias");
    cmd->add_option_function<std::string>("--small-m-threshold", capture("small-m-threshold"),
                                          "store-everything threshold on m");
    cmd->add_option_function<std::string>("--vprime-cap", capture("vprime-cap"), "V' cap");
    cmd->add_option_function<std::string>("--eprime-cap", capture("eprime-cap"), "E' cap");
    cmd->add_option_function<std::string>("--degree-cap", capture("degree-cap"), "copy degree cap");
    cmd->add_option_function<std::string>("--D", capture("D"), "type-space degree bound");
    cmd->add_option_function<std::string>("--dense-dispatch-threshold",
                                          capture("dense-dispatch-threshold"),
                                          "meta dispatch threshold on m");
    cmd->add_option_function<std::string>("--estdeg-increment-exponent",
                                          capture("estdeg-increment-exponent"), "beta/4 knob");
    cmd->add_option_function<std::string>("--storedeg-threshold-exponent",
                                          capture("storedeg-threshold-exponent"), "2beta/3 knob");
    cmd->add_option_function<std::string>("--estdeg-nonzero-cap-exponent",
                                          capture("estdeg-nonzero-cap-exponent"), "1-beta/8 knob");
    cmd->add_option_function<std::string>("--coreset-k", capture("coreset-k"), "core-set size");
    cmd->add_option_function<std::string>("--caps-disabled", capture("caps-disabled"),
                                          "disable cap terminations (1/0)");
    cmd->add_option_function<std::string>("--exact-cap", capture("exact-cap"),
                                          "exact-oracle vertex cap");
    cmd->add_option_function<std::string>("--restarts", capture("restarts"),
                                          "local-search restarts");
  }

  // precedence: CLI flag > config file > mode default
  ParameterSet build(VertexId n) const {
    double epsilon = 0.25;
    for (const auto& [k, v] : overrides)
      if (k == "epsilon") epsilon = std::atof(v.c_str());
    ParameterSet p = mode == "paper-faithful" ? ParameterSet::paper_faithful(epsilon, n)
                                              : ParameterSet::practical(n);
    bool priority_set = false;
    if (!config_path.empty())
      for (const auto& [k, v] : parse_kv_file(config_path)) {
        if (k == "mode") continue;
        if (!apply_param(p, k, v)) throw std::runtime_error("unknown config key: " + k);
        if (k == "priority-bits") priority_set = true;
      }
    for (const auto& [k, v] : overrides) {
      apply_param(p, k, v);
      if (k == "priority-bits") priority_set = true;
    }
    finish_rule_split(p, priority_set);
    p.validate();
    return p;
  }
};

EstimateReport run_estimator(const std::string& estimator, EdgeStream& stream,
                             const ParameterSet& params, std::uint64_t seed) {
  if (estimator == "two-pass") return two_pass_estimate(stream, params, seed);
  if (estimator == "three-pass") return three_pass_estimate(stream, params, seed);
  if (estimator == "meta") return meta_estimate(stream, params, seed);
  if (estimator == "coreset") {
    const CoreSet cs = coreset_pass1(stream, params.default_coreset_k(), KeyedRng(seed));
    EstimateReport r;
    r.branch = Branch::kDense;
    r.seed = seed;
    r.m = cs.original_m;
    r.n = stream.n();
    r.passes_used = 1;
    if (cs.sample.empty()) {
      r.terminated_early = true;
      r.terminated_cap = "empty-sample";
    } else {
      r.value = coreset_estimate(cs, seed, params.exact_oracle_cap, params.localsearch_restarts);
    }
    return r;
  }
  if (estimator == "exact") {
    stream.begin_pass();
    std::vector<Edge> edges;
    Edge e;
    while (stream.next(e)) edges.push_back(e);
    const DirectedMultigraph g = DirectedMultigraph::make(stream.n(), std::move(edges));
    EstimateReport r;
    r.branch = Branch::kExactSmall;
    r.seed = seed;
    r.m = g.m();
    r.n = g.n;
    r.passes_used = 1;
    r.value = max_dicut_exact(g, params.exact_oracle_cap).value();
    return r;
  }
  throw std::runtime_error("unknown estimator: " + estimator);
}

// ---- generate ----

int cmd_generate(const std::string& kind, VertexId n, std::int64_t m, double plant,
                 double exponent, std::uint64_t seed, const std::string& out_path) {
  GraphKind gk;
  if (kind == "uniform-random") gk = GraphKind::kUniformRandom;
  else if (kind == "planted-dicut") gk = GraphKind::kPlantedDicut;
  else if (kind == "power-law") gk = GraphKind::kPowerLaw;
  else throw std::runtime_error("unknown kind: " + kind);

  GeneratorParams gp;
  gp.plant_fraction = plant;
  gp.exponent = exponent;
  const GeneratedGraph gen = generate(gk, n, m, gp, seed);

  std::vector<std::string> comments;
  {
    std::ostringstream c;
    c << "kind=" << kind << " seed=" << seed;
    if (gen.planted_value) c << " planted=" << *gen.planted_value;
    comments.push_back(c.str());
  }
  write_edge_list_file(out_path, gen.graph, comments);
  std::cout << "n=" << gen.graph.n << " m=" << gen.graph.m();
  if (gen.planted_value) std::cout << " planted=" << *gen.planted_value;
  std::cout << "\n";
  return 0;
}

// ---- estimate ----

int cmd_estimate(const std::string& input, const std::string& estimator, int trials,
                 std::uint64_t base_seed, const std::string& out_path, const ParamCli& pcli) {
  FileEdgeStream stream(input);
  const ParameterSet params = pcli.build(stream.n());

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    out = &file;
  }
  (*out) << report_csv_header() << "\n";
  int completed = 0;
  for (int t = 0; t < trials; ++t) {
    const EstimateReport r = run_estimator(estimator, stream, params, base_seed + static_cast<std::uint64_t>(t));
    (*out) << report_csv_row(r) << "\n";
    if (r.value) ++completed;
  }
  return completed == 0 ? 1 : 0;
}

// ---- validate ----

int cmd_validate(const std::string& suite, std::uint64_t seed) {
  const std::vector<PropertyResult> results = validate_suite(suite, seed);
  bool all = true;
  for (const PropertyResult& r : results) {
    std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.name << " — " << r.stats << "\n";
    if (!r.pass) all = false;
  }
  std::cout << (all ? "all properties passed" : "FAILURES present") << "\n";
  return all ? 0 : 1;
}

// ---- experiment ----

struct Cell {
  VertexId n;
  double density;
  double epsilon;
  std::string estimator;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::size_t a = item.find_first_not_of(" \t");
    const std::size_t b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

int worker_count() {
  const char* env = std::getenv("DICUT_STREAM_THREADS");
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 4;
  int n = env ? std::atoi(env) : hw;
  return std::max(1, std::min(n, hw));
}

int cmd_experiment(const std::string& spec_path, const std::string& out_path) {
  const auto spec = parse_kv_file(spec_path);
  auto get = [&](const std::string& key, const std::string& dflt) {
    auto it = spec.find(key);
    return it == spec.end() ? dflt : it->second;
  };

  const std::vector<std::string> estimators = split_list(get("estimators", "meta"));
  const std::vector<std::string> eps_list = split_list(get("epsilons", "0.25"));
  const std::vector<std::string> n_list = split_list(get("n_list", "100"));
  const std::vector<std::string> density_list = split_list(get("densities", "3.0"));
  const std::string kind = get("kind", "planted-dicut");
  const double plant = std::atof(get("plant", "0.9").c_str());
  const int trials = std::max(1, std::atoi(get("trials", "5").c_str()));
  const std::uint64_t base_seed = std::strtoull(get("seed", "1").c_str(), nullptr, 10);

  std::vector<Cell> cells;
  for (const std::string& ns : n_list)
    for (const std::string& ds : density_list)
      for (const std::string& es : eps_list)
        for (const std::string& est : estimators)
          cells.push_back({static_cast<VertexId>(std::atoi(ns.c_str())), std::atof(ds.c_str()),
                           std::atof(es.c_str()), est});

  struct CellResult {
    int completed = 0;
    double sum = 0.0, vmin = 1e300, vmax = -1e300;
    double opt_sum = 0.0;
    int terminated = 0;
    std::int64_t peak_v = 0, peak_e = 0, peak_ehat = 0;
    bool failed = false;
    std::string error;
  };
  std::vector<CellResult> results(cells.size());

  std::atomic<std::size_t> next{0};
  auto run_cell = [&](std::size_t idx) {
    const Cell& cell = cells[idx];
    CellResult& res = results[idx];
    try {
      GraphKind gk;
      if (kind == "uniform-random") gk = GraphKind::kUniformRandom;
      else if (kind == "planted-dicut") gk = GraphKind::kPlantedDicut;
      else if (kind == "power-law") gk = GraphKind::kPowerLaw;
      else throw std::runtime_error("unknown kind: " + kind);
      const std::int64_t m =
          std::max<std::int64_t>(1, std::llround(cell.density * static_cast<double>(cell.n)));
      for (int t = 0; t < trials; ++t) {
        const std::uint64_t seed = base_seed + 7919ull * idx + static_cast<std::uint64_t>(t);
        GeneratorParams gp;
        gp.plant_fraction = plant;
        const GeneratedGraph gen = generate(gk, cell.n, m, gp, seed);

        double opt;
        if (gen.planted_value) {
          opt = std::max(*gen.planted_value, max_dicut_localsearch(gen.graph, 4, seed ^ 0x9e1ull).value());
        } else if (gen.graph.n <= kDefaultExactCap) {
          opt = max_dicut_exact(gen.graph).value();
        } else {
          opt = max_dicut_localsearch(gen.graph, 8, seed ^ 0x9e1ull).value();
        }

        ParameterSet params = ParameterSet::practical(cell.n);
        params.epsilon = cell.epsilon;
        for (const auto& [k, v] : spec) {
          static const char* kGridKeys[] = {"estimators", "epsilons", "n_list", "densities",
                                            "kind", "plant", "trials", "seed"};
          bool grid = false;
          for (const char* gk2 : kGridKeys)
            if (k == gk2) grid = true;
          if (!grid) apply_param(params, k, v);
        }
        finish_rule_split(params, spec.count("priority-bits") > 0);
        params.validate();

        VectorEdgeStream stream(gen.graph);
        const EstimateReport r = run_estimator(cell.estimator, stream, params, seed);
        if (r.value) {
          ++res.completed;
          res.sum += *r.value;
          res.vmin = std::min(res.vmin, *r.value);
          res.vmax = std::max(res.vmax, *r.value);
          res.opt_sum += opt;
        } else {
          ++res.terminated;
        }
        res.peak_v = std::max(res.peak_v, r.peaks.vprime);
        res.peak_e = std::max(res.peak_e, std::max(r.peaks.eprime, r.peaks.epp));
        res.peak_ehat = std::max(res.peak_ehat, r.peaks.ehat);
      }
    } catch (const std::exception& e) {
      res.failed = true;
      res.error = e.what();
    }
  };

  const int workers = worker_count();
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= cells.size()) return;
        run_cell(idx);
      }
    });
  for (std::thread& th : pool) th.join();

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    out = &file;
  }
  (*out) << "n,density,epsilon,estimator,trials,mean,min,max,opt,ratio,early_rate,"
            "peakV,peakE,peakEhat,status\n";
  out->precision(8);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    const CellResult& r = results[i];
    (*out) << c.n << "," << c.density << "," << c.epsilon << "," << c.estimator << "," << trials
           << ",";
    if (r.failed || r.completed == 0) {
      (*out) << "NA,NA,NA,NA,NA," << (trials > 0 ? static_cast<double>(r.terminated) / trials : 0)
             << "," << r.peak_v << "," << r.peak_e << "," << r.peak_ehat << ","
             << (r.failed ? "error:" + r.error : "all-terminated") << "\n";
      continue;
    }
    const double mean = r.sum / r.completed;
    const double opt = r.opt_sum / r.completed;
    (*out) << mean << "," << r.vmin << "," << r.vmax << "," << opt << ","
           << (opt > 0 ? mean / opt : 0.0) << ","
           << static_cast<double>(r.terminated) / trials << "," << r.peak_v << "," << r.peak_e
           << "," << r.peak_ehat << ",ok\n";
  }
  return 0;
}

// ---- plot ----

int cmd_plot(const std::string& input, const std::string& out_path, const std::string& x_col,
             const std::string& y_col, const std::string& group_col) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty csv");
  const std::vector<std::string> cols = split_list(header);
  auto col_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == name) return static_cast<int>(i);
    throw std::runtime_error("column not found: " + name);
  };
  const int xi = col_index(x_col), yi = col_index(y_col), gi = col_index(group_col);

  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::string line;
  while (std::getline(in, line)) {
    const std::vector<std::string> f = split_list(line);
    if (static_cast<int>(f.size()) <= std::max({xi, yi, gi})) continue;
    if (f[static_cast<std::size_t>(yi)] == "NA") continue;
    series[f[static_cast<std::size_t>(gi)]].emplace_back(
        std::atof(f[static_cast<std::size_t>(xi)].c_str()),
        std::atof(f[static_cast<std::size_t>(yi)].c_str()));
  }
  if (series.empty()) throw std::runtime_error("no plottable rows");

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto& [name, pts] : series) {
    std::sort(pts.begin(), pts.end());
    for (const auto& [x, y] : pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  const double W = 720, H = 480, L = 70, B = 50, T = 20, R = 20;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - B - T); };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - R << "' y2='" << H - B
      << "' stroke='black'/>\n";
  out << "<line x1='" << L << "' y1='" << T << "' x2='" << L << "' y2='" << H - B
      << "' stroke='black'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    out << "<text x='" << sx(xv) << "' y='" << H - B + 18 << "' font-size='11' text-anchor='middle'>"
        << xv << "</text>\n";
    out << "<text x='" << L - 8 << "' y='" << sy(yv) + 4 << "' font-size='11' text-anchor='end'>"
        << yv << "</text>\n";
  }
  out << "<text x='" << (L + W - R) / 2 << "' y='" << H - 12
      << "' font-size='13' text-anchor='middle'>" << x_col << "</text>\n";
  out << "<text x='16' y='" << (T + H - B) / 2 << "' font-size='13' text-anchor='middle' "
      << "transform='rotate(-90 16 " << (T + H - B) / 2 << ")'>" << y_col << "</text>\n";

  int ci = 0;
  double ly = T + 10;
  for (const auto& [name, pts] : series) {
    const char* color = kColors[ci++ % 6];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
    for (const auto& [x, y] : pts) out << sx(x) << "," << sy(y) << " ";
    out << "'/>\n";
    for (const auto& [x, y] : pts)
      out << "<circle cx='" << sx(x) << "' cy='" << sy(y) << "' r='3' fill='" << color << "'/>\n";
    out << "<text x='" << W - R - 140 << "' y='" << ly << "' font-size='12' fill='" << color
        << "'>" << name << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming Max-DICUT estimation toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a graph in edge-list format");
  std::string gen_kind = "uniform-random";
  VertexId gen_n = 100;
  std::int64_t gen_m = 300;
  double gen_plant = 0.9, gen_exponent = 2.5;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "uniform-random | planted-dicut | power-law");
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--m", gen_m, "edge count")->required();
  gen->add_option("--plant", gen_plant, "planted dicut fraction");
  gen->add_option("--exponent", gen_exponent, "power-law exponent");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "output path")->required();

  // estimate
  auto* est = app.add_subcommand("estimate", "run an estimator over an edge-list file");
  std::string est_input, est_estimator = "meta", est_out;
  int est_trials = 1;
  std::uint64_t est_seed = 1;
  ParamCli est_params;
  est->add_option("--input", est_input, "edge-list file")->required();
  est->add_option("--estimator", est_estimator,
                  "two-pass | three-pass | meta | exact | coreset")
      ->check(CLI::IsMember({"two-pass", "three-pass", "meta", "exact", "coreset"}));
  est->add_option("--trials", est_trials, "trial count")->check(CLI::PositiveNumber);
  est->add_option("--seed", est_seed, "base seed (trial i uses seed+i)");
  est->add_option("--out", est_out, "CSV output path (default stdout)");
  est_params.add_flags(est);

  // validate
  auto* val = app.add_subcommand("validate", "run a property suite");
  std::string val_suite = "all";
  std::uint64_t val_seed = 2024;
  val->add_option("--suite", val_suite, "reduction | types | local | stream | all")
      ->check(CLI::IsMember({"reduction", "types", "local", "stream", "all"}));
  val->add_option("--seed", val_seed, "suite seed");

  // experiment
  auto* exp = app.add_subcommand("experiment", "sweep a (n, density, epsilon, estimator) grid");
  std::string exp_spec, exp_out;
  exp->add_option("--spec", exp_spec, "experiment spec file")->required();
  exp->add_option("--out", exp_out, "CSV output path (default stdout)");

  // plot
  auto* plt = app.add_subcommand("plot", "render curves from an experiment CSV to SVG");
  std::string plt_in, plt_out, plt_x = "epsilon", plt_y = "ratio", plt_group = "estimator";
  plt->add_option("--input", plt_in, "experiment CSV")->required();
  plt->add_option("--out", plt_out, "SVG output path")->required();
  plt->add_option("--x", plt_x, "x column");
  plt->add_option("--y", plt_y, "y column");
  plt->add_option("--group", plt_group, "series column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_kind, gen_n, gen_m, gen_plant, gen_exponent, gen_seed, gen_out);
    if (est->parsed())
      return cmd_estimate(est_input, est_estimator, est_trials, est_seed, est_out, est_params);
    if (val->parsed()) return cmd_validate(val_suite, val_seed);
    if (exp->parsed()) return cmd_experiment(exp_spec, exp_out);
    if (plt->parsed()) return cmd_plot(plt_in, plt_out, plt_x, plt_y, plt_group);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
