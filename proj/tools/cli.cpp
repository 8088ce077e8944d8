#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "toptri/enumerate.hpp"
#include "toptri/heavy_light.hpp"
#include "toptri/sampling.hpp"
#include "toptri/synthgen.hpp"

namespace toptri::cli {

using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json p_json(PMeanParam p) {
  if (p.finite()) return p.value();
  return p.to_string();
}

bool is_sampler(const std::string& algo) { return algo == "es" || algo == "ws" || algo == "ps"; }

const std::vector<std::string> kAlgos{"bf", "shl", "dhl", "auto", "es", "ws", "ps"};

void check_algo(const std::string& algo) {
  if (std::find(kAlgos.begin(), kAlgos.end(), algo) == kAlgos.end())
    throw Error("unknown algorithm '" + algo + "' (expected bf|shl|dhl|auto|es|ws|ps)");
}

double resolve_alpha(const RunOptions& o, const SortedEdgeList& sorted) {
  if (o.alpha != "auto") {
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(o.alpha, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != o.alpha.size()) throw Error("bad --alpha '" + o.alpha + "'");
    return a;
  }
  if (sorted.size() == 0) return kDefaultAlpha;
  const double beta = fit_beta(sorted, sorted.edges.back().w);
  return alpha_from_powerlaw(o.p.value(), beta);
}

SamplerConfig sampler_config(const RunOptions& o) {
  if (!o.p.finite()) throw Error("samplers need a finite p");
  SamplerConfig cfg;
  cfg.p = o.p.value();
  cfg.iterations = o.iterations;
  cfg.budget_ms = o.budget_ms;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.k = o.k;
  cfg.validate();
  return cfg;
}

}  // namespace

json RunReport::to_json() const {
  json j;
  j["algorithm"] = algorithm;
  j["dataset"] = dataset;
  j["p"] = p;
  j["k"] = k;
  j["clique_size"] = clique_size;
  j["load_ms"] = load_ms;
  j["preprocess_ms"] = preprocess_ms;
  j["main_ms"] = main_ms;
  j["iterations"] = iterations ? json(*iterations) : json(nullptr);
  j["alpha"] = alpha ? json(*alpha) : json(nullptr);
  j["accuracy"] = accuracy ? json(*accuracy) : json(nullptr);
  j["exact"] = exact;
  j["results"] = results;
  j["digest"] = digest;
  j["warnings"] = warnings;
  return j;
}

std::vector<ResultRow> exact_rows(const WeightedGraph& g, PMeanParam p, std::size_t k,
                                  int clique_size) {
  if (clique_size == 3) return to_rows(g, brute_force_topk(g, p, k));
  return to_rows(g, enumerate_cliques(g, clique_size, p, k));
}

RunOutcome run_algorithm(const WeightedGraph& g, const RunOptions& o) {
  check_algo(o.algo);
  if (o.k == 0) throw Error("k must be at least 1");
  if (o.clique_size < 3 || o.clique_size > 5) throw Error("clique size must be 3, 4 or 5");
  if (o.clique_size != 3 && o.algo != "bf" && o.algo != "es")
    throw Error("cliques of size 4 or 5 are supported by bf and es only");

  RunOutcome out;
  RunReport& r = out.report;
  r.algorithm = o.algo;
  r.p = o.p.to_string();
  r.k = o.k;
  r.clique_size = o.clique_size;

  auto t0 = Clock::now();
  std::optional<SortedEdgeList> sorted;
  if (o.algo != "bf" && o.algo != "ws" && o.algo != "ps") sorted = sort_edges(g, o.threads);

  if (o.algo == "bf") {
    r.preprocess_ms = 0.0;
    t0 = Clock::now();
    if (o.clique_size == 3) {
      auto res = brute_force_topk(g, o.p, o.k);
      r.exact = res.exact;
      out.rows = to_rows(g, res);
    } else {
      auto res = enumerate_cliques(g, o.clique_size, o.p, o.k);
      r.exact = true;
      out.rows = to_rows(g, res);
    }
    r.main_ms = ms_since(t0);
  } else if (o.algo == "shl") {
    r.preprocess_ms = ms_since(t0);
    t0 = Clock::now();
    auto res = static_heavy_light(g, *sorted, o.p, o.k, o.heavy_fraction);
    r.main_ms = ms_since(t0);
    out.rows = to_rows(g, res);
  } else if (o.algo == "dhl" || o.algo == "auto") {
    if (!o.p.finite() || !(o.p.value() > 0.0)) throw Error("heavy-light requires finite p > 0");
    std::optional<double> alpha;
    if (o.algo == "dhl") alpha = resolve_alpha(o, *sorted);
    r.preprocess_ms = ms_since(t0);
    t0 = Clock::now();
    auto res = alpha ? dynamic_heavy_light(g, *sorted, o.p, o.k, *alpha)
                     : auto_heavy_light(g, *sorted, o.p, o.k);
    r.main_ms = ms_since(t0);
    r.alpha = alpha;
    r.exact = res.exact;
    out.rows = to_rows(g, res);
  } else {
    const auto cfg = sampler_config(o);
    SamplerStats stats;
    if (o.algo == "es" && o.clique_size != 3) {
      r.preprocess_ms = ms_since(t0);
      t0 = Clock::now();
      out.rows = to_rows(g, edge_sample_cliques(g, *sorted, cfg, o.clique_size, &stats));
      r.main_ms = ms_since(t0);
    } else {
      auto timed = [&](const auto& sampler) {
        r.preprocess_ms = ms_since(t0);
        const auto t1 = Clock::now();
        out.rows = to_rows(g, sample_topk(sampler, cfg, &stats));
        r.main_ms = ms_since(t1);
      };
      if (o.algo == "es")
        timed(EdgeSampler(g, *sorted, cfg.p));
      else if (o.algo == "ws")
        timed(WedgeSampler(g, cfg.p));
      else
        timed(PathSampler(g, cfg.p));
    }
    r.iterations = stats.iterations;
    r.warnings = stats.warnings;
  }
  r.results = out.rows.size();
  r.digest = result_digest(out.rows);
  return out;
}

namespace {

void write_rows_file(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  write_rows(f, rows);
  if (!f) throw Error("write failed: " + path);
}

// ---- bench ------------------------------------------------------------------

struct Summary {
  double mean = 0.0, min = 0.0, max = 0.0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  if (v.empty()) return s;
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  return s;
}

template <class T>
std::vector<T> as_list(const json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

PMeanParam p_from_json(const json& v) {
  if (v.is_number()) return PMeanParam(v.get<double>());
  return PMeanParam::parse(v.get<std::string>());
}

int cmd_bench(const std::string& config_path, std::ostream& out) {
  std::ifstream f(config_path);
  if (!f) throw Error("cannot open " + config_path);
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(std::string("bad bench config: ") + e.what());
  }
  if (!cfg.is_object() || cfg.empty()) throw Error("empty bench config");

  const auto base = std::filesystem::path(config_path).parent_path();
  struct Dataset {
    std::string name, path;
  };
  std::vector<Dataset> datasets;
  if (cfg.contains("datasets"))
    for (const auto& d : cfg.at("datasets")) {
      Dataset ds;
      if (d.is_string()) {
        ds.path = d.get<std::string>();
      } else {
        ds.path = d.at("path").get<std::string>();
        ds.name = d.value("name", "");
      }
      if (std::filesystem::path(ds.path).is_relative()) ds.path = (base / ds.path).string();
      if (ds.name.empty()) ds.name = std::filesystem::path(ds.path).filename().string();
      datasets.push_back(ds);
    }
  const auto algos = as_list<std::string>(cfg, "algorithms", {});
  const auto sweep = as_list<double>(cfg, "heavy_fraction_sweep", {});
  if (datasets.empty() || (algos.empty() && sweep.empty()))
    throw Error("bench config needs datasets and algorithms or a heavy_fraction_sweep");
  for (const auto& a : algos) check_algo(a);

  std::vector<PMeanParam> ps;
  if (cfg.contains("p")) {
    const auto& v = cfg.at("p");
    if (v.is_array())
      for (const auto& x : v) ps.push_back(p_from_json(x));
    else
      ps.push_back(p_from_json(v));
  } else {
    ps.push_back(PMeanParam(1.0));
  }
  const auto ks = as_list<std::size_t>(cfg, "k", {1000});
  const int reps = cfg.value("repetitions", 1);
  if (reps < 1) throw Error("repetitions must be at least 1");
  const bool want_accuracy = cfg.value("accuracy", true);

  RunOptions proto;
  proto.threads = cfg.value("threads", 1u);
  proto.seed = cfg.value("seed", std::uint64_t{1});
  proto.iterations = cfg.value("iterations", std::size_t{100000});
  if (cfg.contains("budget_ms") && !cfg.at("budget_ms").is_null())
    proto.budget_ms = cfg.at("budget_ms").get<std::int64_t>();
  if (cfg.contains("alpha"))
    proto.alpha = cfg.at("alpha").is_string() ? cfg.at("alpha").get<std::string>()
                                              : std::to_string(cfg.at("alpha").get<double>());
  proto.heavy_fraction = cfg.value("heavy_fraction", 0.1);
  proto.clique_size = cfg.value("clique_size", 3);

  for (const auto& ds : datasets) {
    std::optional<WeightedGraph> g;
    std::string load_error;
    try {
      g = load_edge_list_file(ds.path);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (PMeanParam p : ps)
      for (std::size_t k : ks) {
        std::optional<std::vector<ResultRow>> oracle;
        auto oracle_rows = [&]() -> const std::vector<ResultRow>& {
          if (!oracle) oracle = exact_rows(*g, p, k, proto.clique_size);
          return *oracle;
        };
        auto run_cell = [&](json line, RunOptions o) {
          o.p = p;
          o.k = k;
          line["dataset"] = ds.name;
          line["p"] = p_json(p);
          line["k"] = k;
          line["repetitions"] = reps;
          std::vector<double> main_ms, pre_ms, acc;
          try {
            if (!g) throw Error(load_error);
            std::string digest;
            std::optional<std::size_t> iterations;
            for (int rep = 0; rep < reps; ++rep) {
              o.seed = proto.seed + static_cast<std::uint64_t>(rep);
              auto res = run_algorithm(*g, o);
              main_ms.push_back(res.report.main_ms);
              pre_ms.push_back(res.report.preprocess_ms);
              if (want_accuracy) acc.push_back(accuracy(res.rows, oracle_rows(), k));
              digest = res.report.digest;
              iterations = res.report.iterations;
            }
            const auto s = summarize(main_ms);
            line["main_ms"] = main_ms;
            line["preprocess_ms"] = pre_ms;
            line["mean_ms"] = s.mean;
            line["min_ms"] = s.min;
            line["max_ms"] = s.max;
            line["accuracy"] = acc.empty() ? json(nullptr) : json(summarize(acc).mean);
            line["accuracy_min"] = acc.empty() ? json(nullptr) : json(summarize(acc).min);
            line["iterations"] = iterations ? json(*iterations) : json(nullptr);
            line["digest"] = digest;
          } catch (const std::exception& e) {
            line["error"] = e.what();
          }
          out << line.dump() << '\n' << std::flush;
        };
        for (const auto& a : algos) {
          RunOptions o = proto;
          o.algo = a;
          run_cell(json{{"type", "cell"}, {"algorithm", a}}, o);
        }
        for (double hf : sweep) {
          RunOptions o = proto;
          o.algo = "shl";
          o.heavy_fraction = hf;
          run_cell(json{{"type", "sweep"}, {"algorithm", "shl"}, {"heavy_fraction", hf}}, o);
        }
      }
  }
  return 0;
}

// ---- gen --------------------------------------------------------------------

struct GenFlags {
  std::size_t n = 1000;
  std::string degree = "powerlaw";
  std::size_t d = 4;
  double gamma = 2.5;
  std::size_t d_min = 1;
  std::size_t d_max = 0;
  std::string weights = "powerlaw";
  double beta = 2.0;
  double w_min = 1.0;
  double lo = 1.0, hi = 2.0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenFlags& fl, std::ostream& out) {
  GenSpec spec;
  spec.n = fl.n;
  spec.seed = fl.seed;
  if (fl.degree == "const")
    spec.degree_dist = ConstantDegree{fl.d};
  else
    spec.degree_dist = PowerLawDegree{fl.gamma, fl.d_min, fl.d_max};
  if (fl.weights == "uniform")
    spec.weight_dist = UniformWeight{fl.lo, fl.hi};
  else
    spec.weight_dist = PowerLawWeight{fl.beta, fl.w_min};

  const auto g = generate(spec);
  const auto sorted = sort_edges(g);
  {
    std::ofstream f(fl.out, std::ios::binary);
    if (!f) throw Error("cannot write " + fl.out);
    write_edge_list(f, g, sorted);
    if (!f) throw Error("write failed: " + fl.out);
  }
  json summary{{"n", g.num_nodes()}, {"m", g.num_edges()}, {"beta_hat", nullptr}};
  if (fl.weights != "uniform") {
    try {
      summary["beta_hat"] = fit_beta(sorted, fl.w_min);
    } catch (const Error& e) {
      summary["warning"] = e.what();
    }
  }
  out << summary.dump() << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Top-k weighted triangle retrieval under generalized p-means"};
  app.require_subcommand(1);

  // topk
  auto* topk = app.add_subcommand("topk", "Run one algorithm and write the result TSV");
  RunOptions ro;
  std::string input, out_path, p_text = "1", oracle_path, agg_text = "sum";
  bool verify = false;
  std::size_t iters = ro.iterations;
  std::int64_t budget = 0;
  topk->add_option("--input", input, "Edge list `u v w`")->required()->check(CLI::ExistingFile);
  topk->add_option("--algo", ro.algo, "bf|shl|dhl|auto|es|ws|ps")
      ->required()
      ->check(CLI::IsMember(kAlgos));
  topk->add_option("--p", p_text, "Mean exponent: real, inf or -inf")->capture_default_str();
  topk->add_option("--k", ro.k, "Number of results")->check(CLI::PositiveNumber)->capture_default_str();
  auto* alpha_opt = topk->add_option("--alpha", ro.alpha, "dhl separation exponent (> 1) or auto");
  auto* hf_opt = topk->add_option("--heavy-fraction", ro.heavy_fraction, "shl heavy edge fraction")
                     ->check(CLI::Range(0.0, 1.0));
  auto* iters_opt = topk->add_option("--iters", iters, "Sampler iterations")->check(CLI::PositiveNumber);
  auto* budget_opt =
      topk->add_option("--budget-ms", budget, "Sampler time budget")->check(CLI::PositiveNumber);
  iters_opt->excludes(budget_opt);
  topk->add_option("--seed", ro.seed, "Sampler seed")->capture_default_str();
  topk->add_option("--threads", ro.threads, "Sort and sampler threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  topk->add_option("--clique-size", ro.clique_size, "3, 4 or 5")->check(CLI::Range(3, 5));
  topk->add_option("--out", out_path, "Result TSV path")->required();
  topk->add_option("--aggregation", agg_text, "Parallel edges: sum|max|first")->capture_default_str();
  topk->add_option("--oracle", oracle_path, "Exact result TSV for the accuracy field")
      ->check(CLI::ExistingFile);
  topk->add_flag("--verify", verify, "Compute the exact oracle in-process for the accuracy field");

  // accuracy
  auto* acc = app.add_subcommand("accuracy", "Fraction of the oracle's top-k found in a result");
  std::string acc_result, acc_oracle;
  std::size_t acc_k = 0;
  acc->add_option("result", acc_result)->required()->check(CLI::ExistingFile);
  acc->add_option("oracle", acc_oracle)->required()->check(CLI::ExistingFile);
  acc->add_option("--k", acc_k, "Oracle rows to consider (default all)");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark grid from a JSON config");
  std::string bench_cfg;
  bench->add_option("config", bench_cfg)->required()->check(CLI::ExistingFile);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a configuration-model graph");
  GenFlags gf;
  gen->add_option("--n", gf.n)->capture_default_str();
  gen->add_option("--degree", gf.degree)->check(CLI::IsMember({"const", "powerlaw"}))->capture_default_str();
  gen->add_option("--d", gf.d, "Constant degree")->capture_default_str();
  gen->add_option("--gamma", gf.gamma, "Degree exponent")->capture_default_str();
  gen->add_option("--d-min", gf.d_min)->capture_default_str();
  gen->add_option("--d-max", gf.d_max, "0 means n-1")->capture_default_str();
  gen->add_option("--weights", gf.weights)->check(CLI::IsMember({"powerlaw", "uniform"}))->capture_default_str();
  gen->add_option("--beta", gf.beta)->capture_default_str();
  gen->add_option("--w-min", gf.w_min)->capture_default_str();
  gen->add_option("--lo", gf.lo)->capture_default_str();
  gen->add_option("--hi", gf.hi)->capture_default_str();
  gen->add_option("--seed", gf.seed)->capture_default_str();
  gen->add_option("--out", gf.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*topk) {
      ro.p = PMeanParam::parse(p_text);
      if (iters_opt->count()) ro.iterations = iters;
      if (budget_opt->count()) ro.budget_ms = budget;
      std::vector<std::string> ignored;
      if (alpha_opt->count() && ro.algo != "dhl") ignored.push_back("--alpha is only used by dhl");
      if (hf_opt->count() && ro.algo != "shl")
        ignored.push_back("--heavy-fraction is only used by shl");
      if ((iters_opt->count() || budget_opt->count()) && !is_sampler(ro.algo))
        ignored.push_back("--iters/--budget-ms are only used by es, ws, ps");

      const auto t0 = Clock::now();
      const auto g = load_edge_list_file(input, parse_aggregation(agg_text));
      const double load_ms = ms_since(t0);
      auto res = run_algorithm(g, ro);
      res.report.dataset = input;
      res.report.load_ms = load_ms;
      res.report.warnings.insert(res.report.warnings.end(), ignored.begin(), ignored.end());
      if (!oracle_path.empty())
        res.report.accuracy = accuracy(res.rows, read_rows_file(oracle_path), ro.k);
      else if (verify)
        res.report.accuracy = accuracy(res.rows, exact_rows(g, ro.p, ro.k, ro.clique_size), ro.k);
      write_rows_file(out_path, res.rows);
      out << res.report.to_json().dump() << '\n';
      return 0;
    }
    if (*acc) {
      const double a = accuracy(read_rows_file(acc_result), read_rows_file(acc_oracle), acc_k);
      out << a << '\n';
      return 0;
    }
    if (*bench) return cmd_bench(bench_cfg, out);
    if (*gen) return cmd_gen(gf, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace toptri::cli
