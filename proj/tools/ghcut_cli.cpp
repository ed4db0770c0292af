// ghcut: exact Gomory-Hu (cut-equivalent) trees for unweighted simple graphs.
//
// Subcommands: generate, build, verify, query, bench. Graphs and trees use
// 1-based text formats (`p ghcut`, `t ghtree`); all randomness is governed by
// --seed (falling back to the GHFORGE_SEED environment variable). Exit codes:
// 0 success/verified, 1 verification mismatch, 2 input error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ghcut/io.hpp"
#include "ghcut/pipeline.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ghcut::validation_error(ghcut::errc::malformed_input, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ghcut::validation_error(ghcut::errc::malformed_input, "cannot write " + path);
  out << text;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("GHFORGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ghcut::validation_error(ghcut::errc::bad_parameter,
                                    "GHFORGE_SEED is not an integer");
    }
  }
  return flag_value;
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (...) {
      throw ghcut::validation_error(ghcut::errc::bad_parameter,
                                    std::string("bad integer list for ") + what);
    }
  }
  if (out.empty())
    throw ghcut::validation_error(ghcut::errc::bad_parameter,
                                  std::string("empty list for ") + what);
  return out;
}

ghcut::gen_params params_for(const std::string& family, int size, const ghcut::gen_params& base) {
  ghcut::gen_params p = base;
  if (family == "barbell") {
    p.size = size;
  } else if (family == "grid") {
    p.rows = size;
    p.cols = size;
  } else {
    p.n = size;
  }
  return p;
}

struct bench_row {
  int graph_id;
  int n, m;
  std::string algo;
  std::uint64_t maxflow_calls;
  double wall_ms;
  bool verified;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Gomory-Hu trees for simple graphs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit a graph from a named family");
  std::string gen_family = "gnp";
  ghcut::gen_params gp;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--family", gen_family,
                  "gnp | barbell | grid | regular-ish | planted-clusters");
  gen->add_option("--n", gp.n, "vertex count (gnp, regular-ish, planted-clusters)");
  gen->add_option("--p", gp.p, "edge probability (gnp)");
  gen->add_option("--size", gp.size, "clique size (barbell)");
  gen->add_option("--rows", gp.rows, "grid rows");
  gen->add_option("--cols", gp.cols, "grid cols");
  gen->add_option("--degree", gp.degree, "target degree (regular-ish)");
  gen->add_option("--clusters", gp.clusters, "cluster count (planted-clusters)");
  gen->add_option("--p-in", gp.p_in, "intra-cluster edge probability");
  gen->add_option("--p-out", gp.p_out, "inter-cluster edge probability");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // build
  auto* build = app.add_subcommand("build", "construct a Gomory-Hu tree");
  std::string build_input, build_out, build_algo = "fast";
  int build_c = 0, build_jobs = 1;
  std::uint64_t build_seed = 0;
  double rounds_constant = 4.0;
  build->add_option("--input", build_input, "graph file")->required();
  build->add_option("--algo", build_algo, "fast | classic")
      ->check(CLI::IsMember({"fast", "classic"}));
  build->add_option("--c", build_c, "bootstrap connectivity threshold (0 = ceil(sqrt n))");
  auto* build_seed_opt = build->add_option("--seed", build_seed, "pipeline seed");
  build->add_option("--rounds-constant", rounds_constant, "c in the sampling rounds formula");
  build->add_option("--jobs", build_jobs, "parallel part refinements");
  build->add_option("--out", build_out, "tree output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "check a tree against a graph");
  std::string verify_graph, verify_tree;
  verify->add_option("--graph", verify_graph, "graph file")->required();
  verify->add_option("--tree", verify_tree, "tree file")->required();

  // query
  auto* query = app.add_subcommand("query", "mincut value between two vertices");
  std::string query_tree;
  int query_u = 0, query_v = 0;
  query->add_option("--tree", query_tree, "tree file")->required();
  query->add_option("--u", query_u, "first vertex (1-based)")->required();
  query->add_option("--v", query_v, "second vertex (1-based)")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark builds over a family sweep");
  std::string bench_family = "gnp", bench_sizes = "10,20", bench_seeds = "1",
              bench_algo = "both", bench_clusters_out;
  ghcut::gen_params bench_gp;
  int bench_c = 0;
  bench->add_option("--family", bench_family, "graph family");
  bench->add_option("--sizes", bench_sizes, "comma-separated sizes");
  bench->add_option("--seeds", bench_seeds, "comma-separated seeds");
  bench->add_option("--algo", bench_algo, "fast | classic | both")
      ->check(CLI::IsMember({"fast", "classic", "both"}));
  bench->add_option("--p", bench_gp.p, "edge probability (gnp)");
  bench->add_option("--degree", bench_gp.degree, "target degree (regular-ish)");
  bench->add_option("--clusters", bench_gp.clusters, "cluster count (planted-clusters)");
  bench->add_option("--p-in", bench_gp.p_in, "intra-cluster edge probability");
  bench->add_option("--p-out", bench_gp.p_out, "inter-cluster edge probability");
  bench->add_option("--c", bench_c, "bootstrap threshold (0 = ceil(sqrt n))");
  bench->add_option("--clusters-out", bench_clusters_out,
                    "per-cluster flow accounting CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      std::uint64_t seed = resolve_seed(gen_seed_opt, gen_seed);
      std::cerr << "c ghcut generate family=" << gen_family << " seed=" << seed << "\n";
      auto g = ghcut::generate(gen_family, gp, seed);
      write_output(gen_out, ghcut::emit_graph(g));
      return 0;
    }

    if (*build) {
      std::uint64_t seed = resolve_seed(build_seed_opt, build_seed);
      auto g = ghcut::parse_graph(read_file(build_input));
      std::cerr << "c ghcut build input=" << build_input << " n=" << g.n << " m=" << g.m()
                << " algo=" << build_algo << " c=" << build_c << " seed=" << seed
                << " rounds-constant=" << rounds_constant << " jobs=" << build_jobs << "\n";
      ghcut::partial_tree t;
      if (build_algo == "classic") {
        t = ghcut::gh_tree_classic(g);
      } else {
        ghcut::pipeline_config cfg;
        cfg.seed = seed;
        cfg.rounds_constant = rounds_constant;
        cfg.jobs = build_jobs;
        t = ghcut::gh_tree_fast(g, build_c, cfg);
      }
      write_output(build_out, ghcut::emit_tree(t));
      return 0;
    }

    if (*verify) {
      auto g = ghcut::parse_graph(read_file(verify_graph));
      auto t = ghcut::parse_tree(read_file(verify_tree));
      auto report = ghcut::verify_gh_tree(g, t);
      std::cout << "pairs " << report.pairs_checked << "\nmismatches "
                << report.mismatches.size() << "\n";
      for (const auto& mm : report.mismatches)
        std::cout << "mismatch " << mm.u + 1 << ' ' << mm.v + 1 << " tree=" << mm.tree_value
                  << " graph=" << mm.graph_value << "\n";
      return report.pass() ? 0 : 1;
    }

    if (*query) {
      auto t = ghcut::parse_tree(read_file(query_tree));
      int n = static_cast<int>(t.part_of.size());
      if (query_u < 1 || query_u > n || query_v < 1 || query_v > n)
        throw ghcut::validation_error(ghcut::errc::unknown_vertex, "vertex outside [1, n]");
      std::cout << ghcut::query_mincut(t, query_u - 1, query_v - 1) << "\n";
      return 0;
    }

    if (*bench) {
      auto sizes = parse_int_list(bench_sizes, "--sizes");
      auto seeds = parse_int_list(bench_seeds, "--seeds");
      std::cerr << "c ghcut bench family=" << bench_family << " sizes=" << bench_sizes
                << " seeds=" << bench_seeds << " algo=" << bench_algo << " c=" << bench_c
                << "\n";
      std::vector<bench_row> rows;
      std::ostringstream cluster_csv;
      cluster_csv << "graph,n,level_d,cluster,x_size,phi,rounds,tmax,flows,budget,within,confirm_flows\n";
      int graph_id = 0;
      for (int size : sizes) {
        for (int s : seeds) {
          auto g = ghcut::generate(bench_family, params_for(bench_family, size, bench_gp),
                                   static_cast<std::uint64_t>(s));
          for (const std::string& algo : {std::string("fast"), std::string("classic")}) {
            if (bench_algo != "both" && bench_algo != algo) continue;
            ghcut::partial_tree t;
            std::uint64_t calls = 0;
            double wall = 0;
            if (algo == "classic") {
              ghcut::flow_counter fc;
              auto t0 = std::chrono::steady_clock::now();
              t = ghcut::gh_tree_classic(g, &fc);
              wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               t0)
                         .count();
              calls = fc.calls;
            } else {
              ghcut::pipeline_config cfg;
              cfg.seed = static_cast<std::uint64_t>(s);
              ghcut::pipeline_stats stats;
              t = ghcut::gh_tree_fast(g, bench_c, cfg, &stats);
              wall = stats.wall_ms;
              calls = stats.maxflow_calls;
              std::cerr << "c depth graph=" << graph_id << " n=" << g.n
                        << " max_recursion_depth=" << stats.max_recursion_depth << "\n";
              for (const auto& rec : stats.clusters) {
                for (const auto& r : rec.ssm) {
                  int tmax = std::max(r.tmax, 2);
                  int lg = 0;
                  while ((1 << lg) < tmax) ++lg;
                  std::uint64_t budget = static_cast<std::uint64_t>(r.rounds) *
                                             static_cast<std::uint64_t>(lg + tmax) +
                                         2;
                  cluster_csv << graph_id << ',' << r.graph_n << ',' << rec.level_d << ','
                              << rec.cluster_index << ',' << rec.x_size << ',' << rec.phi << ','
                              << r.rounds << ',' << r.tmax << ',' << r.flows << ',' << budget
                              << ',' << (r.flows <= budget ? 1 : 0) << ','
                              << rec.confirm_flows << "\n";
                }
              }
            }
            bool verified = ghcut::verify_gh_tree(g, t).pass();
            rows.push_back({graph_id, g.n, g.m(), algo, calls, wall, verified});
          }
          ++graph_id;
        }
      }
      std::cout << "n,m,algo,maxflow_calls,wall_ms,verified\n";
      for (const auto& r : rows)
        std::cout << r.n << ',' << r.m << ',' << r.algo << ',' << r.maxflow_calls << ','
                  << r.wall_ms << ',' << (r.verified ? 1 : 0) << "\n";
      if (!bench_clusters_out.empty()) write_output(bench_clusters_out, cluster_csv.str());
      for (const auto& r : rows)
        if (!r.verified) return 1;
      return 0;
    }
  } catch (const ghcut::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
