#include "ocse/cli.hpp"

#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocse/covariance.hpp"
#include "ocse/entropy.hpp"
#include "ocse/inference.hpp"
#include "ocse/io.hpp"
#include "ocse/oracles.hpp"
#include "ocse/parallel.hpp"
#include "ocse/sweep.hpp"

namespace ocse {

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(std::stod(field));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(std::stoi(field));
  return out;
}

Eigen::VectorXd noise_vector(const std::string& text, int n) {
  const std::vector<double> values = parse_double_list(text);
  Eigen::VectorXd sigma(n);
  if (values.size() == 1) {
    sigma.setConstant(values[0]);
  } else if (static_cast<int>(values.size()) == n) {
    for (int i = 0; i < n; ++i) sigma(i) = values[static_cast<std::size_t>(i)];
  } else {
    throw std::invalid_argument(
        "noise-std must be a scalar or one value per node");
  }
  return sigma;
}

struct GenerateOpts {
  std::string topology;
  int n = 0;
  double p = 0.0;
  double np = 0.0;
  double rho = 0.8;
  double w = 0.5;
  std::string parents;
  std::uint64_t seed = 0;
  std::string out;
};

void run_generate(const GenerateOpts& o) {
  Network net;
  if (o.topology == "er") {
    double p = o.p;
    if (p <= 0.0 && o.np > 0.0) p = o.np / o.n;
    if (p <= 0.0)
      throw std::invalid_argument("er topology needs --p or --np");
    net = generate_er_signed(o.n, p, o.rho, o.seed);
  } else if (o.topology == "chain") {
    net = chain_network(o.n);
  } else if (o.topology == "loop") {
    net = loop_network(o.n, o.w);
  } else if (o.topology == "tree") {
    const TreeSpec spec = o.parents.empty()
                              ? random_tree_spec(o.n, o.seed)
                              : TreeSpec::from_parents(parse_int_list(o.parents));
    net = tree_network(spec);
  } else {
    throw std::invalid_argument("unknown topology: " + o.topology);
  }
  write_network(net, o.out);
  std::cout << "wrote " << o.out << ": n=" << net.n
            << " links=" << net.link_count()
            << " rho=" << spectral_radius(net) << "\n";
}

struct SimulateOpts {
  std::string net_path;
  long T = 0;
  std::string noise = "1";
  std::uint64_t seed = 0;
  std::string out;
};

void run_simulate(const SimulateOpts& o) {
  GaussianProcessSpec spec;
  spec.network = read_network(o.net_path);
  spec.noise_std = noise_vector(o.noise, spec.network.n);
  spec.seed = o.seed;
  const TimeSeries ts = simulate_gaussian(spec, o.T);
  write_timeseries(ts, o.out);
  std::cout << "wrote " << o.out << ": T=" << ts.T() << " n=" << ts.n() << "\n";
}

struct InferOpts {
  std::string input;
  std::string method = "ocse";
  int r = 100;
  double theta = 0.99;
  std::uint64_t seed = 0;
  std::string truth;
  bool traces = false;
  int jobs = default_jobs();
  std::string out;
  std::string cov_out;
};

void run_infer(const InferOpts& o) {
  const TimeSeries ts = read_timeseries(o.input);
  const EmpiricalCseSource src(ts);
  if (!o.cov_out.empty()) write_covariances_csv(src.covariances(), o.cov_out);
  SignificanceConfig cfg;
  cfg.r = o.r;
  cfg.theta = o.theta;
  cfg.seed = o.seed;
  const InferredNetwork result = infer_network(
      src, method_from_name(o.method), cfg, {o.traces, o.jobs});

  std::ostream* human = &std::cout;
  if (!o.out.empty()) {
    write_inferred(result, o.out, o.traces);
  } else {
    // JSON on stdout; keep the human-readable summary on stderr.
    const std::string tmp = "/dev/stdout";
    write_inferred(result, tmp, o.traces);
    human = &std::cerr;
  }

  *human << "method=" << o.method << " links=" << result.edges.size();
  if (!result.degenerate_nodes.empty())
    *human << " degenerate_nodes=" << result.degenerate_nodes.size();
  if (!o.truth.empty()) {
    const Network truth = read_network(o.truth);
    const ErrorRatios er = error_ratios(truth, result);
    *human << " eps_minus="
           << (er.false_negative ? std::to_string(*er.false_negative) : "undefined")
           << " eps_plus="
           << (er.false_positive ? std::to_string(*er.false_positive) : "undefined");
  }
  *human << "\n";
}

struct CompareOpts {
  std::string input;
  std::string truth;
  int r = 100;
  double theta = 0.99;
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  std::string out;
};

void run_compare(const CompareOpts& o) {
  const TimeSeries ts = read_timeseries(o.input);
  const Network truth = read_network(o.truth);
  const EmpiricalCseSource src(ts);
  SignificanceConfig cfg;
  cfg.r = o.r;
  cfg.theta = o.theta;
  cfg.seed = o.seed;

  std::ostringstream csv;
  csv << "method,links,eps_minus,eps_plus,degenerate_nodes,seconds\n";
  std::cout << "method    links  eps_minus  eps_plus   degenerate  seconds\n";
  for (const InferenceMethod m :
       {InferenceMethod::ocse, InferenceMethod::te, InferenceMethod::granger}) {
    const auto t0 = std::chrono::steady_clock::now();
    const InferredNetwork result = infer_network(src, m, cfg, {false, o.jobs});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const ErrorRatios er = error_ratios(truth, result);
    const std::string em =
        er.false_negative ? std::to_string(*er.false_negative) : "undefined";
    const std::string ep =
        er.false_positive ? std::to_string(*er.false_positive) : "undefined";
    char line[160];
    std::snprintf(line, sizeof(line), "%-9s %-6zu %-10s %-10s %-11zu %.2f",
                  method_name(m).c_str(), result.edges.size(), em.c_str(),
                  ep.c_str(), result.degenerate_nodes.size(), secs);
    std::cout << line << "\n";
    csv << method_name(m) << "," << result.edges.size() << "," << em << ","
        << ep << "," << result.degenerate_nodes.size() << "," << secs << "\n";
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open for writing: " + o.out);
    f << csv.str();
  }
}

struct SweepOpts {
  std::vector<int> n;
  std::vector<double> p;
  std::vector<double> np;
  std::vector<double> rho;
  std::vector<long> T;
  std::vector<std::string> methods{"ocse"};
  std::vector<int> r{100};
  std::vector<double> theta{0.99};
  int realizations = 20;
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  std::string out;
};

void run_sweep_cmd(const SweepOpts& o) {
  SweepSpec spec;
  spec.n_values = o.n;
  spec.p_values = o.p;
  spec.np_values = o.np;
  spec.rho_values = o.rho;
  spec.T_values = o.T;
  for (const auto& m : o.methods) spec.methods.push_back(method_from_name(m));
  spec.r_values = o.r;
  spec.theta_values = o.theta;
  spec.realizations = o.realizations;
  spec.master_seed = o.seed;
  spec.jobs = o.jobs;

  const SweepResult result = run_sweep(spec);
  write_sweep_csv(result, o.out);
  std::cout << "wrote " << o.out << ": cells=" << result.cells.size()
            << " inferences=" << result.total_inferences << "\n";
  for (const auto& c : result.cells) {
    std::cout << method_name(c.cell.method) << " n=" << c.cell.n
              << " np=" << c.cell.np << " rho=" << c.cell.rho
              << " T=" << c.cell.T << " eps-=" << c.eps_minus_mean
              << " eps+=" << c.eps_plus_mean;
    if (c.t_star) std::cout << " T*=" << *c.t_star;
    if (c.degenerate > 0) std::cout << " degenerate=" << c.degenerate;
    std::cout << "\n";
  }
}

struct OracleOpts {
  std::string topology;
  int n = 0;
  double w = 0.5;
  std::string sigma = "1";
  std::uint64_t seed = 0;
  std::string out;
};

void run_oracle(const OracleOpts& o) {
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot open for writing: " + o.out);
  f << "j,i,closed_form,pipeline,abs_diff\n";

  EstimatorContext ctx;
  std::function<double(int, int)> closed;
  if (o.topology == "chain") {
    const Eigen::VectorXd sigma = noise_vector(o.sigma, o.n);
    ctx.cov = exact_covariance(chain_network(o.n), sigma);
    closed = [&, sigma](int j, int i) { return chain_cse(j, i, sigma); };
  } else if (o.topology == "loop") {
    ctx.cov = exact_covariance(loop_network(o.n, o.w));
    closed = [&](int j, int i) { return loop_cse(j, i, o.w, o.n); };
  } else if (o.topology == "tree") {
    const TreeSpec spec = random_tree_spec(o.n, o.seed);
    ctx.cov = exact_covariance(tree_network(spec));
    auto tq = std::make_shared<TreeQuery>(spec);
    closed = [tq](int j, int i) { return tree_cse(*tq, j, i); };
  } else {
    throw std::invalid_argument("oracle topology must be chain, loop or tree");
  }

  char buf[128];
  double max_diff = 0.0;
  for (int j = 0; j < o.n; ++j) {
    for (int i = 0; i < o.n; ++i) {
      const double cf = closed(j, i);
      const double pipe = causation_entropy(ctx, {j}, {i}, {});
      const double diff = std::abs(cf - pipe);
      max_diff = std::max(max_diff, diff);
      std::snprintf(buf, sizeof(buf), "%d,%d,%.12g,%.12g,%.12g", j, i, cf, pipe,
                    diff);
      f << buf << "\n";
    }
  }
  std::cout << "wrote " << o.out << ": max_abs_diff=" << max_diff << "\n";
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"causal network inference via optimal causation entropy"};
  app.require_subcommand(1);
  app.fallthrough(true);
  app.set_config("--config",
                 "",
                 "key-value config file (keys like infer.theta=0.99); "
                 "command-line flags win");

  GenerateOpts gen;
  auto* sub_gen = app.add_subcommand("generate", "write a benchmark network");
  sub_gen->add_option("--topology", gen.topology, "er | chain | loop | tree")
      ->required();
  sub_gen->add_option("--n", gen.n, "node count")->required();
  sub_gen->add_option("--p", gen.p, "er link probability");
  sub_gen->add_option("--np", gen.np, "er expected degree (p = np/n)");
  sub_gen->add_option("--rho", gen.rho, "er spectral radius target");
  sub_gen->add_option("--w", gen.w, "loop weight");
  sub_gen->add_option("--parents", gen.parents,
                      "tree parent list, e.g. -1,0,0,1 (-1 marks the root)");
  sub_gen->add_option("--seed", gen.seed, "random seed");
  sub_gen->add_option("--out", gen.out, "output edge-list file")->required();
  sub_gen->callback([&] { run_generate(gen); });

  SimulateOpts sim;
  auto* sub_sim = app.add_subcommand("simulate", "simulate the network process");
  sub_sim->add_option("--net", sim.net_path, "network edge-list file")->required();
  sub_sim->add_option("--T", sim.T, "sample count to keep")->required();
  sub_sim->add_option("--noise-std", sim.noise,
                      "noise std (scalar or per-node comma list)");
  sub_sim->add_option("--seed", sim.seed, "random seed");
  sub_sim->add_option("--out", sim.out, "output CSV")->required();
  sub_sim->callback([&] { run_simulate(sim); });

  InferOpts inf;
  auto* sub_inf = app.add_subcommand("infer", "infer a network from a series");
  sub_inf->add_option("--input", inf.input, "time series CSV")->required();
  sub_inf->add_option("--method", inf.method, "ocse | te | granger");
  sub_inf->add_option("--r", inf.r, "permutation count");
  sub_inf->add_option("--theta", inf.theta, "significance level");
  sub_inf->add_option("--seed", inf.seed, "random seed");
  sub_inf->add_option("--truth", inf.truth, "ground-truth network for ratios");
  sub_inf->add_flag("--traces", inf.traces, "record per-node discovery traces");
  sub_inf->add_option("--jobs", inf.jobs, "worker threads");
  sub_inf->add_option("--out", inf.out, "output JSON (stdout when omitted)");
  sub_inf->add_option("--cov-out", inf.cov_out,
                      "also write the estimated covariance pair as CSV");
  sub_inf->callback([&] { run_infer(inf); });

  CompareOpts cmp;
  auto* sub_cmp = app.add_subcommand("compare", "run all methods side by side");
  sub_cmp->add_option("--input", cmp.input, "time series CSV")->required();
  sub_cmp->add_option("--truth", cmp.truth, "ground-truth network")->required();
  sub_cmp->add_option("--r", cmp.r, "permutation count");
  sub_cmp->add_option("--theta", cmp.theta, "significance level");
  sub_cmp->add_option("--seed", cmp.seed, "random seed");
  sub_cmp->add_option("--jobs", cmp.jobs, "worker threads");
  sub_cmp->add_option("--out", cmp.out, "optional CSV output");
  sub_cmp->callback([&] { run_compare(cmp); });

  SweepOpts swp;
  auto* sub_swp = app.add_subcommand("sweep", "batch error-ratio experiments");
  sub_swp->add_option("--n", swp.n, "node counts")->delimiter(',')->required();
  sub_swp->add_option("--p", swp.p, "link probabilities")->delimiter(',');
  sub_swp->add_option("--np", swp.np, "expected degrees")->delimiter(',');
  sub_swp->add_option("--rho", swp.rho, "spectral radii")->delimiter(',')->required();
  sub_swp->add_option("--T", swp.T, "sample sizes")->delimiter(',')->required();
  sub_swp->add_option("--method", swp.methods, "methods")->delimiter(',');
  sub_swp->add_option("--r", swp.r, "permutation counts")->delimiter(',');
  sub_swp->add_option("--theta", swp.theta, "significance levels")->delimiter(',');
  sub_swp->add_option("--realizations", swp.realizations, "runs per cell");
  sub_swp->add_option("--seed", swp.seed, "master seed");
  sub_swp->add_option("--jobs", swp.jobs, "worker threads");
  sub_swp->add_option("--out", swp.out, "output CSV")->required();
  sub_swp->callback([&] { run_sweep_cmd(swp); });

  OracleOpts ora;
  auto* sub_ora = app.add_subcommand("oracle", "closed form vs pipeline table");
  sub_ora->add_option("--topology", ora.topology, "chain | loop | tree")->required();
  sub_ora->add_option("--n", ora.n, "node count")->required();
  sub_ora->add_option("--w", ora.w, "loop weight");
  sub_ora->add_option("--sigma", ora.sigma, "chain noise std list");
  sub_ora->add_option("--seed", ora.seed, "tree seed");
  sub_ora->add_option("--out", ora.out, "output CSV")->required();
  sub_ora->callback([&] { run_oracle(ora); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ocse
