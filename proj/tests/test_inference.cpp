#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>

#include "ocse/covariance.hpp"
#include "ocse/errors.hpp"
#include "ocse/inference.hpp"
#include "ocse/oracles.hpp"
#include "ocse/parallel.hpp"
#include "ocse/rng.hpp"

using namespace ocse;

namespace {

ExactCseSource exact_source(const Network& net) {
  return ExactCseSource(exact_covariance(net));
}

TimeSeries simulate(const Network& net, long T, std::uint64_t seed) {
  return simulate_gaussian(GaussianProcessSpec::unit_noise(net, seed), T);
}

// Joint (next, current) distribution of the xor system: node 0 copies the
// parity of nodes 1 and 2, all coins fair and independent.
DiscreteCseSource xor_source() {
  std::vector<double> joint(64, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int yn = 0; yn < 2; ++yn)
          for (int zn = 0; zn < 2; ++zn) {
            const int xn = y ^ z;
            const int idx = ((((xn * 2 + yn) * 2 + zn) * 2 + x) * 2 + y) * 2 + z;
            joint[idx] += 1.0 / 32.0;
          }
  return DiscreteCseSource({2, 2, 2}, joint);
}

}  // namespace

TEST_CASE("aggregative discovery on the exact chain") {
  const ExactCseSource src = exact_source(chain_network(3));
  SignificanceConfig cfg;

  const DiscoveryTrace trace = aggregative_discovery(src, {2}, cfg);
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[0].candidate == 1);
  CHECK(trace.steps[0].statistic ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-10));
  CHECK(trace.steps[0].significant);
  CHECK(std::abs(trace.steps[1].statistic) < 1e-10);
  CHECK(!trace.steps[1].significant);
  CHECK(trace.discovered == NodeSet{1});
}

TEST_CASE("aggregative discovery on the exact tree picks the ancestor first") {
  const TreeSpec spec = TreeSpec::from_parents({-1, 0, 0, 1, 1});
  const ExactCseSource src = exact_source(tree_network(spec));
  SignificanceConfig cfg;

  const DiscoveryTrace trace = aggregative_discovery(src, {3}, cfg);
  CHECK(trace.discovered == NodeSet{1});
  CHECK(trace.steps[0].candidate == 1);
}

TEST_CASE("aggregative discovery on an isolated node accepts nothing") {
  const ExactCseSource src =
      exact_source(Network(4, Eigen::MatrixXd::Zero(4, 4)));
  SignificanceConfig cfg;
  const DiscoveryTrace trace = aggregative_discovery(src, {2}, cfg);
  CHECK(trace.discovered.empty());
  REQUIRE(trace.steps.size() == 1);
  CHECK(!trace.steps[0].significant);
}

TEST_CASE("progressive removal prunes the indirect ancestor") {
  const ExactCseSource src = exact_source(chain_network(3));
  SignificanceConfig cfg;

  const DiscoveryTrace trace = progressive_removal(src, {2}, {0, 1}, cfg);
  CHECK(trace.pruned == NodeSet{1});
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.steps[0].candidate == 0);
  CHECK(!trace.steps[0].significant);
  CHECK(trace.steps[1].significant);

  // Running removal on its own output changes nothing.
  const DiscoveryTrace again = progressive_removal(src, {2}, trace.pruned, cfg);
  CHECK(again.pruned == trace.pruned);

  // A set that already equals the causal parents survives unchanged.
  const DiscoveryTrace keep = progressive_removal(src, {2}, {1}, cfg);
  CHECK(keep.pruned == NodeSet{1});
}

TEST_CASE("progressive removal prunes depth-one non-ancestors in the tree") {
  const TreeSpec spec = TreeSpec::from_parents({-1, 0, 0, 1, 1});
  const ExactCseSource src = exact_source(tree_network(spec));
  SignificanceConfig cfg;
  const DiscoveryTrace trace = progressive_removal(src, {3}, {1, 2}, cfg);
  CHECK(trace.pruned == NodeSet{1});
}

TEST_CASE("exact loop inference finds each predecessor") {
  const ExactCseSource src = exact_source(loop_network(4, 0.5));
  SignificanceConfig cfg;
  for (int i = 0; i < 4; ++i) {
    const DiscoveryTrace trace = infer_parents_ocse(src, i, cfg);
    CHECK(trace.pruned == NodeSet{(i + 3) % 4});
  }
}

TEST_CASE("exact er networks: greedy equals brute force equals truth") {
  SignificanceConfig cfg;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 4 + rep % 5;
    const Network net =
        generate_er_signed(n, 0.35, 0.35 + 0.06 * (rep % 9), 3000 + rep);
    const ExactCseSource src = exact_source(net);
    for (int i = 0; i < n; ++i) {
      const NodeSet truth = net.parents(i);
      const DiscoveryTrace trace = infer_parents_ocse(src, i, cfg);
      CHECK(same_set(trace.pruned, truth));
      CHECK(same_set(brute_force_parents(src, {i}, n), truth));
      CHECK(is_subset(truth, trace.discovered));  // aggregative phase covers

      // The set statistic is nondecreasing along the discovered prefix.
      double prev = 0.0;
      NodeSet prefix;
      for (int p : trace.discovered) {
        prefix.push_back(p);
        const double value = src.set_statistic(prefix, {i}, {});
        CHECK(value >= prev - 1e-12);
        prev = value;
      }
    }
  }
}

TEST_CASE("brute force oracle") {
  SignificanceConfig cfg;

  SUBCASE("chain") {
    const ExactCseSource src = exact_source(chain_network(3));
    CHECK(brute_force_parents(src, {2}, 3) == NodeSet{1});
    CHECK(brute_force_parents(src, {0}, 3).empty());
  }

  SUBCASE("xor needs the joint pair") {
    const DiscreteCseSource src = xor_source();
    // Statistics by subset: singletons carry nothing, the pair everything.
    CHECK(std::abs(src.set_statistic({1}, {0}, {})) < 1e-12);
    CHECK(std::abs(src.set_statistic({2}, {0}, {})) < 1e-12);
    CHECK(src.set_statistic({1, 2}, {0}, {}) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(brute_force_parents(src, {0}, 3) == NodeSet{1, 2});
  }

  SUBCASE("budget too small to cover the causal set") {
    const ExactCseSource src = exact_source(chain_network(3));
    CHECK_THROWS_AS(brute_force_parents(src, {2}, 0), std::runtime_error);
  }
}

TEST_CASE("permutation test null calibration") {
  const int trials = 300;
  std::vector<int> hits(trials, 0);
  parallel_for(trials, default_jobs(), [&](long t) {
    const Network noise(3, Eigen::MatrixXd::Zero(3, 3));
    const TimeSeries ts = simulate(noise, 500, 40000 + t);
    const EmpiricalCseSource src(ts);
    SignificanceConfig cfg;
    cfg.seed = 50000 + t;
    const double observed = src.statistic(1, {0}, {});
    hits[t] = src.test(1, {0}, {}, observed, cfg).significant ? 1 : 0;
  });
  int total = 0;
  for (int h : hits) total += h;
  const double rate = static_cast<double>(total) / trials;
  const double se = std::sqrt(0.01 * 0.99 / trials);
  CHECK(std::abs(rate - 0.01) < 3.0 * se);
}

TEST_CASE("permutation test detects the chain link") {
  const int trials = 100;
  std::vector<int> hits(trials, 0);
  parallel_for(trials, default_jobs(), [&](long t) {
    const TimeSeries ts = simulate(chain_network(3), 10000, 60000 + t);
    const EmpiricalCseSource src(ts);
    SignificanceConfig cfg;
    cfg.seed = 70000 + t;
    const double observed = src.statistic(0, {1}, {});
    hits[t] = src.test(0, {1}, {}, observed, cfg).significant ? 1 : 0;
  });
  int total = 0;
  for (int h : hits) total += h;
  CHECK(total >= 95);
}

TEST_CASE("a source already conditioned on is never significant") {
  const TimeSeries ts = simulate(chain_network(3), 5000, 123);
  const EmpiricalCseSource src(ts);
  SignificanceConfig cfg;
  const double observed = src.statistic(1, {2}, {1});
  CHECK(std::abs(observed) < 1e-12);
  CHECK(!src.test(1, {2}, {1}, observed, cfg).significant);
}

TEST_CASE("permutation test guards") {
  const TimeSeries ts = simulate(chain_network(3), 100, 5);
  SignificanceConfig cfg;
  cfg.r = 0;
  CHECK_THROWS_AS(permutation_test(ts, 0, {1}, {}, 0.1, cfg),
                  std::invalid_argument);

  TimeSeries constant;
  constant.samples = Eigen::MatrixXd::Zero(100, 2);
  constant.samples.col(1) = Eigen::VectorXd::LinSpaced(100, 0.0, 1.0);
  SignificanceConfig ok;
  CHECK_THROWS_AS(permutation_test(constant, 0, {1}, {}, 0.1, ok),
                  DegeneracyError);
}

TEST_CASE("trace integrity and determinism on empirical data") {
  const Network net = generate_er_signed(8, 0.25, 0.7, 81);
  const TimeSeries ts = simulate(net, 2000, 82);
  const EmpiricalCseSource src(ts);
  SignificanceConfig cfg;
  cfg.seed = 83;

  const InferredNetwork a = infer_network(src, InferenceMethod::ocse, cfg,
                                          {true, default_jobs()});
  const InferredNetwork b = infer_network(src, InferenceMethod::ocse, cfg,
                                          {true, 1});
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t k = 0; k < a.edges.size(); ++k) {
    CHECK(a.edges[k].source == b.edges[k].source);
    CHECK(a.edges[k].target == b.edges[k].target);
    CHECK(a.edges[k].statistic == b.edges[k].statistic);
  }

  REQUIRE(a.traces.size() == 8);
  for (const DiscoveryTrace& tr : a.traces) {
    CHECK(is_subset(tr.pruned, tr.discovered));
    // Accepted discovery statistics are strictly positive; every dropped
    // member has a recorded failing removal step.
    for (const auto& step : tr.steps)
      if (step.phase == DiscoveryStep::Phase::discovery && step.significant)
        CHECK(step.statistic > 0.0);
    for (int d : tr.discovered) {
      if (set_contains(tr.pruned, d)) continue;
      bool found_failing = false;
      for (const auto& step : tr.steps)
        if (step.phase == DiscoveryStep::Phase::removal &&
            step.candidate == d && !step.significant)
          found_failing = true;
      CHECK(found_failing);
    }
  }
}

TEST_CASE("whole network inference on the exact tree") {
  const TreeSpec spec = TreeSpec::from_parents({-1, 0, 0, 1, 1, 2, 2});
  const Network net = tree_network(spec);
  const TreeQuery tq(spec);
  const ExactCseSource src = exact_source(net);
  SignificanceConfig cfg;

  const InferredNetwork te = infer_network(src, InferenceMethod::te, cfg);
  int te_links = 0;
  for (int j = 0; j < 7; ++j) {
    for (int i = 0; i < 7; ++i) {
      const bool inferred =
          std::find_if(te.edges.begin(), te.edges.end(), [&](const auto& e) {
            return e.source == j && e.target == i;
          }) != te.edges.end();
      CHECK(inferred == (tq.depth(i) == tq.depth(j) + 1));
      if (inferred) ++te_links;
    }
  }
  CHECK(te_links > net.link_count());  // strict superset of the true links

  const InferredNetwork ocse = infer_network(src, InferenceMethod::ocse, cfg);
  const ErrorRatios er = error_ratios(net, ocse);
  CHECK(*er.false_negative == 0.0);
  CHECK(*er.false_positive == 0.0);

  const InferredNetwork granger = infer_network(src, InferenceMethod::granger, cfg);
  const ErrorRatios eg = error_ratios(net, granger);
  CHECK(*eg.false_negative == 0.0);
  CHECK(*eg.false_positive == 0.0);
}

TEST_CASE("granger reports degenerate sources when samples are too few") {
  const Network noise(20, Eigen::MatrixXd::Zero(20, 20));
  const TimeSeries ts = simulate(noise, 15, 9);
  const EmpiricalCseSource src(ts);
  SignificanceConfig cfg;
  const InferredNetwork g = infer_network(src, InferenceMethod::granger, cfg,
                                          {false, default_jobs()});
  CHECK(g.degenerate_nodes.size() == 20);
  CHECK(g.edges.empty());
}

TEST_CASE("empirical er inference keeps both error ratios small") {
  const int realizations = 10;
  std::vector<double> em(realizations, 0.0), ep(realizations, 0.0);
  parallel_for(realizations, default_jobs(), [&](long k) {
    const Network net = generate_er_signed(50, 0.1, 0.8, 86000 + k);
    const TimeSeries ts = simulate(net, 1000, 87000 + k);
    const EmpiricalCseSource src(ts);
    SignificanceConfig cfg;
    cfg.seed = 88000 + k;
    const InferredNetwork inferred =
        infer_network(src, InferenceMethod::ocse, cfg, {false, 1});
    const ErrorRatios er = error_ratios(net, inferred);
    em[k] = *er.false_negative;
    ep[k] = *er.false_positive;
  });
  double mean_minus = 0.0, mean_plus = 0.0;
  for (int k = 0; k < realizations; ++k) {
    mean_minus += em[k] / realizations;
    mean_plus += ep[k] / realizations;
  }
  CHECK(mean_minus <= 0.05);
  CHECK(mean_plus <= 0.03);
}

TEST_CASE("empirical chain recovery across seeded trials") {
  const int trials = 20;
  const Network net = chain_network(10);
  std::vector<int> all_links(trials, 0);
  std::vector<double> eps_plus(trials, 0.0);
  parallel_for(trials, default_jobs(), [&](long t) {
    const TimeSeries ts = simulate(net, 100000, 90000 + t);
    const EmpiricalCseSource src(ts);
    SignificanceConfig cfg;
    cfg.seed = 91000 + t;
    const InferredNetwork inferred =
        infer_network(src, InferenceMethod::ocse, cfg, {false, 1});
    const ErrorRatios er = error_ratios(net, inferred);
    all_links[t] = (*er.false_negative == 0.0) ? 1 : 0;
    eps_plus[t] = *er.false_positive;
  });
  int recovered = 0;
  double fp_mean = 0.0;
  for (int t = 0; t < trials; ++t) {
    recovered += all_links[t];
    fp_mean += eps_plus[t];
  }
  fp_mean /= trials;
  CHECK(recovered >= 18);
  // False positives sit at the significance level of the permutation test.
  CHECK(fp_mean <= 3.0 * (1.0 - 0.99));
}
