#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ocse/covariance.hpp"
#include "ocse/entropy.hpp"
#include "ocse/errors.hpp"
#include "ocse/process.hpp"
#include "ocse/rng.hpp"

using namespace ocse;

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kLogTwoPiE = 2.8378770664093455;

EstimatorContext exact_ctx(const Network& net) {
  return EstimatorContext{exact_covariance(net), 1e-12};
}

EstimatorContext random_er_ctx(int n, double rho, std::uint64_t seed) {
  return exact_ctx(generate_er_signed(n, 0.35, rho, seed));
}

NodeSet random_subset(Rng& rng, int n, int max_size) {
  NodeSet out;
  const int size = rng.bounded(max_size + 1);
  while (static_cast<int>(out.size()) < size) {
    const int v = rng.bounded(n);
    if (!set_contains(out, v)) out.push_back(v);
  }
  return set_sorted(out);
}

}  // namespace

TEST_CASE("gaussian entropy closed form") {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
  CHECK(gaussian_entropy(one) == doctest::Approx(0.5 * kLogTwoPiE).epsilon(1e-12));

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  CHECK(gaussian_entropy(d) ==
        doctest::Approx(0.5 * std::log(6.0) + 1.5 * kLogTwoPiE).epsilon(1e-12));

  // Scaling a scalar variance by c^2 adds log(c).
  const double c = 2.7;
  Eigen::MatrixXd scaled = one * c * c;
  CHECK(gaussian_entropy(scaled) - gaussian_entropy(one) ==
        doctest::Approx(std::log(c)).epsilon(1e-12));

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(gaussian_entropy(indefinite), DegeneracyError);
}

TEST_CASE("causation entropy on the exact chain") {
  const EstimatorContext ctx = exact_ctx(chain_network(3));

  // Direct links carry the cumulative-noise closed form.
  CHECK(causation_entropy(ctx, {0}, {1}, {}) ==
        doctest::Approx(0.5 * kLog2).epsilon(1e-10));
  CHECK(causation_entropy(ctx, {1}, {2}, {}) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-10));

  // Redundancy: a source inside the conditioning set adds nothing.
  CHECK(std::abs(causation_entropy(ctx, {0}, {1}, {0, 2})) < 1e-10);

  // Conditioning on the true parent removes the indirect grandparent.
  CHECK(std::abs(causation_entropy(ctx, {0}, {2}, {1})) < 1e-10);

  CHECK_THROWS_AS(causation_entropy(ctx, {}, {1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(causation_entropy(ctx, {0}, {}, {}), std::invalid_argument);
}

TEST_CASE("transfer entropy") {
  const EstimatorContext chain = exact_ctx(chain_network(3));
  CHECK(transfer_entropy(chain, 0, 1) == doctest::Approx(0.5 * kLog2).epsilon(1e-10));
  CHECK(transfer_entropy(chain, 0, 1) ==
        doctest::Approx(causation_entropy(chain, {0}, {1}, {})).epsilon(1e-10));
  CHECK(transfer_entropy(chain, 1, 1) == 0.0);

  // Same-depth-offset non-parent in a tree: a strictly positive pairwise
  // statistic on an absent link. Node 3 sits at depth 2 under node 1; node 2
  // is a depth-1 non-parent sharing only the root.
  const TreeSpec spec = TreeSpec::from_parents({-1, 0, 0, 1});
  const EstimatorContext tree = exact_ctx(tree_network(spec));
  CHECK(transfer_entropy(tree, 2, 3) ==
        doctest::Approx(0.5 * std::log(6.0 / 5.0)).epsilon(1e-10));
  CHECK(tree_network(spec).weights(3, 2) == 0.0);
}

TEST_CASE("conditional granger causality") {
  const EstimatorContext ctx = exact_ctx(chain_network(3));
  CHECK(conditional_granger(ctx, 1, 2) > 0.0);
  CHECK(conditional_granger(ctx, 1, 2) ==
        doctest::Approx(2.0 * causation_entropy(ctx, {1}, {2}, {0, 2}))
            .epsilon(1e-12));
  CHECK(std::abs(conditional_granger(ctx, 0, 2)) < 1e-10);

  // Too few samples for full conditioning: the (n-1)-block cannot have full
  // rank and the context reports it.
  GaussianProcessSpec spec = GaussianProcessSpec::unit_noise(
      Network(5, Eigen::MatrixXd::Zero(5, 5)), 3);
  const TimeSeries ts = simulate_gaussian(spec, 4);
  EstimatorContext empirical{estimate_covariances(ts), 1e-12};
  CHECK_THROWS_AS(conditional_granger(empirical, 0, 1), DegeneracyError);
}

TEST_CASE("theorem properties on random exact covariances") {
  int true_positive_checks = 0;
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 4 + rep % 7;
    const Network net =
        generate_er_signed(n, 0.35, 0.4 + 0.05 * (rep % 9), 7000 + rep);
    const EstimatorContext ctx = exact_ctx(net);
    Rng rng(8000 + rep);

    for (int trial = 0; trial < 8; ++trial) {
      NodeSet I = random_subset(rng, n, 2);
      if (I.empty()) I.push_back(rng.bounded(n));
      const NodeSet K = random_subset(rng, n, n - 1);
      NodeSet J = random_subset(rng, n, 2);
      if (J.empty()) J.push_back(rng.bounded(n));

      // Decomposition: C_{J->I|K} = C_{(K u J)->I} - C_{K->I}.
      const double lhs = causation_entropy(ctx, J, I, K);
      const double rhs =
          causation_entropy(ctx, set_union(K, J), I, {}) -
          (K.empty() ? 0.0 : causation_entropy(ctx, K, I, {}));
      CHECK(std::abs(lhs - rhs) < 1e-9);

      // Nonnegativity up to numerical noise.
      CHECK(lhs > -1e-9);

      // Redundancy: J inside K.
      if (!K.empty()) {
        const NodeSet J_sub{K[rng.bounded(static_cast<int>(K.size()))]};
        CHECK(std::abs(causation_entropy(ctx, J_sub, I, K)) < 1e-10);
      }
    }

    // No false positive: conditioning on a parent superset kills every J.
    for (int i = 0; i < n; ++i) {
      const NodeSet parents = net.parents(i);
      NodeSet K = parents;
      for (int extra = 0; extra < 2; ++extra) {
        const int v = rng.bounded(n);
        if (!set_contains(K, v)) K.push_back(v);
      }
      K = set_sorted(K);
      const NodeSet J = random_subset(rng, n, 2);
      if (!J.empty())
        CHECK(std::abs(causation_entropy(ctx, J, {i}, K)) < 1e-9);

      // True positive: any parent subset not covered by K has positive flow.
      if (!parents.empty()) {
        const NodeSet J_tp{parents[rng.bounded(static_cast<int>(parents.size()))]};
        const NodeSet K_tp = set_minus(parents, J_tp[0]);
        CHECK(causation_entropy(ctx, J_tp, {i}, K_tp) > 1e-6);
        ++true_positive_checks;
      }
    }
  }
  CHECK(true_positive_checks > 100);
}

TEST_CASE("transfer entropy scalar form matches the generic formula") {
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 5 + rep % 4;
    const EstimatorContext ctx = random_er_ctx(n, 0.5, 9100 + rep);
    Rng rng(9200 + rep);
    const int i = rng.bounded(n);
    int j = rng.bounded(n);
    const double te = transfer_entropy(ctx, j, i);
    const double generic = causation_entropy(ctx, {j}, {i}, {i});
    CHECK(std::abs(te - generic) < 1e-10);
  }
}

TEST_CASE("transfer entropy zero criterion") {
  // The link-weighted covariance contraction vanishes exactly when the
  // pairwise statistic does.
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 5;
    const Network net = generate_er_signed(n, 0.3, 0.6, 9500 + rep);
    const EstimatorContext ctx = exact_ctx(net);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double contraction = 0.0;
        for (int k = 0; k < n; ++k)
          contraction += net.weights(i, k) *
                         (ctx.cov.phi0(i, i) * ctx.cov.phi0(k, j) -
                          ctx.cov.phi0(i, j) * ctx.cov.phi0(k, i));
        const double te = transfer_entropy(ctx, j, i);
        if (te < 1e-10)
          CHECK(std::abs(contraction) < 1e-8);
        else
          CHECK(std::abs(contraction) > 1e-8);
      }
    }
  }
}

TEST_CASE("discrete counterexamples") {
  using Role = DiscreteJointDistribution::Role;

  SUBCASE("sum of two fair bits: conditioning raises the statistic") {
    // next = a + b over {0,1,2}; source a; optional condition b.
    DiscreteJointDistribution no_cond;
    no_cond.cardinality = {3, 2};
    no_cond.role = {Role::next_state, Role::source};
    no_cond.pmf.assign(6, 0.0);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) no_cond.pmf[(a + b) * 2 + a] += 0.25;
    CHECK(discrete_causation_entropy(no_cond) ==
          doctest::Approx(0.5 * kLog2).epsilon(1e-12));

    DiscreteJointDistribution with_cond;
    with_cond.cardinality = {3, 2, 2};
    with_cond.role = {Role::next_state, Role::source, Role::condition};
    with_cond.pmf.assign(12, 0.0);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) with_cond.pmf[((a + b) * 2 + a) * 2 + b] += 0.25;
    CHECK(discrete_causation_entropy(with_cond) ==
          doctest::Approx(kLog2).epsilon(1e-12));
  }

  SUBCASE("persistent common driver: conditioning kills the statistic") {
    // Both observables copy one persistent fair bit.
    DiscreteJointDistribution no_cond;
    no_cond.cardinality = {2, 2};
    no_cond.role = {Role::next_state, Role::source};
    no_cond.pmf = {0.5, 0.0, 0.0, 0.5};
    CHECK(discrete_causation_entropy(no_cond) ==
          doctest::Approx(kLog2).epsilon(1e-12));

    DiscreteJointDistribution with_cond;
    with_cond.cardinality = {2, 2, 2};
    with_cond.role = {Role::next_state, Role::source, Role::condition};
    with_cond.pmf.assign(8, 0.0);
    with_cond.pmf[0] = 0.5;  // (0,0,0)
    with_cond.pmf[7] = 0.5;  // (1,1,1)
    CHECK(std::abs(discrete_causation_entropy(with_cond)) < 1e-12);
  }

  SUBCASE("xor: only the joint pair is informative") {
    auto single = [](bool use_z) {
      DiscreteJointDistribution d;
      d.cardinality = {2, 2};
      d.role = {Role::next_state, Role::source};
      d.pmf.assign(4, 0.0);
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
          d.pmf[(y ^ z) * 2 + (use_z ? z : y)] += 0.25;
      return d;
    };
    CHECK(std::abs(discrete_causation_entropy(single(false))) < 1e-12);
    CHECK(std::abs(discrete_causation_entropy(single(true))) < 1e-12);

    DiscreteJointDistribution pair;
    pair.cardinality = {2, 2, 2};
    pair.role = {Role::next_state, Role::source, Role::source};
    pair.pmf.assign(8, 0.0);
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) pair.pmf[((y ^ z) * 2 + y) * 2 + z] += 0.25;
    CHECK(discrete_causation_entropy(pair) == doctest::Approx(kLog2).epsilon(1e-12));
  }

  SUBCASE("validation") {
    DiscreteJointDistribution bad;
    bad.cardinality = {2};
    bad.role = {Role::next_state};
    bad.pmf = {0.5, 0.4};
    CHECK_THROWS_AS(discrete_causation_entropy(bad), std::invalid_argument);
  }
}
