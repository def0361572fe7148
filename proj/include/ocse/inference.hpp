#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ocse/entropy.hpp"
#include "ocse/network.hpp"
#include "ocse/node_set.hpp"
#include "ocse/process.hpp"

namespace ocse {

/// Knobs of the significance machinery: permutation count r and level theta
/// for empirical data, exact_tolerance as the positivity threshold when the
/// statistics come from exact covariances or exact distributions.
struct SignificanceConfig {
  int r = 100;
  double theta = 0.99;
  std::uint64_t seed = 0;
  double exact_tolerance = 1e-10;

  void validate() const;
};

struct SignificanceDecision {
  bool significant = false;
  /// Empirical CDF of the permuted statistics at the observed value
  /// (1 or 0 in exact mode).
  double cdf = 0.0;
};

struct DiscoveryStep {
  enum class Phase { discovery, removal };
  Phase phase = Phase::discovery;
  int candidate = -1;
  double statistic = 0.0;
  bool significant = false;
};

/// Ordered record of one node-set's inference: the aggregative phase fills
/// `discovered` (insertion order), the removal phase prunes it to `pruned`.
struct DiscoveryTrace {
  NodeSet target;
  std::vector<DiscoveryStep> steps;
  NodeSet discovered;
  NodeSet pruned;
};

/// Outcome of one pairwise source -> target evaluation.
struct TargetOutcome {
  int target = -1;
  double statistic = 0.0;
  bool significant = false;
  double cdf = 0.0;
  bool degenerate = false;
};

/// A source of causation entropy statistics plus a significance rule. The
/// discovery algorithms run against this interface so that exact Gaussian
/// covariances, finite time series and exact discrete distributions are
/// interchangeable.
class CseSource {
 public:
  virtual ~CseSource() = default;

  virtual int node_count() const = 0;

  /// C_{J -> I | K}.
  virtual double set_statistic(const NodeSet& J, const NodeSet& I,
                               const NodeSet& K) const = 0;

  /// C_{j -> I | K}; overridable for sources with a cheaper scalar path.
  virtual double statistic(int j, const NodeSet& I, const NodeSet& K) const;

  /// Significance of an observed statistic for the test j -> I | K.
  virtual SignificanceDecision test(int j, const NodeSet& I, const NodeSet& K,
                                    double observed,
                                    const SignificanceConfig& cfg) const = 0;

  /// Statistics of every candidate j not in K, ascending in j. Sources with
  /// shareable conditioning state override this to factorize phi0[K,K] once.
  virtual std::vector<std::pair<int, double>> scan(const NodeSet& I,
                                                   const NodeSet& K) const;

  /// Statistic + significance of j -> {target} | K for each target, with K
  /// fixed across targets (the full-conditioning pairwise mode). Degenerate
  /// conditioning is reported per target instead of thrown.
  virtual std::vector<TargetOutcome> test_targets(
      int j, const std::vector<int>& targets, const NodeSet& K,
      const SignificanceConfig& cfg) const;
};

/// Exact-mode source: closed-form Gaussian statistics, significance by
/// thresholding at cfg.exact_tolerance.
class ExactCseSource final : public CseSource {
 public:
  explicit ExactCseSource(EstimatorContext ctx) : ctx_(std::move(ctx)) {}
  explicit ExactCseSource(LaggedCovariance cov)
      : ctx_{std::move(cov), 1e-12} {}

  int node_count() const override { return ctx_.cov.n; }
  double set_statistic(const NodeSet& J, const NodeSet& I,
                       const NodeSet& K) const override;
  SignificanceDecision test(int j, const NodeSet& I, const NodeSet& K,
                            double observed,
                            const SignificanceConfig& cfg) const override;

  const EstimatorContext& context() const { return ctx_; }

 private:
  EstimatorContext ctx_;
};

/// Empirical source: statistics from sample covariances, significance by
/// temporal permutation of the source column. Permuting column j only
/// touches row/column j of phi0 and the j-entries of phi1, so each replica
/// recomputes just the entries the statistic reads.
class EmpiricalCseSource final : public CseSource {
 public:
  explicit EmpiricalCseSource(const TimeSeries& ts,
                              double degenerate_floor = 1e-12);

  int node_count() const override { return ctx_.cov.n; }
  double set_statistic(const NodeSet& J, const NodeSet& I,
                       const NodeSet& K) const override;
  double statistic(int j, const NodeSet& I, const NodeSet& K) const override;
  SignificanceDecision test(int j, const NodeSet& I, const NodeSet& K,
                            double observed,
                            const SignificanceConfig& cfg) const override;
  std::vector<std::pair<int, double>> scan(const NodeSet& I,
                                           const NodeSet& K) const override;
  std::vector<TargetOutcome> test_targets(
      int j, const std::vector<int>& targets, const NodeSet& K,
      const SignificanceConfig& cfg) const override;

  const LaggedCovariance& covariances() const { return ctx_.cov; }
  long sample_count() const { return T_; }

 private:
  struct CondState;
  struct TargetState;

  CondState make_cond(const NodeSet& K) const;
  TargetState make_target(const CondState& c, const NodeSet& I) const;
  double eval_candidate(const CondState& c, const TargetState& t, int j,
                        const std::vector<int>* perm,
                        Eigen::VectorXd& shuffled) const;
  SignificanceDecision run_test(const CondState& c, const TargetState& t,
                                int j, double observed,
                                const SignificanceConfig& cfg) const;

  EstimatorContext ctx_;
  Eigen::MatrixXd centered_;
  long T_ = 0;
};

/// Exact discrete source over a joint distribution of (next state of every
/// node, current state of every node), flattened in mixed radix with the
/// last variable fastest. Significance is thresholding, as in exact mode.
class DiscreteCseSource final : public CseSource {
 public:
  DiscreteCseSource(std::vector<int> cardinality, std::vector<double> joint_pmf);

  int node_count() const override {
    return static_cast<int>(cardinality_.size());
  }
  double set_statistic(const NodeSet& J, const NodeSet& I,
                       const NodeSet& K) const override;
  SignificanceDecision test(int j, const NodeSet& I, const NodeSet& K,
                            double observed,
                            const SignificanceConfig& cfg) const override;

 private:
  std::vector<int> cardinality_;
  std::vector<double> joint_;
};

/// Permutation significance test for the statistic C_{j -> I | K} observed
/// on `ts`: r temporal shuffles of column j, each with a seed derived from
/// (cfg.seed, j, I, K, replica), leaving all other columns untouched.
/// Significant when the empirical CDF at `observed` exceeds cfg.theta.
SignificanceDecision permutation_test(const TimeSeries& ts, int j,
                                      const NodeSet& I, const NodeSet& K,
                                      double observed,
                                      const SignificanceConfig& cfg);

/// Forward phase: repeatedly add the candidate maximizing C_{j -> I | K}
/// (ties to the lowest index) while the maximizing candidate's statistic
/// passes the significance rule; stop at the first failure.
DiscoveryTrace aggregative_discovery(const CseSource& src, const NodeSet& I,
                                     const SignificanceConfig& cfg);

/// Backward phase: walk K in the given order and drop every member whose
/// statistic conditioned on the remaining members fails the significance
/// rule. Callers pass Algorithm-1 insertion order when K came from
/// aggregative discovery and ascending order otherwise.
DiscoveryTrace progressive_removal(const CseSource& src, const NodeSet& I,
                                   const NodeSet& K,
                                   const SignificanceConfig& cfg);

/// Aggregative discovery followed by progressive removal of its output;
/// returns the merged trace for node i.
DiscoveryTrace infer_parents_ocse(const CseSource& src, int i,
                                  const SignificanceConfig& cfg);

/// Enumeration oracle: scans all node subsets up to max_cardinality by
/// increasing cardinality and returns the intersection of the subsets whose
/// causation entropy to I is maximal (within tol). Throws when the budget
/// provably truncated the search.
NodeSet brute_force_parents(const CseSource& src, const NodeSet& I,
                            int max_cardinality, double tol = 1e-10);

enum class InferenceMethod { ocse, te, granger };

struct InferredEdge {
  int source = -1;
  int target = -1;
  double statistic = 0.0;
};

struct InferredNetwork {
  int n = 0;
  InferenceMethod method = InferenceMethod::ocse;
  std::vector<InferredEdge> edges;
  /// Sources whose full-conditioning covariance was unusable (granger).
  NodeSet degenerate_nodes;
  /// Per-node traces, recorded on request for the ocse method.
  std::vector<DiscoveryTrace> traces;

  NodeSet parent_set(int i) const;
  Network to_network() const;
};

struct InferOptions {
  bool record_traces = false;
  int jobs = 1;
};

/// Whole-network inference. ocse runs infer_parents_ocse per node; te tests
/// every ordered pair with K = {target}; granger tests every ordered pair
/// with K = V - {source}.
InferredNetwork infer_network(const CseSource& src, InferenceMethod method,
                              const SignificanceConfig& cfg,
                              const InferOptions& opts = {});

/// Error ratios of an inferred network against the generating truth.
ErrorRatios error_ratios(const Network& truth, const InferredNetwork& inferred);

}  // namespace ocse
