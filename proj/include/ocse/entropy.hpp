#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ocse/covariance.hpp"
#include "ocse/node_set.hpp"

namespace ocse {

/// Covariance pair plus the degeneracy policy shared by all entropy
/// evaluations. Logarithms are natural throughout (values in nats).
struct EstimatorContext {
  LaggedCovariance cov;
  double degenerate_floor = 1e-12;
};

/// Differential entropy of a Gaussian with covariance sigma:
/// log(det sigma)/2 + k log(2 pi e)/2, computed through the Cholesky
/// factor. A failed factorization is retried once with diagonal jitter
/// 1e-10 * trace/k, then reported as a DegeneracyError.
double gaussian_entropy(const Eigen::MatrixXd& sigma);

/// Causation entropy C_{J -> I | K}: half the log-ratio of the conditional
/// covariance determinants given K and given K united with J. An empty K
/// conditions on nothing, so the numerator covariance is phi0[I, I].
/// Conditional covariance determinants are floored at degenerate_floor
/// before taking logs.
double causation_entropy(const EstimatorContext& ctx, const NodeSet& J,
                         const NodeSet& I, const NodeSet& K);

/// Transfer entropy T_{j -> i} = C_{j -> i | {i}} through its scalar closed
/// form; T_{i -> i} is identically zero.
double transfer_entropy(const EstimatorContext& ctx, int j, int i);

/// Conditional Granger causality with full conditioning:
/// 2 * C_{j -> i | V - {j}}. With empirical covariances this requires the
/// (n-1)-block of phi0 to be invertible, which fails when T <= n - 1.
double conditional_granger(const EstimatorContext& ctx, int j, int i);

/// Finite-alphabet joint distribution over labeled variables, each playing
/// one of three roles in a causation entropy query. The pmf is stored flat
/// in mixed radix with the last variable varying fastest.
struct DiscreteJointDistribution {
  enum class Role { next_state, source, condition };

  std::vector<int> cardinality;
  std::vector<Role> role;
  std::vector<double> pmf;

  void validate() const;
};

/// Plug-in causation entropy H(next|cond) - H(next|cond,source) in nats.
double discrete_causation_entropy(const DiscreteJointDistribution& dist);

}  // namespace ocse
