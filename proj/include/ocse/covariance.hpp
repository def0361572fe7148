#pragma once

#include <Eigen/Dense>

#include "ocse/network.hpp"
#include "ocse/node_set.hpp"
#include "ocse/process.hpp"

namespace ocse {

/// Same-time and one-step-lagged covariance pair. For exact sources phi0
/// solves A phi0 A^T - phi0 + S = 0 and phi1 = A phi0; empirical sources
/// carry sample estimates with the sample count recorded.
struct LaggedCovariance {
  enum class Source { exact, empirical };

  Eigen::MatrixXd phi0;
  Eigen::MatrixXd phi1;
  int n = 0;
  Source source = Source::exact;
  long sample_count = 0;  // T for empirical sources

  /// Nodes whose variance sits at or below `floor` (constant columns).
  NodeSet degenerate_nodes(double floor = 1e-12) const;
};

/// Solves A X A^T - X + S = 0 by the doubling fixed-point iteration
/// X <- X + A_k X A_k^T, A_k <- A_k^2, starting from X = S. Requires
/// spectral_radius(A) < 1 and diagonal S with nonnegative entries. The
/// returned solution has max-norm residual below 1e-10.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& S, double tol = 1e-14,
                               int max_iter = 10000);

/// Solves the same equation through the n^2 x n^2 Kronecker linear system
/// (I - A (x) A) vec(X) = vec(S). Restricted to n <= 40; kept as an
/// independent cross-check for the iterative solver.
Eigen::MatrixXd solve_lyapunov_direct(const Eigen::MatrixXd& A,
                                      const Eigen::MatrixXd& S);

/// A^tau * phi0; tau = 0 returns phi0 unchanged.
Eigen::MatrixXd shifted_covariance(const Eigen::MatrixXd& A,
                                   const Eigen::MatrixXd& phi0, int tau);

/// Exact asymptotic covariances of the process driven by A with noise
/// covariance S (diagonal).
LaggedCovariance exact_covariance(const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& S, double tol = 1e-14,
                                  int max_iter = 10000);

/// Convenience overload: network weights with per-node noise std.
LaggedCovariance exact_covariance(const Network& net,
                                  const Eigen::VectorXd& noise_std);
LaggedCovariance exact_covariance(const Network& net);  // unit noise

/// Sample covariances after removing the per-node full-series mean:
/// phi0 = sum_t c_t c_t^T / (T-1) (symmetrized exactly) and
/// phi1 = sum_t c_{t+1} c_t^T / (T-2). Requires T >= 3 and finite data.
LaggedCovariance estimate_covariances(const TimeSeries& ts);

/// Selection M[rows, cols] in the given orderings; throws on out-of-range
/// indices.
Eigen::MatrixXd submatrix(const Eigen::MatrixXd& M, const NodeSet& rows,
                          const NodeSet& cols);

}  // namespace ocse
