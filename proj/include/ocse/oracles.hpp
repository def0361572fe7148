#pragma once

#include <Eigen/Dense>

#include "ocse/covariance.hpp"
#include "ocse/network.hpp"

namespace ocse {

/// Tree topology with a cached lowest-common-ancestor table, the ingredient
/// of the closed-form tree covariances and entropies.
class TreeQuery {
 public:
  explicit TreeQuery(TreeSpec spec);

  const TreeSpec& spec() const { return spec_; }
  int n() const { return spec_.n(); }
  int depth(int i) const { return spec_.depth[static_cast<std::size_t>(i)]; }
  int parent(int i) const { return spec_.parent[static_cast<std::size_t>(i)]; }

  /// Lowest common ancestor; lca(i, i) == i.
  int lca(int i, int j) const;

 private:
  TreeSpec spec_;
  std::vector<int> lca_table_;  // n x n, row-major
};

/// Closed-form causation entropy across a unit-weight directed chain with
/// per-node noise sigmas: zero unless i == j + 1, otherwise
/// log(1 + sum_{k<=j} sigma_k^2 / sigma_i^2) / 2. Node indices are 0-based.
double chain_cse(int j, int i, const Eigen::VectorXd& sigmas);

/// Closed-form causation entropy across a directed loop of size n with
/// uniform weight w: zero unless j is i's predecessor on the cycle,
/// otherwise log(1 / (1 - w^2)) / 2 independent of the noise scale.
double loop_cse(int j, int i, double w, int n);

/// Closed-form causation entropy across a unit-weight unit-noise directed
/// tree: zero unless depth(i) == depth(j) + 1, otherwise a log ratio driven
/// by the depths of i, j, and their lowest common ancestor.
double tree_cse(const TreeQuery& tq, int j, int i);

/// Exact covariance pair of the unit-weight unit-noise tree process in
/// closed form; matches the Lyapunov solution of the same tree.
LaggedCovariance tree_phi(const TreeQuery& tq);

}  // namespace ocse
