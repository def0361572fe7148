#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "ocse/node_set.hpp"

namespace ocse {

/// Weighted directed network. weights(i, j) holds the weight of the link
/// j -> i, so row i lists the influences *on* node i and the causal parents
/// of i are exactly the nonzero columns of row i.
struct Network {
  int n = 0;
  Eigen::MatrixXd weights;
  std::optional<double> spectral_radius_cache;

  Network() = default;
  Network(int n_, Eigen::MatrixXd w) : n(n_), weights(std::move(w)) {}

  /// Causal parents of node i: {j : weights(i, j) != 0}, ascending.
  NodeSet parents(int i) const;

  /// Number of nonzero entries of the weight matrix.
  int link_count() const;

  bool has_link(int target, int source) const {
    return weights(target, source) != 0.0;
  }
};

/// Rooted directed tree given by a parent pointer per node (-1 marks the
/// root). Depths are derived from the parent map and satisfy
/// depth[i] == depth[parent[i]] + 1.
struct TreeSpec {
  std::vector<int> parent;
  std::vector<int> depth;

  /// Validates the parent map (single root, no cycles) and fills depths.
  /// Throws std::invalid_argument on a malformed map.
  static TreeSpec from_parents(std::vector<int> parent);

  int n() const { return static_cast<int>(parent.size()); }
  int root() const;
};

/// Inference error ratios over all ordered node pairs, diagonal included.
/// A component is empty when its denominator is zero (no true links for
/// false_negative, no absent pairs for false_positive).
struct ErrorRatios {
  std::optional<double> false_negative;
  std::optional<double> false_positive;
};

/// Signed Erdos-Renyi network: every ordered pair (target, source),
/// including self-pairs, carries a link with probability p; link weights are
/// +w or -w with equal probability, with w chosen so the spectral radius
/// equals target_rho. Nilpotent draws (spectral radius 0) are redrawn up to
/// 100 times before giving up.
Network generate_er_signed(int n, double p, double target_rho,
                           std::uint64_t seed);

/// Directed chain 0 -> 1 -> ... -> n-1 with unit weights.
Network chain_network(int n);

/// Directed cycle 0 -> 1 -> ... -> n-1 -> 0 with uniform weight w in (0,1).
Network loop_network(int n, double w);

/// Directed tree with unit weights: each non-root node is driven by its
/// parent in the spec.
Network tree_network(const TreeSpec& spec);

/// Random recursive tree on n nodes (node 0 is the root; the parent of node
/// i is uniform over 0..i-1).
TreeSpec random_tree_spec(int n, std::uint64_t seed);

/// Largest eigenvalue modulus. Uses the cached value when present.
double spectral_radius(const Network& net);
double spectral_radius(const Eigen::MatrixXd& m);

/// Gelfand estimate ||A^k||_2^(1/k); converges to the spectral radius as k
/// grows and is used as an independent cross-check in tests.
double gelfand_radius_estimate(const Eigen::MatrixXd& m, int k);

/// False negative / false positive ratios of `inferred` against `truth`.
ErrorRatios error_ratios(const Network& truth, const Network& inferred);

}  // namespace ocse
