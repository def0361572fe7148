#include "ocse/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ocse/rng.hpp"

namespace ocse {

NodeSet Network::parents(int i) const {
  NodeSet out;
  for (int j = 0; j < n; ++j)
    if (weights(i, j) != 0.0) out.push_back(j);
  return out;
}

int Network::link_count() const {
  int count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (weights(i, j) != 0.0) ++count;
  return count;
}

TreeSpec TreeSpec::from_parents(std::vector<int> parent) {
  const int n = static_cast<int>(parent.size());
  if (n < 1) throw std::invalid_argument("tree needs at least one node");

  int root = -1;
  for (int i = 0; i < n; ++i) {
    if (parent[i] < 0) {
      if (root >= 0) throw std::invalid_argument("tree has multiple roots");
      root = i;
    } else if (parent[i] >= n) {
      throw std::invalid_argument("tree parent index out of range");
    }
  }
  if (root < 0) throw std::invalid_argument("tree has no root");

  // Walk each node up to the root; a walk longer than n nodes is a cycle.
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  depth[static_cast<std::size_t>(root)] = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<int> path;
    int v = i;
    while (depth[static_cast<std::size_t>(v)] < 0) {
      path.push_back(v);
      v = parent[static_cast<std::size_t>(v)];
      if (static_cast<int>(path.size()) > n)
        throw std::invalid_argument("tree parent map contains a cycle");
    }
    int d = depth[static_cast<std::size_t>(v)];
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      depth[static_cast<std::size_t>(*it)] = ++d;
  }

  TreeSpec spec;
  spec.parent = std::move(parent);
  spec.depth = std::move(depth);
  return spec;
}

int TreeSpec::root() const {
  for (int i = 0; i < n(); ++i)
    if (parent[static_cast<std::size_t>(i)] < 0) return i;
  throw std::invalid_argument("tree has no root");
}

Network generate_er_signed(int n, double p, double target_rho,
                           std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("er: n must be >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("er: p in (0, 1]");
  if (!(target_rho > 0.0 && target_rho < 1.0))
    throw std::invalid_argument("er: target_rho in (0, 1)");

  constexpr int kMaxRedraws = 100;
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Rng rng(derive_seed(seed, {0x45725347ULL, static_cast<std::uint64_t>(attempt)}));
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rng.uniform01() < p) w(i, j) = rng.uniform01() < 0.5 ? 1.0 : -1.0;

    // A +-1 integer matrix has spectral radius 0 (nilpotent) or >= 1, so a
    // computed value below 1 is a nilpotent draw seen through rounding noise
    // and cannot be rescaled.
    const double rho = spectral_radius(w);
    if (rho < 0.5) continue;

    w *= target_rho / rho;
    Network net(n, std::move(w));
    net.spectral_radius_cache = target_rho;
    return net;
  }
  throw std::runtime_error(
      "er: drew a nilpotent adjacency matrix " + std::to_string(kMaxRedraws) +
      " times; spectral radius cannot be tuned");
}

Network chain_network(int n) {
  if (n < 2) throw std::invalid_argument("chain: n must be >= 2");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) w(i, i - 1) = 1.0;
  Network net(n, std::move(w));
  net.spectral_radius_cache = 0.0;
  return net;
}

Network loop_network(int n, double w) {
  if (n < 2) throw std::invalid_argument("loop: n must be >= 2");
  if (!(w > 0.0 && w < 1.0))
    throw std::invalid_argument("loop: weight must lie in (0, 1) for stability");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = w;
  m(0, n - 1) = w;
  Network net(n, std::move(m));
  net.spectral_radius_cache = w;
  return net;
}

Network tree_network(const TreeSpec& spec) {
  const int n = spec.n();
  // Re-validate: specs built by hand may be malformed.
  TreeSpec checked = TreeSpec::from_parents(spec.parent);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (checked.parent[static_cast<std::size_t>(i)] >= 0)
      w(i, checked.parent[static_cast<std::size_t>(i)]) = 1.0;
  Network net(n, std::move(w));
  net.spectral_radius_cache = 0.0;
  return net;
}

TreeSpec random_tree_spec(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("tree: n must be >= 1");
  Rng rng(derive_seed(seed, {0x54524545ULL}));
  std::vector<int> parent(static_cast<std::size_t>(n));
  parent[0] = -1;
  for (int i = 1; i < n; ++i) parent[static_cast<std::size_t>(i)] = rng.bounded(i);
  return TreeSpec::from_parents(std::move(parent));
}

double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  if (m.isZero(0.0)) return 0.0;
  const Eigen::VectorXcd ev = m.eigenvalues();
  double rho = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    rho = std::max(rho, std::abs(ev(i)));
  return rho;
}

double spectral_radius(const Network& net) {
  if (net.spectral_radius_cache) return *net.spectral_radius_cache;
  return spectral_radius(net.weights);
}

double gelfand_radius_estimate(const Eigen::MatrixXd& m, int k) {
  if (k < 1) throw std::invalid_argument("gelfand: k must be >= 1");
  // k is rounded down to a power of two so A^k can be formed by repeated
  // squaring; scale factors are tracked in log space to dodge overflow.
  int exponent = 1;
  while (2 * exponent <= k) exponent *= 2;

  Eigen::MatrixXd power = m;  // A^e = exp(log_scale) * power
  double log_scale = 0.0;
  for (int e = 1; e < exponent; e *= 2) {
    power = power * power;
    log_scale *= 2.0;
    const double s = power.cwiseAbs().maxCoeff();
    if (s == 0.0) return 0.0;
    power /= s;
    log_scale += std::log(s);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(power);
  const double two_norm = svd.singularValues()(0);
  if (two_norm == 0.0) return 0.0;
  return std::exp((log_scale + std::log(two_norm)) /
                  static_cast<double>(exponent));
}

ErrorRatios error_ratios(const Network& truth, const Network& inferred) {
  if (truth.n != inferred.n)
    throw std::invalid_argument("error_ratios: node counts differ");
  long true_links = 0, absent_pairs = 0, missed = 0, spurious = 0;
  for (int i = 0; i < truth.n; ++i) {
    for (int j = 0; j < truth.n; ++j) {
      const bool real = truth.weights(i, j) != 0.0;
      const bool found = inferred.weights(i, j) != 0.0;
      if (real) {
        ++true_links;
        if (!found) ++missed;
      } else {
        ++absent_pairs;
        if (found) ++spurious;
      }
    }
  }
  ErrorRatios out;
  if (true_links > 0)
    out.false_negative = static_cast<double>(missed) / static_cast<double>(true_links);
  if (absent_pairs > 0)
    out.false_positive =
        static_cast<double>(spurious) / static_cast<double>(absent_pairs);
  return out;
}

}  // namespace ocse
