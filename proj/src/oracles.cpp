#include "ocse/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace ocse {

TreeQuery::TreeQuery(TreeSpec spec)
    : spec_(TreeSpec::from_parents(spec.parent)) {
  const int n = spec_.n();
  lca_table_.assign(static_cast<std::size_t>(n) * n, -1);
  // Parent-lifting per pair; trees here are small.
  auto lift = [&](int v) { return spec_.parent[static_cast<std::size_t>(v)]; };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      int a = i, b = j;
      while (depth(a) > depth(b)) a = lift(a);
      while (depth(b) > depth(a)) b = lift(b);
      while (a != b) {
        a = lift(a);
        b = lift(b);
      }
      lca_table_[static_cast<std::size_t>(i) * n + j] = a;
      lca_table_[static_cast<std::size_t>(j) * n + i] = a;
    }
  }
}

int TreeQuery::lca(int i, int j) const {
  if (i < 0 || j < 0 || i >= n() || j >= n())
    throw std::out_of_range("lca: node index out of range");
  return lca_table_[static_cast<std::size_t>(i) * n() + j];
}

double chain_cse(int j, int i, const Eigen::VectorXd& sigmas) {
  const int n = static_cast<int>(sigmas.size());
  if (j < 0 || i < 0 || j >= n || i >= n)
    throw std::out_of_range("chain_cse: node index out of range");
  if (i != j + 1) return 0.0;
  const double upstream = sigmas.head(j + 1).array().square().sum();
  return 0.5 * std::log1p(upstream / (sigmas(i) * sigmas(i)));
}

double loop_cse(int j, int i, double w, int n) {
  if (!(w > 0.0 && w < 1.0))
    throw std::invalid_argument("loop_cse: weight must lie in (0, 1)");
  if (j < 0 || i < 0 || j >= n || i >= n)
    throw std::out_of_range("loop_cse: node index out of range");
  const int predecessor = (i + n - 1) % n;
  if (j != predecessor) return 0.0;
  return 0.5 * std::log(1.0 / (1.0 - w * w));
}

double tree_cse(const TreeQuery& tq, int j, int i) {
  const int di = tq.depth(i), dj = tq.depth(j);
  if (di != dj + 1) return 0.0;
  const double a = static_cast<double>(di + 1);
  const double b = static_cast<double>(dj + 1);
  const double c = static_cast<double>(tq.depth(tq.lca(i, j)) + 1);
  return 0.5 * std::log(a * b / (a * b - c * c));
}

LaggedCovariance tree_phi(const TreeQuery& tq) {
  const int n = tq.n();
  LaggedCovariance cov;
  cov.n = n;
  cov.source = LaggedCovariance::Source::exact;
  cov.phi0 = Eigen::MatrixXd::Zero(n, n);
  cov.phi1 = Eigen::MatrixXd::Zero(n, n);
  const int root = tq.spec().root();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double shared = static_cast<double>(tq.depth(tq.lca(i, j)) + 1);
      if (tq.depth(i) == tq.depth(j)) cov.phi0(i, j) = shared;
      if (i != root && tq.depth(i) == tq.depth(j) + 1) cov.phi1(i, j) = shared;
    }
  }
  return cov;
}

}  // namespace ocse
