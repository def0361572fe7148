#include "ocse/entropy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ocse/detail/linalg.hpp"
#include "ocse/errors.hpp"

namespace ocse {

using detail::cholesky_with_jitter;
using detail::logdet_floored;

namespace {

constexpr double kLogTwoPiE = 2.837877066409345483560659472811;  // log(2*pi*e)

void check_empirical_rank(const EstimatorContext& ctx, std::size_t block,
                          const char* what) {
  if (ctx.cov.source == LaggedCovariance::Source::empirical &&
      static_cast<long>(block) >= ctx.cov.sample_count)
    throw DegeneracyError(
        std::string(what) +
        ": sample covariance over a block this large is rank-deficient "
        "(conditioning set size reaches the sample count)");
}

/// Covariance of X_{t+1}^I conditioned on X_t^K.
Eigen::MatrixXd conditional_covariance(const EstimatorContext& ctx,
                                       const NodeSet& I, const NodeSet& K) {
  const Eigen::MatrixXd phi0_II = submatrix(ctx.cov.phi0, I, I);
  if (K.empty()) return phi0_II;
  check_empirical_rank(ctx, K.size(), "causation_entropy");
  const Eigen::MatrixXd phi1_IK = submatrix(ctx.cov.phi1, I, K);
  auto llt = cholesky_with_jitter(submatrix(ctx.cov.phi0, K, K),
                                  "causation_entropy");
  const Eigen::MatrixXd reduced =
      phi0_II - phi1_IK * llt.solve(phi1_IK.transpose());
  return 0.5 * (reduced + reduced.transpose());
}

}  // namespace

double gaussian_entropy(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols())
    throw std::invalid_argument("gaussian_entropy: covariance must be square");
  auto llt = cholesky_with_jitter(sigma, "gaussian_entropy");
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return 0.5 * logdet +
         0.5 * static_cast<double>(sigma.rows()) * kLogTwoPiE;
}

double causation_entropy(const EstimatorContext& ctx, const NodeSet& J,
                         const NodeSet& I, const NodeSet& K) {
  if (I.empty() || J.empty())
    throw std::invalid_argument("causation_entropy: I and J must be nonempty");
  for (int v : I)
    if (v < 0 || v >= ctx.cov.n)
      throw std::out_of_range("causation_entropy: node index out of range");

  const NodeSet KJ = set_union(K, J);
  const Eigen::MatrixXd num = conditional_covariance(ctx, I, set_sorted(K));
  const Eigen::MatrixXd den = conditional_covariance(ctx, I, KJ);
  const double floor = ctx.degenerate_floor;
  return 0.5 * (logdet_floored(num, floor) - logdet_floored(den, floor));
}

double transfer_entropy(const EstimatorContext& ctx, int j, int i) {
  const Eigen::MatrixXd& phi0 = ctx.cov.phi0;
  const Eigen::MatrixXd& phi1 = ctx.cov.phi1;
  if (i < 0 || i >= ctx.cov.n || j < 0 || j >= ctx.cov.n)
    throw std::out_of_range("transfer_entropy: node index out of range");

  const double alpha_root = phi0(i, i) * phi1(i, j) - phi0(i, j) * phi1(i, i);
  const double alpha = alpha_root * alpha_root;
  const double beta = (phi0(i, i) * phi0(i, i) - phi1(i, i) * phi1(i, i)) *
                      (phi0(i, i) * phi0(j, j) - phi0(i, j) * phi0(i, j));
  if (alpha == 0.0) return 0.0;
  if (beta - alpha < ctx.degenerate_floor)
    throw DegeneracyError("transfer_entropy: residual variance collapsed");
  return 0.5 * std::log1p(alpha / (beta - alpha));
}

double conditional_granger(const EstimatorContext& ctx, int j, int i) {
  const int n = ctx.cov.n;
  if (n < 2)
    throw std::invalid_argument("conditional_granger: need at least two nodes");
  NodeSet rest;
  rest.reserve(static_cast<std::size_t>(n) - 1);
  for (int v = 0; v < n; ++v)
    if (v != j) rest.push_back(v);
  return 2.0 * causation_entropy(ctx, {j}, {i}, rest);
}

void DiscreteJointDistribution::validate() const {
  if (cardinality.empty() || cardinality.size() != role.size())
    throw std::invalid_argument("discrete: variable metadata sizes disagree");
  std::size_t states = 1;
  for (int c : cardinality) {
    if (c < 1) throw std::invalid_argument("discrete: cardinality must be >= 1");
    states *= static_cast<std::size_t>(c);
  }
  if (pmf.size() != states)
    throw std::invalid_argument("discrete: pmf size does not match alphabet");
  double total = 0.0;
  for (double p : pmf) {
    if (p < 0.0) throw std::invalid_argument("discrete: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("discrete: pmf does not sum to one");
}

namespace {

/// Shannon entropy (nats) of the marginal over the selected variables.
double marginal_entropy(const DiscreteJointDistribution& dist,
                        const std::vector<bool>& keep) {
  const std::size_t vars = dist.cardinality.size();
  std::size_t marg_size = 1;
  for (std::size_t v = 0; v < vars; ++v)
    if (keep[v]) marg_size *= static_cast<std::size_t>(dist.cardinality[v]);
  if (marg_size == 1) return 0.0;

  std::vector<double> marg(marg_size, 0.0);
  for (std::size_t flat = 0; flat < dist.pmf.size(); ++flat) {
    std::size_t rem = flat, idx = 0;
    for (std::size_t v = vars; v-- > 0;) {
      const auto card = static_cast<std::size_t>(dist.cardinality[v]);
      const std::size_t digit = rem % card;
      rem /= card;
      if (keep[v]) idx = idx * card + digit;
    }
    marg[idx] += dist.pmf[flat];
  }
  double h = 0.0;
  for (double p : marg)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

}  // namespace

double discrete_causation_entropy(const DiscreteJointDistribution& dist) {
  dist.validate();
  const std::size_t vars = dist.cardinality.size();
  using Role = DiscreteJointDistribution::Role;

  std::vector<bool> next_cond(vars), cond(vars), all_vars(vars), cond_src(vars);
  for (std::size_t v = 0; v < vars; ++v) {
    const Role r = dist.role[v];
    next_cond[v] = r != Role::source;
    cond[v] = r == Role::condition;
    cond_src[v] = r != Role::next_state;
    all_vars[v] = true;
  }
  const double h_next_given_cond =
      marginal_entropy(dist, next_cond) - marginal_entropy(dist, cond);
  const double h_next_given_all =
      marginal_entropy(dist, all_vars) - marginal_entropy(dist, cond_src);
  return h_next_given_cond - h_next_given_all;
}

}  // namespace ocse
