#include "ocse/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ocse/covariance.hpp"
#include "ocse/detail/linalg.hpp"
#include "ocse/errors.hpp"
#include "ocse/parallel.hpp"
#include "ocse/rng.hpp"

namespace ocse {

using detail::cholesky_with_jitter;
using detail::logdet_floored;

void SignificanceConfig::validate() const {
  if (r < 1) throw std::invalid_argument("significance: r must be >= 1");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("significance: theta must lie in (0, 1)");
  if (!(exact_tolerance > 0.0))
    throw std::invalid_argument("significance: exact_tolerance must be > 0");
}

// ---------------------------------------------------------------------------
// CseSource defaults

double CseSource::statistic(int j, const NodeSet& I, const NodeSet& K) const {
  return set_statistic({j}, I, K);
}

std::vector<std::pair<int, double>> CseSource::scan(const NodeSet& I,
                                                    const NodeSet& K) const {
  std::vector<std::pair<int, double>> out;
  const int n = node_count();
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    if (!set_contains(K, j)) out.emplace_back(j, statistic(j, I, K));
  return out;
}

std::vector<TargetOutcome> CseSource::test_targets(
    int j, const std::vector<int>& targets, const NodeSet& K,
    const SignificanceConfig& cfg) const {
  std::vector<TargetOutcome> out;
  out.reserve(targets.size());
  for (int i : targets) {
    TargetOutcome o;
    o.target = i;
    try {
      o.statistic = statistic(j, {i}, K);
      if (o.statistic > 0.0) {
        const SignificanceDecision d = test(j, {i}, K, o.statistic, cfg);
        o.significant = d.significant;
        o.cdf = d.cdf;
      }
    } catch (const DegeneracyError&) {
      o.degenerate = true;
    }
    out.push_back(o);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ExactCseSource

double ExactCseSource::set_statistic(const NodeSet& J, const NodeSet& I,
                                     const NodeSet& K) const {
  return causation_entropy(ctx_, J, I, K);
}

SignificanceDecision ExactCseSource::test(int, const NodeSet&, const NodeSet&,
                                          double observed,
                                          const SignificanceConfig& cfg) const {
  const bool significant = observed > cfg.exact_tolerance;
  return {significant, significant ? 1.0 : 0.0};
}

// ---------------------------------------------------------------------------
// EmpiricalCseSource

struct EmpiricalCseSource::CondState {
  NodeSet K;  // sorted
  Eigen::LLT<Eigen::MatrixXd> chol;
};

struct EmpiricalCseSource::TargetState {
  NodeSet I;  // sorted
  Eigen::MatrixXd phi0_II;
  Eigen::MatrixXd B;    // phi1[I, K]
  Eigen::MatrixXd U0;   // solve(phi0[K,K], B^T)
  Eigen::MatrixXd numQ;
  double num_logdet = 0.0;
};

EmpiricalCseSource::EmpiricalCseSource(const TimeSeries& ts,
                                       double degenerate_floor) {
  ctx_.cov = estimate_covariances(ts);
  ctx_.degenerate_floor = degenerate_floor;
  T_ = ts.T();
  const Eigen::RowVectorXd mean = ts.samples.colwise().mean();
  centered_ = ts.samples.rowwise() - mean;
}

EmpiricalCseSource::CondState EmpiricalCseSource::make_cond(
    const NodeSet& K) const {
  CondState c;
  c.K = set_sorted(K);
  if (!c.K.empty()) {
    if (static_cast<long>(c.K.size()) >= T_)
      throw DegeneracyError(
          "empirical: conditioning set size reaches the sample count; the "
          "covariance block is rank-deficient");
    c.chol = cholesky_with_jitter(submatrix(ctx_.cov.phi0, c.K, c.K),
                                  "empirical");
  }
  return c;
}

EmpiricalCseSource::TargetState EmpiricalCseSource::make_target(
    const CondState& c, const NodeSet& I) const {
  TargetState t;
  t.I = set_sorted(I);
  t.phi0_II = submatrix(ctx_.cov.phi0, t.I, t.I);
  if (c.K.empty()) {
    t.numQ = t.phi0_II;
  } else {
    t.B = submatrix(ctx_.cov.phi1, t.I, c.K);
    t.U0 = c.chol.solve(t.B.transpose());
    t.numQ = t.phi0_II - t.B * t.U0;
    t.numQ = 0.5 * (t.numQ + t.numQ.transpose()).eval();
  }
  t.num_logdet = logdet_floored(t.numQ, ctx_.degenerate_floor);
  return t;
}

double EmpiricalCseSource::eval_candidate(const CondState& c,
                                          const TargetState& t, int j,
                                          const std::vector<int>* perm,
                                          Eigen::VectorXd& shuffled) const {
  const Eigen::MatrixXd& phi0 = ctx_.cov.phi0;
  const Eigen::MatrixXd& phi1 = ctx_.cov.phi1;
  const double floor = ctx_.degenerate_floor;
  const auto nk = static_cast<Eigen::Index>(c.K.size());
  const auto ni = static_cast<Eigen::Index>(t.I.size());
  const long T = T_;
  const double inv0 = 1.0 / static_cast<double>(T - 1);
  const double inv1 = 1.0 / static_cast<double>(T - 2);
  const bool j_in_I = set_contains(t.I, j);

  Eigen::VectorXd phi0_Kj(nk), phi1_Ij(ni);
  const double phi0_jj = phi0(j, j);  // invariant under shuffles of column j
  if (perm == nullptr) {
    for (Eigen::Index a = 0; a < nk; ++a) phi0_Kj(a) = phi0(c.K[a], j);
    for (Eigen::Index a = 0; a < ni; ++a) phi1_Ij(a) = phi1(t.I[a], j);
  } else {
    shuffled.resize(T);
    for (long u = 0; u < T; ++u) shuffled(u) = centered_((*perm)[u], j);
    for (Eigen::Index a = 0; a < nk; ++a)
      phi0_Kj(a) = centered_.col(c.K[a]).dot(shuffled) * inv0;
    for (Eigen::Index a = 0; a < ni; ++a) {
      if (t.I[a] == j)
        phi1_Ij(a) = shuffled.tail(T - 1).dot(shuffled.head(T - 1)) * inv1;
      else
        phi1_Ij(a) =
            centered_.col(t.I[a]).tail(T - 1).dot(shuffled.head(T - 1)) * inv1;
    }
  }

  // Conditional covariance of I given K. Cached unless the shuffle reaches
  // into it, which happens only when j itself belongs to I.
  const Eigen::MatrixXd* numQ = &t.numQ;
  const Eigen::MatrixXd* B = &t.B;
  double num_logdet = t.num_logdet;
  Eigen::MatrixXd numQ_patched, B_patched;
  if (perm != nullptr && j_in_I) {
    const auto row = static_cast<Eigen::Index>(
        std::find(t.I.begin(), t.I.end(), j) - t.I.begin());
    Eigen::MatrixXd phi0_II = t.phi0_II;
    for (Eigen::Index a = 0; a < ni; ++a) {
      if (t.I[a] == j) continue;
      const double v = centered_.col(t.I[a]).dot(shuffled) * inv0;
      phi0_II(row, a) = v;
      phi0_II(a, row) = v;
    }
    if (nk > 0) {
      B_patched = t.B;
      for (Eigen::Index a = 0; a < nk; ++a)
        B_patched(row, a) =
            shuffled.tail(T - 1).dot(centered_.col(c.K[a]).head(T - 1)) * inv1;
      numQ_patched = phi0_II - B_patched * c.chol.solve(B_patched.transpose());
      numQ_patched = 0.5 * (numQ_patched + numQ_patched.transpose()).eval();
      B = &B_patched;
    } else {
      numQ_patched = phi0_II;
    }
    num_logdet = logdet_floored(numQ_patched, floor);
    numQ = &numQ_patched;
  }

  // Rank-one conditioning update from K to K + {j}.
  double s;
  Eigen::VectorXd w;
  if (nk == 0) {
    s = phi0_jj;
    w = phi1_Ij;
  } else {
    const Eigen::VectorXd u = c.chol.solve(phi0_Kj);
    s = phi0_jj - phi0_Kj.dot(u);
    w = phi1_Ij - (*B) * u;
  }
  if (s <= floor) return 0.0;  // source carries nothing beyond K
  const Eigen::MatrixXd denQ = *numQ - (w * w.transpose()) / s;
  return 0.5 * (num_logdet - logdet_floored(denQ, floor));
}

SignificanceDecision EmpiricalCseSource::run_test(
    const CondState& c, const TargetState& t, int j, double observed,
    const SignificanceConfig& cfg) const {
  cfg.validate();
  if (!std::isfinite(observed))
    throw DegeneracyError("permutation_test: observed statistic is not finite");
  if (ctx_.cov.phi0(j, j) <= ctx_.degenerate_floor)
    throw DegeneracyError("permutation_test: source column is constant");

  std::vector<int> perm(static_cast<std::size_t>(T_));
  Eigen::VectorXd shuffled;
  int below = 0;
  for (int k = 0; k < cfg.r; ++k) {
    SeedStream seed(cfg.seed);
    seed.absorb(0x7065726dULL);  // test-family tag
    seed.absorb(static_cast<std::uint64_t>(j));
    seed.absorb(t.I.size());
    seed.absorb_range(t.I.begin(), t.I.end());
    seed.absorb(c.K.size());
    seed.absorb_range(c.K.begin(), c.K.end());
    seed.absorb(static_cast<std::uint64_t>(k));
    Rng rng(seed.finish());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    if (eval_candidate(c, t, j, &perm, shuffled) < observed) ++below;
  }
  const double cdf = static_cast<double>(below) / static_cast<double>(cfg.r);
  return {cdf > cfg.theta, cdf};
}

double EmpiricalCseSource::set_statistic(const NodeSet& J, const NodeSet& I,
                                         const NodeSet& K) const {
  return causation_entropy(ctx_, J, I, K);
}

double EmpiricalCseSource::statistic(int j, const NodeSet& I,
                                     const NodeSet& K) const {
  const CondState c = make_cond(K);
  const TargetState t = make_target(c, I);
  Eigen::VectorXd shuffled;
  return eval_candidate(c, t, j, nullptr, shuffled);
}

SignificanceDecision EmpiricalCseSource::test(int j, const NodeSet& I,
                                              const NodeSet& K,
                                              double observed,
                                              const SignificanceConfig& cfg) const {
  const CondState c = make_cond(K);
  const TargetState t = make_target(c, I);
  return run_test(c, t, j, observed, cfg);
}

std::vector<std::pair<int, double>> EmpiricalCseSource::scan(
    const NodeSet& I, const NodeSet& K) const {
  const CondState c = make_cond(K);
  const TargetState t = make_target(c, I);
  Eigen::VectorXd shuffled;
  std::vector<std::pair<int, double>> out;
  const int n = node_count();
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    if (!set_contains(c.K, j))
      out.emplace_back(j, eval_candidate(c, t, j, nullptr, shuffled));
  return out;
}

std::vector<TargetOutcome> EmpiricalCseSource::test_targets(
    int j, const std::vector<int>& targets, const NodeSet& K,
    const SignificanceConfig& cfg) const {
  std::vector<TargetOutcome> out;
  out.reserve(targets.size());

  CondState c;
  try {
    c = make_cond(K);
  } catch (const DegeneracyError&) {
    for (int i : targets) {
      TargetOutcome o;
      o.target = i;
      o.degenerate = true;
      out.push_back(o);
    }
    return out;
  }

  Eigen::VectorXd shuffled;
  for (int i : targets) {
    TargetOutcome o;
    o.target = i;
    try {
      const TargetState t = make_target(c, {i});
      o.statistic = eval_candidate(c, t, j, nullptr, shuffled);
      if (o.statistic > 0.0) {
        const SignificanceDecision d = run_test(c, t, j, o.statistic, cfg);
        o.significant = d.significant;
        o.cdf = d.cdf;
      }
    } catch (const DegeneracyError&) {
      o.degenerate = true;
    }
    out.push_back(o);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DiscreteCseSource

DiscreteCseSource::DiscreteCseSource(std::vector<int> cardinality,
                                     std::vector<double> joint_pmf)
    : cardinality_(std::move(cardinality)), joint_(std::move(joint_pmf)) {
  if (cardinality_.empty())
    throw std::invalid_argument("discrete source: need at least one node");
  std::size_t states = 1;
  for (int c : cardinality_) {
    if (c < 2) throw std::invalid_argument("discrete source: cardinality >= 2");
    states *= static_cast<std::size_t>(c);
  }
  if (joint_.size() != states * states)
    throw std::invalid_argument(
        "discrete source: joint pmf must cover (next, current) of all nodes");
  double total = 0.0;
  for (double p : joint_) {
    if (p < 0.0) throw std::invalid_argument("discrete source: negative pmf");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("discrete source: pmf does not sum to one");
}

double DiscreteCseSource::set_statistic(const NodeSet& J, const NodeSet& I,
                                        const NodeSet& K) const {
  const int n = node_count();
  using Role = DiscreteJointDistribution::Role;
  // Variable layout of the stored joint: next_0..next_{n-1}, cur_0..cur_{n-1}.
  std::vector<int> dims;
  std::vector<Role> roles;
  for (int i : set_sorted(I)) {
    dims.push_back(i);
    roles.push_back(Role::next_state);
  }
  for (int k : set_sorted(K)) {
    dims.push_back(n + k);
    roles.push_back(Role::condition);
  }
  bool has_source = false;
  for (int j : set_sorted(J)) {
    if (set_contains(K, j)) continue;  // already conditioned on
    dims.push_back(n + j);
    roles.push_back(Role::source);
    has_source = true;
  }
  if (!has_source) return 0.0;

  std::vector<int> full_cards(static_cast<std::size_t>(2 * n));
  for (int v = 0; v < n; ++v) {
    full_cards[static_cast<std::size_t>(v)] = cardinality_[static_cast<std::size_t>(v)];
    full_cards[static_cast<std::size_t>(n + v)] =
        cardinality_[static_cast<std::size_t>(v)];
  }

  DiscreteJointDistribution dist;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    dist.cardinality.push_back(full_cards[static_cast<std::size_t>(dims[d])]);
    dist.role.push_back(roles[d]);
  }
  std::size_t marg_size = 1;
  for (int c : dist.cardinality) marg_size *= static_cast<std::size_t>(c);
  dist.pmf.assign(marg_size, 0.0);

  std::vector<int> digits(full_cards.size());
  for (std::size_t flat = 0; flat < joint_.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t v = full_cards.size(); v-- > 0;) {
      const auto card = static_cast<std::size_t>(full_cards[v]);
      digits[v] = static_cast<int>(rem % card);
      rem /= card;
    }
    std::size_t idx = 0;
    for (std::size_t d = 0; d < dims.size(); ++d)
      idx = idx * static_cast<std::size_t>(
                      full_cards[static_cast<std::size_t>(dims[d])]) +
            static_cast<std::size_t>(digits[static_cast<std::size_t>(dims[d])]);
    dist.pmf[idx] += joint_[flat];
  }
  return discrete_causation_entropy(dist);
}

SignificanceDecision DiscreteCseSource::test(int, const NodeSet&,
                                             const NodeSet&, double observed,
                                             const SignificanceConfig& cfg) const {
  const bool significant = observed > cfg.exact_tolerance;
  return {significant, significant ? 1.0 : 0.0};
}

// ---------------------------------------------------------------------------
// Free functions

SignificanceDecision permutation_test(const TimeSeries& ts, int j,
                                      const NodeSet& I, const NodeSet& K,
                                      double observed,
                                      const SignificanceConfig& cfg) {
  const EmpiricalCseSource src(ts);
  return src.test(j, I, K, observed, cfg);
}

DiscoveryTrace aggregative_discovery(const CseSource& src, const NodeSet& I,
                                     const SignificanceConfig& cfg) {
  cfg.validate();
  if (I.empty())
    throw std::invalid_argument("aggregative_discovery: I must be nonempty");
  const int n = src.node_count();

  DiscoveryTrace trace;
  trace.target = set_sorted(I);
  NodeSet K;
  while (static_cast<int>(K.size()) < n) {
    const auto stats = src.scan(trace.target, K);
    if (stats.empty()) break;
    int best_j = -1;
    double best_x = -std::numeric_limits<double>::infinity();
    for (const auto& [j, x] : stats) {
      if (x > best_x) {  // ties keep the lowest index
        best_x = x;
        best_j = j;
      }
    }
    if (best_j < 0) break;  // all statistics were NaN

    bool significant = false;
    if (best_x > 0.0)
      significant = src.test(best_j, trace.target, K, best_x, cfg).significant;
    trace.steps.push_back(
        {DiscoveryStep::Phase::discovery, best_j, best_x, significant});
    if (!significant) break;
    K.push_back(best_j);
  }
  trace.discovered = K;
  return trace;
}

DiscoveryTrace progressive_removal(const CseSource& src, const NodeSet& I,
                                   const NodeSet& K,
                                   const SignificanceConfig& cfg) {
  cfg.validate();
  if (I.empty())
    throw std::invalid_argument("progressive_removal: I must be nonempty");

  DiscoveryTrace trace;
  trace.target = set_sorted(I);
  trace.discovered = K;
  NodeSet current = K;
  for (int p : K) {
    const NodeSet cond = set_minus(current, p);
    const double x = src.statistic(p, trace.target, cond);
    bool significant = false;
    if (x > 0.0)
      significant = src.test(p, trace.target, cond, x, cfg).significant;
    trace.steps.push_back(
        {DiscoveryStep::Phase::removal, p, x, significant});
    if (!significant) current = set_minus(current, p);
  }
  trace.pruned = current;
  return trace;
}

DiscoveryTrace infer_parents_ocse(const CseSource& src, int i,
                                  const SignificanceConfig& cfg) {
  DiscoveryTrace agg = aggregative_discovery(src, {i}, cfg);
  DiscoveryTrace rem = progressive_removal(src, agg.target, agg.discovered, cfg);
  DiscoveryTrace out;
  out.target = std::move(agg.target);
  out.steps = std::move(agg.steps);
  out.steps.insert(out.steps.end(), rem.steps.begin(), rem.steps.end());
  out.discovered = std::move(agg.discovered);
  out.pruned = std::move(rem.pruned);
  return out;
}

NodeSet brute_force_parents(const CseSource& src, const NodeSet& I,
                            int max_cardinality, double tol) {
  if (I.empty())
    throw std::invalid_argument("brute_force_parents: I must be nonempty");
  if (max_cardinality < 0)
    throw std::invalid_argument("brute_force_parents: negative cardinality");
  const int n = src.node_count();
  const int mc = std::min(max_cardinality, n);

  double enumeration = 1.0;  // sum of binomials up to mc
  double binom = 1.0;
  for (int c = 1; c <= mc; ++c) {
    binom *= static_cast<double>(n - c + 1) / c;
    enumeration += binom;
    if (enumeration > 4e6)
      throw std::invalid_argument(
          "brute_force_parents: the subset enumeration would exceed 4e6 sets; "
          "use a smaller network or max_cardinality");
  }

  // All subsets up to cardinality mc, in increasing-cardinality order, with
  // their causation entropy toward I.
  std::vector<NodeSet> subsets{NodeSet{}};
  std::vector<double> values{0.0};
  for (int card = 1; card <= mc; ++card) {
    std::vector<int> comb(static_cast<std::size_t>(card));
    std::iota(comb.begin(), comb.end(), 0);
    for (;;) {
      NodeSet K(comb.begin(), comb.end());
      values.push_back(src.set_statistic(K, I, {}));
      subsets.push_back(std::move(K));
      int pos = card - 1;
      while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == n - card + pos)
        --pos;
      if (pos < 0) break;
      ++comb[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < card; ++q)
        comb[static_cast<std::size_t>(q)] = comb[static_cast<std::size_t>(q - 1)] + 1;
    }
  }

  const double best = *std::max_element(values.begin(), values.end());
  NodeSet intersection;
  const NodeSet* minimal = nullptr;
  bool first = true;
  for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
    if (values[idx] < best - tol) continue;
    if (first) {
      intersection = subsets[idx];  // smallest maximizer: order is by cardinality
      minimal = &subsets[idx];
      first = false;
    } else {
      NodeSet merged;
      std::set_intersection(intersection.begin(), intersection.end(),
                            subsets[idx].begin(), subsets[idx].end(),
                            std::back_inserter(merged));
      intersection = std::move(merged);
    }
  }

  if (minimal != nullptr && static_cast<int>(minimal->size()) == mc && mc < n) {
    for (int j = 0; j < n; ++j) {
      if (set_contains(*minimal, j)) continue;
      if (src.set_statistic({j}, I, *minimal) > tol)
        throw std::runtime_error(
            "brute_force_parents: max_cardinality exceeded before the causal "
            "set was covered");
    }
  }
  return intersection;
}

// ---------------------------------------------------------------------------
// Whole-network inference

NodeSet InferredNetwork::parent_set(int i) const {
  NodeSet out;
  for (const auto& e : edges)
    if (e.target == i) out.push_back(e.source);
  return set_sorted(out);
}

Network InferredNetwork::to_network() const {
  Network net(n, Eigen::MatrixXd::Zero(n, n));
  for (const auto& e : edges) net.weights(e.target, e.source) = 1.0;
  return net;
}

InferredNetwork infer_network(const CseSource& src, InferenceMethod method,
                              const SignificanceConfig& cfg,
                              const InferOptions& opts) {
  cfg.validate();
  const int n = src.node_count();
  InferredNetwork out;
  out.n = n;
  out.method = method;

  if (method == InferenceMethod::ocse) {
    std::vector<DiscoveryTrace> traces(static_cast<std::size_t>(n));
    parallel_for(n, opts.jobs, [&](long i) {
      traces[static_cast<std::size_t>(i)] =
          infer_parents_ocse(src, static_cast<int>(i), cfg);
    });
    for (int i = 0; i < n; ++i) {
      const DiscoveryTrace& tr = traces[static_cast<std::size_t>(i)];
      for (int p : tr.pruned) {
        double stat = 0.0;
        for (const auto& step : tr.steps)
          if (step.phase == DiscoveryStep::Phase::removal && step.candidate == p)
            stat = step.statistic;
        out.edges.push_back({p, i, stat});
      }
    }
    if (opts.record_traces) out.traces = std::move(traces);
  } else {
    std::vector<int> targets(static_cast<std::size_t>(n));
    std::iota(targets.begin(), targets.end(), 0);
    std::vector<std::vector<TargetOutcome>> rows(static_cast<std::size_t>(n));

    parallel_for(n, opts.jobs, [&](long jl) {
      const int j = static_cast<int>(jl);
      if (method == InferenceMethod::granger) {
        NodeSet cond;
        cond.reserve(static_cast<std::size_t>(n) - 1);
        for (int v = 0; v < n; ++v)
          if (v != j) cond.push_back(v);
        rows[static_cast<std::size_t>(jl)] = src.test_targets(j, targets, cond, cfg);
      } else {  // pairwise transfer entropy: condition on the target itself
        std::vector<TargetOutcome> row;
        row.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
          TargetOutcome o;
          o.target = i;
          try {
            o.statistic = src.statistic(j, {i}, {i});
            if (o.statistic > 0.0) {
              const SignificanceDecision d = src.test(j, {i}, {i}, o.statistic, cfg);
              o.significant = d.significant;
              o.cdf = d.cdf;
            }
          } catch (const DegeneracyError&) {
            o.degenerate = true;
          }
          row.push_back(o);
        }
        rows[static_cast<std::size_t>(jl)] = std::move(row);
      }
    });

    for (int j = 0; j < n; ++j) {
      const auto& row = rows[static_cast<std::size_t>(j)];
      const bool all_degenerate =
          !row.empty() && std::all_of(row.begin(), row.end(),
                                      [](const TargetOutcome& o) {
                                        return o.degenerate;
                                      });
      if (all_degenerate) out.degenerate_nodes.push_back(j);
      for (const auto& o : row)
        if (o.significant) out.edges.push_back({j, o.target, o.statistic});
    }
  }

  std::sort(out.edges.begin(), out.edges.end(),
            [](const InferredEdge& a, const InferredEdge& b) {
              return a.target != b.target ? a.target < b.target
                                          : a.source < b.source;
            });
  return out;
}

ErrorRatios error_ratios(const Network& truth, const InferredNetwork& inferred) {
  return error_ratios(truth, inferred.to_network());
}

}  // namespace ocse
