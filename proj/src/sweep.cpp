#include "ocse/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ocse/covariance.hpp"
#include "ocse/parallel.hpp"
#include "ocse/rng.hpp"

namespace ocse {

std::string method_name(InferenceMethod m) {
  switch (m) {
    case InferenceMethod::ocse: return "ocse";
    case InferenceMethod::te: return "te";
    case InferenceMethod::granger: return "granger";
  }
  return "unknown";
}

InferenceMethod method_from_name(const std::string& name) {
  if (name == "ocse") return InferenceMethod::ocse;
  if (name == "te") return InferenceMethod::te;
  if (name == "granger") return InferenceMethod::granger;
  throw std::invalid_argument("unknown inference method: " + name);
}

void SweepSpec::validate() const {
  if (n_values.empty() || rho_values.empty() || T_values.empty() ||
      methods.empty() || r_values.empty() || theta_values.empty())
    throw std::invalid_argument("sweep: every grid axis needs a value");
  if (p_values.empty() == np_values.empty())
    throw std::invalid_argument("sweep: give exactly one of p or np");
  if (realizations < 1)
    throw std::invalid_argument("sweep: realizations must be >= 1");
}

namespace {

struct TaskResult {
  bool failed = false;
  std::optional<double> eps_minus;
  std::optional<double> eps_plus;
  double seconds = 0.0;
};

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();

  // Grid order: method, n, degree/probability, rho, r, theta, T. T runs
  // innermost so each (all-but-T) slice is a contiguous block of cells.
  const bool degree_mode = !spec.np_values.empty();
  const std::vector<double>& densities =
      degree_mode ? spec.np_values : spec.p_values;

  std::vector<SweepCell> cells;
  for (const auto method : spec.methods)
    for (const int n : spec.n_values)
      for (const double d : densities)
        for (const double rho : spec.rho_values)
          for (const int r : spec.r_values)
            for (const double theta : spec.theta_values)
              for (const long T : spec.T_values) {
                SweepCell c;
                c.n = n;
                c.p = degree_mode ? d / n : d;
                c.np = degree_mode ? d : d * n;
                c.rho = rho;
                c.T = T;
                c.method = method;
                c.r = r;
                c.theta = theta;
                cells.push_back(c);
              }

  const long tasks = static_cast<long>(cells.size()) * spec.realizations;
  std::vector<TaskResult> results(static_cast<std::size_t>(tasks));
  std::atomic<long> completed{0};

  parallel_for(tasks, spec.jobs, [&](long task) {
    const long ci = task / spec.realizations;
    const int rep = static_cast<int>(task % spec.realizations);
    const SweepCell& cell = cells[static_cast<std::size_t>(ci)];
    TaskResult& slot = results[static_cast<std::size_t>(task)];

    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto cu = static_cast<std::uint64_t>(ci);
      const auto ru = static_cast<std::uint64_t>(rep);
      Network net = generate_er_signed(
          cell.n, cell.p, cell.rho,
          derive_seed(spec.master_seed, {0x4e4554ULL, cu, ru}));
      GaussianProcessSpec ps = GaussianProcessSpec::unit_noise(
          std::move(net), derive_seed(spec.master_seed, {0x53494dULL, cu, ru}));
      const TimeSeries ts = simulate_gaussian(ps, cell.T);
      const EmpiricalCseSource src(ts);
      SignificanceConfig cfg;
      cfg.r = cell.r;
      cfg.theta = cell.theta;
      cfg.seed = derive_seed(spec.master_seed, {0x494e46ULL, cu, ru});
      const InferredNetwork inferred =
          infer_network(src, cell.method, cfg, {false, 1});
      const ErrorRatios er = error_ratios(ps.network, inferred);
      slot.eps_minus = er.false_negative;
      slot.eps_plus = er.false_positive;
    } catch (const std::exception&) {
      slot.failed = true;  // infeasible cell (e.g. unstable draw, T too small)
    }
    slot.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    completed.fetch_add(1);
  });

  SweepResult out;
  out.total_inferences = completed.load();

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    SweepCellResult r;
    r.cell = cells[ci];
    r.realizations = spec.realizations;
    std::vector<double> ems, eps;
    for (int rep = 0; rep < spec.realizations; ++rep) {
      const TaskResult& t =
          results[ci * static_cast<std::size_t>(spec.realizations) +
                  static_cast<std::size_t>(rep)];
      r.runtime_seconds += t.seconds;
      if (t.failed) {
        ++r.degenerate;
        continue;
      }
      if (t.eps_minus) ems.push_back(*t.eps_minus);
      if (t.eps_plus) eps.push_back(*t.eps_plus);
    }
    auto mean_se = [](const std::vector<double>& v, double& mean, double& se) {
      if (v.empty()) {
        mean = std::numeric_limits<double>::quiet_NaN();
        se = std::numeric_limits<double>::quiet_NaN();
        return;
      }
      double s = 0.0;
      for (double x : v) s += x;
      mean = s / static_cast<double>(v.size());
      if (v.size() < 2) {
        se = 0.0;
        return;
      }
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      se = std::sqrt(ss / static_cast<double>(v.size() - 1) /
                     static_cast<double>(v.size()));
    };
    mean_se(ems, r.eps_minus_mean, r.eps_minus_se);
    mean_se(eps, r.eps_plus_mean, r.eps_plus_se);
    out.cells.push_back(std::move(r));
  }

  // Critical sample size per contiguous T-slice.
  const std::size_t slice = spec.T_values.size();
  for (std::size_t start = 0; start + slice <= out.cells.size(); start += slice) {
    std::vector<std::pair<long, double>> curve;
    for (std::size_t k = 0; k < slice; ++k) {
      const SweepCellResult& c = out.cells[start + k];
      if (!std::isnan(c.eps_minus_mean))
        curve.emplace_back(c.cell.T, c.eps_minus_mean);
    }
    std::sort(curve.begin(), curve.end());
    std::optional<long> t_star;
    const double level = 1.0 - out.cells[start].cell.theta;
    for (const auto& [T, em] : curve) {
      if (em < level) {
        t_star = T;
        break;
      }
    }
    for (std::size_t k = 0; k < slice; ++k)
      out.cells[start + k].t_star = t_star;
  }
  return out;
}

}  // namespace ocse
