#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ocse/inference.hpp"

namespace ocse {

std::string method_name(InferenceMethod m);
InferenceMethod method_from_name(const std::string& name);

/// Grid of signed-ER experiment cells. Exactly one of p_values / np_values
/// must be nonempty (np is the expected degree, p = np / n). Each cell runs
/// `realizations` generate -> simulate -> infer -> error-ratio rounds.
struct SweepSpec {
  std::vector<int> n_values;
  std::vector<double> p_values;
  std::vector<double> np_values;
  std::vector<double> rho_values;
  std::vector<long> T_values;
  std::vector<InferenceMethod> methods;
  std::vector<int> r_values;
  std::vector<double> theta_values;
  int realizations = 1;
  std::uint64_t master_seed = 0;
  int jobs = 1;

  void validate() const;
};

struct SweepCell {
  int n = 0;
  double p = 0.0;
  double np = 0.0;
  double rho = 0.0;
  long T = 0;
  InferenceMethod method = InferenceMethod::ocse;
  int r = 0;
  double theta = 0.0;
};

struct SweepCellResult {
  SweepCell cell;
  int realizations = 0;
  int degenerate = 0;  // realizations that failed outright
  double eps_minus_mean = 0.0;
  double eps_plus_mean = 0.0;
  double eps_minus_se = 0.0;
  double eps_plus_se = 0.0;
  double runtime_seconds = 0.0;
  /// Critical sample size of the cell's (all-but-T) slice: the smallest
  /// swept T whose mean false negative ratio falls below 1 - theta. Absent
  /// when no swept T qualifies.
  std::optional<long> t_star;
};

struct SweepResult {
  std::vector<SweepCellResult> cells;  // deterministic grid order, T innermost
  long total_inferences = 0;
};

/// Runs the whole grid; cells and realizations execute concurrently up to
/// spec.jobs threads and are merged in deterministic grid order.
SweepResult run_sweep(const SweepSpec& spec);

}  // namespace ocse
