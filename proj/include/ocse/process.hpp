#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ocse/network.hpp"

namespace ocse {

/// Linear Gaussian network process x_t = A x_{t-1} + xi_t with independent
/// per-node noise xi_t^i ~ N(0, noise_std[i]^2).
struct GaussianProcessSpec {
  Network network;
  Eigen::VectorXd noise_std;
  std::uint64_t seed = 0;

  static GaussianProcessSpec unit_noise(Network net, std::uint64_t seed);
};

/// Multivariate sample path; row t is the network state at time t.
struct TimeSeries {
  Eigen::MatrixXd samples;

  long T() const { return samples.rows(); }
  int n() const { return static_cast<int>(samples.cols()); }
};

/// Simulates the process from x_0 = xi_0 for 10*T steps and returns the
/// final T rows, discarding the transient. Deterministic under spec.seed.
/// Throws std::invalid_argument for unstable networks or T < 1.
TimeSeries simulate_gaussian(const GaussianProcessSpec& spec, long T);

/// First-order embedding of an order-tau series: output node (s-1)*n + i at
/// time t carries raw node i at time t-s+1 (s = 1..tau), so an order-tau
/// dependence becomes a one-step dependence between stacked copies. Output
/// length is raw.T - tau + 1; tau = 1 returns the input unchanged.
TimeSeries embed_markov_order(const TimeSeries& raw, int tau);

}  // namespace ocse
