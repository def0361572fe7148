#include "ocse/process.hpp"

#include <stdexcept>

#include "ocse/rng.hpp"

namespace ocse {

GaussianProcessSpec GaussianProcessSpec::unit_noise(Network net,
                                                    std::uint64_t seed) {
  GaussianProcessSpec spec;
  spec.noise_std = Eigen::VectorXd::Ones(net.n);
  spec.network = std::move(net);
  spec.seed = seed;
  return spec;
}

TimeSeries simulate_gaussian(const GaussianProcessSpec& spec, long T) {
  const int n = spec.network.n;
  if (T < 1) throw std::invalid_argument("simulate: T must be >= 1");
  if (spec.noise_std.size() != n)
    throw std::invalid_argument("simulate: noise_std length must equal n");
  if ((spec.noise_std.array() <= 0.0).any())
    throw std::invalid_argument("simulate: noise std must be positive");
  if (spectral_radius(spec.network) >= 1.0)
    throw std::invalid_argument("simulate: network is unstable (rho >= 1)");

  const long total = 10 * T;  // transient = first 90% of the run
  Rng rng(derive_seed(spec.seed, {0x53494dULL}));

  Eigen::MatrixXd out(T, n);
  Eigen::VectorXd state(n);
  Eigen::VectorXd next(n);
  for (int i = 0; i < n; ++i) state(i) = spec.noise_std(i) * rng.normal();

  for (long t = 1; t < total; ++t) {
    next.noalias() = spec.network.weights * state;
    for (int i = 0; i < n; ++i) next(i) += spec.noise_std(i) * rng.normal();
    state.swap(next);
    if (t >= total - T) out.row(t - (total - T)) = state;
  }
  return TimeSeries{std::move(out)};
}

TimeSeries embed_markov_order(const TimeSeries& raw, int tau) {
  if (tau < 1) throw std::invalid_argument("embed: tau must be >= 1");
  if (tau >= raw.T())
    throw std::invalid_argument("embed: tau must be smaller than the series length");
  if (tau == 1) return raw;

  const int n = raw.n();
  const long out_T = raw.T() - tau + 1;
  Eigen::MatrixXd out(out_T, static_cast<long>(n) * tau);
  for (long t = 0; t < out_T; ++t)
    for (int s = 1; s <= tau; ++s)
      for (int i = 0; i < n; ++i)
        out(t, static_cast<long>(s - 1) * n + i) = raw.samples(t + tau - s, i);
  return TimeSeries{std::move(out)};
}

}  // namespace ocse
