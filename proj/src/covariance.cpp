#include "ocse/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include "ocse/errors.hpp"

namespace ocse {

namespace {

void check_lyapunov_inputs(const Eigen::MatrixXd& A, const Eigen::MatrixXd& S) {
  if (A.rows() != A.cols() || S.rows() != S.cols() || A.rows() != S.rows())
    throw std::invalid_argument("lyapunov: A and S must be square and equal-sized");
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    for (Eigen::Index j = 0; j < S.cols(); ++j) {
      if (i == j) {
        if (S(i, j) < 0.0)
          throw std::invalid_argument("lyapunov: S must have nonnegative diagonal");
      } else if (S(i, j) != 0.0) {
        throw std::invalid_argument("lyapunov: S must be diagonal");
      }
    }
  }
  if (spectral_radius(A) >= 1.0)
    throw std::invalid_argument("lyapunov: A is unstable (rho >= 1)");
}

}  // namespace

NodeSet LaggedCovariance::degenerate_nodes(double floor) const {
  NodeSet out;
  for (int i = 0; i < n; ++i)
    if (phi0(i, i) <= floor) out.push_back(i);
  return out;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& S, double tol,
                               int max_iter) {
  check_lyapunov_inputs(A, S);

  // Doubling iteration: after m rounds X holds the partial sum
  // sum_{k < 2^m} A^k S (A^k)^T and Ak holds A^(2^m).
  Eigen::MatrixXd X = S;
  Eigen::MatrixXd Ak = A;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::MatrixXd update = Ak * X * Ak.transpose();
    X += update;
    const double delta = update.cwiseAbs().maxCoeff();
    if (delta < tol) {
      X = 0.5 * (X + X.transpose());  // restore exact symmetry
      const double residual =
          (A * X * A.transpose() - X + S).cwiseAbs().maxCoeff();
      if (residual >= 1e-10)
        throw ConvergenceError("lyapunov: residual " + std::to_string(residual) +
                               " above 1e-10 after convergence");
      return X;
    }
    Ak = Ak * Ak;
  }
  throw ConvergenceError("lyapunov: no convergence within max_iter");
}

Eigen::MatrixXd solve_lyapunov_direct(const Eigen::MatrixXd& A,
                                      const Eigen::MatrixXd& S) {
  check_lyapunov_inputs(A, S);
  const Eigen::Index n = A.rows();
  if (n > 40)
    throw std::invalid_argument(
        "lyapunov_direct: n > 40 would need an n^4-sized system; use solve_lyapunov");

  // (I - A (x) A) vec(X) = vec(S), column-major vec.
  const Eigen::Index n2 = n * n;
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n2, n2);
  for (Eigen::Index bc = 0; bc < n; ++bc)
    for (Eigen::Index br = 0; br < n; ++br)
      system.block(br * n, bc * n, n, n) -= A(br, bc) * A;

  Eigen::VectorXd rhs(n2);
  for (Eigen::Index c = 0; c < n; ++c) rhs.segment(c * n, n) = S.col(c);

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible())
    throw DegeneracyError("lyapunov_direct: Kronecker system is singular");
  const Eigen::VectorXd x = lu.solve(rhs);

  Eigen::MatrixXd X(n, n);
  for (Eigen::Index c = 0; c < n; ++c) X.col(c) = x.segment(c * n, n);
  return 0.5 * (X + X.transpose());
}

Eigen::MatrixXd shifted_covariance(const Eigen::MatrixXd& A,
                                   const Eigen::MatrixXd& phi0, int tau) {
  if (tau < 0) throw std::invalid_argument("shifted_covariance: tau must be >= 0");
  Eigen::MatrixXd out = phi0;
  for (int k = 0; k < tau; ++k) out = A * out;
  return out;
}

LaggedCovariance exact_covariance(const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& S, double tol,
                                  int max_iter) {
  LaggedCovariance cov;
  cov.n = static_cast<int>(A.rows());
  cov.phi0 = solve_lyapunov(A, S, tol, max_iter);
  cov.phi1 = A * cov.phi0;
  cov.source = LaggedCovariance::Source::exact;
  return cov;
}

LaggedCovariance exact_covariance(const Network& net,
                                  const Eigen::VectorXd& noise_std) {
  if (noise_std.size() != net.n)
    throw std::invalid_argument("exact_covariance: noise_std length must equal n");
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(net.n, net.n);
  for (int i = 0; i < net.n; ++i) S(i, i) = noise_std(i) * noise_std(i);
  return exact_covariance(net.weights, S);
}

LaggedCovariance exact_covariance(const Network& net) {
  return exact_covariance(net, Eigen::VectorXd::Ones(net.n));
}

LaggedCovariance estimate_covariances(const TimeSeries& ts) {
  const long T = ts.T();
  const int n = ts.n();
  if (T < 3) throw std::invalid_argument("estimate_covariances: need T >= 3");
  if (!ts.samples.allFinite())
    throw std::invalid_argument("estimate_covariances: series has non-finite entries");

  const Eigen::RowVectorXd mean = ts.samples.colwise().mean();
  const Eigen::MatrixXd centered = ts.samples.rowwise() - mean;

  LaggedCovariance cov;
  cov.n = n;
  cov.source = LaggedCovariance::Source::empirical;
  cov.sample_count = T;

  Eigen::MatrixXd phi0 =
      (centered.transpose() * centered) / static_cast<double>(T - 1);
  cov.phi0 = 0.5 * (phi0 + phi0.transpose());
  cov.phi1 = (centered.bottomRows(T - 1).transpose() * centered.topRows(T - 1)) /
             static_cast<double>(T - 2);
  return cov;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& M, const NodeSet& rows,
                          const NodeSet& cols) {
  for (int r : rows)
    if (r < 0 || r >= M.rows())
      throw std::out_of_range("submatrix: row index out of range");
  for (int c : cols)
    if (c < 0 || c >= M.cols())
      throw std::out_of_range("submatrix: column index out of range");

  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          M(rows[i], cols[j]);
  return out;
}

}  // namespace ocse
