#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "ocse/errors.hpp"

namespace ocse::detail {

/// Cholesky factorization with a single jitter retry: on failure the
/// diagonal is bumped by 1e-10 * trace/dim and the factorization repeated;
/// a second failure raises DegeneracyError.
inline Eigen::LLT<Eigen::MatrixXd> cholesky_with_jitter(Eigen::MatrixXd m,
                                                        const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) return llt;
  const double jitter =
      1e-10 * m.trace() /
      static_cast<double>(std::max<Eigen::Index>(1, m.rows()));
  m.diagonal().array() += jitter;
  llt.compute(m);
  if (llt.info() == Eigen::Success) return llt;
  throw DegeneracyError(std::string(what) +
                        ": covariance block is not positive definite beyond "
                        "the jitter budget");
}

/// log(max(det(m), floor)) for a symmetric m. Uses the Cholesky factor when
/// m is positive definite and falls back to the eigenvalue product for the
/// indefinite shapes that sampling noise can produce.
inline double logdet_floored(const Eigen::MatrixXd& m, double floor) {
  if (m.rows() == 1) return std::log(std::max(m(0, 0), floor));
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) {
    const double ld = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return std::max(ld, std::log(floor));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double det = es.eigenvalues().prod();
  return std::log(std::max(det, floor));
}

}  // namespace ocse::detail
