#include "sgnpoly/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sgnpoly/errors.hpp"

namespace sgnpoly {

std::string to_string(PhaseRegion region) {
  switch (region) {
    case PhaseRegion::Possibility:
      return "possibility";
    case PhaseRegion::Impossibility:
      return "impossibility";
    case PhaseRegion::Boundary:
      return "boundary";
  }
  return "boundary";
}

Eigen::VectorXd eta_star(const Eigen::MatrixXd& omega) {
  const Eigen::VectorXd row_sums = omega.rowwise().sum();
  const double v0 = row_sums.sum();  // 1' Omega 1
  if (!(v0 > 0.0)) throw ZeroMatrix("1' Omega 1 <= 0: eta* undefined");
  return row_sums / std::sqrt(v0);
}

Eigen::MatrixXd omega_tilde(const Eigen::MatrixXd& omega) {
  const Eigen::VectorXd eta = eta_star(omega);
  return omega - eta * eta.transpose();
}

SpectrumInfo spectrum(const Eigen::MatrixXd& omega, int k) {
  const int n = static_cast<int>(omega.rows());
  if (omega.cols() != n) throw InvalidInput("omega must be square");
  if (k < 0 || k > n) throw InvalidInput("requested rank out of range");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(omega);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("symmetric eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(values[a]), mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });

  const double top = std::abs(values[order[0]]);
  if (!(top > 0.0)) throw ZeroMatrix("omega has no nonzero eigenvalue");
  int rank = k;
  if (rank == 0) {
    // Numerical rank: eigenvalues below 1e-8 * |lambda_1| count as zero.
    const double tol = 1e-8 * top;
    while (rank < n && std::abs(values[order[rank]]) > tol) ++rank;
  }

  SpectrumInfo info;
  info.eigenvalues.resize(rank);
  info.eigenvectors.resize(n, rank);
  for (int c = 0; c < rank; ++c) {
    info.eigenvalues[c] = values[order[c]];
    info.eigenvectors.col(c) = vectors.col(order[c]);
  }

  // Sign conventions: 1' xi_1 > 0; later columns have their first
  // significantly nonzero coordinate positive.
  {
    const double ones_dot = info.eigenvectors.col(0).sum();
    if (ones_dot < 0.0) info.eigenvectors.col(0) = -info.eigenvectors.col(0);
  }
  for (int c = 1; c < rank; ++c) {
    auto col = info.eigenvectors.col(c);
    const double cutoff = 1e-12 * col.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      if (std::abs(col[i]) > cutoff) {
        if (col[i] < 0.0) info.eigenvectors.col(c) = -col;
        break;
      }
    }
  }

  const double lambda1 = info.eigenvalues[0];
  if (!(lambda1 > 0.0))
    throw EigenFailure("leading eigenvalue is not positive");
  info.sqrt_lambda1 = std::sqrt(lambda1);
  const double lambda2 = rank >= 2 ? std::abs(info.eigenvalues[1]) : 0.0;
  info.ratio = lambda2 / lambda1;
  info.snr = lambda2 / info.sqrt_lambda1;

  info.h.resize(std::max(rank - 1, 0));
  const double ones_dot_1 = info.eigenvectors.col(0).sum();
  for (int c = 1; c < rank; ++c)
    info.h[c - 1] = info.eigenvectors.col(c).sum() / ones_dot_1;
  return info;
}

double tr_power_direct(const Eigen::MatrixXd& omega_tilde_mat, int m) {
  if (m != 3 && m != 4)
    throw UnsupportedOrder("direct trace supports m in {3,4}");
  const Eigen::MatrixXd sq = omega_tilde_mat * omega_tilde_mat;
  if (m == 3) return sq.cwiseProduct(omega_tilde_mat).sum();
  return sq.squaredNorm();
}

double tr_closed_form(const SpectrumInfo& spec, int m) {
  if (m != 3 && m != 4)
    throw UnsupportedOrder("closed form exists for m in {3,4}");
  if (spec.K() < 2)
    throw NullModel("closed-form trace needs K >= 2");
  const Eigen::ArrayXd lambda = spec.lambda_tail().array();
  const Eigen::ArrayXd h2 = spec.h.array().square();

  const double h_l_h = (h2 * lambda).sum();
  const double h_l2_h = (h2 * lambda.square()).sum();
  const double h_l3_h = (h2 * lambda.cube()).sum();
  if (m == 3) {
    return lambda.cube().sum() + 3.0 * h_l3_h + 3.0 * h_l_h * h_l2_h +
           h_l_h * h_l_h * h_l_h;
  }
  // Coefficient 2 on (h'L^2h)^2: the block expansion of tr(M^4) for
  // M = [[h'Lh, -h'L], [-Lh, L]] gives
  //   tr(L^4) + (h'Lh)^4 + 4 (h'Lh)^2 (h'L^2h) + 2 (h'L^2h)^2
  //   + 4 (h'Lh)(h'L^3h) + 4 h'L^4h,
  // which is the unique version matching the K = 2 limit (1+h^2)^4 l2^4.
  const double h_l4_h = (h2 * lambda.square().square()).sum();
  const double h_l_h_sq = h_l_h * h_l_h;
  return lambda.square().square().sum() + h_l_h_sq * h_l_h_sq +
         2.0 * h_l2_h * h_l2_h + 4.0 * h_l_h_sq * h_l2_h + 4.0 * h_l4_h +
         4.0 * h_l_h * h_l3_h;
}

PhasePoint phase_classify(const Eigen::MatrixXd& omega, double threshold_lo,
                          double threshold_hi) {
  if (!(0.0 < threshold_lo && threshold_lo <= threshold_hi))
    throw InvalidInput("need 0 < threshold_lo <= threshold_hi");
  const SpectrumInfo info = spectrum(omega);
  PhasePoint point;
  point.x = info.sqrt_lambda1;
  point.y = info.ratio;
  point.snr = info.snr;
  if (info.snr > threshold_hi)
    point.region = PhaseRegion::Possibility;
  else if (info.snr < threshold_lo)
    point.region = PhaseRegion::Impossibility;
  else
    point.region = PhaseRegion::Boundary;
  return point;
}

}  // namespace sgnpoly
