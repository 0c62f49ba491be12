#ifndef SGNPOLY_SPECTRAL_HPP_
#define SGNPOLY_SPECTRAL_HPP_

#include <Eigen/Dense>
#include <string>

namespace sgnpoly {

// Leading spectrum of Omega, ordered by |lambda| descending (ties: larger
// value first, then smaller original index). Signs: 1' xi_1 > 0, and each
// later eigenvector has its first nonzero coordinate positive.
struct SpectrumInfo {
  Eigen::VectorXd eigenvalues;   // lambda_1..lambda_K
  Eigen::MatrixXd eigenvectors;  // n x K, unit columns
  double sqrt_lambda1 = 0.0;
  double ratio = 0.0;  // |lambda_2| / lambda_1
  double snr = 0.0;    // |lambda_2| / sqrt(lambda_1)
  Eigen::VectorXd h;   // h_k = 1' xi_{k+1} / 1' xi_1, size K - 1

  int K() const { return static_cast<int>(eigenvalues.size()); }
  Eigen::VectorXd lambda_tail() const {  // (lambda_2, ..., lambda_K)
    return eigenvalues.tail(eigenvalues.size() - 1);
  }
};

enum class PhaseRegion { Possibility, Impossibility, Boundary };

std::string to_string(PhaseRegion region);

struct PhasePoint {
  double x = 0.0;    // sqrt(lambda_1)
  double y = 0.0;    // |lambda_2| / lambda_1
  double snr = 0.0;  // |lambda_2| / sqrt(lambda_1)
  PhaseRegion region = PhaseRegion::Boundary;
};

// eta* = Omega 1 / sqrt(1' Omega 1). Throws ZeroMatrix if Omega 1 = 0.
Eigen::VectorXd eta_star(const Eigen::MatrixXd& omega);

// Omega - eta* eta*'; annihilates 1 by construction.
Eigen::MatrixXd omega_tilde(const Eigen::MatrixXd& omega);

// Dense symmetric eigensolve keeping the k leading pairs; k = 0 detects the
// numerical rank. Throws EigenFailure / ZeroMatrix.
SpectrumInfo spectrum(const Eigen::MatrixXd& omega, int k = 0);

// tr(M^m) for m in {3,4}, computed from M^2.
double tr_power_direct(const Eigen::MatrixXd& omega_tilde_mat, int m);

// Closed-form trace polynomial in (Lambda, h):
//   m=3: tr(L^3) + 3 h'L^3h + 3 (h'Lh)(h'L^2h) + (h'Lh)^3
//   m=4: tr(L^4) + (h'Lh)^4 + 2 (h'L^2h)^2 + 4 (h'Lh)^2 (h'L^2h)
//        + 4 h'L^4h + 4 (h'Lh)(h'L^3h)
// with L = diag(lambda_2..lambda_K). Exact only up to o(|lambda_2|^m).
// Throws NullModel when K = 1.
double tr_closed_form(const SpectrumInfo& spec, int m);

// Phase-diagram classification at configurable SNR thresholds.
PhasePoint phase_classify(const Eigen::MatrixXd& omega,
                          double threshold_lo = 1.0 / 3.0,
                          double threshold_hi = 3.0);

}  // namespace sgnpoly

#endif  // SGNPOLY_SPECTRAL_HPP_
