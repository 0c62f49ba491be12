#ifndef SGNPOLY_SCALING_HPP_
#define SGNPOLY_SCALING_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "sgnpoly/model.hpp"

namespace sgnpoly {

struct ScalingResult {
  Eigen::VectorXd d;       // positive diagonal of D
  double residual = 0.0;   // ||D A D h - 1||_inf
  int iterations = 0;
  bool converged = false;
};

// Solve D A D h = 1_K for positive diagonal D, where A has strictly
// positive diagonal and nonnegative off-diagonal and h > 0. Damped fixed
// point on the transformed system; unique solution.
// Throws InvalidInput / NonConvergence.
ScalingResult sinkhorn_dad(const Eigen::MatrixXd& a, const Eigen::VectorXd& h,
                           double tol = 1e-12, int max_iterations = 100000,
                           const Eigen::VectorXd* initial = nullptr);

enum class LfConstruction { Dcbm, Dcmm, FlexiblePi, MatchedTheta };

std::string to_string(LfConstruction tag);
LfConstruction lf_construction_from_string(const std::string& name);

struct LeastFavorablePair {
  DcmmParams null_params;  // K = 1
  DcmmParams alt_params;
  LfConstruction construction = LfConstruction::Dcbm;
  double separation = 0.0;  // ||theta|| * |mu_2(P)|
  Eigen::VectorXd d;        // scaling diagonal used (empty for matched-theta)
  double q_n = 1.0;         // null scale (1 unless matched-theta)
};

// Hypothesis pair for the chosen construction. `memberships` are the
// supplied Pi rows (n x K); h-type expectations are taken empirically over
// these rows except where `mem_law` supplies them in closed form.
LeastFavorablePair least_favorable(const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& p,
                                   const Eigen::MatrixXd& memberships,
                                   LfConstruction tag);

// Same, sampling n membership rows from the law first (closed-form mean
// used wherever the construction calls for E[pi]).
LeastFavorablePair least_favorable(const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& p,
                                   const MembershipLaw& mem_law, int n,
                                   std::uint64_t seed, LfConstruction tag);

// P = (1 - q_n) M M' + q_n 1 1' with columns of M orthogonal to alpha and
// diag(M M') = I, so that P alpha is proportional to 1_K and diag(P) = 1.
// Throws Infeasible when the resulting P has negative entries.
Eigen::MatrixXd dirichlet_p_construct(const Eigen::VectorXd& alpha,
                                      double q_n, std::uint64_t seed = 0);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  int reps = 0;
};

// Monte-Carlo chi-square distance between the matched-theta pair
// (q_n theta theta' vs Theta Pi P Pi' Theta, pi_i iid mem_law):
//   E_{Pi,Pi~}[ prod_{i<j} (1 + Delta_ij Delta~_ij / (p_ij (1 - p_ij))) ] - 1.
// Products accumulate in log space; guard n <= 500.
McEstimate chi_square_mc(const Eigen::VectorXd& theta,
                         const Eigen::MatrixXd& p,
                         const MembershipLaw& mem_law, int reps,
                         std::uint64_t seed);

// Second largest eigenvalue of P in magnitude.
double mu2(const Eigen::MatrixXd& p);

}  // namespace sgnpoly

#endif  // SGNPOLY_SCALING_HPP_
