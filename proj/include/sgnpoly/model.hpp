#ifndef SGNPOLY_MODEL_HPP_
#define SGNPOLY_MODEL_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "sgnpoly/rng.hpp"

namespace sgnpoly {

// Law for the degree-heterogeneity entries theta_i. Entries are drawn iid
// and then rescaled so that ||theta|| equals `beta` exactly.
struct ThetaLaw {
  enum class Kind { Uniform, TwoPoint, Pareto };

  Kind kind = Kind::Uniform;
  double a = 0.0, b = 0.0;  // uniform on (a, b)
  double p1 = 0.0, v1 = 0.0, v2 = 0.0;  // P(v1) = p1, P(v2) = 1 - p1
  double shape = 0.0, scale = 0.0;      // Pareto(shape, scale), x >= scale
  double beta = 0.0;                    // target ||theta||

  static ThetaLaw uniform(double a, double b, double beta);
  static ThetaLaw two_point(double p1, double v1, double v2, double beta);
  static ThetaLaw pareto(double shape, double scale, double beta);

  void validate() const;
  double sample_raw(Prng& rng) const;  // one unscaled draw
};

// Mixture of point masses on the basis vectors e_k plus an optional
// symmetric Dirichlet(1,...,1) component.
struct MembershipLaw {
  Eigen::VectorXd point_weights;  // size K, weight on each e_k
  double dirichlet_weight = 0.0;

  static MembershipLaw uniform_points(int K);
  static MembershipLaw points(const Eigen::VectorXd& weights);
  static MembershipLaw with_dirichlet(const Eigen::VectorXd& point_weights,
                                      double dirichlet_weight);

  int K() const { return static_cast<int>(point_weights.size()); }
  void validate() const;
  Eigen::VectorXd mean() const;  // E[pi], closed form
  Eigen::VectorXd sample(Prng& rng) const;
};

// Full DCMM parameter set (theta, Pi, P).
struct DcmmParams {
  Eigen::VectorXd theta;  // n positive entries
  Eigen::MatrixXd pi;     // n x K, rows on the simplex
  Eigen::MatrixXd p;      // K x K symmetric, unit diagonal

  int n() const { return static_cast<int>(theta.size()); }
  int K() const { return static_cast<int>(p.rows()); }
};

// P = (1 - b) I_K + b 1_K 1_K'.
Eigen::MatrixXd example1_p(int K, double b);

// Omega_ij = theta_i theta_j pi_i' P pi_j (diagonal included).
// Throws OverflowProbability if any off-diagonal entry >= 1.
Eigen::MatrixXd build_omega(const DcmmParams& params);

// Draw theta iid from theta_law (then rescale to ||theta|| = beta exactly)
// and Pi rows iid from mem_law. Deterministic in seed.
DcmmParams sample_params(int n, int K, const ThetaLaw& theta_law,
                         const MembershipLaw& mem_law,
                         const Eigen::MatrixXd& p, std::uint64_t seed);

// Degree-matched null: Omega_null = (a' P a) theta theta' with a = E[pi],
// realized as a K = 1 model with degree vector sqrt(a' P a) * theta.
DcmmParams matched_null(const DcmmParams& params,
                        const MembershipLaw& mem_law);

// Lists every violated model invariant; empty iff valid.
std::vector<std::string> validate(const DcmmParams& params);

}  // namespace sgnpoly

#endif  // SGNPOLY_MODEL_HPP_
