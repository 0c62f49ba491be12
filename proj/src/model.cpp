#include "sgnpoly/model.hpp"

#include <cmath>
#include <sstream>

#include "sgnpoly/errors.hpp"

namespace sgnpoly {

ThetaLaw ThetaLaw::uniform(double a, double b, double beta) {
  ThetaLaw law;
  law.kind = Kind::Uniform;
  law.a = a;
  law.b = b;
  law.beta = beta;
  return law;
}

ThetaLaw ThetaLaw::two_point(double p1, double v1, double v2, double beta) {
  ThetaLaw law;
  law.kind = Kind::TwoPoint;
  law.p1 = p1;
  law.v1 = v1;
  law.v2 = v2;
  law.beta = beta;
  return law;
}

ThetaLaw ThetaLaw::pareto(double shape, double scale, double beta) {
  ThetaLaw law;
  law.kind = Kind::Pareto;
  law.shape = shape;
  law.scale = scale;
  law.beta = beta;
  return law;
}

void ThetaLaw::validate() const {
  if (!(beta > 0.0)) throw InvalidInput("theta law: target norm must be > 0");
  switch (kind) {
    case Kind::Uniform:
      if (!(0.0 < a && a < b))
        throw InvalidInput("theta law: need 0 < a < b for uniform");
      break;
    case Kind::TwoPoint:
      if (!(p1 >= 0.0 && p1 <= 1.0))
        throw InvalidInput("theta law: two-point weight outside [0,1]");
      if (!(v1 > 0.0 && v2 > 0.0))
        throw InvalidInput("theta law: two-point values must be > 0");
      break;
    case Kind::Pareto:
      if (!(shape > 0.0 && scale > 0.0))
        throw InvalidInput("theta law: pareto parameters must be > 0");
      break;
  }
}

double ThetaLaw::sample_raw(Prng& rng) const {
  switch (kind) {
    case Kind::Uniform:
      return rng.uniform(a, b);
    case Kind::TwoPoint:
      return rng.uniform01() < p1 ? v1 : v2;
    case Kind::Pareto:
      return rng.pareto(shape, scale);
  }
  throw InvalidInput("theta law: unknown variant");
}

MembershipLaw MembershipLaw::uniform_points(int K) {
  MembershipLaw law;
  law.point_weights = Eigen::VectorXd::Constant(K, 1.0 / K);
  return law;
}

MembershipLaw MembershipLaw::points(const Eigen::VectorXd& weights) {
  MembershipLaw law;
  law.point_weights = weights;
  return law;
}

MembershipLaw MembershipLaw::with_dirichlet(
    const Eigen::VectorXd& point_weights, double dirichlet_weight) {
  MembershipLaw law;
  law.point_weights = point_weights;
  law.dirichlet_weight = dirichlet_weight;
  return law;
}

void MembershipLaw::validate() const {
  if (point_weights.size() == 0)
    throw InvalidInput("membership law: empty weight vector");
  if (point_weights.minCoeff() < 0.0 || dirichlet_weight < 0.0)
    throw InvalidInput("membership law: negative weight");
  double total = point_weights.sum() + dirichlet_weight;
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidInput("membership law: weights must sum to 1");
}

Eigen::VectorXd MembershipLaw::mean() const {
  // Point masses contribute w_k e_k; the symmetric Dirichlet contributes
  // its center 1/K.
  Eigen::VectorXd m = point_weights;
  if (dirichlet_weight > 0.0)
    m.array() += dirichlet_weight / static_cast<double>(K());
  return m;
}

Eigen::VectorXd MembershipLaw::sample(Prng& rng) const {
  const int k = K();
  double u = rng.uniform01();
  double acc = 0.0;
  for (int c = 0; c < k; ++c) {
    acc += point_weights[c];
    if (u < acc) return Eigen::VectorXd::Unit(k, c);
  }
  if (dirichlet_weight <= 0.0) {
    // Rounding left u above the cumulative point mass; assign the
    // eps-sized remainder to the last corner rather than a missing
    // Dirichlet branch.
    return Eigen::VectorXd::Unit(k, k - 1);
  }
  // Dirichlet(1,...,1) component: normalized iid exponentials.
  Eigen::VectorXd row(k);
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    row[c] = rng.exponential();
    total += row[c];
  }
  row /= total;
  return row;
}

Eigen::MatrixXd example1_p(int K, double b) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Constant(K, K, b);
  p.diagonal().setOnes();
  return p;
}

Eigen::MatrixXd build_omega(const DcmmParams& params) {
  const Eigen::MatrixXd scaled =
      params.theta.asDiagonal() * params.pi;  // Theta Pi
  Eigen::MatrixXd omega = scaled * params.p * scaled.transpose();
  // Symmetric kernel: make the result bitwise symmetric regardless of
  // multiply order inside the BLAS-like kernels.
  omega = ((omega + omega.transpose()) * 0.5).eval();
  const int n = params.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!(omega(i, j) < 1.0)) {
        std::ostringstream msg;
        msg << "Omega(" << i << "," << j << ") = " << omega(i, j) << " >= 1";
        throw OverflowProbability(msg.str());
      }
    }
  }
  return omega;
}

DcmmParams sample_params(int n, int K, const ThetaLaw& theta_law,
                         const MembershipLaw& mem_law,
                         const Eigen::MatrixXd& p, std::uint64_t seed) {
  theta_law.validate();
  mem_law.validate();
  if (mem_law.K() != K)
    throw InvalidInput("membership law dimension does not match K");
  if (p.rows() != K || p.cols() != K)
    throw InvalidInput("P must be K x K");

  Prng theta_rng(hash_combine(seed, 0x7468u));  // independent substreams
  Prng pi_rng(hash_combine(seed, 0x7069u));

  DcmmParams params;
  params.theta.resize(n);
  for (int i = 0; i < n; ++i) params.theta[i] = theta_law.sample_raw(theta_rng);
  params.theta *= theta_law.beta / params.theta.norm();

  params.pi.resize(n, K);
  for (int i = 0; i < n; ++i) params.pi.row(i) = mem_law.sample(pi_rng);

  params.p = p;
  return params;
}

DcmmParams matched_null(const DcmmParams& params,
                        const MembershipLaw& mem_law) {
  mem_law.validate();
  const Eigen::VectorXd a = mem_law.mean();
  if (a.size() != params.K())
    throw InvalidInput("membership law dimension does not match params");
  const double scale = a.dot(params.p * a);  // a' P a

  DcmmParams null_params;
  null_params.theta = std::sqrt(scale) * params.theta;
  null_params.pi = Eigen::MatrixXd::Ones(params.n(), 1);
  null_params.p = Eigen::MatrixXd::Identity(1, 1);

  // Omega_null = scale * theta theta'; entries must stay valid.
  const int n = params.n();
  double top1 = 0.0, top2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double t = null_params.theta[i];
    if (t > top1) {
      top2 = top1;
      top1 = t;
    } else if (t > top2) {
      top2 = t;
    }
  }
  if (n >= 2 && !(top1 * top2 < 1.0))
    throw OverflowProbability("matched null pushes an edge probability to 1");
  return null_params;
}

std::vector<std::string> validate(const DcmmParams& params) {
  std::vector<std::string> violations;
  const int n = params.n();
  const int K = params.K();

  if (params.pi.rows() != n || params.pi.cols() != K ||
      params.p.rows() != K || params.p.cols() != K) {
    violations.push_back("dimension mismatch among theta, Pi, P");
    return violations;
  }
  if (n > 0 && !(params.theta.minCoeff() > 0.0))
    violations.push_back("theta has a nonpositive entry");

  if (!params.p.isApprox(params.p.transpose(), 1e-12))
    violations.push_back("P is not symmetric");
  if (params.p.minCoeff() < 0.0) violations.push_back("P has a negative entry");
  for (int k = 0; k < K; ++k) {
    if (std::abs(params.p(k, k) - 1.0) > 1e-12) {
      violations.push_back("diag(P) != 1");
      break;
    }
  }

  for (int i = 0; i < n; ++i) {
    if (params.pi.row(i).minCoeff() < 0.0) {
      violations.push_back("Pi has a negative entry");
      break;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(params.pi.row(i).sum() - 1.0) > 1e-9) {
      violations.push_back("row sum != 1");
      break;
    }
  }

  // max_{i != j} theta_i theta_j max P_kl < 1 guarantees valid Bernoulli
  // probabilities without materializing Omega.
  if (n >= 2 && K >= 1 && params.theta.minCoeff() > 0.0) {
    double top1 = 0.0, top2 = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = params.theta[i];
      if (t > top1) {
        top2 = top1;
        top1 = t;
      } else if (t > top2) {
        top2 = t;
      }
    }
    if (!(top1 * top2 * params.p.maxCoeff() < 1.0))
      violations.push_back("some Omega_ij >= 1");
  }
  return violations;
}

}  // namespace sgnpoly
