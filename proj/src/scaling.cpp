#include "sgnpoly/scaling.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "sgnpoly/errors.hpp"

namespace sgnpoly {

namespace {

double dad_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& h,
                    const Eigen::VectorXd& d) {
  const Eigen::VectorXd lhs =
      d.asDiagonal() * (a * (d.cwiseProduct(h)));  // D A D h
  return (lhs - Eigen::VectorXd::Ones(d.size())).cwiseAbs().maxCoeff();
}

void check_theta(const Eigen::VectorXd& theta) {
  if (theta.size() < 2 || !(theta.minCoeff() > 0.0))
    throw InvalidInput("theta must have >= 2 strictly positive entries");
}

// Largest and second largest entries, for the Omega_ij < 1 guard.
std::pair<double, double> top_two(const Eigen::VectorXd& v) {
  double top1 = 0.0, top2 = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] > top1) {
      top2 = top1;
      top1 = v[i];
    } else if (v[i] > top2) {
      top2 = v[i];
    }
  }
  return {top1, top2};
}

void check_alt_probabilities(const DcmmParams& alt) {
  auto [top1, top2] = top_two(alt.theta);
  if (!(top1 * top2 * alt.p.maxCoeff() < 1.0))
    throw OverflowProbability(
        "least-favorable alternative pushes an edge probability to 1");
}

DcmmParams plain_null(const Eigen::VectorXd& theta) {
  DcmmParams null_params;
  null_params.theta = theta;
  null_params.pi = Eigen::MatrixXd::Ones(theta.size(), 1);
  null_params.p = Eigen::MatrixXd::Identity(1, 1);
  return null_params;
}

}  // namespace

ScalingResult sinkhorn_dad(const Eigen::MatrixXd& a, const Eigen::VectorXd& h,
                           double tol, int max_iterations,
                           const Eigen::VectorXd* initial) {
  const int K = static_cast<int>(a.rows());
  if (a.cols() != K || K == 0) throw InvalidInput("matrix must be square");
  if (h.size() != K) throw InvalidInput("h length does not match matrix");
  if (!(h.minCoeff() > 0.0)) throw InvalidInput("h must be strictly positive");
  for (int i = 0; i < K; ++i) {
    if (!(a(i, i) > 0.0))
      throw InvalidInput("matrix needs a strictly positive diagonal");
    for (int j = 0; j < K; ++j)
      if (a(i, j) < 0.0) throw InvalidInput("matrix entries must be >= 0");
  }

  // Transformed variable x = d o h turns D A D h = 1 into x o (A x) = h,
  // giving the fixed point x <- h / (A x). A raw step can two-cycle, so a
  // step that does not shrink the residual is replaced by the half-damped
  // (geometric mean) step.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(K);
  if (initial) x = initial->cwiseProduct(h);
  if (initial && !(x.minCoeff() > 0.0))
    throw InvalidInput("initial d must be strictly positive");

  ScalingResult result;
  double residual = dad_residual(a, h, x.cwiseQuotient(h));
  for (int iter = 1; iter <= max_iterations; ++iter) {
    if (residual <= tol) {
      result.d = x.cwiseQuotient(h);
      result.residual = residual;
      result.iterations = iter - 1;
      result.converged = true;
      return result;
    }
    const Eigen::VectorXd ax = a * x;
    if (!(ax.minCoeff() > 0.0))
      throw InvalidInput("A x hit zero; matrix too sparse to scale");
    const Eigen::VectorXd raw = h.cwiseQuotient(ax);
    double raw_residual = dad_residual(a, h, raw.cwiseQuotient(h));
    if (raw_residual < residual) {
      x = raw;
      residual = raw_residual;
    } else {
      x = x.cwiseProduct(raw).cwiseSqrt();
      residual = dad_residual(a, h, x.cwiseQuotient(h));
    }
  }
  throw NonConvergence("matrix scaling did not reach tolerance");
}

std::string to_string(LfConstruction tag) {
  switch (tag) {
    case LfConstruction::Dcbm:
      return "dcbm";
    case LfConstruction::Dcmm:
      return "dcmm";
    case LfConstruction::FlexiblePi:
      return "flexible-pi";
    case LfConstruction::MatchedTheta:
      return "matched-theta";
  }
  return "dcbm";
}

LfConstruction lf_construction_from_string(const std::string& name) {
  if (name == "dcbm") return LfConstruction::Dcbm;
  if (name == "dcmm") return LfConstruction::Dcmm;
  if (name == "flexible-pi") return LfConstruction::FlexiblePi;
  if (name == "matched-theta") return LfConstruction::MatchedTheta;
  throw InvalidInput("unknown construction '" + name + "'");
}

double mu2(const Eigen::MatrixXd& p) {
  const int K = static_cast<int>(p.rows());
  if (K < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(p);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("eigensolver failed on P");
  std::vector<double> magnitudes(K);
  for (int i = 0; i < K; ++i) magnitudes[i] = std::abs(solver.eigenvalues()[i]);
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<double>());
  return magnitudes[1];
}

namespace {

LeastFavorablePair least_favorable_impl(const Eigen::VectorXd& theta,
                                        const Eigen::MatrixXd& p,
                                        const Eigen::MatrixXd& memberships,
                                        LfConstruction tag,
                                        const Eigen::VectorXd& h_mean) {
  check_theta(theta);
  const int n = static_cast<int>(theta.size());
  const int K = static_cast<int>(p.rows());
  if (p.cols() != K || K < 2) throw InvalidInput("P must be K x K with K >= 2");
  if (memberships.rows() != n || memberships.cols() != K)
    throw InvalidInput("memberships must be n x K");

  LeastFavorablePair pair;
  pair.construction = tag;
  pair.separation = theta.norm() * mu2(p);

  switch (tag) {
    case LfConstruction::Dcbm: {
      // theta~_i = d_k theta_i for pi_i = e_k, with D P D h = 1.
      for (int i = 0; i < n; ++i) {
        if ((memberships.row(i).maxCoeff() != 1.0) ||
            std::abs(memberships.row(i).sum() - 1.0) > 1e-12)
          throw InvalidInput("dcbm construction needs hard memberships");
      }
      const ScalingResult scaling = sinkhorn_dad(p, h_mean);
      pair.d = scaling.d;
      Eigen::VectorXd theta_alt(n);
      for (int i = 0; i < n; ++i) {
        int community = 0;
        memberships.row(i).maxCoeff(&community);
        theta_alt[i] = scaling.d[community] * theta[i];
      }
      pair.alt_params = {theta_alt, memberships, p};
      pair.null_params = plain_null(theta);
      break;
    }
    case LfConstruction::Dcmm: {
      // Outer fixed point over D: h~_D is the empirical mean of
      // D^{-1} pi_i / ||D^{-1} pi_i||_1 over the supplied rows.
      Eigen::VectorXd d = Eigen::VectorXd::Ones(K);
      Eigen::VectorXd norms(n);
      bool settled = false;
      for (int outer = 0; outer < 1000 && !settled; ++outer) {
        Eigen::VectorXd h_tilde = Eigen::VectorXd::Zero(K);
        for (int i = 0; i < n; ++i) {
          Eigen::VectorXd row =
              memberships.row(i).transpose().cwiseQuotient(d);
          norms[i] = row.lpNorm<1>();
          h_tilde += row / norms[i];
        }
        h_tilde /= n;
        if (!(h_tilde.minCoeff() > 0.0))
          throw NonConvergence("dcmm outer loop: h~ hit a zero entry");
        const ScalingResult scaling = sinkhorn_dad(p, h_tilde);
        settled = (scaling.d - d).cwiseAbs().maxCoeff() < 1e-11;
        d = scaling.d;
      }
      if (!settled)
        throw NonConvergence("dcmm outer fixed point did not settle");
      pair.d = d;
      Eigen::VectorXd theta_alt(n);
      for (int i = 0; i < n; ++i) {
        const double norm1 =
            memberships.row(i).transpose().cwiseQuotient(d).lpNorm<1>();
        theta_alt[i] = theta[i] / norm1;
      }
      pair.alt_params = {theta_alt, memberships, p};
      pair.null_params = plain_null(theta);
      break;
    }
    case LfConstruction::FlexiblePi: {
      // pi~_i = D pi_i / ||D pi_i||_1, theta~_i = ||D pi_i||_1 theta_i.
      const ScalingResult scaling = sinkhorn_dad(p, h_mean);
      pair.d = scaling.d;
      Eigen::MatrixXd pi_alt(n, K);
      Eigen::VectorXd theta_alt(n);
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd row =
            memberships.row(i).transpose().cwiseProduct(scaling.d);
        const double norm1 = row.lpNorm<1>();
        pi_alt.row(i) = row.transpose() / norm1;
        theta_alt[i] = norm1 * theta[i];
      }
      pair.alt_params = {theta_alt, pi_alt, p};
      pair.null_params = plain_null(theta);
      break;
    }
    case LfConstruction::MatchedTheta: {
      // Needs P h = q_n 1_K; the null becomes q_n theta theta'.
      const Eigen::VectorXd ph = p * h_mean;
      const double q_n = ph.mean();
      if ((ph.array() - q_n).abs().maxCoeff() > 1e-10)
        throw ConditionViolated("P h is not proportional to 1_K");
      if (!(q_n > 0.0)) throw ConditionViolated("q_n must be positive");
      pair.q_n = q_n;
      pair.alt_params = {theta, memberships, p};
      pair.null_params = plain_null(std::sqrt(q_n) * theta);
      break;
    }
  }
  check_alt_probabilities(pair.alt_params);
  return pair;
}

}  // namespace

LeastFavorablePair least_favorable(const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& p,
                                   const Eigen::MatrixXd& memberships,
                                   LfConstruction tag) {
  // Empirical mean stands in for E[pi] when only rows are given.
  const Eigen::VectorXd h = memberships.colwise().mean();
  return least_favorable_impl(theta, p, memberships, tag, h);
}

LeastFavorablePair least_favorable(const Eigen::VectorXd& theta,
                                   const Eigen::MatrixXd& p,
                                   const MembershipLaw& mem_law, int n,
                                   std::uint64_t seed, LfConstruction tag) {
  mem_law.validate();
  Prng rng(hash_combine(seed, 0x6c66u));
  Eigen::MatrixXd memberships(n, mem_law.K());
  for (int i = 0; i < n; ++i) memberships.row(i) = mem_law.sample(rng);
  return least_favorable_impl(theta, p, memberships, tag, mem_law.mean());
}

Eigen::MatrixXd dirichlet_p_construct(const Eigen::VectorXd& alpha,
                                      double q_n, std::uint64_t seed) {
  const int K = static_cast<int>(alpha.size());
  if (K < 2) throw InvalidInput("need K >= 2");
  if (!(alpha.minCoeff() > 0.0))
    throw InvalidInput("alpha must be strictly positive");
  if (!(q_n > 0.0 && q_n < 1.0)) throw InvalidInput("q_n must be in (0,1)");

  // Finding M with unit rows (diag(MM') = I) and columns orthogonal to
  // alpha is a convex feasibility problem in B = MM': PSD, unit diagonal,
  // B alpha = 0. Cyclic projections onto the three sets converge where the
  // direct M-space iteration can cycle (the row-sphere set is not convex).
  const Eigen::VectorXd alpha_unit = alpha / alpha.norm();
  const Eigen::MatrixXd kernel_proj =
      Eigen::MatrixXd::Identity(K, K) - alpha_unit * alpha_unit.transpose();

  Prng rng(hash_combine(seed, 0x4d70u));
  Eigen::MatrixXd b(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = i; j < K; ++j) b(i, j) = b(j, i) = rng.uniform(-0.2, 0.2);
  b.diagonal().setOnes();

  bool converged = false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  for (int iter = 0; iter < 100000 && !converged; ++iter) {
    // PSD cone: clip negative eigenvalues.
    solver.compute(b);
    if (solver.info() != Eigen::Success)
      throw Infeasible("eigensolver failed during P construction");
    const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
    b = solver.eigenvectors() * clipped.asDiagonal() *
        solver.eigenvectors().transpose();
    // Kernel constraint: B alpha = 0 for symmetric B.
    b = (kernel_proj * b * kernel_proj).eval();
    // Unit diagonal.
    const double diag_gap = (b.diagonal().array() - 1.0).abs().maxCoeff();
    b.diagonal().setOnes();
    // Converged when re-imposing the diagonal no longer breaks the rest.
    const double kernel_gap = (b * alpha_unit).cwiseAbs().maxCoeff();
    const double psd_gap = std::max(0.0, -solver.eigenvalues().minCoeff());
    converged = diag_gap < 1e-12 && kernel_gap < 1e-12 && psd_gap < 1e-12;
  }
  if (!converged)
    throw Infeasible("no M with unit rows orthogonal to alpha was found");

  // Recover M from the factorization of B (columns scaled eigenvectors).
  solver.compute(b);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(K, K - 1);
  for (int c = 0, out = 0; c < K && out < K - 1; ++c) {
    const int idx = K - 1 - c;  // eigenvalues ascending; take the largest
    if (solver.eigenvalues()[idx] <= 1e-12) break;
    m.col(out++) = std::sqrt(solver.eigenvalues()[idx]) *
                   solver.eigenvectors().col(idx);
  }

  Eigen::MatrixXd p = (1.0 - q_n) * (m * m.transpose()) +
                      q_n * Eigen::MatrixXd::Ones(K, K);
  p = ((p + p.transpose()) * 0.5).eval();
  p.diagonal().setOnes();  // deviation is below 1e-10 by the tolerances above
  if (p.minCoeff() < 0.0)
    throw Infeasible("constructed P has a negative entry");

  const Eigen::VectorXd pa = p * alpha;
  if ((pa.array() - pa.mean()).abs().maxCoeff() > 1e-8 * std::abs(pa.mean()))
    throw Infeasible("constructed P fails P alpha proportional to 1");
  return p;
}

McEstimate chi_square_mc(const Eigen::VectorXd& theta,
                         const Eigen::MatrixXd& p,
                         const MembershipLaw& mem_law, int reps,
                         std::uint64_t seed) {
  check_theta(theta);
  mem_law.validate();
  const int n = static_cast<int>(theta.size());
  const int K = static_cast<int>(p.rows());
  if (p.cols() != K || mem_law.K() != K)
    throw InvalidInput("P / membership law dimension mismatch");
  if (n > 500) throw TooLarge("chi-square Monte Carlo guarded to n <= 500");
  if (reps < 1) throw InvalidInput("reps must be >= 1");

  // Matched-theta pair: null q_n theta theta', alternative Theta Pi P Pi'
  // Theta. Requires P h proportional to 1_K.
  const Eigen::VectorXd ph = p * mem_law.mean();
  const double q_n = ph.mean();
  if ((ph.array() - q_n).abs().maxCoeff() > 1e-10)
    throw ConditionViolated("P h is not proportional to 1_K");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double pij = q_n * theta[i] * theta[j];
      if (!(pij > 0.0 && pij < 1.0))
        throw InvalidInput("null probability outside (0,1)");
    }

  std::vector<double> draws(reps);
  Eigen::MatrixXd pi_a(n, K), pi_b(n, K);
  for (int r = 0; r < reps; ++r) {
    Prng rng(hash_combine(seed, 0x63686973ULL, static_cast<std::uint64_t>(r)));
    for (int i = 0; i < n; ++i) pi_a.row(i) = mem_law.sample(rng);
    for (int i = 0; i < n; ++i) pi_b.row(i) = mem_law.sample(rng);
    const Eigen::MatrixXd g_a = pi_a * p * pi_a.transpose();
    const Eigen::MatrixXd g_b = pi_b * p * pi_b.transpose();

    double log_product = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double tt = theta[i] * theta[j];
        const double pij = q_n * tt;
        const double delta_a = tt * (g_a(i, j) - q_n);
        const double delta_b = tt * (g_b(i, j) - q_n);
        const double x = delta_a * delta_b / (pij * (1.0 - pij));
        if (!(std::abs(x) < 1.0))
          throw NumericalOverflow("per-factor chi-square term >= 1");
        log_product += std::log1p(x);
      }
    }
    if (std::abs(log_product) > 700.0)
      throw NumericalOverflow("chi-square log-product out of range");
    draws[r] = std::expm1(log_product);
  }

  McEstimate estimate;
  estimate.reps = reps;
  double mean = 0.0;
  for (double w : draws) mean += w;
  mean /= reps;
  double variance = 0.0;
  for (double w : draws) variance += (w - mean) * (w - mean);
  variance = reps > 1 ? variance / (reps - 1) : 0.0;
  estimate.estimate = mean;
  estimate.std_error = std::sqrt(variance / reps);
  return estimate;
}

}  // namespace sgnpoly
