#include "sgnpoly/json_io.hpp"

#include "sgnpoly/errors.hpp"

namespace sgnpoly {

namespace {

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(j.size());
  int i = 0;
  for (const auto& entry : j) v[i++] = entry.get<double>();
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const int rows = static_cast<int>(j.size());
  if (rows == 0) throw InvalidInput("empty matrix in JSON document");
  const int cols = static_cast<int>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j.at(r).size()) != cols)
      throw InvalidInput("ragged matrix in JSON document");
    for (int c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

json theta_law_to_json(const ThetaLaw& law) {
  json j;
  j["beta"] = law.beta;
  switch (law.kind) {
    case ThetaLaw::Kind::Uniform:
      j["variant"] = "uniform";
      j["a"] = law.a;
      j["b"] = law.b;
      break;
    case ThetaLaw::Kind::TwoPoint:
      j["variant"] = "two-point";
      j["p1"] = law.p1;
      j["v1"] = law.v1;
      j["v2"] = law.v2;
      break;
    case ThetaLaw::Kind::Pareto:
      j["variant"] = "pareto";
      j["shape"] = law.shape;
      j["scale"] = law.scale;
      break;
  }
  return j;
}

ThetaLaw theta_law_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  const double beta = j.at("beta").get<double>();
  if (variant == "uniform")
    return ThetaLaw::uniform(j.at("a").get<double>(), j.at("b").get<double>(),
                             beta);
  if (variant == "two-point")
    return ThetaLaw::two_point(j.at("p1").get<double>(),
                               j.at("v1").get<double>(),
                               j.at("v2").get<double>(), beta);
  if (variant == "pareto")
    return ThetaLaw::pareto(j.at("shape").get<double>(),
                            j.at("scale").get<double>(), beta);
  throw InvalidInput("unknown theta law variant '" + variant + "'");
}

json mem_law_to_json(const MembershipLaw& law) {
  json j;
  j["point_weights"] = vector_to_json(law.point_weights);
  j["dirichlet_weight"] = law.dirichlet_weight;
  return j;
}

MembershipLaw mem_law_from_json(const json& j) {
  MembershipLaw law;
  law.point_weights = vector_from_json(j.at("point_weights"));
  law.dirichlet_weight = j.value("dirichlet_weight", 0.0);
  return law;
}

DcmmParams params_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int K = j.at("K").get<int>();
  const Eigen::MatrixXd p = matrix_from_json(j.at("P"));
  if (p.rows() != K || p.cols() != K)
    throw InvalidInput("P dimensions do not match K");
  const std::uint64_t seed = j.value("seed", std::uint64_t{0});

  DcmmParams params;
  params.p = p;
  const bool theta_sampled = j.contains("theta_law");
  const bool pi_sampled = j.contains("mem_law");
  if (theta_sampled && pi_sampled) {
    return sample_params(n, K, theta_law_from_json(j.at("theta_law")),
                         mem_law_from_json(j.at("mem_law")), p, seed);
  }

  if (theta_sampled) {
    const ThetaLaw law = theta_law_from_json(j.at("theta_law"));
    law.validate();
    Prng rng(hash_combine(seed, 0x7468u));
    params.theta.resize(n);
    for (int i = 0; i < n; ++i) params.theta[i] = law.sample_raw(rng);
    params.theta *= law.beta / params.theta.norm();
  } else {
    params.theta = vector_from_json(j.at("theta"));
    if (params.theta.size() != n)
      throw InvalidInput("theta length does not match n");
  }

  if (pi_sampled) {
    const MembershipLaw law = mem_law_from_json(j.at("mem_law"));
    law.validate();
    if (law.K() != K) throw InvalidInput("membership law K mismatch");
    Prng rng(hash_combine(seed, 0x7069u));
    params.pi.resize(n, K);
    for (int i = 0; i < n; ++i) params.pi.row(i) = law.sample(rng);
  } else {
    params.pi = matrix_from_json(j.at("Pi"));
    if (params.pi.rows() != n || params.pi.cols() != K)
      throw InvalidInput("Pi dimensions do not match (n, K)");
  }
  return params;
}

json params_to_json(const DcmmParams& params) {
  json j;
  j["n"] = params.n();
  j["K"] = params.K();
  j["theta"] = vector_to_json(params.theta);
  j["P"] = matrix_to_json(params.p);
  j["Pi"] = matrix_to_json(params.pi);
  return j;
}

json test_report_to_json(const TestReport& report) {
  return json{{"test", report.test},
              {"statistic", report.statistic},
              {"nuisance", report.nuisance},
              {"z", report.z},
              {"p_value", report.p_value},
              {"alpha", report.alpha},
              {"reject", report.reject}};
}

json scaling_result_to_json(const ScalingResult& result) {
  return json{{"d", vector_to_json(result.d)},
              {"residual", result.residual},
              {"iterations", result.iterations},
              {"converged", result.converged}};
}

json lf_pair_to_json(const LeastFavorablePair& pair) {
  json j;
  j["construction"] = to_string(pair.construction);
  j["separation"] = pair.separation;
  j["q_n"] = pair.q_n;
  if (pair.d.size() > 0) j["d"] = vector_to_json(pair.d);
  j["null"] = params_to_json(pair.null_params);
  j["alt"] = params_to_json(pair.alt_params);
  return j;
}

json phase_point_to_json(const PhasePoint& point) {
  return json{{"x", point.x},
              {"y", point.y},
              {"snr", point.snr},
              {"region", to_string(point.region)}};
}

json spectrum_to_json(const SpectrumInfo& spec) {
  return json{{"eigenvalues", vector_to_json(spec.eigenvalues)},
              {"h", vector_to_json(spec.h)},
              {"sqrt_lambda1", spec.sqrt_lambda1},
              {"ratio", spec.ratio},
              {"snr", spec.snr}};
}

json mc_estimate_to_json(const McEstimate& estimate) {
  return json{{"estimate", estimate.estimate},
              {"std_error", estimate.std_error},
              {"reps", estimate.reps}};
}

}  // namespace sgnpoly
