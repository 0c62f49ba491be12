#ifndef SGNPOLY_JSON_IO_HPP_
#define SGNPOLY_JSON_IO_HPP_

#include <json.hpp>

#include "sgnpoly/inference.hpp"
#include "sgnpoly/model.hpp"
#include "sgnpoly/scaling.hpp"
#include "sgnpoly/spectral.hpp"

namespace sgnpoly {

using json = nlohmann::json;

// Model document: {n, K, theta: [..] or theta_law: {...},
//                  P: [[..]], Pi: [[..]] or mem_law: {...}, seed}.
// When laws are present the params are sampled with `seed`.
DcmmParams params_from_json(const json& j);
json params_to_json(const DcmmParams& params);

json theta_law_to_json(const ThetaLaw& law);
ThetaLaw theta_law_from_json(const json& j);
json mem_law_to_json(const MembershipLaw& law);
MembershipLaw mem_law_from_json(const json& j);

json test_report_to_json(const TestReport& report);
json scaling_result_to_json(const ScalingResult& result);
json lf_pair_to_json(const LeastFavorablePair& pair);
json phase_point_to_json(const PhasePoint& point);
json spectrum_to_json(const SpectrumInfo& spec);
json mc_estimate_to_json(const McEstimate& estimate);

}  // namespace sgnpoly

#endif  // SGNPOLY_JSON_IO_HPP_
