#pragma once

#include <string>

#include <json.hpp>

#include "horext/area_velocity.hpp"
#include "horext/extension.hpp"
#include "horext/finiteness.hpp"
#include "horext/heisenberg.hpp"
#include "horext/jets.hpp"
#include "horext/lusin.hpp"
#include "horext/modulus.hpp"

namespace horext::io {

using nlohmann::json;

// {"kind":"power","alpha":0.5} | {"kind":"linear"} | {"kind":"table","knots":[[t,w],...]}
json modulus_to_json(const ModulusOfContinuity& omega);
ModulusOfContinuity modulus_from_json(const json& j);

// {"K":[...],"m":2,"F":[[...],...],"G":[[...],...],"H":[[...],...]}
json triple_to_json(const HorizontalJetTriple& gamma);
HorizontalJetTriple triple_from_json(const json& j);

// {"grid":[...],"points":[[x,y,z],...]}
json sampled_curve_to_json(const SampledCurve& curve);
SampledCurve sampled_curve_from_json(const json& j);

json whitney_report_to_json(const WhitneyFieldReport& report);
json av_report_to_json(const AVScanReport& report);
json finiteness_report_to_json(const FinitenessReport& report);
json pieces_to_json(const PiecewiseSmoothCurve& curve);
json lusin_result_to_json(const LusinResult& result);

// File helpers; failures surface as std::runtime_error with the path named.
json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

} // namespace horext::io
