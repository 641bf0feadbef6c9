#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "twoslope/asymptotics.hpp"
#include "twoslope/energy.hpp"
#include "twoslope/misfit.hpp"
#include "twoslope/optimize.hpp"
#include "twoslope/profile.hpp"

namespace twoslope {

using Json = nlohmann::ordered_json;

/// %.17g; non-finite values become "nan" / "inf" / "-inf".
std::string format_double(double x);

/// Pretty-printed JSON with every float at 17 significant digits (non-finite
/// floats as null). Ends with a newline.
std::string dump_json(const Json& j);

Json to_json(const ProblemParams& p);
Json to_json(const GapConfiguration& g);
Json to_json(const TwoSlopeProfile& u);
Json to_json(const EnergyResult& r);
Json to_json(const EnergyBreakdown& b);
Json to_json(const MinimizeReport& r);
Json to_json(const std::vector<SweepRow>& rows);
Json to_json(const ExtremalReport& r);
Json to_json(const MisfitReport& r);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string extremal_csv(const ExtremalReport& r);
std::string trace_csv(const std::vector<TraceRow>& rows);

}  // namespace twoslope
