#pragma once

#include "json.hpp"

#include "pdregion/bands.hpp"
#include "pdregion/margins.hpp"
#include "pdregion/passivity.hpp"
#include "pdregion/pdcore.hpp"

namespace pdregion {

using Json = nlohmann::ordered_json;

/// Rounds to `digits` significant digits so serialized output is stable.
/// Non-finite values become null.
Json number(double v, int digits);
Json complex_json(Complex z, int digits);

Json to_json(const FrequencyBand& band, int digits);
Json to_json(const PassivityReport& rep, int digits);
Json to_json(const RobustnessResult& r, int digits);
Json to_json(const WaterbedResult& r, int digits);
Json to_json(const WaterbedBound& r, int digits);
Json to_json(const SisoCheck& c, int digits);
Json to_json(const MimoExactCheck& c, int digits);
Json to_json(const MimoNecessaryCheck& c, int digits);
Json to_json(const IfCheck& c, int digits);
Json to_json(const PDRegion& r, int digits);

std::string to_string(Verdict v);
std::string to_string(RegionKind k);

}  // namespace pdregion
