#pragma once

#include "copdyn/certificates.hpp"
#include "copdyn/criteria.hpp"
#include "copdyn/models/system.hpp"

#include <json.hpp>

#include <string>

namespace copdyn {

using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json space_to_json(const AtomicSpace& space);
AtomicSpace space_from_json(const Json& j);

Json map_to_json(const AtomMap& f);
AtomMap map_from_json(const Json& j);

Json system_to_json(const models::BuiltSystem& sys);
models::BuiltSystem system_from_json(const Json& j);

Json set_to_json(const MeasurableSet& s);
MeasurableSet set_from_json(const Json& j);

Json simple_function_to_json(const SimpleFunction& f);
SimpleFunction simple_function_from_json(const Json& j);

Json certificate_to_json(const TransitivityCertificate& c);
Json mixing_certificate_to_json(const MixingCertificate& c);
Json runaway_certificate_to_json(const RunAwayCertificate& c);
Json horizon_to_json(const HorizonStamp& h);

/// FNV-1a of the canonical system serialization, as 16 hex digits.
std::string fingerprint(const models::BuiltSystem& sys);

/// Doubles rendered with 17 significant digits (round-trip exact).
std::string double_repr(double x);

}  // namespace copdyn
