#pragma once

#include <json.hpp>

#include "qdense/density.hpp"
#include "qdense/families.hpp"

namespace qdense {

using Json = nlohmann::json;

/// Version tag written into every top-level document.
inline constexpr const char* kSchemaVersion = "qdense-verdict/1";

// Integers travel as decimal strings. Every from_json throws Error(Schema) on malformed input.

Json to_json(const IntegralForm& f);
IntegralForm form_from_json(const Json& j);

Json to_json(const LinearSplitForm& f);
LinearSplitForm linear_split_from_json(const Json& j);

Json to_json(const IntegerRootedPoly& f);
IntegerRootedPoly rooted_from_json(const Json& j);

Json to_json(const ValuationSpectrum& s);
ValuationSpectrum spectrum_from_json(const Json& j);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const ProbeReport& r, bool with_witnesses = false);
Json to_json(const DecideConfig& c);
Json to_json(const DensityVerdict& v);
Json to_json(const ScanEntry& e);
Json to_json(const FamilyPrimeEntry& e);
Json to_json(const FinitelyDenseReport& r);

}  // namespace qdense
