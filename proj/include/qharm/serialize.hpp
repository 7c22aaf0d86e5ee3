#pragma once

#include <json.hpp>

#include "qharm/harmonic_map.hpp"

namespace qharm {

inline constexpr int kHarmonicMapRecordVersion = 1;

/// {"version", "label", "order", "normalized", "h_coeffs": [[re, im], ...], "g_coeffs": ...}
nlohmann::json to_json(const HarmonicMap& f);

/// Inverse of to_json. Throws ParseError on a malformed or unknown-version record.
HarmonicMap harmonic_map_from_json(const nlohmann::json& j);

}  // namespace qharm
