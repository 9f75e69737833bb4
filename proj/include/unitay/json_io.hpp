#pragma once

#include <json.hpp>
#include <string>

#include "unitay/geometry.hpp"
#include "unitay/presets.hpp"

namespace unitay {

using Json = nlohmann::ordered_json;

/// Parses {"components": [{"type": "disk", "center": [x, y], "radius": r} |
/// {"type": "polygon", "vertices": [[x, y], ...]}, ...]}. Throws InvalidInput.
CompactSetL geometry_from_json(const Json& doc);
CompactSetL load_geometry(const std::string& path);
Json geometry_to_json(const CompactSetL& set);

/// {"value": v, "provenance": "..."}; non-finite values become strings.
Json tagged(double value, Provenance provenance = Provenance::Derived);
Json number(double value);

/// Serializes with every floating-point number printed to 17 significant digits.
std::string dump(const Json& doc, int indent = 2);

}  // namespace unitay
