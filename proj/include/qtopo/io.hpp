#pragma once

// JSON encodings of links, results and simulation reports.
//
//   FramedLinkMatrix  {"m": 2, "J": [[0, 1], [1, 0]]}
//   PolyLink          {"components": [{"points": [[x,y,z], ...],
//                                      "offsets": [[x,y,z], ...]}, ...],
//                      "delta": 0.01}
//
// Parse errors throw SchemaError carrying the JSON pointer of the field.

#include <json.hpp>

#include "qtopo/invariants.hpp"
#include "qtopo/linkalg.hpp"
#include "qtopo/linkgeom.hpp"
#include "qtopo/qsim.hpp"

namespace qtopo::io {

using nlohmann::json;

FramedLinkMatrix parse_framed_link(const json& doc);
PolyLink parse_polylink(const json& doc);

enum class LinkFormat { kMatrix, kPolyLink };
LinkFormat detect_format(const json& doc);

// Either format; a PolyLink is converted through linking_matrix.
FramedLinkMatrix load_link(const json& doc);

json to_json(const FramedLinkMatrix& j);
json to_json(const PolyLink& link);
json to_json(const InvariantResult& r);
json to_json(const PhaseEstimate& e);

const char* method_name(Method m);

}  // namespace qtopo::io
