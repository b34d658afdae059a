#pragma once

#include <string>

#include "canvas/document.hpp"

namespace coact::canvas {

Json snapshot_to_json(const CanvasSnapshot& snap);
CanvasSnapshot snapshot_from_json(const Json& j);

// Canonical form: compact separators, keys sorted (object keys live in
// ordered maps end to end), numbers normalized to doubles at write time.
// Equal documents serialize to byte-identical strings.
std::string canonical_canvas_json(const CanvasSnapshot& snap);

}  // namespace coact::canvas
