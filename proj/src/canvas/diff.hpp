#pragma once

#include "canvas/document.hpp"

namespace coact::canvas {

// Structural delta between two node tables, deterministic entry order
// (created/deleted sorted by id, modified by (node, key), moved by node).
ChangeSet diff_nodes(const std::map<NodeId, CanvasNode>& before, const std::map<NodeId, CanvasNode>& after);

// Snapshot-level diff. Throws Error(LineageMismatch) when the snapshots come
// from different documents.
ChangeSet diff(const CanvasSnapshot& before, const CanvasSnapshot& after);

// Replays a change set onto a snapshot: apply_changeset(a, diff(a, b)) has
// exactly b's node table. Structural content only; revision is left alone.
CanvasSnapshot apply_changeset(const CanvasSnapshot& base, const ChangeSet& change);

}  // namespace coact::canvas
