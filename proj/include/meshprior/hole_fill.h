// Copyright 2026 The MeshPrior Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "meshprior/mesh.h"

namespace meshprior {

/// Filled mesh plus a per-vertex mask; mask[i] is true exactly when vertex i
/// existed in the input mesh (all filled/refined vertices are appended, so
/// original indices are preserved).
struct HoleFillResult {
  Mesh mesh;
  std::vector<bool> original_vertex_mask;
};

/// Triangulates every boundary loop by minimum-weight dynamic programming
/// over loop chords. The weight is total triangle area; ties are broken by
/// the smaller maximum dihedral angle against already-chosen neighbor
/// triangles (surrounding mesh faces included), then by lexicographically
/// smallest apex triple. The patch is then refined: any new triangle whose
/// longest edge exceeds refine_factor times the mean length of the loop's
/// original boundary edges is split at that edge's midpoint, repeated to a
/// fixed point (boundary edges belong to original faces and are never split).
///
/// Requires a manifold, consistently oriented input; throws InvalidMeshError
/// otherwise or when a loop is shorter than 3.
HoleFillResult fill_holes(const Mesh &mesh, double refine_factor = 1.5);

}  // namespace meshprior
