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

#include "meshprior/mesh.h"

namespace meshprior {

/// Settings for uniform-weight Laplacian smoothing.
struct SmoothingConfig {
  double step_size = 0.5;  // in (0, 1]
  int iterations = 30;     // >= 1 for laplacian_smooth; 0 means "skip" at the
                           // training-config level (identity operator)
};

/// Uniform (combinatorial) Laplacian smoothing: per iteration, every vertex
/// moves by step_size * (neighbor centroid - current position), all updates
/// computed from the positions at the start of the iteration. Boundary
/// vertices are smoothed with their full 1-ring; isolated vertices are left
/// unmoved (warned once per call). Connectivity is unchanged.
Mesh laplacian_smooth(const Mesh &mesh, const SmoothingConfig &config);

}  // namespace meshprior
