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

#include <string>
#include <vector>

#include "meshprior/mesh.h"
#include "meshprior/trainer.h"

namespace meshprior {

struct MadResult {
  double degrees = 0.0;
  std::size_t excluded_faces = 0;  // degenerate in either mesh
};

/// Mean angular difference of face normals in degrees:
/// mean over non-degenerate face pairs of acos(clamp(n_a . n_b, -1, 1)).
/// Requires identical face lists; throws when every face pair is degenerate.
MadResult mean_angular_difference(const Mesh &mesh_a, const Mesh &mesh_b);

/// Root-mean-square of per-vertex Euclidean distances over the subset.
/// Meshes must have equal vertex counts; the subset must be non-empty.
double region_rmse(const Mesh &mesh_a, const Mesh &mesh_b, const std::vector<int> &vertex_subset);

/// Writes the report CSV to csv_path and the output mesh as OBJ alongside
/// (same path with the extension replaced by .obj).
void export_report(const RunReport &report, const std::string &csv_path);

}  // namespace meshprior
