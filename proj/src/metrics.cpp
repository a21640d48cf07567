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

#include "meshprior/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "meshprior/error.h"
#include "meshprior/obj_io.h"

namespace meshprior {

MadResult mean_angular_difference(const Mesh &mesh_a, const Mesh &mesh_b) {
  if (mesh_a.faces != mesh_b.faces) {
    throw InvalidMeshError("mean_angular_difference: face lists differ");
  }
  const FaceNormals na = compute_face_normals(mesh_a);
  const FaceNormals nb = compute_face_normals(mesh_b);

  MadResult result;
  double sum = 0.0;
  std::size_t counted = 0;
  constexpr double kRadToDeg = 57.295779513082320877;
  for (std::size_t t = 0; t < mesh_a.faces.size(); ++t) {
    if (na.degenerate[t] || nb.degenerate[t]) {
      ++result.excluded_faces;
      continue;
    }
    // acos(clamp(dot)) evaluated in the atan2 form, which stays exact for
    // identical normals and well-conditioned near 0 and 180 degrees.
    const double d = std::clamp(na.normals[t].dot(nb.normals[t]), -1.0, 1.0);
    sum += std::atan2(na.normals[t].cross(nb.normals[t]).norm(), d) * kRadToDeg;
    ++counted;
  }
  if (counted == 0) {
    throw InvalidMeshError("mean_angular_difference: all face pairs are degenerate");
  }
  result.degrees = sum / static_cast<double>(counted);
  return result;
}

double region_rmse(const Mesh &mesh_a, const Mesh &mesh_b,
                   const std::vector<int> &vertex_subset) {
  if (mesh_a.vertex_count() != mesh_b.vertex_count()) {
    throw InvalidMeshError("region_rmse: vertex counts differ");
  }
  if (vertex_subset.empty()) throw Error("region_rmse: empty vertex subset");
  double sum = 0.0;
  for (int v : vertex_subset) {
    if (v < 0 || v >= mesh_a.vertex_count()) {
      throw Error("region_rmse: subset index out of range");
    }
    sum += (mesh_a.vertices[v] - mesh_b.vertices[v]).squaredNorm();
  }
  return std::sqrt(sum / static_cast<double>(vertex_subset.size()));
}

void export_report(const RunReport &report, const std::string &csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot open report CSV for writing: " + csv_path);
  write_report_csv(report, out);
  if (!out) throw IoError("write failed for report CSV: " + csv_path);

  std::string obj_path = csv_path;
  const auto dot = obj_path.find_last_of('.');
  const auto slash = obj_path.find_last_of("/\\");
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    obj_path.resize(dot);
  }
  obj_path += ".obj";
  save_obj_file(report.output_mesh, obj_path);
}

}  // namespace meshprior
