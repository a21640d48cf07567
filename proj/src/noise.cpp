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

#include "meshprior/noise.h"

#include <iostream>

#include "meshprior/error.h"
#include "meshprior/rng.h"

namespace meshprior {

Mesh add_gaussian_noise(const Mesh &mesh, double sigma_fraction, std::uint64_t seed) {
  if (sigma_fraction < 0.0) throw Error("add_gaussian_noise: sigma_fraction must be >= 0");

  const auto normals = compute_vertex_normals(mesh);
  if (!mesh.vertices.empty() && normals.degenerate_count == mesh.vertices.size()) {
    throw InvalidMeshError("add_gaussian_noise: all vertex normals are degenerate");
  }
  if (sigma_fraction == 0.0) return mesh;

  const double sigma = sigma_fraction * mean_edge_length(mesh);
  Rng rng(seed);

  Mesh out = mesh;
  bool warned = false;
  for (std::size_t v = 0; v < out.vertices.size(); ++v) {
    // One sample per vertex regardless of degeneracy keeps the stream aligned
    // with the vertex order.
    const double offset = sigma * rng.normal();
    if (normals.degenerate[v]) {
      if (!warned) {
        std::cerr << "add_gaussian_noise: vertex " << v
                  << " has a degenerate normal, left unmoved\n";
        warned = true;
      }
      continue;
    }
    out.vertices[v] += offset * normals.normals[v];
  }
  return out;
}

}  // namespace meshprior
