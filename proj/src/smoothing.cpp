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

#include "meshprior/smoothing.h"

#include <iostream>

#include "meshprior/error.h"

namespace meshprior {

Mesh laplacian_smooth(const Mesh &mesh, const SmoothingConfig &config) {
  if (config.step_size <= 0.0 || config.step_size > 1.0) {
    throw Error("laplacian_smooth: step_size must lie in (0, 1]");
  }
  if (config.iterations < 1) {
    throw Error("laplacian_smooth: iterations must be >= 1");
  }

  const auto neighbors = vertex_neighbors(mesh);
  bool warned = false;

  Mesh out = mesh;
  std::vector<Vec3> next(out.vertices.size());
  for (int iter = 0; iter < config.iterations; ++iter) {
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
      const auto &nbrs = neighbors[v];
      if (nbrs.empty()) {
        if (!warned) {
          std::cerr << "laplacian_smooth: isolated vertex " << v << " left unmoved\n";
          warned = true;
        }
        next[v] = out.vertices[v];
        continue;
      }
      Vec3 centroid = Vec3::Zero();
      for (int u : nbrs) centroid += out.vertices[u];
      centroid /= static_cast<double>(nbrs.size());
      next[v] = out.vertices[v] + config.step_size * (centroid - out.vertices[v]);
    }
    out.vertices.swap(next);
  }
  return out;
}

}  // namespace meshprior
