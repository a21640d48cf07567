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

#include "meshprior/hole_fill.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "meshprior/error.h"

namespace meshprior {

namespace {

constexpr double kPi = 3.14159265358979323846;

double triangle_area(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

// Normal of the patch triangle in its final (emitted) orientation, which is
// the reverse of the polygon order so it matches the surrounding faces.
Vec3 patch_normal(const Vec3 &pi, const Vec3 &pm, const Vec3 &pk) {
  return (pm - pk).cross(pi - pk);
}

// Angle between face normals; 0 means coplanar and consistently oriented.
// Degenerate triangles get the worst penalty so the DP avoids them.
double normal_angle(const Vec3 &n1, const Vec3 &n2) {
  const double l1 = n1.norm();
  const double l2 = n2.norm();
  if (l1 < 1e-20 || l2 < 1e-20) return kPi;
  return std::acos(std::clamp(n1.dot(n2) / (l1 * l2), -1.0, 1.0));
}

struct DpState {
  double area = 0.0;
  double dihedral = 0.0;
  int apex = -1;
};

// Minimum-weight triangulation of one boundary loop. `loop` holds global
// vertex indices in the direction the surrounding faces traverse the
// boundary; `outside_normal[j]` is the normal of the existing face across
// boundary edge (loop[j], loop[j+1]).
std::vector<std::array<int, 3>> triangulate_loop(const std::vector<Vec3> &points,
                                                 const std::vector<int> &loop,
                                                 const std::vector<Vec3> &outside_normal) {
  const int n = static_cast<int>(loop.size());

  std::vector<DpState> dp(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int k) -> DpState & { return dp[static_cast<std::size_t>(i) * n + k]; };

  // Neighbor normal across a chord or boundary edge of the sub-polygon
  // (i..k): the already-chosen apex triangle for chords, the existing mesh
  // face for boundary edges.
  auto across = [&](int i, int k) -> Vec3 {
    if (k == i + 1) return outside_normal[i];
    const int o = at(i, k).apex;
    return patch_normal(points[loop[i]], points[loop[o]], points[loop[k]]);
  };

  for (int i = 0; i + 2 < n; ++i) {
    const Vec3 &pi = points[loop[i]];
    const Vec3 &pm = points[loop[i + 1]];
    const Vec3 &pk = points[loop[i + 2]];
    DpState &s = at(i, i + 2);
    s.area = triangle_area(pi, pm, pk);
    s.apex = i + 1;
    const Vec3 nt = patch_normal(pi, pm, pk);
    s.dihedral = std::max(normal_angle(nt, outside_normal[i]),
                          normal_angle(nt, outside_normal[i + 1]));
  }

  for (int span = 3; span < n; ++span) {
    for (int i = 0; i + span < n; ++i) {
      const int k = i + span;
      DpState best;
      best.area = std::numeric_limits<double>::infinity();
      for (int m = i + 1; m < k; ++m) {
        const Vec3 nt = patch_normal(points[loop[i]], points[loop[m]], points[loop[k]]);
        double dihedral = std::max(normal_angle(nt, across(i, m)),
                                   normal_angle(nt, across(m, k)));
        double area = triangle_area(points[loop[i]], points[loop[m]], points[loop[k]]);
        if (m > i + 1) {
          area += at(i, m).area;
          dihedral = std::max(dihedral, at(i, m).dihedral);
        }
        if (m < k - 1) {
          area += at(m, k).area;
          dihedral = std::max(dihedral, at(m, k).dihedral);
        }
        // The closing chord (0, n-1) is itself a boundary edge, so the top
        // level also measures against the face on its far side.
        if (i == 0 && k == n - 1) {
          dihedral = std::max(dihedral, normal_angle(nt, outside_normal[n - 1]));
        }
        if (area < best.area ||
            (area == best.area && dihedral < best.dihedral)) {
          best.area = area;
          best.dihedral = dihedral;
          best.apex = m;  // smallest apex wins remaining ties (strict <)
        }
      }
      at(i, k) = best;
    }
  }

  // Trace. Triangles are emitted reversed so they share each loop edge in the
  // direction opposite to the surrounding faces.
  std::vector<std::array<int, 3>> tris;
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [i, k] = stack.back();
    stack.pop_back();
    if (k - i < 2) continue;
    const int m = at(i, k).apex;
    tris.push_back({loop[k], loop[m], loop[i]});
    stack.emplace_back(i, m);
    stack.emplace_back(m, k);
  }
  return tris;
}

// Midpoint refinement of one patch. Splits the longest over-threshold edge
// that is (a) interior to the patch and (b) the longest edge of one of its
// triangles, until no triangle qualifies.
void refine_patch(std::vector<Vec3> &vertices, std::vector<std::array<int, 3>> &patch,
                  const std::vector<std::pair<int, int>> &boundary_edges, double threshold) {
  const std::size_t kMaxSplits = 100000;
  std::set<std::pair<int, int>> boundary(boundary_edges.begin(), boundary_edges.end());

  for (std::size_t splits = 0; splits < kMaxSplits; ++splits) {
    // Edge -> incident patch triangles.
    std::map<std::pair<int, int>, std::vector<int>> incidence;
    for (std::size_t t = 0; t < patch.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        const int a = patch[t][e];
        const int b = patch[t][(e + 1) % 3];
        incidence[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(t));
      }
    }

    std::pair<int, int> split_edge{-1, -1};
    double split_len = threshold;
    for (const auto &tri : patch) {
      int la = -1, lb = -1;
      double longest = -1.0;
      for (int e = 0; e < 3; ++e) {
        const int a = tri[e];
        const int b = tri[(e + 1) % 3];
        const double len = (vertices[a] - vertices[b]).norm();
        if (len > longest) {
          longest = len;
          la = a;
          lb = b;
        }
      }
      if (longest <= split_len) continue;
      const auto key = std::make_pair(std::min(la, lb), std::max(la, lb));
      if (boundary.count(key) || incidence[key].size() != 2) continue;
      split_len = longest;
      split_edge = key;
    }
    if (split_edge.first < 0) return;

    const int mid = static_cast<int>(vertices.size());
    vertices.push_back(0.5 * (vertices[split_edge.first] + vertices[split_edge.second]));

    std::vector<std::array<int, 3>> next;
    next.reserve(patch.size() + 2);
    for (const auto &tri : patch) {
      int e = -1;
      for (int j = 0; j < 3; ++j) {
        const int a = tri[j];
        const int b = tri[(j + 1) % 3];
        if (std::minmax(a, b) == std::minmax(split_edge.first, split_edge.second)) {
          e = j;
          break;
        }
      }
      if (e < 0) {
        next.push_back(tri);
        continue;
      }
      const int a = tri[e];
      const int b = tri[(e + 1) % 3];
      const int c = tri[(e + 2) % 3];
      next.push_back({a, mid, c});
      next.push_back({mid, b, c});
    }
    patch = std::move(next);
  }
  std::cerr << "fill_holes: refinement split budget exhausted, patch left as is\n";
}

}  // namespace

HoleFillResult fill_holes(const Mesh &mesh, double refine_factor) {
  const MeshReport report = validate_mesh(mesh);
  if (!is_pipeline_ready(report)) {
    throw InvalidMeshError("fill_holes: input must be manifold and consistently oriented");
  }

  HoleFillResult result;
  result.mesh = mesh;
  result.original_vertex_mask.assign(mesh.vertices.size(), true);

  const auto loops = find_boundary_loops(mesh);
  if (loops.empty()) return result;

  // Opposite-face normal for every directed boundary edge (u,v).
  const FaceNormals face_normals = compute_face_normals(mesh);
  std::map<std::pair<int, int>, Vec3> boundary_face_normal;
  {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto &f : mesh.faces) {
      for (int e = 0; e < 3; ++e) {
        const int a = f[e];
        const int b = f[(e + 1) % 3];
        ++edge_count[{std::min(a, b), std::max(a, b)}];
      }
    }
    for (std::size_t t = 0; t < mesh.faces.size(); ++t) {
      const auto &f = mesh.faces[t];
      for (int e = 0; e < 3; ++e) {
        const int a = f[e];
        const int b = f[(e + 1) % 3];
        if (edge_count[{std::min(a, b), std::max(a, b)}] == 1) {
          boundary_face_normal[{a, b}] = face_normals.normals[t];
        }
      }
    }
  }

  for (const auto &loop : loops) {
    const int n = static_cast<int>(loop.vertex_indices.size());
    if (n < 3) {
      throw InvalidMeshError("fill_holes: boundary loop shorter than 3 vertices");
    }

    std::vector<Vec3> outside_normal(n);
    double boundary_mean = 0.0;
    for (int j = 0; j < n; ++j) {
      const int a = loop.vertex_indices[j];
      const int b = loop.vertex_indices[(j + 1) % n];
      outside_normal[j] = boundary_face_normal.at({a, b});
      boundary_mean += (mesh.vertices[a] - mesh.vertices[b]).norm();
    }
    boundary_mean /= n;

    auto patch = triangulate_loop(result.mesh.vertices, loop.vertex_indices, outside_normal);

    std::vector<std::pair<int, int>> boundary_edges;
    for (int j = 0; j < n; ++j) {
      const int a = loop.vertex_indices[j];
      const int b = loop.vertex_indices[(j + 1) % n];
      boundary_edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    refine_patch(result.mesh.vertices, patch, boundary_edges, refine_factor * boundary_mean);

    result.mesh.faces.insert(result.mesh.faces.end(), patch.begin(), patch.end());
  }

  result.original_vertex_mask.resize(result.mesh.vertices.size(), false);
  return result;
}

}  // namespace meshprior
