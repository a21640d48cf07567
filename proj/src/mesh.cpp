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

#include "meshprior/mesh.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "meshprior/error.h"

namespace meshprior {

namespace {

// Squared-norm floor below which a cross product counts as zero area.
constexpr double kDegenerateAreaSq = 1e-40;

bool face_in_range(const std::array<int, 3> &f, int n) {
  return f[0] >= 0 && f[0] < n && f[1] >= 0 && f[1] < n && f[2] >= 0 && f[2] < n;
}

bool face_has_repeat(const std::array<int, 3> &f) {
  return f[0] == f[1] || f[1] == f[2] || f[0] == f[2];
}

}  // namespace

Eigen::MatrixXd Mesh::positions() const {
  Eigen::MatrixXd pos(vertex_count(), 3);
  for (int i = 0; i < vertex_count(); ++i) pos.row(i) = vertices[i].transpose();
  return pos;
}

Mesh Mesh::with_positions(const Mesh &connectivity, const Eigen::MatrixXd &pos) {
  if (pos.rows() != connectivity.vertex_count() || pos.cols() != 3) {
    throw InvalidMeshError("with_positions: position matrix shape mismatch");
  }
  Mesh out;
  out.faces = connectivity.faces;
  out.vertices.resize(connectivity.vertices.size());
  for (int i = 0; i < connectivity.vertex_count(); ++i) {
    out.vertices[i] = pos.row(i).transpose();
  }
  return out;
}

FaceNormals compute_face_normals(const Mesh &mesh) {
  FaceNormals result;
  result.normals.resize(mesh.faces.size());
  result.degenerate.resize(mesh.faces.size(), false);
  for (std::size_t t = 0; t < mesh.faces.size(); ++t) {
    const auto &f = mesh.faces[t];
    const Vec3 cross = (mesh.vertices[f[1]] - mesh.vertices[f[0]])
                           .cross(mesh.vertices[f[2]] - mesh.vertices[f[0]]);
    const double sq = cross.squaredNorm();
    if (sq < kDegenerateAreaSq) {
      result.normals[t] = Vec3::Zero();
      result.degenerate[t] = true;
      ++result.degenerate_count;
    } else {
      result.normals[t] = cross / std::sqrt(sq);
    }
  }
  return result;
}

VertexNormals compute_vertex_normals(const Mesh &mesh) {
  VertexNormals result;
  result.normals.assign(mesh.vertices.size(), Vec3::Zero());
  result.degenerate.resize(mesh.vertices.size(), false);
  for (const auto &f : mesh.faces) {
    // Unnormalized cross product = 2 * area * unit normal, so summing it
    // gives the area weighting directly.
    const Vec3 cross = (mesh.vertices[f[1]] - mesh.vertices[f[0]])
                           .cross(mesh.vertices[f[2]] - mesh.vertices[f[0]]);
    result.normals[f[0]] += cross;
    result.normals[f[1]] += cross;
    result.normals[f[2]] += cross;
  }
  for (std::size_t i = 0; i < result.normals.size(); ++i) {
    const double sq = result.normals[i].squaredNorm();
    if (sq < kDegenerateAreaSq) {
      result.normals[i] = Vec3::Zero();
      result.degenerate[i] = true;
      ++result.degenerate_count;
    } else {
      result.normals[i] /= std::sqrt(sq);
    }
  }
  return result;
}

std::vector<std::pair<int, int>> unique_edges(const Mesh &mesh) {
  std::set<std::pair<int, int>> edges;
  for (const auto &f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e];
      const int b = f[(e + 1) % 3];
      if (a == b) continue;
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  }
  return {edges.begin(), edges.end()};
}

std::vector<std::vector<int>> vertex_neighbors(const Mesh &mesh) {
  std::vector<std::set<int>> sets(mesh.vertices.size());
  for (const auto &f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e];
      const int b = f[(e + 1) % 3];
      if (a == b) continue;
      sets[a].insert(b);
      sets[b].insert(a);
    }
  }
  std::vector<std::vector<int>> out(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) out[i].assign(sets[i].begin(), sets[i].end());
  return out;
}

double mean_edge_length(const Mesh &mesh) {
  const auto edges = unique_edges(mesh);
  if (edges.empty()) throw InvalidMeshError("mean_edge_length: mesh has no edges");
  double sum = 0.0;
  for (const auto &[a, b] : edges) sum += (mesh.vertices[a] - mesh.vertices[b]).norm();
  return sum / static_cast<double>(edges.size());
}

namespace {

// Link of a vertex: neighbors joined when they appear opposite the vertex in
// a common face. The star is a disk iff the link is one cycle, a half-disk
// iff one simple path.
bool vertex_star_is_disk_or_half_disk(const std::vector<std::array<int, 2>> &link_edges) {
  if (link_edges.empty()) return true;  // isolated or dangling vertex, nothing to check
  std::map<int, std::vector<int>> adj;
  for (const auto &e : link_edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  int odd = 0;
  for (const auto &[v, nbrs] : adj) {
    if (nbrs.size() > 2) return false;
    if (nbrs.size() == 1) ++odd;
  }
  if (odd != 0 && odd != 2) return false;
  // Single connected component.
  std::set<int> seen;
  std::vector<int> stack = {adj.begin()->first};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (int u : adj[v]) stack.push_back(u);
  }
  return seen.size() == adj.size();
}

}  // namespace

MeshReport validate_mesh(const Mesh &mesh) {
  MeshReport report;
  const int n = mesh.vertex_count();

  std::vector<std::array<int, 3>> usable;
  usable.reserve(mesh.faces.size());
  for (const auto &f : mesh.faces) {
    if (!face_in_range(f, n)) {
      ++report.out_of_range_face_count;
      continue;
    }
    usable.push_back(f);
    if (face_has_repeat(f)) ++report.degenerate_face_count;
  }

  // Zero-area faces count as degenerate even with distinct indices.
  for (const auto &f : usable) {
    if (face_has_repeat(f)) continue;
    const Vec3 cross = (mesh.vertices[f[1]] - mesh.vertices[f[0]])
                           .cross(mesh.vertices[f[2]] - mesh.vertices[f[0]]);
    if (cross.squaredNorm() < kDegenerateAreaSq) ++report.degenerate_face_count;
  }

  // Undirected edge -> directed traversal counts (a<b direction, b<a direction).
  std::map<std::pair<int, int>, std::array<int, 2>> edge_dirs;
  for (const auto &f : usable) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e];
      const int b = f[(e + 1) % 3];
      if (a == b) continue;
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto &dirs = edge_dirs.try_emplace(key, std::array<int, 2>{0, 0}).first->second;
      ++dirs[a < b ? 0 : 1];
    }
  }

  bool edges_manifold = true;
  bool oriented = true;
  for (const auto &[key, dirs] : edge_dirs) {
    const int total = dirs[0] + dirs[1];
    if (total == 1) ++report.boundary_edge_count;
    if (total > 2) edges_manifold = false;
    // Two faces sharing an edge must traverse it in opposite directions.
    if (dirs[0] > 1 || dirs[1] > 1) oriented = false;
  }

  bool stars_ok = true;
  {
    std::vector<std::vector<std::array<int, 2>>> links(n);
    for (const auto &f : usable) {
      if (face_has_repeat(f)) continue;
      links[f[0]].push_back({f[1], f[2]});
      links[f[1]].push_back({f[2], f[0]});
      links[f[2]].push_back({f[0], f[1]});
    }
    for (int v = 0; v < n && stars_ok; ++v) {
      if (!vertex_star_is_disk_or_half_disk(links[v])) stars_ok = false;
    }
  }

  report.is_manifold = edges_manifold && stars_ok && report.out_of_range_face_count == 0;
  report.is_consistently_oriented = oriented;
  report.euler_characteristic = static_cast<long>(n) - static_cast<long>(edge_dirs.size()) +
                                static_cast<long>(usable.size());
  return report;
}

bool is_pipeline_ready(const MeshReport &report) {
  return report.out_of_range_face_count == 0 && report.is_manifold &&
         report.is_consistently_oriented;
}

std::vector<BoundaryLoop> find_boundary_loops(const Mesh &mesh) {
  // Count incident faces per undirected edge; record the directed traversal.
  std::map<std::pair<int, int>, int> edge_faces;
  for (const auto &f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e];
      const int b = f[(e + 1) % 3];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      if (++edge_faces[key] > 2) {
        throw InvalidMeshError("find_boundary_loops: non-manifold edge (" +
                               std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }

  // A boundary edge keeps the direction its single face traverses it.
  // On a manifold mesh each vertex has at most one outgoing boundary edge.
  std::unordered_map<int, int> next_on_boundary;
  for (const auto &f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e];
      const int b = f[(e + 1) % 3];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      if (edge_faces[key] == 1) {
        if (next_on_boundary.count(a)) {
          throw InvalidMeshError("find_boundary_loops: vertex " + std::to_string(a) +
                                 " lies on more than one boundary edge fan");
        }
        next_on_boundary[a] = b;
      }
    }
  }

  std::vector<BoundaryLoop> loops;
  std::set<int> visited;
  // Deterministic loop order: start from the smallest unvisited boundary vertex.
  std::map<int, int> ordered(next_on_boundary.begin(), next_on_boundary.end());
  for (const auto &[start, first_next] : ordered) {
    if (visited.count(start)) continue;
    BoundaryLoop loop;
    int v = start;
    do {
      loop.vertex_indices.push_back(v);
      visited.insert(v);
      auto it = next_on_boundary.find(v);
      if (it == next_on_boundary.end()) {
        throw InvalidMeshError("find_boundary_loops: open boundary chain at vertex " +
                               std::to_string(v));
      }
      v = it->second;
    } while (v != start);
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace meshprior
