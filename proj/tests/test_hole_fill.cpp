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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "meshprior/error.h"
#include "meshprior/hole_fill.h"
#include "meshprior/primitives.h"
#include "test_helpers.h"

using namespace meshprior;
using namespace meshprior::testing;

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- Independent oracle: exhaustive enumeration of loop triangulations ----

using Triangulation = std::vector<std::array<int, 3>>;  // polygon-index triples (i,m,k)

// All triangulations of polygon chord (i..k), apexes visited in ascending
// order (mirrors the implementation's deterministic tie-break).
std::vector<Triangulation> enumerate_triangulations(int i, int k) {
  std::vector<Triangulation> result;
  if (k - i < 2) {
    result.push_back({});
    return result;
  }
  for (int m = i + 1; m < k; ++m) {
    for (const auto &left : enumerate_triangulations(i, m)) {
      for (const auto &right : enumerate_triangulations(m, k)) {
        Triangulation t;
        t.push_back({i, m, k});
        t.insert(t.end(), left.begin(), left.end());
        t.insert(t.end(), right.begin(), right.end());
        result.push_back(std::move(t));
      }
    }
  }
  return result;
}

Vec3 emitted_normal(const Vec3 &pi, const Vec3 &pm, const Vec3 &pk) {
  // Patch triangles are emitted as (k, m, i).
  return (pm - pk).cross(pi - pk);
}

double oracle_angle(const Vec3 &a, const Vec3 &b) {
  const double la = a.norm(), lb = b.norm();
  if (la < 1e-20 || lb < 1e-20) return kPi;
  return std::acos(std::clamp(a.dot(b) / (la * lb), -1.0, 1.0));
}

struct OracleWeight {
  double area = 0.0;
  double dihedral = 0.0;
};

// Evaluates a complete triangulation of the loop: total area plus the max
// dihedral between adjacent patch triangles and against the existing faces
// across every loop edge.
OracleWeight evaluate_triangulation(const Triangulation &tris, const std::vector<Vec3> &points,
                                    const std::vector<int> &loop,
                                    const std::vector<Vec3> &outside_normals) {
  const int n = static_cast<int>(loop.size());
  OracleWeight w;
  std::map<std::pair<int, int>, std::vector<Vec3>> edge_normals;
  for (const auto &t : tris) {
    const Vec3 normal = emitted_normal(points[loop[t[0]]], points[loop[t[1]]], points[loop[t[2]]]);
    w.area += 0.5 * normal.norm();
    for (const auto &[a, b] : {std::pair{t[0], t[1]}, {t[1], t[2]}, {t[0], t[2]}}) {
      edge_normals[{std::min(a, b), std::max(a, b)}].push_back(normal);
    }
  }
  for (const auto &[edge, normals] : edge_normals) {
    const bool is_loop_edge =
        edge.second - edge.first == 1 || (edge.first == 0 && edge.second == n - 1);
    if (is_loop_edge) {
      REQUIRE(normals.size() == 1);
      const int j = edge.second - edge.first == 1 ? edge.first : n - 1;
      w.dihedral = std::max(w.dihedral, oracle_angle(normals[0], outside_normals[j]));
    } else {
      REQUIRE(normals.size() == 2);
      w.dihedral = std::max(w.dihedral, oracle_angle(normals[0], normals[1]));
    }
  }
  return w;
}

// Canonical form of a triangle under cyclic rotation (orientation kept).
std::array<int, 3> canonical(std::array<int, 3> t) {
  while (!(t[0] < t[1] && t[0] < t[2])) t = {t[1], t[2], t[0]};
  return t;
}

std::set<std::array<int, 3>> canonical_set(const std::vector<std::array<int, 3>> &faces) {
  std::set<std::array<int, 3>> out;
  for (const auto &f : faces) out.insert(canonical(f));
  return out;
}

// Directed boundary edges and their face normals, recomputed from scratch.
std::vector<Vec3> outside_normals_for_loop(const Mesh &mesh, const std::vector<int> &loop) {
  std::map<std::pair<int, int>, Vec3> by_edge;
  std::map<std::pair<int, int>, int> count;
  for (const auto &f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      ++count[{std::min(a, b), std::max(a, b)}];
    }
  }
  for (const auto &f : mesh.faces) {
    const Vec3 normal = (mesh.vertices[f[1]] - mesh.vertices[f[0]])
                            .cross(mesh.vertices[f[2]] - mesh.vertices[f[0]])
                            .normalized();
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      if (count[{std::min(a, b), std::max(a, b)}] == 1) by_edge[{a, b}] = normal;
    }
  }
  const int n = static_cast<int>(loop.size());
  std::vector<Vec3> result(n);
  for (int j = 0; j < n; ++j) result[j] = by_edge.at({loop[j], loop[(j + 1) % n]});
  return result;
}

// Expected patch by brute force: first triangulation attaining the minimal
// (area, then dihedral) in apex-ascending enumeration order, emitted in the
// implementation's (k, m, i) orientation and mapped to global indices.
std::set<std::array<int, 3>> oracle_patch(const Mesh &holed) {
  const auto loops = find_boundary_loops(holed);
  REQUIRE(loops.size() == 1);
  const auto &loop = loops[0].vertex_indices;
  const auto outside = outside_normals_for_loop(holed, loop);

  std::vector<Vec3> points = holed.vertices;
  const auto all = enumerate_triangulations(0, static_cast<int>(loop.size()) - 1);
  REQUIRE(!all.empty());

  int best = 0;
  OracleWeight best_w = evaluate_triangulation(all[0], points, loop, outside);
  for (std::size_t i = 1; i < all.size(); ++i) {
    const OracleWeight w = evaluate_triangulation(all[i], points, loop, outside);
    if (w.area < best_w.area || (w.area == best_w.area && w.dihedral < best_w.dihedral)) {
      best_w = w;
      best = static_cast<int>(i);
    }
  }
  std::vector<std::array<int, 3>> global;
  for (const auto &t : all[best]) {
    global.push_back({loop[t[2]], loop[t[1]], loop[t[0]]});
  }
  return canonical_set(global);
}

std::vector<std::array<int, 3>> patch_faces(const Mesh &input, const Mesh &filled) {
  return {filled.faces.begin() + input.face_count(), filled.faces.end()};
}

Mesh unit_cube() {
  Mesh mesh;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  mesh.faces = {{0, 3, 2}, {0, 2, 1},   // bottom
                {4, 5, 6}, {4, 6, 7},   // top
                {0, 1, 5}, {0, 5, 4},   // front
                {1, 2, 6}, {1, 6, 5},   // right
                {2, 3, 7}, {2, 7, 6},   // back
                {3, 0, 4}, {3, 4, 7}};  // left
  return mesh;
}

Mesh cube_with_open_top() {
  Mesh mesh = unit_cube();
  mesh.faces.erase(mesh.faces.begin() + 2, mesh.faces.begin() + 4);
  return mesh;
}

}  // namespace

TEST_CASE("fill: closed mesh is returned unchanged with an all-true mask") {
  const Mesh mesh = tetrahedron();
  const auto result = fill_holes(mesh);
  CHECK(result.mesh == mesh);
  CHECK(result.original_vertex_mask == std::vector<bool>(4, true));
}

TEST_CASE("fill: 3-vertex hole gets exactly one triangle and no new vertices") {
  Mesh mesh = tetrahedron();
  mesh.faces.pop_back();
  const auto result = fill_holes(mesh);
  CHECK(result.mesh.vertex_count() == mesh.vertex_count());
  CHECK(result.mesh.face_count() == mesh.face_count() + 1);
  const auto report = validate_mesh(result.mesh);
  CHECK(report.boundary_edge_count == 0);
  CHECK(report.is_consistently_oriented);
}

TEST_CASE("fill: square hole matches exhaustive enumeration (symmetric tie)") {
  const Mesh holed = cube_with_open_top();
  const auto result = fill_holes(holed, 10.0);
  CHECK(canonical_set(patch_faces(holed, result.mesh)) == oracle_patch(holed));
  const auto report = validate_mesh(result.mesh);
  CHECK(report.boundary_edge_count == 0);
  CHECK(report.is_consistently_oriented);
}

TEST_CASE("fill: skewed quad hole matches exhaustive enumeration (area decides)") {
  Mesh holed = cube_with_open_top();
  holed.vertices[6] = Vec3(1.2, 1.1, 1.5);
  const auto result = fill_holes(holed, 10.0);
  CHECK(canonical_set(patch_faces(holed, result.mesh)) == oracle_patch(holed));
}

TEST_CASE("fill: pentagon hole on an icosphere matches exhaustive enumeration") {
  const Mesh sphere = generate_icosphere(1);
  Mesh holed = sphere;
  holed.faces.clear();
  for (const auto &f : sphere.faces) {
    if (f[0] != 0 && f[1] != 0 && f[2] != 0) holed.faces.push_back(f);
  }
  // Vertex 0 still exists but has no faces; the loop around it has 5 vertices.
  const auto loops = find_boundary_loops(holed);
  REQUIRE(loops.size() == 1);
  REQUIRE(loops[0].vertex_indices.size() == 5);

  const auto result = fill_holes(holed, 10.0);
  CHECK(canonical_set(patch_faces(holed, result.mesh)) == oracle_patch(holed));
}

TEST_CASE("fill: cap hole is refined, watertight, chi + 1, mask intact") {
  const Mesh sphere = generate_bumpy_sphere(3, 8, 0.1, 11);
  const CapCut cut = remove_cap(sphere, Vec3(0, 0, 1), 0.5);
  REQUIRE(cut.removed_faces > 0);

  const auto before = validate_mesh(cut.mesh);
  REQUIRE(before.boundary_edge_count > 0);

  const auto result = fill_holes(cut.mesh);
  const auto after = validate_mesh(result.mesh);
  CHECK(after.boundary_edge_count == 0);
  CHECK(after.is_manifold);
  CHECK(after.is_consistently_oriented);
  CHECK(after.euler_characteristic == before.euler_characteristic + 1);

  // Mask: true exactly on input vertices, positions untouched.
  std::size_t true_count = 0;
  for (bool b : result.original_vertex_mask) true_count += b ? 1 : 0;
  CHECK(true_count == static_cast<std::size_t>(cut.mesh.vertex_count()));
  for (int v = 0; v < cut.mesh.vertex_count(); ++v) {
    CHECK(result.original_vertex_mask[v]);
    CHECK(result.mesh.vertices[v] == cut.mesh.vertices[v]);
  }

  // Refinement fixed point: no patch triangle has a splittable (interior)
  // longest edge above the threshold.
  const auto loops = find_boundary_loops(cut.mesh);
  REQUIRE(loops.size() == 1);
  double mean_boundary = 0.0;
  const auto &loop = loops[0].vertex_indices;
  for (std::size_t j = 0; j < loop.size(); ++j) {
    mean_boundary += (cut.mesh.vertices[loop[j]] - cut.mesh.vertices[loop[(j + 1) % loop.size()]])
                         .norm();
  }
  mean_boundary /= static_cast<double>(loop.size());
  const double threshold = 1.5 * mean_boundary;

  const auto patch = patch_faces(cut.mesh, result.mesh);
  CHECK(result.mesh.vertex_count() > cut.mesh.vertex_count());  // refinement ran
  std::map<std::pair<int, int>, int> patch_edge_count;
  for (const auto &t : patch) {
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      ++patch_edge_count[{std::min(a, b), std::max(a, b)}];
    }
  }
  for (const auto &t : patch) {
    double longest = 0.0;
    std::pair<int, int> longest_edge;
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      const double len = (result.mesh.vertices[a] - result.mesh.vertices[b]).norm();
      if (len > longest) {
        longest = len;
        longest_edge = {std::min(a, b), std::max(a, b)};
      }
    }
    if (longest > threshold) {
      // Only acceptable when the edge is not interior to the patch.
      CHECK(patch_edge_count[longest_edge] != 2);
    }
  }
}

TEST_CASE("fill: non-manifold input is rejected") {
  Mesh mesh;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}};
  mesh.faces = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}};
  CHECK_THROWS_AS(fill_holes(mesh), InvalidMeshError);
}
