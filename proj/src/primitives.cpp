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

#include "meshprior/primitives.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "meshprior/error.h"
#include "meshprior/rng.h"

namespace meshprior {

namespace {

constexpr double kPi = 3.14159265358979323846;

Mesh icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh mesh;
  mesh.vertices = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (auto &v : mesh.vertices) v.normalize();
  mesh.faces = {
      {0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  return mesh;
}

}  // namespace

Mesh generate_icosphere(int subdivisions) {
  if (subdivisions < 0) throw Error("generate_icosphere: subdivisions must be >= 0");
  Mesh mesh = icosahedron();
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto midpoint_index = [&](int a, int b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = mesh.vertex_count();
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> faces;
    faces.reserve(mesh.faces.size() * 4);
    for (const auto &f : mesh.faces) {
      const int ab = midpoint_index(f[0], f[1]);
      const int bc = midpoint_index(f[1], f[2]);
      const int ca = midpoint_index(f[2], f[0]);
      faces.push_back({f[0], ab, ca});
      faces.push_back({f[1], bc, ab});
      faces.push_back({f[2], ca, bc});
      faces.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(faces);
  }
  return mesh;
}

double BumpField::radius(const Vec3 &u) const {
  double best = 0.0;
  for (const auto &c : centers) {
    const double angle = std::acos(std::clamp(u.dot(c), -1.0, 1.0));
    if (angle >= angular_radius) continue;
    const double t = angle / angular_radius;
    best = std::max(best, 0.5 * (1.0 + std::cos(kPi * t)));
  }
  return 1.0 + height * best;
}

BumpField sample_bump_field(int bump_count, double height, std::uint64_t seed,
                            double angular_radius) {
  if (bump_count < 0) throw Error("sample_bump_field: bump_count must be >= 0");
  BumpField field;
  field.height = height;
  field.angular_radius = angular_radius;
  Rng rng(seed);
  for (int i = 0; i < bump_count; ++i) {
    // Uniform direction: z uniform in [-1,1], azimuth uniform.
    const double z = rng.uniform(-1.0, 1.0);
    const double az = rng.uniform(0.0, 2.0 * kPi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    field.centers.emplace_back(r * std::cos(az), r * std::sin(az), z);
  }
  return field;
}

Mesh generate_bumpy_sphere(int subdivisions, int bump_count, double bump_height,
                           std::uint64_t seed, double bump_angular_radius) {
  if (subdivisions < 1) throw Error("generate_bumpy_sphere: subdivisions must be >= 1");
  Mesh mesh = generate_icosphere(subdivisions);
  const BumpField field = sample_bump_field(bump_count, bump_height, seed, bump_angular_radius);
  for (auto &v : mesh.vertices) {
    const Vec3 u = v.normalized();
    v = field.radius(u) * u;
  }
  return mesh;
}

CapCut remove_cap(const Mesh &mesh, const Vec3 &center, double angular_radius) {
  if (angular_radius <= 0.0) throw Error("remove_cap: angular_radius must be > 0");
  const Vec3 axis = center.normalized();
  const double cos_bound = std::cos(angular_radius);

  CapCut result;
  std::vector<std::array<int, 3>> kept;
  for (const auto &f : mesh.faces) {
    const Vec3 centroid =
        (mesh.vertices[f[0]] + mesh.vertices[f[1]] + mesh.vertices[f[2]]) / 3.0;
    const double len = centroid.norm();
    const bool inside = len > 0.0 && centroid.dot(axis) / len > cos_bound;
    if (inside) {
      ++result.removed_faces;
    } else {
      kept.push_back(f);
    }
  }

  std::vector<int> remap(mesh.vertices.size(), -1);
  for (const auto &f : kept) {
    for (int idx : f) remap[idx] = 0;
  }
  int next = 0;
  for (std::size_t v = 0; v < remap.size(); ++v) {
    if (remap[v] == 0) {
      remap[v] = next++;
      result.mesh.vertices.push_back(mesh.vertices[v]);
    }
  }
  result.mesh.faces.reserve(kept.size());
  for (const auto &f : kept) {
    result.mesh.faces.push_back({remap[f[0]], remap[f[1]], remap[f[2]]});
  }
  return result;
}

}  // namespace meshprior
