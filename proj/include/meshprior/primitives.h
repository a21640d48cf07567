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

#include <cstdint>
#include <vector>

#include "meshprior/mesh.h"

namespace meshprior {

/// Unit icosphere with 20 * 4^subdivisions faces.
Mesh generate_icosphere(int subdivisions);

/// Radial bump field on the unit sphere: a set of spherical-cap bumps with a
/// smooth raised-cosine profile. Overlapping caps combine by max, so the
/// radial height never exceeds `height`.
struct BumpField {
  std::vector<Vec3> centers;  // unit directions
  double height = 0.1;
  double angular_radius = 0.25;  // radians

  /// Radius of the bumpy surface in unit direction u.
  double radius(const Vec3 &u) const;
};

/// Seeded, repeatable bump directions (uniform on the sphere).
BumpField sample_bump_field(int bump_count, double height, std::uint64_t seed,
                            double angular_radius = 0.25);

/// Icosphere of unit base radius with `bump_count` spherical-cap bumps of
/// radial height `bump_height` at seeded directions.
Mesh generate_bumpy_sphere(int subdivisions, int bump_count, double bump_height,
                           std::uint64_t seed, double bump_angular_radius = 0.25);

/// Deletes every face whose centroid direction lies within `angular_radius`
/// of `center` (directions compared from the origin), then drops vertices
/// that lost all their faces and reindexes. Returns the cut mesh and the
/// number of removed faces.
struct CapCut {
  Mesh mesh;
  std::size_t removed_faces = 0;
};

CapCut remove_cap(const Mesh &mesh, const Vec3 &center, double angular_radius);

}  // namespace meshprior
