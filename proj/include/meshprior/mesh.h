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

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace meshprior {

using Vec3 = Eigen::Vector3d;

/// Indexed triangle mesh. Vertex indices are 0-based everywhere inside the
/// library; the OBJ layer converts to and from the format's 1-based indices.
///
/// Immutable-by-convention after construction: all operations return new
/// meshes instead of mutating, so a Mesh may be shared across threads for
/// concurrent read-only use.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }

  bool operator==(const Mesh &other) const = default;

  /// Vertex positions as an n-by-3 matrix (copy).
  Eigen::MatrixXd positions() const;
  /// Replaces all vertex positions from an n-by-3 matrix, keeping faces.
  static Mesh with_positions(const Mesh &connectivity, const Eigen::MatrixXd &pos);
};

/// Per-face unit normals. Faces with (numerically) zero area get a zero
/// vector and a degenerate flag instead of a normal.
struct FaceNormals {
  std::vector<Vec3> normals;
  std::vector<bool> degenerate;
  std::size_t degenerate_count = 0;
};

/// normal(i,j,k) = normalize((vj - vi) x (vk - vi)).
FaceNormals compute_face_normals(const Mesh &mesh);

/// Area-weighted average of incident face normals, normalized. Vertices
/// whose accumulated normal vanishes are flagged degenerate.
struct VertexNormals {
  std::vector<Vec3> normals;
  std::vector<bool> degenerate;
  std::size_t degenerate_count = 0;
};

VertexNormals compute_vertex_normals(const Mesh &mesh);

/// Unique undirected edges as (min,max) index pairs, sorted ascending.
/// This ordering is the library-wide convention for edge enumeration.
std::vector<std::pair<int, int>> unique_edges(const Mesh &mesh);

/// 1-ring vertex adjacency, each neighbor list sorted ascending.
std::vector<std::vector<int>> vertex_neighbors(const Mesh &mesh);

/// Arithmetic mean over unique undirected edges.
/// Throws InvalidMeshError on an edgeless mesh.
double mean_edge_length(const Mesh &mesh);

/// Findings of validate_mesh. Computation never throws; problems are
/// reported, not raised.
struct MeshReport {
  long euler_characteristic = 0;   // V - E + F over in-range faces
  bool is_manifold = false;        // edges in <= 2 faces, vertex stars disks/half-disks
  bool is_consistently_oriented = false;
  std::size_t boundary_edge_count = 0;
  std::size_t degenerate_face_count = 0;   // repeated-index or zero-area faces
  std::size_t out_of_range_face_count = 0; // faces referencing missing vertices
};

MeshReport validate_mesh(const Mesh &mesh);

/// True when the mesh is usable by the restoration pipelines: all face
/// indices in range, manifold, consistently oriented.
bool is_pipeline_ready(const MeshReport &report);

/// Closed cycle of vertices along edges incident to exactly one face.
/// The cycle follows the direction the incident faces traverse those edges,
/// so the hole interior lies on a consistent side.
struct BoundaryLoop {
  std::vector<int> vertex_indices;
};

/// All boundary loops of a manifold mesh.
/// Throws InvalidMeshError when a non-manifold edge is encountered.
std::vector<BoundaryLoop> find_boundary_loops(const Mesh &mesh);

}  // namespace meshprior
