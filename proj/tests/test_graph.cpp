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

#include <Eigen/Dense>
#include <cmath>

#include "meshprior/graph.h"
#include "meshprior/primitives.h"
#include "test_helpers.h"

using namespace meshprior;
using namespace meshprior::testing;

namespace {

// Dense oracle: explicit D~^{-1/2} (A + I) D~^{-1/2}.
Eigen::MatrixXd dense_normalized_adjacency(int n, const std::vector<std::pair<int, int>> &edges) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (const auto &[i, j] : edges) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  Eigen::VectorXd d_inv_sqrt(n);
  for (int i = 0; i < n; ++i) d_inv_sqrt(i) = 1.0 / std::sqrt(a.row(i).sum());
  return d_inv_sqrt.asDiagonal() * a * d_inv_sqrt.asDiagonal();
}

}  // namespace

TEST_CASE("normalized adjacency: one isolated vertex gives [1]") {
  const VertexGraph graph = build_normalized_adjacency(1, {});
  CHECK(graph.size() == 1);
  CHECK(Eigen::MatrixXd(graph.adjacency_hat())(0, 0) == 1.0);  // exactly, per the formula
}

TEST_CASE("normalized adjacency: two vertices, one edge -> all entries 1/2") {
  const VertexGraph graph = build_normalized_adjacency(2, {{0, 1}});
  const Eigen::MatrixXd dense(graph.adjacency_hat());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(dense(i, j) == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("normalized adjacency: 3-vertex path matches the dense oracle") {
  const std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}};
  const VertexGraph graph = build_normalized_adjacency(3, edges);
  const Eigen::MatrixXd expected = dense_normalized_adjacency(3, edges);
  CHECK(Eigen::MatrixXd(graph.adjacency_hat()).isApprox(expected, 1e-14));
}

TEST_CASE("normalized adjacency: meshes up to 50 vertices match the dense oracle") {
  std::vector<Mesh> meshes = {tetrahedron(), single_triangle(), grid_mesh(4, 3)};
  for (const auto &mesh : meshes) {
    REQUIRE(mesh.vertex_count() <= 50);
    const auto edges = unique_edges(mesh);
    const VertexGraph graph = build_normalized_adjacency(mesh);
    const Eigen::MatrixXd dense(graph.adjacency_hat());
    CHECK(dense.isApprox(dense_normalized_adjacency(mesh.vertex_count(), edges), 1e-14));

    // Closed-form entries: 1/sqrt((d_i+1)(d_j+1)) on edges, 1/(d_i+1) on the
    // diagonal, zero elsewhere.
    const auto &deg = graph.degrees();
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(mesh.vertex_count(), mesh.vertex_count());
    for (int i = 0; i < mesh.vertex_count(); ++i) expected(i, i) = 1.0 / (deg[i] + 1.0);
    for (const auto &[i, j] : edges) {
      expected(i, j) = expected(j, i) = 1.0 / std::sqrt((deg[i] + 1.0) * (deg[j] + 1.0));
    }
    CHECK(dense.isApprox(expected, 1e-14));

    // Symmetry and range (0, 1].
    CHECK(dense.isApprox(dense.transpose(), 1e-15));
    for (int i = 0; i < dense.rows(); ++i) {
      for (int j = 0; j < dense.cols(); ++j) {
        if (dense(i, j) != 0.0) {
          CHECK(dense(i, j) > 0.0);
          CHECK(dense(i, j) <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("scaled laplacian: -D^{-1/2} A D^{-1/2}, zero rows for isolated vertices") {
  const VertexGraph graph = build_normalized_adjacency(4, {{0, 1}, {1, 2}});
  const Eigen::MatrixXd lap(graph.scaled_laplacian());
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected(0, 1) = expected(1, 0) = -1.0 / std::sqrt(1.0 * 2.0);
  expected(1, 2) = expected(2, 1) = -1.0 / std::sqrt(2.0 * 1.0);
  CHECK(lap.isApprox(expected, 1e-14));
  CHECK(lap.row(3).norm() == 0.0);  // isolated vertex
}
