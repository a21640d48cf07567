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

#include "meshprior/graph.h"

#include <cmath>

#include "meshprior/error.h"

namespace meshprior {

namespace {

VertexGraph build_from_edges(int n, const std::vector<std::pair<int, int>> &edges) {
  std::vector<int> degree(n, 0);
  for (const auto &[a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      throw InvalidMeshError("build_normalized_adjacency: bad edge");
    }
    ++degree[a];
    ++degree[b];
  }

  std::vector<double> inv_sqrt(n);
  for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(degree[i] + 1));

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * edges.size() + static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, inv_sqrt[i] * inv_sqrt[i]);
  }
  for (const auto &[a, b] : edges) {
    const double w = inv_sqrt[a] * inv_sqrt[b];
    triplets.emplace_back(a, b, w);
    triplets.emplace_back(b, a, w);
  }

  Eigen::SparseMatrix<double> a_hat(n, n);
  a_hat.setFromTriplets(triplets.begin(), triplets.end());
  a_hat.makeCompressed();
  return VertexGraph(n, std::move(a_hat), std::move(degree));
}

}  // namespace

VertexGraph build_normalized_adjacency(const Mesh &mesh) {
  return build_from_edges(mesh.vertex_count(), unique_edges(mesh));
}

VertexGraph build_normalized_adjacency(int n, const std::vector<std::pair<int, int>> &edges) {
  return build_from_edges(n, edges);
}

VertexGraph::VertexGraph(int n, Eigen::SparseMatrix<double> a_hat, std::vector<int> degrees)
    : n_(n), a_hat_(std::move(a_hat)), degrees_(std::move(degrees)) {
  std::vector<double> inv_sqrt(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    if (degrees_[i] > 0) inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(degrees_[i]));
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int col = 0; col < a_hat_.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(a_hat_, col); it; ++it) {
      if (it.row() == it.col()) continue;  // self-loops do not appear in A
      triplets.emplace_back(it.row(), it.col(), -inv_sqrt[it.row()] * inv_sqrt[it.col()]);
    }
  }
  scaled_laplacian_.resize(n_, n_);
  scaled_laplacian_.setFromTriplets(triplets.begin(), triplets.end());
  scaled_laplacian_.makeCompressed();
}

}  // namespace meshprior
