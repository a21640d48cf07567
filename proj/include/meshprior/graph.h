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

#include <Eigen/SparseCore>
#include <vector>

#include "meshprior/mesh.h"

namespace meshprior {

/// Symmetric normalized vertex adjacency with self-loops,
///
///   A_hat = D~^{-1/2} (A + I) D~^{-1/2},
///
/// where A is the 0/1 vertex adjacency of the mesh edges and D~ the degree
/// matrix of A + I. This is the propagation operator of the spectral graph
/// convolution layer. Immutable after construction; safe to share across
/// threads for read-only use.
class VertexGraph {
 public:
  VertexGraph() = default;
  VertexGraph(int n, Eigen::SparseMatrix<double> a_hat, std::vector<int> degrees);

  int size() const { return n_; }
  const Eigen::SparseMatrix<double> &adjacency_hat() const { return a_hat_; }
  /// Degrees of the plain adjacency A (no self-loops).
  const std::vector<int> &degrees() const { return degrees_; }

  /// Scaled normalized Laplacian for Chebyshev filters,
  ///   L~ = 2 L / lambda_max - I  with  L = I - D^{-1/2} A D^{-1/2},
  /// using the conventional lambda_max = 2, i.e. L~ = -D^{-1/2} A D^{-1/2}.
  /// Rows and columns of isolated vertices are zero.
  const Eigen::SparseMatrix<double> &scaled_laplacian() const { return scaled_laplacian_; }

 private:
  int n_ = 0;
  Eigen::SparseMatrix<double> a_hat_;
  std::vector<int> degrees_;
  Eigen::SparseMatrix<double> scaled_laplacian_;
};

/// Builds A_hat from the mesh's edge structure. Entry order is deterministic
/// (edges enumerated as sorted (min,max) pairs).
VertexGraph build_normalized_adjacency(const Mesh &mesh);

/// Graph on n vertices with explicit edge list; used by tests and synthetic
/// instances that have no mesh behind them.
VertexGraph build_normalized_adjacency(int n, const std::vector<std::pair<int, int>> &edges);

}  // namespace meshprior
