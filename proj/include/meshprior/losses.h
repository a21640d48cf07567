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
#include <vector>

#include "meshprior/mesh.h"

namespace meshprior {

/// A scalar loss together with its gradient with respect to the network
/// output (n x 3).
struct LossValue {
  double value = 0.0;
  Eigen::MatrixXd gradient;
};

/// Sum over mask-true vertices of sqrt(||(original - smoothed) - predicted||^2 + eps).
/// The epsilon regularizes the non-squared norm at zero residual. An empty
/// mask pointer means all-true; an all-false mask yields 0 with a warning
/// (diagnostics only). Matrices are (n x 3).
double reconstruction_loss(const Eigen::MatrixXd &original_positions,
                           const Eigen::MatrixXd &smoothed_positions,
                           const Eigen::MatrixXd &predicted_displacements,
                           const std::vector<bool> *mask, double eps);

/// Same, also returning d(loss)/d(predicted_displacements); gradient rows of
/// mask-false vertices are exactly zero.
LossValue reconstruction_loss_with_gradient(const Eigen::MatrixXd &original_positions,
                                            const Eigen::MatrixXd &smoothed_positions,
                                            const Eigen::MatrixXd &predicted_displacements,
                                            const std::vector<bool> *mask, double eps);

/// Sum over all vertices of sqrt(|||N(x)| p(x) - sum_{y in N(x)} p(y)||^2 + eps)
/// with uniform (unnormalized) neighbor sums.
double laplacian_loss(const Eigen::MatrixXd &output_positions,
                      const std::vector<std::vector<int>> &neighbors, double eps = 1e-12);
double laplacian_loss(const Eigen::MatrixXd &output_positions, const Mesh &mesh,
                      double eps = 1e-12);

LossValue laplacian_loss_with_gradient(const Eigen::MatrixXd &output_positions,
                                       const std::vector<std::vector<int>> &neighbors,
                                       double eps);

/// recon + lambda * lap.
double total_loss(double recon, double lap, double lambda);

}  // namespace meshprior
