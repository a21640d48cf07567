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

#include "meshprior/mesh.h"

namespace meshprior {

/// Displaces every vertex along its unit normal by an independent zero-mean
/// Gaussian sample with standard deviation sigma_fraction * mean_edge_length.
/// Deterministic given the seed; samples are drawn in vertex order and do not
/// depend on positions, so the operation commutes with rigid transforms.
/// Vertices with a degenerate normal are left in place (warned); throws
/// InvalidMeshError when all normals are degenerate.
Mesh add_gaussian_noise(const Mesh &mesh, double sigma_fraction, std::uint64_t seed);

}  // namespace meshprior
