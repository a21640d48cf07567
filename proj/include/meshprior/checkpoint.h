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

#include <iosfwd>
#include <string>

#include "meshprior/network.h"

namespace meshprior {

/// Binary parameter dump: an 8-byte magic + version header, then per layer
/// the weight matrices (dimensions + row-major doubles) and bias. Round-trips
/// bit-exactly.
void save_params(const ModelParams &params, std::ostream &out);
void save_params_file(const ModelParams &params, const std::string &path);

ModelParams load_params(std::istream &in);
ModelParams load_params_file(const std::string &path);

}  // namespace meshprior
