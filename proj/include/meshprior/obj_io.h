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

#include "meshprior/mesh.h"

namespace meshprior {

/// Parses OBJ text. Only `v` and `f` records are interpreted; `#` comments
/// and unknown record types are skipped. Face entries may carry `/vt` and
/// `//vn` suffixes (ignored). Indices are 1-based and must be positive;
/// negative (relative) indices are rejected. Faces with more than three
/// vertices are fan-triangulated from their first vertex.
Mesh load_obj(std::istream &in);
Mesh load_obj(const std::string &text);
Mesh load_obj_file(const std::string &path);

/// Writes one `v` line per vertex (enough digits to round-trip the double
/// exactly) and one `f` line per face with 1-based indices.
void save_obj(const Mesh &mesh, std::ostream &out);
std::string save_obj(const Mesh &mesh);
void save_obj_file(const Mesh &mesh, const std::string &path);

}  // namespace meshprior
