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

#include <stdexcept>
#include <string>

namespace meshprior {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Malformed or unusable mesh input (bad indices, non-manifold edges, ...).
class InvalidMeshError : public Error {
 public:
  explicit InvalidMeshError(const std::string &msg) : Error(msg) {}
};

/// Non-finite values or other numerical breakdown during optimization.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string &msg) : Error(msg) {}
};

/// File or stream I/O failure.
class IoError : public Error {
 public:
  explicit IoError(const std::string &msg) : Error(msg) {}
};

}  // namespace meshprior
