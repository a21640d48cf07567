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

#include "meshprior/obj_io.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "meshprior/error.h"

namespace meshprior {

namespace {

std::vector<std::string> split_ws(const std::string &line) {
  std::vector<std::string> tokens;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_coord(const std::string &tok, std::size_t line_no) {
  const char *begin = tok.c_str();
  char *end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw IoError("OBJ line " + std::to_string(line_no) + ": non-numeric coordinate '" + tok +
                  "'");
  }
  return value;
}

// "7", "7/2", "7//3", "7/2/3" -> vertex index 7. Relative (negative) indices
// are rejected.
long parse_face_index(const std::string &tok, std::size_t line_no) {
  const std::string head = tok.substr(0, tok.find('/'));
  const char *begin = head.c_str();
  char *end = nullptr;
  const long idx = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw IoError("OBJ line " + std::to_string(line_no) + ": bad face index '" + tok + "'");
  }
  if (idx <= 0) {
    throw IoError("OBJ line " + std::to_string(line_no) +
                  ": negative or zero face index '" + tok + "' (relative indices unsupported)");
  }
  return idx;
}

}  // namespace

Mesh load_obj(std::istream &in) {
  Mesh mesh;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;

    if (tokens[0] == "v") {
      if (tokens.size() < 4) {
        throw IoError("OBJ line " + std::to_string(line_no) + ": vertex needs 3 coordinates");
      }
      mesh.vertices.emplace_back(parse_coord(tokens[1], line_no),
                                 parse_coord(tokens[2], line_no),
                                 parse_coord(tokens[3], line_no));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        throw IoError("OBJ line " + std::to_string(line_no) + ": face with <3 vertices");
      }
      std::vector<int> poly;
      poly.reserve(tokens.size() - 1);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const long idx = parse_face_index(tokens[i], line_no);
        if (idx > static_cast<long>(mesh.vertices.size())) {
          throw IoError("OBJ line " + std::to_string(line_no) + ": vertex index " +
                        std::to_string(idx) + " out of range (have " +
                        std::to_string(mesh.vertices.size()) + " vertices)");
        }
        poly.push_back(static_cast<int>(idx - 1));
      }
      for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        mesh.faces.push_back({poly[0], poly[i], poly[i + 1]});
      }
    }
    // Any other record type is skipped.
  }
  return mesh;
}

Mesh load_obj(const std::string &text) {
  std::istringstream iss(text);
  return load_obj(iss);
}

Mesh load_obj_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open OBJ file for reading: " + path);
  return load_obj(in);
}

void save_obj(const Mesh &mesh, std::ostream &out) {
  char buf[128];
  for (const auto &v : mesh.vertices) {
    // %.17g guarantees the double survives a parse round-trip bit-exactly.
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const auto &f : mesh.faces) {
    out << "f " << (f[0] + 1) << ' ' << (f[1] + 1) << ' ' << (f[2] + 1) << '\n';
  }
}

std::string save_obj(const Mesh &mesh) {
  std::ostringstream oss;
  save_obj(mesh, oss);
  return oss.str();
}

void save_obj_file(const Mesh &mesh, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open OBJ file for writing: " + path);
  save_obj(mesh, out);
  if (!out) throw IoError("write failed for OBJ file: " + path);
}

}  // namespace meshprior
