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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "meshprior/mesh.h"
#include "meshprior/network.h"
#include "meshprior/smoothing.h"

namespace meshprior {

enum class TaskKind { kDenoise, kComplete, kPositionsAblation };
enum class SelectPolicy { kBestMad, kFinal };

std::string to_string(TaskKind task);
TaskKind task_from_string(const std::string &name);
std::string to_string(SelectPolicy policy);
SelectPolicy select_policy_from_string(const std::string &name);

/// Everything a training run depends on. The positions-ablation task makes
/// the network regress vertex positions directly, with no smoothing
/// subtraction; the other two regress displacements from the smoothed mesh.
struct TrainConfig {
  TaskKind task = TaskKind::kDenoise;
  double learning_rate = 0.01;
  double lambda = 0.2;
  int max_steps = 4000;
  int log_interval = 10;
  std::uint64_t seed = 0;
  SmoothingConfig smoothing{0.5, 30};  // iterations 0 = keep the input unsmoothed
  NetworkSpec spec;
  double epsilon_norm = 1e-12;
  SelectPolicy select = SelectPolicy::kFinal;

  // Optional early stop: finish once the max per-vertex displacement change
  // over `stop_window` steps drops below stop_tol_edge_fraction times the
  // mean edge length. 0 disables (fixed step budget).
  double stop_tol_edge_fraction = 0.0;
  int stop_window = 100;

  void validate() const;

  /// lr 0.01, lambda 0.2, 4000 steps, 30 smoothing iterations.
  static TrainConfig denoise_defaults();
  /// lr 0.001, lambda 0.03, 8000 steps, 10 smoothing iterations.
  static TrainConfig complete_defaults();
};

struct RunRecord {
  int step = 0;
  double recon_loss = 0.0;
  double lap_loss = 0.0;
  double total_loss = 0.0;
  std::optional<double> mad;  // only when a ground truth was supplied
};

struct RunReport {
  std::vector<RunRecord> records;      // sorted by step
  std::optional<int> best_step;        // argmin of logged MAD, when available
  int selected_step = 0;               // step whose displacements produced output_mesh
  TrainConfig config;
  Mesh output_mesh;
};

/// Runs the restoration loop: smooth once, sample the network input once,
/// then iterate forward / losses / backward / Adam for config.max_steps
/// steps, logging every log_interval steps. The output mesh adds the final
/// or best-step displacements to the smoothed positions (the predicted
/// positions themselves for the positions ablation).
///
/// `mask` may be null (all-true); for completion it is the fill_holes mask.
/// `ground_truth` must share the input's face list; it enables MAD logging
/// and the best-MAD selection policy.
RunReport train_dmp(const Mesh &mesh_in, const std::vector<bool> *mask,
                    const TrainConfig &config, const Mesh *ground_truth = nullptr);

/// kBestMad: step of the smallest logged MAD (earliest on ties); requires
/// MAD records. kFinal: last logged step.
int select_output_step(const RunReport &report, SelectPolicy policy);

/// CSV with header `step,recon_loss,lap_loss,total_loss,mad` (mad column
/// blank without ground truth) and the config echoed as `#` comment lines.
void write_report_csv(const RunReport &report, std::ostream &out);
std::string write_report_csv(const RunReport &report);

/// Parses the data rows back (comment lines are skipped).
std::vector<RunRecord> read_report_csv(std::istream &in);
std::vector<RunRecord> read_report_csv(const std::string &text);

}  // namespace meshprior
