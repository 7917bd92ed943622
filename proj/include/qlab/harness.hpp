// Copyright 2026 The qlab Authors
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
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlab/dynamics.hpp"
#include "qlab/noise.hpp"

namespace qlab {

enum class Task { States, Dynamics, Qpca, Bounds };
const char* task_name(Task t);
Task task_from_name(const std::string& name);

struct NoiseSetting {
  double flip = 0.0;                    // uniform flip rate, used when no profile is given
  std::optional<ReadoutProfile> profile;  // explicit per-bit profile

  bool active() const { return profile.has_value() || flip > 0.0; }
  /// Profile over `width` bits: the first `width` entries of an explicit
  /// profile, or a uniform one. Throws Config if the profile is too narrow.
  std::optional<ReadoutProfile> for_width(std::size_t width) const;
};

struct ExperimentPlan {
  Task task = Task::States;
  std::uint64_t seed = 0;
  std::vector<std::size_t> n_values;
  std::vector<Strategy> strategies{Strategy::Conventional, Strategy::QuantumEnhanced};
  std::size_t trials = 400;
  double accuracy_target = 0.7;
  double alpha = 0.9;
  NoiseSetting noise;

  // states: accuracy-vs-budget grid and minimal-budget search
  std::vector<std::size_t> budgets_conventional;
  std::vector<std::size_t> budgets_quantum;
  bool search = true;
  std::size_t cap_conventional = 5000;
  std::size_t cap_quantum = 500;

  // dynamics
  std::size_t circuits_per_class = 100;
  std::size_t depth = 0;  // 0 means depth = n
  std::size_t reps_conventional = 1000;
  std::size_t reps_quantum = 500;
  double gamma = 0.0;     // 0 means the median heuristic

  // qpca
  std::size_t instances = 1000;
  std::vector<std::size_t> copies{20, 50, 100, 200};

  // bounds
  double delta = 0.3;
  std::size_t memory_qubits = 0;
  double success_p = 2.0 / 3.0;

  // execution and output; not part of the plan hash
  std::size_t threads = 0;  // 0 means hardware concurrency
  std::filesystem::path out_dir = "out";
  std::vector<std::string> formats{"csv", "json", "svg"};

  /// Throws Config on any out-of-range field.
  void validate() const;
  /// Fields that determine results, in canonical form.
  nlohmann::json to_json() const;
  static ExperimentPlan from_json(const nlohmann::json& j);
  /// Stable 64-bit hash of to_json(), hex encoded.
  std::string hash() const;
  bool wants(const std::string& format) const;
};

/// Parses a TOML plan. Throws Config on syntax errors, unknown values, or a
/// `task` key that differs from `expected`. A missing `task` takes `expected`.
/// Relative noise-profile paths resolve against the config's directory.
ExperimentPlan parse_plan_toml(const std::string& text, std::optional<Task> expected = std::nullopt);
ExperimentPlan load_plan(const std::filesystem::path& path, std::optional<Task> expected = std::nullopt);

/// Accuracy of one strategy at one budget.
struct PointResult {
  std::string task;
  std::size_t n = 0;
  std::string strategy;
  std::size_t budget = 0;  // experiments (states), repetitions (dynamics), copies (qpca)
  std::size_t copies = 0;  // copies of the unknown state consumed per trial
  std::size_t trials = 0;
  std::size_t successes = 0;
  double accuracy = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  std::string key() const;
  friend bool operator==(const PointResult&, const PointResult&) = default;
};

struct MinimalBudget {
  std::size_t n = 0;
  std::string strategy;
  bool reached = false;
  std::size_t budget = 0;  // smallest budget meeting the target; the cap if not reached
  double accuracy = 0.0;
  friend bool operator==(const MinimalBudget&, const MinimalBudget&) = default;
};

struct ProjectionRow {
  std::size_t n = 0;
  std::string strategy;
  std::size_t circuit_id = 0;
  std::string true_label;
  double comp1 = 0.0;
  double comp2 = 0.0;
  friend bool operator==(const ProjectionRow&, const ProjectionRow&) = default;
};

struct BoundRow {
  std::size_t n = 0;
  std::string bound_name;
  double value = 0.0;
  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

struct QpcaRow {
  std::size_t n = 0;
  std::string strategy;
  std::size_t copies_used = 0;
  std::size_t instance = 0;
  std::string hypothesis;
  double estimate = 0.0;  // two-copy ratio, or the baseline statistic
  std::string guess;
  friend bool operator==(const QpcaRow&, const QpcaRow&) = default;
};

struct RunRecord {
  std::string plan_hash;
  std::string task;
  std::uint64_t seed = 0;
  std::string version;
  nlohmann::json plan;
  std::vector<PointResult> points;
  std::vector<MinimalBudget> minimal;
  std::vector<ProjectionRow> projections;
  std::vector<BoundRow> bounds;
  std::vector<QpcaRow> qpca;
  /// Completed work units (for resuming).
  std::vector<std::string> completed;
  /// Wall time per unit in seconds; kept out of the JSON record and written
  /// to a separate file so that the record itself is reproducible.
  std::map<std::string, double> timings;

  const PointResult* find_point(const std::string& key) const;
  bool is_completed(const std::string& unit) const;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);

  friend bool operator==(const RunRecord& a, const RunRecord& b) {
    return a.plan_hash == b.plan_hash && a.task == b.task && a.seed == b.seed && a.version == b.version &&
           a.plan == b.plan && a.points == b.points && a.minimal == b.minimal && a.projections == b.projections &&
           a.bounds == b.bounds && a.qpca == b.qpca && a.completed == b.completed;
  }
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials);

/// Runs fn(i) for i in [0, count) on `threads` workers pulling indices from a
/// shared counter. Exceptions are rethrown on the calling thread.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// One comparison instance: draws P, s, Q and the order, runs `budget`
/// experiments of the strategy and reports whether the comparator was right.
bool states_trial(std::size_t n, Strategy strategy, std::size_t budget, double alpha,
                  const std::optional<ReadoutProfile>& noise, Rng& rng);

/// Accuracy of the strategy over plan.trials instances at one budget.
PointResult evaluate_states_point(const ExperimentPlan& plan, std::size_t n, Strategy strategy, std::size_t budget);

/// Doubling then bisection on the budget axis. `eval` returns the accuracy
/// at a budget; results are memoized by the caller.
MinimalBudget minimal_budget_search(std::size_t n, Strategy strategy, double target, std::size_t cap,
                                    const std::function<double(std::size_t)>& eval);

/// Called after each completed unit with the current record.
using Checkpoint = std::function<void(const RunRecord&)>;

/// Each sweep starts from `resume` when it carries the same plan hash and
/// skips work it already holds.
RunRecord run_states_sweep(const ExperimentPlan& plan, RunRecord resume = {}, const Checkpoint& checkpoint = {});
RunRecord run_dynamics_sweep(const ExperimentPlan& plan, RunRecord resume = {}, const Checkpoint& checkpoint = {});
RunRecord run_qpca_sweep(const ExperimentPlan& plan, RunRecord resume = {}, const Checkpoint& checkpoint = {});
RunRecord run_bounds_table(const ExperimentPlan& plan);
RunRecord run_plan(const ExperimentPlan& plan, RunRecord resume = {}, const Checkpoint& checkpoint = {});

/// Circuit used by the dynamics sweep for (n, class, index).
Circuit sweep_circuit(const ExperimentPlan& plan, std::size_t n, SymmetryClass cls, std::size_t index);

// Reports. Each writer returns the file names it produced.
std::string summary_csv(const RunRecord& record);
std::string minimal_budget_csv(const RunRecord& record);
std::string projections_csv(const RunRecord& record);
std::string bounds_csv(const RunRecord& record);
std::string qpca_csv(const RunRecord& record);
std::vector<std::string> emit_report(const RunRecord& record, const std::filesystem::path& dir,
                                     const std::vector<std::string>& formats);

/// Budget-vs-n plot: one series per strategy plus the conventional lower bound.
std::string budget_vs_n_svg(const RunRecord& record, double delta);
std::string accuracy_vs_budget_svg(const RunRecord& record);
std::string projection_svg(const RunRecord& record, std::size_t n, const std::string& strategy);
std::string bounds_svg(const RunRecord& record);

RunRecord load_record(const std::filesystem::path& path);
void save_record(const RunRecord& record, const std::filesystem::path& path);

}  // namespace qlab
