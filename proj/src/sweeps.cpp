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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qlab/bell.hpp"
#include "qlab/bounds.hpp"
#include "qlab/errors.hpp"
#include "qlab/harness.hpp"
#include "qlab/kpca.hpp"
#include "qlab/qpca.hpp"
#include "qlab/shadow.hpp"

namespace qlab {

namespace {

constexpr const char* kVersion = "0.1.0";

// Stream tags keep the seed paths of different sweeps apart.
enum : std::uint64_t { kTagStates = 1, kTagCircuit = 2, kTagShots = 3, kTagInstance = 4, kTagMeasure = 5 };

std::uint64_t strategy_id(Strategy s) { return s == Strategy::Conventional ? 0 : 1; }

std::size_t worker_count(const ExperimentPlan& plan) {
  if (plan.threads > 0) return plan.threads;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::string unit_key(const std::string& task, std::size_t n, const std::string& strategy) {
  return task + "|" + std::to_string(n) + "|" + strategy;
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunRecord start_record(const ExperimentPlan& plan, RunRecord resume) {
  plan.validate();
  const std::string hash = plan.hash();
  if (resume.plan_hash == hash) return resume;
  RunRecord r;
  r.plan_hash = hash;
  r.task = task_name(plan.task);
  r.seed = plan.seed;
  r.version = kVersion;
  r.plan = plan.to_json();
  return r;
}

void notify(const Checkpoint& checkpoint, const RunRecord& record) {
  if (checkpoint) checkpoint(record);
}

PointResult make_point(const std::string& task, std::size_t n, Strategy s, std::size_t budget, std::size_t copies,
                       std::size_t trials, std::size_t successes) {
  PointResult p;
  p.task = task;
  p.n = n;
  p.strategy = strategy_name(s);
  p.budget = budget;
  p.copies = copies;
  p.trials = trials;
  p.successes = successes;
  p.accuracy = static_cast<double>(successes) / static_cast<double>(trials);
  std::tie(p.ci_low, p.ci_high) = wilson_interval(successes, trials);
  return p;
}

}  // namespace

std::string PointResult::key() const { return task + "|" + std::to_string(n) + "|" + strategy + "|" + std::to_string(budget); }

const PointResult* RunRecord::find_point(const std::string& key) const {
  for (const PointResult& p : points) {
    if (p.key() == key) return &p;
  }
  return nullptr;
}

bool RunRecord::is_completed(const std::string& unit) const {
  return std::find(completed.begin(), completed.end(), unit) != completed.end();
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool states_trial(std::size_t n, Strategy strategy, std::size_t budget, double alpha,
                  const std::optional<ReadoutProfile>& noise, Rng& rng) {
  const PauliString p = sample_pauli_string(n, true, rng);
  const int s = rng.sign();
  PauliString q = sample_pauli_string(n, true, rng);
  while (q == p) q = sample_pauli_string(n, true, rng);
  const bool p_first = rng.bernoulli(0.5);
  const PauliString& o1 = p_first ? p : q;
  const PauliString& o2 = p_first ? q : p;
  const int truth = p_first ? 1 : 2;

  const EnsembleSpec spec{p, s * alpha};
  const ReadoutProfile* profile = noise ? &*noise : nullptr;
  int choice = 0;
  if (strategy == Strategy::QuantumEnhanced) {
    choice = compare_observables(run_quantum_enhanced(spec, budget, profile, rng), o1, o2);
  } else {
    choice = compare_observables_conventional(run_conventional(spec, budget, profile, rng), o1, o2);
  }
  return choice == truth;
}

PointResult evaluate_states_point(const ExperimentPlan& plan, std::size_t n, Strategy strategy, std::size_t budget) {
  const std::size_t width = strategy == Strategy::QuantumEnhanced ? 2 * n : n;
  const std::optional<ReadoutProfile> noise = plan.noise.for_width(width);
  std::vector<char> ok(plan.trials, 0);
  parallel_for(plan.trials, worker_count(plan), [&](std::size_t t) {
    Rng rng = Rng::derive(plan.seed, {kTagStates, n, strategy_id(strategy), budget, t});
    ok[t] = states_trial(n, strategy, budget, plan.alpha, noise, rng) ? 1 : 0;
  });
  const auto successes = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  const std::size_t copies = strategy == Strategy::QuantumEnhanced ? 2 * budget : budget;
  return make_point("states", n, strategy, budget, copies, plan.trials, successes);
}

MinimalBudget minimal_budget_search(std::size_t n, Strategy strategy, double target, std::size_t cap,
                                    const std::function<double(std::size_t)>& eval) {
  MinimalBudget out;
  out.n = n;
  out.strategy = strategy_name(strategy);
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t b = 1;; b = std::min(2 * b, cap)) {
    const double acc = eval(b);
    if (acc >= target) {
      hi = b;
      break;
    }
    lo = b;
    if (b >= cap) {
      out.reached = false;
      out.budget = cap;
      out.accuracy = acc;
      return out;
    }
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (eval(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.reached = true;
  out.budget = hi;
  out.accuracy = eval(hi);
  return out;
}

RunRecord run_states_sweep(const ExperimentPlan& plan, RunRecord resume, const Checkpoint& checkpoint) {
  if (plan.task != Task::States) throw config_error("plan task is not 'states'");
  RunRecord record = start_record(plan, std::move(resume));
  for (std::size_t n : plan.n_values) {
    for (Strategy s : plan.strategies) {
      const std::string unit = unit_key("states", n, strategy_name(s));
      if (record.is_completed(unit)) continue;
      const Clock clock;
      const auto eval = [&](std::size_t budget) {
        const std::string key = "states|" + std::to_string(n) + "|" + strategy_name(s) + "|" + std::to_string(budget);
        if (const PointResult* hit = record.find_point(key)) return hit->accuracy;
        record.points.push_back(evaluate_states_point(plan, n, s, budget));
        notify(checkpoint, record);
        return record.points.back().accuracy;
      };
      for (std::size_t b : s == Strategy::Conventional ? plan.budgets_conventional : plan.budgets_quantum) eval(b);
      if (plan.search) {
        const std::size_t cap = s == Strategy::Conventional ? plan.cap_conventional : plan.cap_quantum;
        record.minimal.push_back(minimal_budget_search(n, s, plan.accuracy_target, cap, eval));
      }
      record.completed.push_back(unit);
      record.timings[unit] = clock.seconds();
      notify(checkpoint, record);
    }
    const std::string bound_unit = unit_key("states", n, "bound");
    if (!record.is_completed(bound_unit)) {
      record.bounds.push_back({n, "lb_compare_abs", lb_compare_abs(n, 1.0 - plan.accuracy_target)});
      record.completed.push_back(bound_unit);
    }
  }
  return record;
}

Circuit sweep_circuit(const ExperimentPlan& plan, std::size_t n, SymmetryClass cls, std::size_t index) {
  const std::uint64_t cls_id = cls == SymmetryClass::General ? 0 : 1;
  const std::uint64_t seed = Rng::derive(plan.seed, {kTagCircuit, n, cls_id, index}).next();
  Rng rng(seed);
  Circuit c = generate_1d_circuit(n, plan.depth == 0 ? n : plan.depth, cls, rng);
  c.seed = seed;
  return c;
}

RunRecord run_dynamics_sweep(const ExperimentPlan& plan, RunRecord resume, const Checkpoint& checkpoint) {
  if (plan.task != Task::Dynamics) throw config_error("plan task is not 'dynamics'");
  RunRecord record = start_record(plan, std::move(resume));
  const std::size_t per_class = plan.circuits_per_class;
  const std::size_t count = 2 * per_class;
  for (std::size_t n : plan.n_values) {
    const bool any_quantum =
        std::find(plan.strategies.begin(), plan.strategies.end(), Strategy::QuantumEnhanced) != plan.strategies.end();
    if (any_quantum && n > BellStringDistribution::kMaxQubits) {
      throw resource_error("quantum-enhanced dynamics limited to 12 qubits (requested " + std::to_string(n) + ")");
    }
    std::vector<Circuit> circuits;
    for (Strategy s : plan.strategies) {
      const std::string unit = unit_key("dynamics", n, strategy_name(s));
      if (record.is_completed(unit)) continue;
      const Clock clock;
      if (circuits.empty()) {
        circuits.resize(count);
        parallel_for(count, worker_count(plan), [&](std::size_t c) {
          const SymmetryClass cls = c < per_class ? SymmetryClass::General : SymmetryClass::TSymmetric;
          circuits[c] = sweep_circuit(plan, n, cls, c < per_class ? c : c - per_class);
        });
      }
      const std::size_t reps = s == Strategy::Conventional ? plan.reps_conventional : plan.reps_quantum;
      const std::size_t width = s == Strategy::Conventional ? n : 2 * n;
      const std::optional<ReadoutProfile> noise = plan.noise.for_width(width);
      std::vector<FeatureVector> features(count);
      parallel_for(count, worker_count(plan), [&](std::size_t c) {
        const DynamicsExperimentConfig cfg{n, circuits[c].depth, reps, s, noise};
        Rng rng = Rng::derive(plan.seed, {kTagShots, n, strategy_id(s), c});
        features[c] = build_features(run_dynamics(circuits[c], cfg, rng));
      });

      const double gamma = plan.gamma > 0.0 ? plan.gamma : default_gamma(features);
      const KernelModel model = fit_kernel_pca(features, gamma, 2);
      const Eigen::MatrixXd proj = training_projections(model);
      std::vector<double> comp1(count);
      std::vector<int> truth(count);
      for (std::size_t c = 0; c < count; ++c) {
        comp1[c] = proj(static_cast<Eigen::Index>(c), 0);
        truth[c] = c < per_class ? 0 : 1;
      }
      std::vector<int> labels(count, 0);
      try {
        labels = classify_by_split(comp1);
      } catch (const Error& e) {
        if (e.kind() != Error::Kind::Degenerate) throw;
      }
      const double acc = score_accuracy(labels, truth);
      const auto correct = static_cast<std::size_t>(std::llround(acc * static_cast<double>(count)));
      const std::size_t copies = s == Strategy::QuantumEnhanced ? 2 * reps : reps;
      record.points.push_back(make_point("dynamics", n, s, reps, copies, count, correct));
      for (std::size_t c = 0; c < count; ++c) {
        record.projections.push_back({n, strategy_name(s), c, symmetry_name(circuits[c].symmetry), comp1[c],
                                      proj(static_cast<Eigen::Index>(c), 1)});
      }
      record.completed.push_back(unit);
      record.timings[unit] = clock.seconds();
      notify(checkpoint, record);
    }
  }
  return record;
}

RunRecord run_qpca_sweep(const ExperimentPlan& plan, RunRecord resume, const Checkpoint& checkpoint) {
  if (plan.task != Task::Qpca) throw config_error("plan task is not 'qpca'");
  RunRecord record = start_record(plan, std::move(resume));
  for (std::size_t n : plan.n_values) {
    if (n > 8) throw resource_error("qpca simulation limited to 8 qubits (requested " + std::to_string(n) + ")");
    std::vector<PcaInstance> instances(plan.instances);
    bool built = false;
    for (Strategy s : plan.strategies) {
      for (std::size_t budget : plan.copies) {
        const std::string unit = unit_key("qpca", n, strategy_name(s)) + "|" + std::to_string(budget);
        if (record.is_completed(unit)) continue;
        const Clock clock;
        if (!built) {
          for (std::size_t i = 0; i < plan.instances; ++i) {
            Rng rng = Rng::derive(plan.seed, {kTagInstance, n, i});
            instances[i] = make_instance(n, i % 2 ? Hypothesis::B : Hypothesis::A, rng);
          }
          built = true;
        }
        std::vector<QpcaRow> rows(plan.instances);
        parallel_for(plan.instances, worker_count(plan), [&](std::size_t i) {
          const PcaInstance& inst = instances[i];
          Rng rng = Rng::derive(plan.seed, {kTagMeasure, n, strategy_id(s), budget, i});
          QpcaRow& row = rows[i];
          row.n = n;
          row.strategy = strategy_name(s);
          row.instance = i;
          row.hypothesis = hypothesis_name(inst.hypothesis);
          if (s == Strategy::QuantumEnhanced) {
            const std::size_t shots = std::max<std::size_t>(1, budget / 2);
            const TwoCopyTally t = two_copy_tally(inst, shots, rng);
            // An unstable ratio (non-positive purity mean) is recorded as 0.
            row.estimate = t.denominator > 0.0 ? t.numerator / t.denominator : 0.0;
            row.guess = hypothesis_name(two_copy_guess(t));
            row.copies_used = 2 * shots;
          } else {
            const BaselineResult b = conventional_baseline(inst, budget, rng);
            row.estimate = b.statistic;
            row.guess = hypothesis_name(b.guess);
            row.copies_used = budget;
          }
        });
        std::size_t correct = 0;
        for (const QpcaRow& r : rows) correct += r.guess == r.hypothesis ? 1 : 0;
        record.points.push_back(make_point("qpca", n, s, budget, rows.front().copies_used, plan.instances, correct));
        record.qpca.insert(record.qpca.end(), rows.begin(), rows.end());
        record.completed.push_back(unit);
        record.timings[unit] = clock.seconds();
        notify(checkpoint, record);
      }
    }
    const std::string bound_unit = unit_key("qpca", n, "bound");
    if (!record.is_completed(bound_unit)) {
      record.bounds.push_back({n, "lb_qpca", lb_qpca(n)});
      record.completed.push_back(bound_unit);
    }
  }
  return record;
}

RunRecord run_bounds_table(const ExperimentPlan& plan) {
  if (plan.task != Task::Bounds) throw config_error("plan task is not 'bounds'");
  RunRecord record = start_record(plan, {});
  for (std::size_t n : plan.n_values) {
    record.bounds.push_back({n, "lb_predict_abs", lb_predict_abs(n, plan.delta)});
    record.bounds.push_back({n, "lb_compare_abs", lb_compare_abs(n, plan.delta)});
    record.bounds.push_back({n, "lb_qpca", lb_qpca(n)});
    record.bounds.push_back({n, "lb_bounded_memory", lb_bounded_memory(n, std::min(plan.memory_qubits, n), plan.success_p)});
  }
  record.completed.push_back("bounds");
  return record;
}

RunRecord run_plan(const ExperimentPlan& plan, RunRecord resume, const Checkpoint& checkpoint) {
  switch (plan.task) {
    case Task::States: return run_states_sweep(plan, std::move(resume), checkpoint);
    case Task::Dynamics: return run_dynamics_sweep(plan, std::move(resume), checkpoint);
    case Task::Qpca: return run_qpca_sweep(plan, std::move(resume), checkpoint);
    case Task::Bounds: return run_bounds_table(plan);
  }
  throw config_error("unknown task");
}

}  // namespace qlab
