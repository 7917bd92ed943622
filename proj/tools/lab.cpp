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

// lab: command-line front end for the experiment sweeps.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qlab/errors.hpp"
#include "qlab/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

std::vector<std::string> split_formats(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string noise;
  std::string format;
  std::size_t threads = 0;
  bool fresh = false;
  bool quiet = false;
};

int run(qlab::Task task, const Options& opt) {
  qlab::ExperimentPlan plan = qlab::load_plan(opt.config, task);
  if (opt.seed) plan.seed = *opt.seed;
  if (!opt.out.empty()) plan.out_dir = opt.out;
  if (!opt.format.empty()) plan.formats = split_formats(opt.format);
  if (opt.threads > 0) plan.threads = opt.threads;
  if (!opt.noise.empty()) {
    std::ifstream in(opt.noise);
    if (!in) throw qlab::config_error("cannot open noise profile " + opt.noise);
    try {
      plan.noise.profile = qlab::ReadoutProfile::from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw qlab::config_error("malformed noise profile " + opt.noise + ": " + e.what());
    }
  }
  plan.validate();

  std::filesystem::create_directories(plan.out_dir);
  const std::filesystem::path record_path = plan.out_dir / "record.json";
  qlab::RunRecord resume;
  if (!opt.fresh && std::filesystem::exists(record_path)) {
    resume = qlab::load_record(record_path);
    if (resume.plan_hash != plan.hash()) {
      resume = {};
    } else if (!opt.quiet) {
      std::cerr << "resuming from " << record_path << " (" << resume.completed.size() << " units done)\n";
    }
  }
  const auto checkpoint = [&](const qlab::RunRecord& r) { qlab::save_record(r, record_path); };
  const qlab::RunRecord record = qlab::run_plan(plan, resume, checkpoint);
  const auto files = qlab::emit_report(record, plan.out_dir, plan.formats);
  if (!opt.quiet) {
    for (const std::string& f : files) std::cerr << "wrote " << (plan.out_dir / f).string() << "\n";
    std::cout << qlab::summary_csv(record);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample-complexity experiments for conventional and quantum-enhanced learning"};
  app.require_subcommand(1);
  Options opt;
  std::vector<std::pair<CLI::App*, qlab::Task>> commands;
  for (qlab::Task t : {qlab::Task::States, qlab::Task::Dynamics, qlab::Task::Qpca, qlab::Task::Bounds}) {
    CLI::App* sub = app.add_subcommand(qlab::task_name(t), std::string("run the ") + qlab::task_name(t) + " plan");
    sub->add_option("--config", opt.config, "TOML plan")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "master seed (overrides the plan)");
    sub->add_option("--out", opt.out, "output directory (overrides the plan)");
    sub->add_option("--noise", opt.noise, "readout profile JSON (list of 2x2 confusion matrices)");
    sub->add_option("--format", opt.format, "comma-separated subset of csv,json,svg");
    sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    sub->add_flag("--fresh", opt.fresh, "ignore an existing record in the output directory");
    sub->add_flag("--quiet", opt.quiet, "print nothing on success");
    commands.emplace_back(sub, t);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (const auto& [sub, task] : commands) {
      if (sub->parsed()) return run(task, opt);
    }
  } catch (const qlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case qlab::Error::Kind::Config:
      case qlab::Error::Kind::InvalidSpec:
      case qlab::Error::Kind::Validation:
      case qlab::Error::Kind::InvalidDimension: return kExitConfig;
      case qlab::Error::Kind::ResourceLimit: return kExitResource;
      default: return kExitFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
