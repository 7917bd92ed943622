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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <toml.hpp>

#include "qlab/errors.hpp"
#include "qlab/harness.hpp"

namespace qlab {

namespace {

constexpr std::size_t kMaxSweepQubits = 20;

std::size_t as_count(const toml::node& node, const std::string& key) {
  const auto v = node.value<std::int64_t>();
  if (!v || *v < 0) throw config_error("'" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(*v);
}

double as_real(const toml::node& node, const std::string& key) {
  const auto v = node.value<double>();
  if (!v) throw config_error("'" + key + "' must be a number");
  return *v;
}

std::vector<std::size_t> count_list(const toml::node& node, const std::string& key) {
  const toml::array* arr = node.as_array();
  if (arr == nullptr) throw config_error("'" + key + "' must be an array of integers");
  std::vector<std::size_t> out;
  for (const toml::node& el : *arr) out.push_back(as_count(el, key));
  return out;
}

std::vector<std::string> string_list(const toml::node& node, const std::string& key) {
  const toml::array* arr = node.as_array();
  if (arr == nullptr) throw config_error("'" + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const toml::node& el : *arr) {
    const auto v = el.value<std::string>();
    if (!v) throw config_error("'" + key + "' must contain strings");
    out.push_back(*v);
  }
  return out;
}

template <class F>
void with(const toml::table& t, const char* key, F&& f) {
  if (const toml::node* node = t.get(key)) f(*node, std::string(key));
}

void reject_unknown(const toml::table& t, std::initializer_list<std::string_view> known, const std::string& where) {
  for (const auto& [key, node] : t) {
    if (std::find(known.begin(), known.end(), key.str()) == known.end()) {
      throw config_error("unknown key '" + std::string(key.str()) + "'" + (where.empty() ? "" : " in [" + where + "]"));
    }
  }
}

ReadoutProfile read_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open noise profile " + path.string());
  try {
    return ReadoutProfile::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw config_error("malformed noise profile " + path.string() + ": " + e.what());
  }
}

}  // namespace

const char* task_name(Task t) {
  switch (t) {
    case Task::States: return "states";
    case Task::Dynamics: return "dynamics";
    case Task::Qpca: return "qpca";
    case Task::Bounds: return "bounds";
  }
  return "?";
}

Task task_from_name(const std::string& name) {
  for (Task t : {Task::States, Task::Dynamics, Task::Qpca, Task::Bounds}) {
    if (name == task_name(t)) return t;
  }
  throw config_error("unknown task: " + name);
}

std::optional<ReadoutProfile> NoiseSetting::for_width(std::size_t width) const {
  if (profile) {
    if (profile->width() < width) {
      throw config_error("noise profile covers " + std::to_string(profile->width()) + " bits but " +
                         std::to_string(width) + " are measured");
    }
    ReadoutProfile p;
    p.calib.assign(profile->calib.begin(), profile->calib.begin() + static_cast<std::ptrdiff_t>(width));
    return p;
  }
  if (flip > 0.0) return ReadoutProfile::uniform(width, flip);
  return std::nullopt;
}

void ExperimentPlan::validate() const {
  if (n_values.empty() && task != Task::Bounds) throw config_error("plan needs at least one qubit count");
  if (strategies.empty()) throw config_error("plan needs at least one strategy");
  if (!(accuracy_target > 0.5 && accuracy_target < 1.0)) throw config_error("accuracy_target must lie in (0.5, 1)");
  if (!(noise.flip >= 0.0 && noise.flip < 0.5)) throw config_error("noise flip rate must lie in [0, 0.5)");
  if (noise.profile) {
    try {
      noise.profile->validate();
    } catch (const Error& e) {
      throw config_error(std::string("invalid noise profile: ") + e.what());
    }
  }
  for (const std::string& f : formats) {
    if (f != "csv" && f != "json" && f != "svg") throw config_error("unknown output format: " + f);
  }
  const auto positive = [](const std::vector<std::size_t>& v, const char* what) {
    for (std::size_t b : v) {
      if (b == 0) throw config_error(std::string(what) + " must be >= 1");
    }
  };
  switch (task) {
    case Task::States:
      if (trials == 0) throw config_error("trials must be >= 1");
      if (!(alpha > -1.0 && alpha < 1.0 && alpha != 0.0)) throw config_error("alpha must be non-zero with |alpha| < 1");
      positive(budgets_conventional, "budgets");
      positive(budgets_quantum, "budgets");
      if (cap_conventional == 0 || cap_quantum == 0) throw config_error("budget caps must be >= 1");
      for (std::size_t n : n_values) {
        if (n == 0 || n > 64) throw config_error("state sweeps support 1 to 64 qubits");
      }
      break;
    case Task::Dynamics:
      if (circuits_per_class == 0) throw config_error("circuits_per_class must be >= 1");
      if (reps_conventional < 2 || reps_quantum < 2) throw config_error("repetitions must be >= 2");
      if (gamma < 0.0) throw config_error("gamma must be >= 0");
      for (std::size_t n : n_values) {
        if (n < 2 || n > kMaxSweepQubits) throw config_error("dynamics sweeps support 2 to 20 qubits");
      }
      break;
    case Task::Qpca:
      if (instances == 0) throw config_error("instances must be >= 1");
      positive(copies, "copies");
      for (std::size_t n : n_values) {
        if (n < 2) throw config_error("qpca needs n >= 2");
      }
      break;
    case Task::Bounds:
      if (n_values.empty()) throw config_error("bounds table needs qubit counts");
      if (!(delta > 0.0 && delta <= 0.5)) throw config_error("delta must lie in (0, 0.5]");
      if (!(success_p > 0.5 && success_p < 1.0)) throw config_error("success probability must lie in (0.5, 1)");
      for (std::size_t n : n_values) {
        if (n < 2 || n > 60) throw config_error("bounds table supports 2 to 60 qubits");
      }
      break;
  }
}

nlohmann::json ExperimentPlan::to_json() const {
  nlohmann::json j;
  j["task"] = task_name(task);
  j["seed"] = seed;
  j["n"] = n_values;
  auto strat = nlohmann::json::array();
  for (Strategy s : strategies) strat.push_back(strategy_name(s));
  j["strategies"] = strat;
  j["accuracy_target"] = accuracy_target;
  nlohmann::json nz{{"flip", noise.flip}};
  nz["profile"] = noise.profile ? noise.profile->to_json() : nlohmann::json(nullptr);
  j["noise"] = nz;
  switch (task) {
    case Task::States:
      j["trials"] = trials;
      j["alpha"] = alpha;
      j["budgets"] = {{"conventional", budgets_conventional},
                      {"quantum_enhanced", budgets_quantum},
                      {"search", search},
                      {"cap_conventional", cap_conventional},
                      {"cap_quantum_enhanced", cap_quantum}};
      break;
    case Task::Dynamics:
      j["dynamics"] = {{"circuits_per_class", circuits_per_class},
                       {"depth", depth},
                       {"repetitions_conventional", reps_conventional},
                       {"repetitions_quantum_enhanced", reps_quantum},
                       {"gamma", gamma}};
      break;
    case Task::Qpca:
      j["qpca"] = {{"instances", instances}, {"copies", copies}};
      break;
    case Task::Bounds:
      j["bounds"] = {{"delta", delta}, {"k", memory_qubits}, {"p", success_p}};
      break;
  }
  return j;
}

ExperimentPlan ExperimentPlan::from_json(const nlohmann::json& j) {
  ExperimentPlan p;
  p.task = task_from_name(j.at("task").get<std::string>());
  p.seed = j.at("seed").get<std::uint64_t>();
  p.n_values = j.at("n").get<std::vector<std::size_t>>();
  p.strategies.clear();
  for (const auto& s : j.at("strategies")) p.strategies.push_back(strategy_from_name(s.get<std::string>()));
  p.accuracy_target = j.at("accuracy_target").get<double>();
  p.noise.flip = j.at("noise").at("flip").get<double>();
  if (!j.at("noise").at("profile").is_null()) p.noise.profile = ReadoutProfile::from_json(j.at("noise").at("profile"));
  if (j.contains("trials")) p.trials = j.at("trials").get<std::size_t>();
  if (j.contains("alpha")) p.alpha = j.at("alpha").get<double>();
  if (j.contains("budgets")) {
    const auto& b = j.at("budgets");
    p.budgets_conventional = b.at("conventional").get<std::vector<std::size_t>>();
    p.budgets_quantum = b.at("quantum_enhanced").get<std::vector<std::size_t>>();
    p.search = b.at("search").get<bool>();
    p.cap_conventional = b.at("cap_conventional").get<std::size_t>();
    p.cap_quantum = b.at("cap_quantum_enhanced").get<std::size_t>();
  }
  if (j.contains("dynamics")) {
    const auto& d = j.at("dynamics");
    p.circuits_per_class = d.at("circuits_per_class").get<std::size_t>();
    p.depth = d.at("depth").get<std::size_t>();
    p.reps_conventional = d.at("repetitions_conventional").get<std::size_t>();
    p.reps_quantum = d.at("repetitions_quantum_enhanced").get<std::size_t>();
    p.gamma = d.at("gamma").get<double>();
  }
  if (j.contains("qpca")) {
    p.instances = j.at("qpca").at("instances").get<std::size_t>();
    p.copies = j.at("qpca").at("copies").get<std::vector<std::size_t>>();
  }
  if (j.contains("bounds")) {
    p.delta = j.at("bounds").at("delta").get<double>();
    p.memory_qubits = j.at("bounds").at("k").get<std::size_t>();
    p.success_p = j.at("bounds").at("p").get<double>();
  }
  return p;
}

std::string ExperimentPlan::hash() const {
  // FNV-1a over the canonical (key-sorted) JSON text.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool ExperimentPlan::wants(const std::string& format) const {
  for (const std::string& f : formats) {
    if (f == format) return true;
  }
  return false;
}

namespace {

ExperimentPlan parse_table(const toml::table& t, const std::filesystem::path& base, std::optional<Task> expected) {
  ExperimentPlan p;
  if (expected) p.task = *expected;
  reject_unknown(t,
                 {"task", "seed", "n", "strategies", "trials", "accuracy_target", "alpha", "threads", "budgets",
                  "dynamics", "qpca", "bounds", "noise", "output"},
                 "");
  with(t, "task", [&](const toml::node& v, const std::string& k) {
    const auto s = v.value<std::string>();
    if (!s) throw config_error("'" + k + "' must be a string");
    p.task = task_from_name(*s);
    if (expected && p.task != *expected) {
      throw config_error(std::string("config is for task '") + *s + "' but '" + task_name(*expected) + "' was requested");
    }
  });
  with(t, "seed", [&](const toml::node& v, const std::string& k) { p.seed = as_count(v, k); });
  with(t, "n", [&](const toml::node& v, const std::string& k) {
    if (v.is_array()) {
      p.n_values = count_list(v, k);
    } else if (const toml::table* r = v.as_table()) {
      std::size_t lo = 2, hi = 2, step = 1;
      with(*r, "min", [&](const toml::node& x, const std::string& kk) { lo = as_count(x, kk); });
      with(*r, "max", [&](const toml::node& x, const std::string& kk) { hi = as_count(x, kk); });
      with(*r, "step", [&](const toml::node& x, const std::string& kk) { step = as_count(x, kk); });
      if (step == 0 || lo > hi) throw config_error("'n' range needs min <= max and step >= 1");
      for (std::size_t n = lo; n <= hi; n += step) p.n_values.push_back(n);
    } else {
      p.n_values = {as_count(v, k)};
    }
  });
  with(t, "strategies", [&](const toml::node& v, const std::string& k) {
    p.strategies.clear();
    for (const std::string& s : string_list(v, k)) {
      try {
        p.strategies.push_back(strategy_from_name(s));
      } catch (const Error&) {
        throw config_error("unknown strategy: " + s);
      }
    }
  });
  with(t, "trials", [&](const toml::node& v, const std::string& k) { p.trials = as_count(v, k); });
  with(t, "accuracy_target", [&](const toml::node& v, const std::string& k) { p.accuracy_target = as_real(v, k); });
  with(t, "alpha", [&](const toml::node& v, const std::string& k) { p.alpha = as_real(v, k); });
  with(t, "threads", [&](const toml::node& v, const std::string& k) { p.threads = as_count(v, k); });

  if (const toml::table* b = t["budgets"].as_table()) {
    reject_unknown(*b, {"conventional", "quantum_enhanced", "search", "cap_conventional", "cap_quantum_enhanced"}, "budgets");
    with(*b, "conventional", [&](const toml::node& v, const std::string& k) { p.budgets_conventional = count_list(v, k); });
    with(*b, "quantum_enhanced", [&](const toml::node& v, const std::string& k) { p.budgets_quantum = count_list(v, k); });
    with(*b, "search", [&](const toml::node& v, const std::string& k) {
      const auto s = v.value<bool>();
      if (!s) throw config_error("'" + k + "' must be a boolean");
      p.search = *s;
    });
    with(*b, "cap_conventional", [&](const toml::node& v, const std::string& k) { p.cap_conventional = as_count(v, k); });
    with(*b, "cap_quantum_enhanced", [&](const toml::node& v, const std::string& k) { p.cap_quantum = as_count(v, k); });
  }
  if (const toml::table* d = t["dynamics"].as_table()) {
    reject_unknown(*d, {"circuits_per_class", "depth", "repetitions_conventional", "repetitions_quantum_enhanced", "gamma"},
                   "dynamics");
    with(*d, "circuits_per_class", [&](const toml::node& v, const std::string& k) { p.circuits_per_class = as_count(v, k); });
    with(*d, "depth", [&](const toml::node& v, const std::string& k) { p.depth = as_count(v, k); });
    with(*d, "repetitions_conventional", [&](const toml::node& v, const std::string& k) { p.reps_conventional = as_count(v, k); });
    with(*d, "repetitions_quantum_enhanced", [&](const toml::node& v, const std::string& k) { p.reps_quantum = as_count(v, k); });
    with(*d, "gamma", [&](const toml::node& v, const std::string& k) { p.gamma = as_real(v, k); });
  }
  if (const toml::table* q = t["qpca"].as_table()) {
    reject_unknown(*q, {"instances", "copies"}, "qpca");
    with(*q, "instances", [&](const toml::node& v, const std::string& k) { p.instances = as_count(v, k); });
    with(*q, "copies", [&](const toml::node& v, const std::string& k) { p.copies = count_list(v, k); });
  }
  if (const toml::table* b = t["bounds"].as_table()) {
    reject_unknown(*b, {"delta", "k", "p"}, "bounds");
    with(*b, "delta", [&](const toml::node& v, const std::string& k) { p.delta = as_real(v, k); });
    with(*b, "k", [&](const toml::node& v, const std::string& k) { p.memory_qubits = as_count(v, k); });
    with(*b, "p", [&](const toml::node& v, const std::string& k) { p.success_p = as_real(v, k); });
  }
  if (const toml::table* nz = t["noise"].as_table()) {
    reject_unknown(*nz, {"flip", "profile"}, "noise");
    with(*nz, "flip", [&](const toml::node& v, const std::string& k) { p.noise.flip = as_real(v, k); });
    with(*nz, "profile", [&](const toml::node& v, const std::string& k) {
      const auto s = v.value<std::string>();
      if (!s) throw config_error("'" + k + "' must be a path");
      std::filesystem::path path(*s);
      if (path.is_relative()) path = base / path;
      p.noise.profile = read_profile(path);
    });
  }
  if (const toml::table* o = t["output"].as_table()) {
    reject_unknown(*o, {"dir", "formats"}, "output");
    with(*o, "dir", [&](const toml::node& v, const std::string& k) {
      const auto s = v.value<std::string>();
      if (!s) throw config_error("'" + k + "' must be a path");
      p.out_dir = *s;
    });
    with(*o, "formats", [&](const toml::node& v, const std::string& k) { p.formats = string_list(v, k); });
  }
  return p;
}

}  // namespace

ExperimentPlan parse_plan_toml(const std::string& text, std::optional<Task> expected) {
  try {
    return parse_table(toml::parse(text), std::filesystem::current_path(), expected);
  } catch (const toml::parse_error& e) {
    throw config_error(std::string("TOML syntax error: ") + std::string(e.description()));
  }
}

ExperimentPlan load_plan(const std::filesystem::path& path, std::optional<Task> expected) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_table(toml::parse(ss.str(), path.string()), path.parent_path(), expected);
  } catch (const toml::parse_error& e) {
    throw config_error(path.string() + ": " + std::string(e.description()));
  }
}

}  // namespace qlab
