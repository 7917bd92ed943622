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
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "qlab/bounds.hpp"
#include "qlab/errors.hpp"
#include "qlab/harness.hpp"

namespace qlab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Kind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Error::Kind::Io, "write failed for " + path.string());
}

// ---- minimal SVG line/scatter plot -------------------------------------

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
  bool lines = true;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool log_y) {
  constexpr double W = 640, H = 420, L = 70, R = 170, T = 40, B = 55;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const Series& s : series) {
    for (auto [x, y] : s.points) {
      if (log_y && y <= 0.0) continue;
      const double yy = log_y ? std::log10(y) : y;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, yy);
      y1 = std::max(y1, yy);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0;
    x1 = 1;
    y0 = 0;
    y1 = 1;
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double ypad = 0.05 * (y1 - y0);
  y0 -= ypad;
  y1 += ypad;
  const auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto py = [&](double y) { return H - B - ((log_y ? std::log10(y) : y) - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title) << "</text>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    const double ylab = log_y ? std::pow(10.0, yv) : yv;
    o << "<text x=\"" << num(px(xv)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << num(std::round(xv * 100) / 100)
      << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << num(H - B - (yv - y0) / (y1 - y0) * (H - T - B) + 4)
      << "\" text-anchor=\"end\">" << num(std::round(ylab * 1000) / 1000) << "</text>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
  o << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << escape(ylabel)
    << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* colour = kPalette[k % 6];
    std::string path;
    for (auto [x, y] : s.points) {
      if (log_y && y <= 0.0) continue;
      path += (path.empty() ? "M" : " L") + num(px(x)) + "," + num(py(y));
      if (!s.lines || s.points.size() == 1) {
        o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
      }
    }
    if (s.lines && !path.empty()) {
      o << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
    }
    const double ly = T + 16.0 * static_cast<double>(k);
    o << "<line x1=\"" << W - R + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 32 << "\" y2=\"" << ly << "\" stroke=\"" << colour
      << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
    o << "<text x=\"" << W - R + 38 << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string strategy_label(const std::string& s) { return s == "conventional" ? "C" : "Q"; }

}  // namespace

// ---- JSON record -----------------------------------------------------------

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j{{"plan_hash", plan_hash}, {"task", task}, {"seed", seed}, {"version", version}, {"plan", plan}};
  auto pts = nlohmann::json::array();
  for (const PointResult& p : points) {
    pts.push_back({{"task", p.task},
                   {"n", p.n},
                   {"strategy", p.strategy},
                   {"budget", p.budget},
                   {"copies", p.copies},
                   {"trials", p.trials},
                   {"successes", p.successes},
                   {"accuracy", p.accuracy},
                   {"ci_low", p.ci_low},
                   {"ci_high", p.ci_high}});
  }
  j["points"] = pts;
  auto mins = nlohmann::json::array();
  for (const MinimalBudget& m : minimal) {
    mins.push_back({{"n", m.n}, {"strategy", m.strategy}, {"reached", m.reached}, {"budget", m.budget}, {"accuracy", m.accuracy}});
  }
  j["minimal_budgets"] = mins;
  auto proj = nlohmann::json::array();
  for (const ProjectionRow& p : projections) {
    proj.push_back({{"n", p.n},
                    {"strategy", p.strategy},
                    {"circuit_id", p.circuit_id},
                    {"true_label", p.true_label},
                    {"comp1", p.comp1},
                    {"comp2", p.comp2}});
  }
  j["projections"] = proj;
  auto bnd = nlohmann::json::array();
  for (const BoundRow& b : bounds) bnd.push_back({{"n", b.n}, {"bound_name", b.bound_name}, {"value", b.value}});
  j["bounds"] = bnd;
  auto q = nlohmann::json::array();
  for (const QpcaRow& r : qpca) {
    q.push_back({{"n", r.n},
                 {"strategy", r.strategy},
                 {"copies_used", r.copies_used},
                 {"instance", r.instance},
                 {"hypothesis", r.hypothesis},
                 {"estimate", r.estimate},
                 {"guess", r.guess}});
  }
  j["qpca"] = q;
  j["completed"] = completed;
  return j;
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.plan_hash = j.at("plan_hash").get<std::string>();
  r.task = j.at("task").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.version = j.at("version").get<std::string>();
  r.plan = j.at("plan");
  for (const auto& p : j.at("points")) {
    PointResult x;
    x.task = p.at("task").get<std::string>();
    x.n = p.at("n").get<std::size_t>();
    x.strategy = p.at("strategy").get<std::string>();
    x.budget = p.at("budget").get<std::size_t>();
    x.copies = p.at("copies").get<std::size_t>();
    x.trials = p.at("trials").get<std::size_t>();
    x.successes = p.at("successes").get<std::size_t>();
    x.accuracy = p.at("accuracy").get<double>();
    x.ci_low = p.at("ci_low").get<double>();
    x.ci_high = p.at("ci_high").get<double>();
    r.points.push_back(x);
  }
  for (const auto& m : j.at("minimal_budgets")) {
    r.minimal.push_back({m.at("n").get<std::size_t>(), m.at("strategy").get<std::string>(), m.at("reached").get<bool>(),
                         m.at("budget").get<std::size_t>(), m.at("accuracy").get<double>()});
  }
  for (const auto& p : j.at("projections")) {
    r.projections.push_back({p.at("n").get<std::size_t>(), p.at("strategy").get<std::string>(),
                             p.at("circuit_id").get<std::size_t>(), p.at("true_label").get<std::string>(),
                             p.at("comp1").get<double>(), p.at("comp2").get<double>()});
  }
  for (const auto& b : j.at("bounds")) {
    r.bounds.push_back({b.at("n").get<std::size_t>(), b.at("bound_name").get<std::string>(), b.at("value").get<double>()});
  }
  for (const auto& q : j.at("qpca")) {
    r.qpca.push_back({q.at("n").get<std::size_t>(), q.at("strategy").get<std::string>(), q.at("copies_used").get<std::size_t>(),
                      q.at("instance").get<std::size_t>(), q.at("hypothesis").get<std::string>(),
                      q.at("estimate").get<double>(), q.at("guess").get<std::string>()});
  }
  r.completed = j.at("completed").get<std::vector<std::string>>();
  return r;
}

RunRecord load_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::Io, "cannot open record " + path.string());
  try {
    return RunRecord::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Error::Kind::Io, "malformed record " + path.string() + ": " + e.what());
  }
}

void save_record(const RunRecord& record, const std::filesystem::path& path) {
  // Write-then-rename so an interrupted run never leaves a truncated record.
  const std::filesystem::path tmp = path.string() + ".tmp";
  write_file(tmp, record.to_json().dump(1) + "\n");
  std::filesystem::rename(tmp, path);
}

// ---- CSV -------------------------------------------------------------------

std::string summary_csv(const RunRecord& record) {
  std::string out = "task,n,strategy,budget,copies,trials,successes,accuracy,ci_low,ci_high\n";
  for (const PointResult& p : record.points) {
    out += p.task + "," + std::to_string(p.n) + "," + p.strategy + "," + std::to_string(p.budget) + "," +
           std::to_string(p.copies) + "," + std::to_string(p.trials) + "," + std::to_string(p.successes) + "," +
           num(p.accuracy) + "," + num(p.ci_low) + "," + num(p.ci_high) + "\n";
  }
  return out;
}

std::string minimal_budget_csv(const RunRecord& record) {
  std::string out = "n,strategy,reached,budget,accuracy\n";
  for (const MinimalBudget& m : record.minimal) {
    out += std::to_string(m.n) + "," + m.strategy + "," + (m.reached ? "true" : "false") + "," + std::to_string(m.budget) +
           "," + num(m.accuracy) + "\n";
  }
  return out;
}

std::string projections_csv(const RunRecord& record) {
  std::string out = "n,strategy,circuit_id,true_label,comp1,comp2\n";
  for (const ProjectionRow& p : record.projections) {
    out += std::to_string(p.n) + "," + p.strategy + "," + std::to_string(p.circuit_id) + "," + p.true_label + "," +
           num(p.comp1) + "," + num(p.comp2) + "\n";
  }
  return out;
}

std::string bounds_csv(const RunRecord& record) {
  std::string out = "n,bound_name,value\n";
  for (const BoundRow& b : record.bounds) out += std::to_string(b.n) + "," + b.bound_name + "," + num(b.value) + "\n";
  return out;
}

std::string qpca_csv(const RunRecord& record) {
  std::string out = "n,strategy,instance,hypothesis,estimate,guess,copies_used\n";
  for (const QpcaRow& r : record.qpca) {
    out += std::to_string(r.n) + "," + r.strategy + "," + std::to_string(r.instance) + "," + r.hypothesis + "," +
           num(r.estimate) + "," + r.guess + "," + std::to_string(r.copies_used) + "\n";
  }
  return out;
}

// ---- SVG -------------------------------------------------------------------

std::string budget_vs_n_svg(const RunRecord& record, double delta) {
  std::vector<Series> series;
  std::set<std::string> strategies;
  std::set<std::size_t> ns;
  for (const MinimalBudget& m : record.minimal) {
    strategies.insert(m.strategy);
    ns.insert(m.n);
  }
  for (const std::string& s : strategies) {
    Series line{"(" + strategy_label(s) + ") " + s, {}, false, true};
    for (const MinimalBudget& m : record.minimal) {
      if (m.strategy == s && m.reached) line.points.emplace_back(static_cast<double>(m.n), static_cast<double>(m.budget));
    }
    series.push_back(line);
  }
  Series lb{"(C, LB)", {}, true, true};
  for (std::size_t n : ns) lb.points.emplace_back(static_cast<double>(n), lb_compare_abs(n, delta));
  series.push_back(lb);
  return svg_plot("Experiments needed for target accuracy", "qubits n", "experiments", series, true);
}

std::string accuracy_vs_budget_svg(const RunRecord& record) {
  std::vector<Series> series;
  std::vector<std::string> keys;
  for (const PointResult& p : record.points) {
    const std::string k = "n=" + std::to_string(p.n) + " " + strategy_label(p.strategy);
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  for (const std::string& k : keys) {
    Series s{k, {}, false, true};
    for (const PointResult& p : record.points) {
      if ("n=" + std::to_string(p.n) + " " + strategy_label(p.strategy) == k) {
        s.points.emplace_back(static_cast<double>(p.copies), p.accuracy);
      }
    }
    std::sort(s.points.begin(), s.points.end());
    series.push_back(s);
  }
  return svg_plot("Accuracy versus copies", "copies consumed", "accuracy", series, false);
}

std::string projection_svg(const RunRecord& record, std::size_t n, const std::string& strategy) {
  Series general{"general", {}, false, false};
  Series tsym{"t_symmetric", {}, false, false};
  for (const ProjectionRow& p : record.projections) {
    if (p.n != n || p.strategy != strategy) continue;
    (p.true_label == "general" ? general : tsym).points.emplace_back(p.comp1, p.comp2);
  }
  return svg_plot("Kernel PCA, n=" + std::to_string(n) + ", " + strategy, "component 1", "component 2", {general, tsym},
                  false);
}

std::string bounds_svg(const RunRecord& record) {
  std::vector<Series> series;
  std::vector<std::string> names;
  for (const BoundRow& b : record.bounds) {
    if (std::find(names.begin(), names.end(), b.bound_name) == names.end()) names.push_back(b.bound_name);
  }
  for (const std::string& name : names) {
    Series s{name, {}, name == "lb_compare_abs", true};
    for (const BoundRow& b : record.bounds) {
      if (b.bound_name == name) s.points.emplace_back(static_cast<double>(b.n), b.value);
    }
    series.push_back(s);
  }
  return svg_plot("Lower bounds", "qubits n", "experiments", series, true);
}

std::vector<std::string> emit_report(const RunRecord& record, const std::filesystem::path& dir,
                                     const std::vector<std::string>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Error::Kind::Io, "cannot create output directory " + dir.string() + ": " + ec.message());
  const auto wants = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
  std::vector<std::string> written;
  const auto emit = [&](const std::string& name, const std::string& text) {
    write_file(dir / name, text);
    written.push_back(name);
  };

  if (wants("csv")) {
    emit("summary.csv", summary_csv(record));
    if (record.task == "states") emit("minimal_budget.csv", minimal_budget_csv(record));
    if (record.task == "dynamics") emit("projections.csv", projections_csv(record));
    if (record.task == "qpca") emit("qpca.csv", qpca_csv(record));
    if (!record.bounds.empty() || record.task == "bounds") emit("bounds.csv", bounds_csv(record));
  }
  if (wants("json")) {
    emit("record.json", record.to_json().dump(1) + "\n");
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [unit, secs] : record.timings) t[unit] = secs;
    emit("timings.json", t.dump(1) + "\n");
  }
  if (wants("svg")) {
    if (record.task == "states") {
      double delta = 0.3;
      if (record.plan.contains("accuracy_target")) delta = 1.0 - record.plan.at("accuracy_target").get<double>();
      emit("budget_vs_n.svg", budget_vs_n_svg(record, delta));
    }
    if (record.task == "states" || record.task == "qpca") emit("accuracy_vs_budget.svg", accuracy_vs_budget_svg(record));
    if (record.task == "dynamics") {
      std::set<std::pair<std::size_t, std::string>> seen;
      for (const ProjectionRow& p : record.projections) {
        if (seen.insert({p.n, p.strategy}).second) {
          emit("pca_n" + std::to_string(p.n) + "_" + p.strategy + ".svg", projection_svg(record, p.n, p.strategy));
        }
      }
    }
    if (record.task == "bounds") emit("bounds.svg", bounds_svg(record));
  }
  return written;
}

}  // namespace qlab
