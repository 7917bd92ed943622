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

#include "qlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

Mat2 transpose(const Mat2& m) { return {m[0], m[2], m[1], m[3]}; }

Mat4 transpose(const Mat4& m) {
  Mat4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i * 4 + j] = m[j * 4 + i];
  return t;
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    c[i] = acc;
  }
  return c;
}

std::size_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
  if (idx >= cdf.size()) idx = cdf.size() - 1;
  // Never return an outcome of zero probability.
  while (idx > 0 && cdf[idx] == cdf[idx - 1]) --idx;
  return idx;
}

// In-place unnormalized Walsh-Hadamard transform.
void fwht(std::vector<cplx>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = v[j];
        const cplx b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

void check_config(const Circuit& circuit, const DynamicsExperimentConfig& cfg, Strategy expected) {
  if (cfg.strategy != expected) throw validation_error("experiment config strategy does not match runner");
  if (cfg.repetitions == 0) throw validation_error("repetitions must be at least 1");
  if (cfg.n != 0 && cfg.n != circuit.n) throw dimension_error("config qubit count differs from circuit");
  if (cfg.noise) {
    cfg.noise->validate();
    const std::size_t width = expected == Strategy::Conventional ? circuit.n : 2 * circuit.n;
    if (cfg.noise->width() != width) throw dimension_error("readout profile width does not match outcome width");
  }
}

StateVector rotated_output(const Circuit& circuit) {
  StateVector s(circuit.n);
  run_circuit(s, circuit);
  const Mat2 rot = y_basis_rotation();
  for (std::size_t q = 0; q < circuit.n; ++q) s.apply_matrix1(q, rot);
  return s;
}

}  // namespace

const char* strategy_name(Strategy s) { return s == Strategy::Conventional ? "conventional" : "quantum_enhanced"; }

Strategy strategy_from_name(const std::string& name) {
  if (name == "conventional") return Strategy::Conventional;
  if (name == "quantum_enhanced") return Strategy::QuantumEnhanced;
  throw validation_error("unknown strategy: " + name);
}

Mat2 y_basis_rotation() {
  const double r = 1.0 / std::sqrt(2.0);
  // H * diag(1, -i)
  return {r, cplx{0.0, -r}, r, cplx{0.0, r}};
}

OutcomeMatrix run_conventional_dynamics(const Circuit& circuit, const DynamicsExperimentConfig& cfg, Rng& rng) {
  check_config(circuit, cfg, Strategy::Conventional);
  const StateVector s = rotated_output(circuit);
  std::vector<double> probs(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) probs[i] = std::norm(s.amplitudes()[i]);
  const std::vector<double> cdf = cumulative(probs);

  OutcomeMatrix out;
  out.width = circuit.n;
  out.bits.resize(cfg.repetitions * circuit.n);
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    const std::size_t idx = draw(cdf, rng);
    std::uint64_t word = idx;
    if (cfg.noise && !cfg.noise->is_identity()) word = apply_readout_noise(word, circuit.n, *cfg.noise, 0, rng);
    for (std::size_t j = 0; j < circuit.n; ++j) out.bits[r * circuit.n + j] = static_cast<std::uint8_t>((word >> j) & 1U);
  }
  return out;
}

std::vector<double> y_basis_marginals(const Circuit& circuit) {
  const StateVector s = rotated_output(circuit);
  std::vector<double> m(circuit.n, 0.0);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double p = std::norm(s.amplitudes()[i]);
    for (std::size_t j = 0; j < circuit.n; ++j) {
      if ((i >> j) & 1U) m[j] += p;
    }
  }
  return m;
}

BellStringDistribution::BellStringDistribution(const Circuit& circuit) : n_(circuit.n), dim_(0) {
  if (circuit.n > kMaxQubits) throw resource_error("quantum-enhanced distribution limited to 12 qubits");
  if (circuit.n == 0) throw dimension_error("circuit has no qubits");
  dim_ = std::size_t{1} << n_;

  // Column j of U U^T = U (U^T e_j); U^T applies transposed gates in reverse order.
  m_.assign(dim_ * dim_, cplx{0.0});
  for (std::size_t col = 0; col < dim_; ++col) {
    StateVector s = StateVector::basis(n_, col);
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
      if (it->arity() == 1) {
        s.apply_matrix1(it->qubits[0], transpose(it->matrix1()));
      } else {
        s.apply_matrix2(it->qubits[0], it->qubits[1], transpose(it->matrix2()));
      }
    }
    run_circuit(s, circuit);
    std::copy(s.amplitudes().begin(), s.amplitudes().end(), m_.begin() + static_cast<std::ptrdiff_t>(col * dim_));
  }

  x_marginal_.assign(dim_, 0.0);
  for (std::size_t x = 0; x < dim_; ++x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) acc += std::norm(m_[(k ^ x) * dim_ + k]);
    x_marginal_[x] = acc / static_cast<double>(dim_);
  }
  x_cdf_ = cumulative(x_marginal_);
}

std::vector<double> BellStringDistribution::z_conditional(std::uint64_t x) const {
  std::vector<cplx> v(dim_);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    v[k] = m_[(k ^ x) * dim_ + k];  // M[k, k^x], column-major
    norm2 += std::norm(v[k]);
  }
  std::vector<double> p(dim_, 0.0);
  if (norm2 == 0.0) return p;
  fwht(v);
  for (std::size_t z = 0; z < dim_; ++z) p[z] = std::norm(v[z]) / (static_cast<double>(dim_) * norm2);
  return p;
}

const std::vector<double>& BellStringDistribution::cached_z_cdf(std::uint64_t x) const {
  auto it = z_cdf_cache_.find(x);
  if (it == z_cdf_cache_.end()) it = z_cdf_cache_.emplace(x, cumulative(z_conditional(x))).first;
  return it->second;
}

double BellStringDistribution::probability(std::uint64_t x, std::uint64_t z) const {
  if (x >= dim_ || z >= dim_) throw dimension_error("Bell string index out of range");
  if (x_marginal_[x] == 0.0) return 0.0;
  return x_marginal_[x] * z_conditional(x)[z];
}

std::pair<std::uint64_t, std::uint64_t> BellStringDistribution::sample(Rng& rng) const {
  const std::uint64_t x = draw(x_cdf_, rng);
  const std::uint64_t z = draw(cached_z_cdf(x), rng);
  return {x, z};
}

BellStringDistribution quantum_enhanced_distribution(const Circuit& circuit) { return BellStringDistribution(circuit); }

OutcomeMatrix run_quantum_enhanced_dynamics(const Circuit& circuit, const DynamicsExperimentConfig& cfg, Rng& rng) {
  check_config(circuit, cfg, Strategy::QuantumEnhanced);
  const BellStringDistribution dist(circuit);
  const std::size_t n = circuit.n;
  OutcomeMatrix out;
  out.width = 2 * n;
  out.bits.resize(cfg.repetitions * 2 * n);
  const bool noisy = cfg.noise && !cfg.noise->is_identity();
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    const auto [x, z] = dist.sample(rng);
    std::uint8_t* row = out.bits.data() + r * 2 * n;
    for (std::size_t k = 0; k < n; ++k) {
      row[2 * k] = static_cast<std::uint8_t>((x >> k) & 1U);
      row[2 * k + 1] = static_cast<std::uint8_t>((z >> k) & 1U);
    }
    if (noisy) {
      const BitRow noisy_row = apply_readout_noise(std::span<const std::uint8_t>(row, 2 * n), *cfg.noise, rng);
      std::copy(noisy_row.begin(), noisy_row.end(), row);
    }
  }
  return out;
}

OutcomeMatrix run_dynamics(const Circuit& circuit, const DynamicsExperimentConfig& cfg, Rng& rng) {
  return cfg.strategy == Strategy::Conventional ? run_conventional_dynamics(circuit, cfg, rng)
                                                : run_quantum_enhanced_dynamics(circuit, cfg, rng);
}

void write_jsonl(std::ostream& out, const DynamicsDatasetHeader& header, const OutcomeMatrix& m) {
  nlohmann::json h{{"kind", "dynamics"},
                   {"circuit_seed", header.circuit_seed},
                   {"symmetry_label", symmetry_name(header.symmetry)},
                   {"strategy", strategy_name(header.strategy)},
                   {"n", header.n},
                   {"depth", header.depth},
                   {"repetitions", m.rows()}};
  h["noise"] = header.noise ? header.noise->to_json() : nlohmann::json(nullptr);
  out << h.dump() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string bits(m.width, '0');
    for (std::size_t c = 0; c < m.width; ++c) bits[c] = m.at(r, c) ? '1' : '0';
    out << nlohmann::json{{"t", r}, {"bits", bits}}.dump() << '\n';
  }
}

std::pair<DynamicsDatasetHeader, OutcomeMatrix> read_dynamics_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Error::Kind::Io, "missing dynamics dataset header");
  const auto h = nlohmann::json::parse(line);
  if (h.value("kind", "") != "dynamics") throw validation_error("not a dynamics dataset");
  DynamicsDatasetHeader header;
  header.circuit_seed = h.at("circuit_seed").get<std::uint64_t>();
  header.symmetry = symmetry_from_name(h.at("symmetry_label").get<std::string>());
  header.strategy = strategy_from_name(h.at("strategy").get<std::string>());
  header.n = h.at("n").get<std::size_t>();
  header.depth = h.at("depth").get<std::size_t>();
  if (!h.at("noise").is_null()) header.noise = ReadoutProfile::from_json(h.at("noise"));
  OutcomeMatrix m;
  m.width = header.strategy == Strategy::Conventional ? header.n : 2 * header.n;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto bits = nlohmann::json::parse(line).at("bits").get<std::string>();
    if (bits.size() != m.width) throw validation_error("dynamics row width does not match strategy");
    for (char c : bits) m.bits.push_back(c == '1' ? 1 : 0);
  }
  return {header, m};
}

}  // namespace qlab
