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

#include "qlab/bell.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

void check_normalized(const QubitPureState& s) {
  const double norm2 = std::norm(s[0]) + std::norm(s[1]);
  if (std::abs(norm2 - 1.0) > 1e-9) throw validation_error("qubit state is not normalized");
}

using BellTable = std::array<std::array<std::array<double, 4>, 6>, 6>;

const BellTable& eigenstate_bell_table() {
  static const BellTable table = [] {
    BellTable t{};
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        const EigenLabel la{static_cast<PauliLetter>(a / 2 + 1), static_cast<std::int8_t>(a % 2 ? -1 : 1)};
        const EigenLabel lb{static_cast<PauliLetter>(b / 2 + 1), static_cast<std::int8_t>(b % 2 ? -1 : 1)};
        t[a][b] = bell_probs(la.state(), lb.state());
      }
    }
    return t;
  }();
  return table;
}

void check_width(const BellDataset& data, const PauliString& o) {
  if (o.size() != data.n) throw dimension_error("observable length does not match dataset qubit count");
}

}  // namespace

void BellRecord::set(std::size_t k, BellOutcome b) {
  const auto v = static_cast<std::uint8_t>(b);
  const std::uint64_t bit = std::uint64_t{1} << k;
  x = (v & 2U) ? (x | bit) : (x & ~bit);
  z = (v & 1U) ? (z | bit) : (z & ~bit);
}

std::string BellRecord::bits() const {
  std::string s(2 * n, '0');
  for (std::size_t k = 0; k < n; ++k) {
    s[2 * k] = ((x >> k) & 1U) ? '1' : '0';
    s[2 * k + 1] = ((z >> k) & 1U) ? '1' : '0';
  }
  return s;
}

BellRecord BellRecord::from_bits(const std::string& bits) {
  if (bits.size() % 2 != 0 || bits.empty() || bits.size() > 128) {
    throw validation_error("Bell record bit string must have even length in [2, 128]");
  }
  BellRecord r;
  r.n = bits.size() / 2;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw validation_error("Bell record bits must be '0' or '1'");
    if (bits[i] == '1') {
      std::uint64_t& word = (i % 2 == 0) ? r.x : r.z;
      word |= std::uint64_t{1} << (i / 2);
    }
  }
  return r;
}

BitRow BellRecord::bit_row() const {
  BitRow row(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    row[2 * k] = static_cast<std::uint8_t>((x >> k) & 1U);
    row[2 * k + 1] = static_cast<std::uint8_t>((z >> k) & 1U);
  }
  return row;
}

BellRecord BellRecord::from_bit_row(const BitRow& row) {
  BellRecord r;
  r.n = row.size() / 2;
  for (std::size_t k = 0; k < r.n; ++k) {
    r.x |= static_cast<std::uint64_t>(row[2 * k] & 1U) << k;
    r.z |= static_cast<std::uint64_t>(row[2 * k + 1] & 1U) << k;
  }
  return r;
}

std::array<double, 4> bell_probs(const QubitPureState& a, const QubitPureState& b) {
  check_normalized(a);
  check_normalized(b);
  const std::array<cplx, 4> ab{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
  std::array<double, 4> p{};
  for (int o = 0; o < 4; ++o) {
    const auto v = bell_vector(static_cast<BellOutcome>(o));
    cplx amp = 0.0;
    for (int i = 0; i < 4; ++i) amp += std::conj(v[i]) * ab[i];
    p[o] = std::norm(amp);
  }
  return p;
}

BellDataset run_quantum_enhanced(const EnsembleSpec& spec, std::size_t n_q, const ReadoutProfile* noise, Rng& rng) {
  spec.validate();
  if (n_q == 0) throw validation_error("quantum-enhanced run needs at least one experiment");
  const std::size_t n = spec.n();
  if (noise != nullptr) {
    noise->validate();
    if (noise->width() != 2 * n) throw dimension_error("Bell readout profile must cover 2n bits");
  }
  const BellTable& table = eigenstate_bell_table();

  BellDataset data;
  data.n = n;
  data.spec = spec;
  if (noise != nullptr) data.noise = *noise;
  data.records.reserve(n_q);
  RngChooser chooser{rng};
  for (std::size_t t = 0; t < n_q; ++t) {
    const ProductStateSample first = sample_state_with(spec, chooser);
    const ProductStateSample second = sample_state_with(spec, chooser);
    BellRecord rec;
    rec.n = n;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& probs = table[first.qubits[k].index()][second.qubits[k].index()];
      rec.set(k, static_cast<BellOutcome>(rng.categorical(probs)));
    }
    if (noise != nullptr && !noise->is_identity()) {
      rec = BellRecord::from_bit_row(apply_readout_noise(rec.bit_row(), *noise, rng));
    }
    data.records.push_back(rec);
  }
  return data;
}

double estimate_a(const BellDataset& data, const PauliString& o) {
  check_width(data, o);
  if (data.records.empty()) throw validation_error("empty Bell dataset");
  long long total = 0;
  for (const BellRecord& r : data.records) total += bell_sign_product(o, r.x, r.z);
  return static_cast<double>(total) / static_cast<double>(data.records.size());
}

double clamp_sqrt(double a) { return std::sqrt(a > 0.0 ? a : 0.0); }

double estimate_b(const BellDataset& data, const PauliString& o) { return clamp_sqrt(estimate_a(data, o)); }

int compare_observables(const BellDataset& data, const PauliString& o1, const PauliString& o2) {
  if (o1.size() != data.n || o2.size() != data.n) throw dimension_error("observable length does not match dataset");
  if (o1 == o2) throw Error(Error::Kind::InvalidTask, "comparison needs two distinct observables");
  return estimate_b(data, o1) >= estimate_b(data, o2) ? 1 : 2;
}

void write_jsonl(std::ostream& out, const BellDataset& data) {
  nlohmann::json header{{"kind", "bell"}, {"n", data.n}, {"N_Q", data.records.size()}, {"seed", data.seed}};
  header["spec"] = data.spec ? data.spec->to_json() : nlohmann::json(nullptr);
  header["noise"] = data.noise ? data.noise->to_json() : nlohmann::json(nullptr);
  out << header.dump() << '\n';
  for (std::size_t t = 0; t < data.records.size(); ++t) {
    out << nlohmann::json{{"t", t}, {"bits", data.records[t].bits()}}.dump() << '\n';
  }
}

BellDataset read_bell_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Error::Kind::Io, "missing Bell dataset header");
  const auto header = nlohmann::json::parse(line);
  if (header.value("kind", "") != "bell") throw validation_error("not a Bell dataset");
  BellDataset data;
  data.n = header.at("n").get<std::size_t>();
  data.seed = header.value("seed", std::uint64_t{0});
  if (!header.at("spec").is_null()) data.spec = EnsembleSpec::from_json(header.at("spec"));
  if (!header.at("noise").is_null()) data.noise = ReadoutProfile::from_json(header.at("noise"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    BellRecord r = BellRecord::from_bits(nlohmann::json::parse(line).at("bits").get<std::string>());
    if (r.n != data.n) throw validation_error("Bell record length does not match header");
    data.records.push_back(r);
  }
  return data;
}

}  // namespace qlab
