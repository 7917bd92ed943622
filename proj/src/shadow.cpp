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

#include "qlab/shadow.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

// P(+1) for eigenstate label measured in a Pauli basis.
double label_plus(const EigenLabel& q, PauliLetter basis) {
  if (q.basis == basis) return q.sign > 0 ? 1.0 : 0.0;
  return 0.5;
}

constexpr std::array<PauliLetter, 3> kBases{PauliLetter::X, PauliLetter::Y, PauliLetter::Z};

}  // namespace

double born_plus(const QubitPureState& psi, PauliLetter basis) {
  const Mat2 s = pauli_matrix(basis);
  const cplx s_psi0 = s[0] * psi[0] + s[1] * psi[1];
  const cplx s_psi1 = s[2] * psi[0] + s[3] * psi[1];
  const double expect = (std::conj(psi[0]) * s_psi0 + std::conj(psi[1]) * s_psi1).real();
  return 0.5 * (1.0 + expect);
}

ShadowDataset run_conventional(const EnsembleSpec& spec, std::size_t n_experiments, const ReadoutProfile* noise,
                               Rng& rng) {
  spec.validate();
  if (n_experiments == 0) throw validation_error("conventional run needs at least one experiment");
  const std::size_t n = spec.n();
  if (noise != nullptr) {
    noise->validate();
    if (noise->width() != n) throw dimension_error("conventional readout profile must cover n bits");
  }
  ShadowDataset data;
  data.n = n;
  data.spec = spec;
  if (noise != nullptr) data.noise = *noise;
  data.snapshots.reserve(n_experiments);
  RngChooser chooser{rng};
  for (std::size_t t = 0; t < n_experiments; ++t) {
    const ProductStateSample state = sample_state_with(spec, chooser);
    PauliSnapshot snap{PauliString(n), 0};
    for (std::size_t k = 0; k < n; ++k) {
      const PauliLetter basis = kBases[rng.below(3)];
      snap.bases.set(k, basis);
      if (!rng.bernoulli(label_plus(state.qubits[k], basis))) snap.outcomes |= std::uint64_t{1} << k;
    }
    if (noise != nullptr && !noise->is_identity()) snap.outcomes = apply_readout_noise(snap.outcomes, n, *noise, 0, rng);
    data.snapshots.push_back(snap);
  }
  return data;
}

double shadow_estimate(const ShadowDataset& data, const PauliString& o) {
  if (o.size() != data.n) throw dimension_error("observable length does not match dataset qubit count");
  if (data.snapshots.empty()) throw validation_error("empty shadow dataset");
  const std::uint64_t supp = o.support();
  const double scale = std::pow(3.0, static_cast<double>(o.weight()));
  long long signed_hits = 0;
  for (const PauliSnapshot& s : data.snapshots) {
    if (((s.bases.x_bits() ^ o.x_bits()) & supp) != 0 || ((s.bases.z_bits() ^ o.z_bits()) & supp) != 0) continue;
    signed_hits += (std::popcount(s.outcomes & supp) & 1) ? -1 : 1;
  }
  return scale * static_cast<double>(signed_hits) / static_cast<double>(data.snapshots.size());
}

int compare_observables_conventional(const ShadowDataset& data, const PauliString& o1, const PauliString& o2) {
  if (o1.size() != data.n || o2.size() != data.n) throw dimension_error("observable length does not match dataset");
  if (o1 == o2) throw Error(Error::Kind::InvalidTask, "comparison needs two distinct observables");
  return std::abs(shadow_estimate(data, o1)) >= std::abs(shadow_estimate(data, o2)) ? 1 : 2;
}

void write_jsonl(std::ostream& out, const ShadowDataset& data) {
  nlohmann::json header{{"kind", "shadow"}, {"n", data.n}, {"N", data.snapshots.size()}, {"seed", data.seed}};
  header["spec"] = data.spec ? data.spec->to_json() : nlohmann::json(nullptr);
  header["noise"] = data.noise ? data.noise->to_json() : nlohmann::json(nullptr);
  out << header.dump() << '\n';
  for (const PauliSnapshot& s : data.snapshots) {
    std::string bits(data.n, '0');
    for (std::size_t k = 0; k < data.n; ++k) bits[k] = ((s.outcomes >> k) & 1U) ? '1' : '0';
    out << nlohmann::json{{"bases", s.bases.str()}, {"bits", bits}}.dump() << '\n';
  }
}

ShadowDataset read_shadow_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Error::Kind::Io, "missing shadow dataset header");
  const auto header = nlohmann::json::parse(line);
  if (header.value("kind", "") != "shadow") throw validation_error("not a shadow dataset");
  ShadowDataset data;
  data.n = header.at("n").get<std::size_t>();
  data.seed = header.value("seed", std::uint64_t{0});
  if (!header.at("spec").is_null()) data.spec = EnsembleSpec::from_json(header.at("spec"));
  if (!header.at("noise").is_null()) data.noise = ReadoutProfile::from_json(header.at("noise"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    PauliSnapshot s{PauliString::parse(j.at("bases").get<std::string>()), 0};
    const auto bits = j.at("bits").get<std::string>();
    if (s.bases.size() != data.n || bits.size() != data.n) throw validation_error("snapshot width mismatch");
    for (std::size_t k = 0; k < data.n; ++k) {
      if (s.bases[k] == PauliLetter::I) throw validation_error("snapshot bases must not contain I");
      if (bits[k] == '1') s.outcomes |= std::uint64_t{1} << k;
    }
    data.snapshots.push_back(s);
  }
  return data;
}

}  // namespace qlab
