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

#include "qlab/qpca.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

constexpr std::size_t kMaxHaarQubits = 10;
constexpr std::size_t kMaxTwoCopyQubits = 8;

// One copy of rho is a mixture of pure branches: the first qubit is the
// computational state `first`, the rest is psi or the basis state `k`.
struct Branch {
  int first = 0;
  bool pure = true;
  std::uint64_t k = 0;
};

Branch sample_branch(const PcaInstance& inst, std::size_t dim, Rng& rng) {
  const int flip = inst.hypothesis == Hypothesis::B ? 1 : 0;
  if (rng.bernoulli(0.5)) return {flip, true, 0};
  return {1 - flip, false, rng.below(dim)};
}

void fwht(std::vector<cplx>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = v[j];
        const cplx b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

// P(x, z) for the Bell measurement of psi (x) psi, flattened as x * dim + z.
std::vector<double> pure_pair_distribution(const std::vector<cplx>& psi) {
  const std::size_t dim = psi.size();
  std::vector<double> p(dim * dim);
  std::vector<cplx> v(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t j = 0; j < dim; ++j) v[j] = psi[j ^ x] * psi[j];
    fwht(v);
    for (std::size_t z = 0; z < dim; ++z) p[x * dim + z] = std::norm(v[z]) / static_cast<double>(dim);
  }
  return p;
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = acc += p[i];
  return c;
}

std::size_t draw(const std::vector<double>& cdf, Rng& rng) {
  const double u = rng.uniform() * cdf.back();
  auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  if (idx >= cdf.size()) idx = cdf.size() - 1;
  while (idx > 0 && cdf[idx] == cdf[idx - 1]) --idx;
  return idx;
}

int parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1 : 1; }

// Expected pair-1 values (m_1, swap_1) for first-qubit bits b1, b2.
std::array<double, 2> pair1_expectation(int b1, int b2) {
  if (b1 != b2) return {0.0, 0.0};
  return {b1 == 0 ? 1.0 : -1.0, 1.0};
}

using Qubit = std::array<cplx, 2>;

Qubit haar_qubit(Rng& rng) {
  Qubit q{cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()}};
  const double nrm = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
  q[0] /= nrm;
  q[1] /= nrm;
  return q;
}

Qubit orthogonal(const Qubit& q) { return {-std::conj(q[1]), std::conj(q[0])}; }

std::array<double, 3> bloch(const Qubit& q) {
  const cplx ab = std::conj(q[0]) * q[1];
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(q[0]) - std::norm(q[1])};
}

}  // namespace

std::size_t HiddenComponent::qubits() const { return static_cast<std::size_t>(std::countr_zero(psi.size())); }

const char* hypothesis_name(Hypothesis h) { return h == Hypothesis::A ? "A" : "B"; }

void PcaInstance::validate() const {
  if (n < 2) throw dimension_error("qPCA instances need n >= 2");
  if (hidden.psi.size() != (std::size_t{1} << (n - 1))) throw dimension_error("hidden component must have 2^(n-1) amplitudes");
  double nrm = 0.0;
  for (const cplx& a : hidden.psi) nrm += std::norm(a);
  if (std::abs(nrm - 1.0) > 1e-10) throw validation_error("hidden component is not normalized");
}

HiddenComponent sample_haar_state(std::size_t m, Rng& rng) {
  if (m == 0) throw dimension_error("Haar state needs at least one qubit");
  if (m > kMaxHaarQubits) throw resource_error("Haar state limited to 10 qubits");
  HiddenComponent h;
  h.psi.resize(std::size_t{1} << m);
  double nrm = 0.0;
  for (cplx& a : h.psi) {
    a = {rng.normal(), rng.normal()};
    nrm += std::norm(a);
  }
  nrm = std::sqrt(nrm);
  for (cplx& a : h.psi) a /= nrm;
  return h;
}

PcaInstance make_instance(std::size_t n, Hypothesis h, Rng& rng) {
  if (n < 2) throw dimension_error("qPCA instances need n >= 2");
  return {n, h, sample_haar_state(n - 1, rng)};
}

double exact_target(const PcaInstance& inst) {
  inst.validate();
  const double d = std::ldexp(1.0, static_cast<int>(inst.n - 1));
  const double v = (d - 1.0) / (d + 1.0);
  return inst.hypothesis == Hypothesis::A ? v : -v;
}

Eigen::MatrixXcd density_matrix(const PcaInstance& inst) {
  inst.validate();
  if (inst.n > kMaxHaarQubits) throw resource_error("dense density matrix limited to 10 qubits");
  const auto d = static_cast<Eigen::Index>(inst.hidden.psi.size());
  Eigen::VectorXcd psi(d);
  for (Eigen::Index i = 0; i < d; ++i) psi(i) = inst.hidden.psi[static_cast<std::size_t>(i)];
  const Eigen::MatrixXcd pure = psi * psi.adjoint();
  const Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  const bool a = inst.hypothesis == Hypothesis::A;
  rho.topLeftCorner(d, d) = 0.5 * (a ? pure : mixed);
  rho.bottomRightCorner(d, d) = 0.5 * (a ? mixed : pure);
  return rho;
}

TwoCopyTally two_copy_tally(const PcaInstance& inst, std::size_t shots, Rng& rng) {
  inst.validate();
  if (inst.n > kMaxTwoCopyQubits) throw resource_error("two-copy simulation limited to 8 qubits");
  if (shots == 0) throw validation_error("two-copy estimate needs at least one shot");
  const std::vector<cplx>& psi = inst.hidden.psi;
  const std::size_t dim = psi.size();

  std::vector<double> psi_prob(dim);
  for (std::size_t j = 0; j < dim; ++j) psi_prob[j] = std::norm(psi[j]);
  const std::vector<double> psi_cdf = cumulative(psi_prob);
  const std::vector<double> pure_cdf = cumulative(pure_pair_distribution(psi));

  long long num = 0;
  long long den = 0;
  for (std::size_t s = 0; s < shots; ++s) {
    const Branch c1 = sample_branch(inst, dim, rng);
    const Branch c2 = sample_branch(inst, dim, rng);

    int m1 = 0;
    int swap1 = 1;
    if (c1.first == c2.first) {
      m1 = c1.first == 0 ? 1 : -1;  // |00> or |11>
    } else {
      swap1 = rng.sign();  // Phi+ (+1) or Phi- (-1), equally likely
    }

    std::uint64_t x = 0;
    std::uint64_t z = 0;
    if (c1.pure && c2.pure) {
      const std::size_t idx = draw(pure_cdf, rng);
      x = idx / dim;
      z = idx % dim;
    } else if (c1.pure || c2.pure) {
      const std::uint64_t k = c1.pure ? c2.k : c1.k;
      x = draw(psi_cdf, rng) ^ k;
      z = rng.below(dim);
    } else {
      x = c1.k ^ c2.k;
      z = rng.below(dim);
    }
    const int rest = parity_sign(x & z);
    num += m1 * rest;
    den += swap1 * rest;
  }
  const double t = static_cast<double>(shots);
  return {shots, static_cast<double>(num) / t, static_cast<double>(den) / t};
}

double two_copy_estimate(const PcaInstance& inst, std::size_t shots, Rng& rng) {
  const TwoCopyTally t = two_copy_tally(inst, shots, rng);
  if (t.denominator <= 0.0) {
    throw Error(Error::Kind::UnstableEstimate, "purity estimate is not positive; increase the shot count");
  }
  return t.numerator / t.denominator;
}

TwoCopyTally two_copy_expectation(const PcaInstance& inst) {
  inst.validate();
  if (inst.n > kMaxTwoCopyQubits) throw resource_error("two-copy simulation limited to 8 qubits");
  const std::vector<cplx>& psi = inst.hidden.psi;
  const std::size_t dim = psi.size();
  const std::vector<double> pure = pure_pair_distribution(psi);

  double pure_pure = 0.0;
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t z = 0; z < dim; ++z) pure_pure += pure[x * dim + z] * parity_sign(x & z);

  const int flip = inst.hypothesis == Hypothesis::B ? 1 : 0;
  const int pure_bit = flip;
  const int mixed_bit = 1 - flip;
  const double w = 1.0 / static_cast<double>(dim);

  // E[prod_{k>=2} swap_k] per branch pair, averaged over the basis index k.
  // pure (x) basis: only x = 0 has a non-zero mean sign, with weight |psi_k|^2.
  // basis (x) basis: only k1 = k2.
  const double pure_mixed = w;  // sum_k w |psi_k|^2
  const double mixed_mixed = w;  // sum_{k1,k2} w^2 [k1 = k2]

  TwoCopyTally out;
  out.shots = 0;
  const auto add = [&](int b1, int b2, double rest) {
    const auto e = pair1_expectation(b1, b2);
    out.numerator += 0.25 * e[0] * rest;
    out.denominator += 0.25 * e[1] * rest;
  };
  add(pure_bit, pure_bit, pure_pure);
  add(pure_bit, mixed_bit, pure_mixed);
  add(mixed_bit, pure_bit, pure_mixed);
  add(mixed_bit, mixed_bit, mixed_mixed);
  return out;
}

Hypothesis two_copy_guess(const TwoCopyTally& tally) { return tally.numerator >= 0.0 ? Hypothesis::A : Hypothesis::B; }

BaselineResult conventional_baseline(const PcaInstance& inst, std::size_t copies, Rng& rng) {
  inst.validate();
  if (inst.n > kMaxTwoCopyQubits) throw resource_error("conventional baseline limited to 8 qubits");
  const std::size_t m = inst.n - 1;
  const std::size_t dim = inst.hidden.psi.size();

  std::vector<double> c(copies);
  std::vector<std::array<double, 3>> r(copies * m);
  std::vector<cplx> amps(dim);
  std::vector<double> probs(dim);
  std::vector<Qubit> basis0(m);

  for (std::size_t t = 0; t < copies; ++t) {
    const Branch br = sample_branch(inst, dim, rng);

    const Qubit u0 = haar_qubit(rng);
    const Qubit u1 = orthogonal(u0);
    // Outcome 0 <-> u0 on the first qubit, which is in |first>.
    const bool got0 = rng.bernoulli(std::norm(u0[br.first]));
    c[t] = std::norm(got0 ? u0[0] : u1[0]);

    for (std::size_t q = 0; q < m; ++q) basis0[q] = haar_qubit(rng);
    std::uint64_t outcome = 0;
    if (br.pure) {
      amps = inst.hidden.psi;
      for (std::size_t q = 0; q < m; ++q) {
        const Qubit& a = basis0[q];
        const Qubit b = orthogonal(a);
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t base = 0; base < dim; base += 2 * stride)
          for (std::size_t i = base; i < base + stride; ++i) {
            const cplx v0 = amps[i];
            const cplx v1 = amps[i + stride];
            amps[i] = std::conj(a[0]) * v0 + std::conj(a[1]) * v1;
            amps[i + stride] = std::conj(b[0]) * v0 + std::conj(b[1]) * v1;
          }
      }
      for (std::size_t i = 0; i < dim; ++i) probs[i] = std::norm(amps[i]);
      outcome = rng.categorical(probs);
    } else {
      outcome = rng.below(dim);
    }
    for (std::size_t q = 0; q < m; ++q) {
      const Qubit chi = ((outcome >> q) & 1U) ? orthogonal(basis0[q]) : basis0[q];
      r[t * m + q] = bloch(chi);
    }
  }

  // Pairwise log-likelihood-ratio term, psi averaged over the Haar measure:
  // E|<chi_s|psi>|^2 |<chi_t|psi>|^2 = (1 + g_st) / (D (D + 1)).
  const double d = static_cast<double>(dim);
  double stat = 0.0;
  for (std::size_t s = 0; s < copies; ++s) {
    for (std::size_t t = s + 1; t < copies; ++t) {
      double g = 1.0;
      for (std::size_t q = 0; q < m; ++q) {
        const auto& a = r[s * m + q];
        const auto& b = r[t * m + q];
        g *= 0.5 * (1.0 + a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
      }
      stat += (c[s] + c[t] - 1.0) * (d * g - 1.0) / (d + 1.0);
    }
  }
  return {stat >= 0.0 ? Hypothesis::A : Hypothesis::B, stat};
}

}  // namespace qlab
