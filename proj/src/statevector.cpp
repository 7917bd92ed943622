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

#include "qlab/statevector.hpp"

#include <cmath>
#include <numbers>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      const cplx aik = a[i * 4 + k];
      if (aik == cplx{0.0}) continue;
      for (int j = 0; j < 4; ++j) c[i * 4 + j] += aik * b[k * 4 + j];
    }
  }
  return c;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) c[(2 * i + j) * 4 + (2 * k + l)] = a[i * 2 + k] * b[j * 2 + l];
  return c;
}

Mat2 zpow(double t) { return {1.0, 0.0, 0.0, std::exp(kI * (kPi * t))}; }

Mat2 xpow(double t) {
  const double c = std::cos(kPi * t / 2.0);
  const double s = std::sin(kPi * t / 2.0);
  const cplx g = std::exp(kI * (kPi * t / 2.0));
  return {g * c, g * (-kI * s), g * (-kI * s), g * c};
}

double unitarity_residual(const Mat4& u) {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += std::conj(u[k * 4 + i]) * u[k * 4 + j];
      acc += std::norm(s - (i == j ? 1.0 : 0.0));
    }
  }
  return std::sqrt(acc);
}

void check_qubit(std::size_t q, std::size_t n) {
  if (q >= n) throw dimension_error("gate target " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
}

Eigen::Matrix<double, 16, 1> imag_residual(const std::array<double, 12>& p) {
  const Mat4 f = fix_global_phase(tsym_candidate(p));
  Eigen::Matrix<double, 16, 1> r;
  for (int i = 0; i < 16; ++i) r(i) = f[i].imag();
  return r;
}

}  // namespace

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::PhXZ: return "PhXZ";
    case GateKind::SYC: return "SYC";
    case GateKind::Compiled: return "Compiled";
    case GateKind::RotY: return "RotY";
    case GateKind::SWAP: return "SWAP";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  for (GateKind k : {GateKind::PhXZ, GateKind::SYC, GateKind::Compiled, GateKind::RotY, GateKind::SWAP, GateKind::H,
                     GateKind::CNOT}) {
    if (name == gate_kind_name(k)) return k;
  }
  throw validation_error("unknown gate kind: " + name);
}

Mat2 phxz_matrix(double a, double x, double z) {
  return mul(mul(zpow(z), zpow(a)), mul(xpow(x), zpow(-a)));
}

Mat2 roty_matrix(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {c, -s, s, c};
}

Mat4 syc_matrix() {
  Mat4 m{};
  m[0] = 1.0;
  m[1 * 4 + 2] = -kI;
  m[2 * 4 + 1] = -kI;
  m[15] = std::exp(-kI * (kPi / 6.0));
  return m;
}

Gate Gate::compiled(std::size_t a, std::size_t b, const Mat4& u) {
  if (unitarity_residual(u) > 1e-9) throw validation_error("compiled two-qubit gate is not unitary");
  return {GateKind::Compiled, {a, b}, {}, u};
}

std::size_t Gate::arity() const {
  switch (kind) {
    case GateKind::PhXZ:
    case GateKind::RotY:
    case GateKind::H: return 1;
    default: return 2;
  }
}

Mat2 Gate::matrix1() const {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::PhXZ: return phxz_matrix(params[0], params[1], params[2]);
    case GateKind::RotY: return roty_matrix(params[0]);
    case GateKind::H: return {r, r, r, -r};
    default: throw validation_error("matrix1 called on a two-qubit gate");
  }
}

Mat4 Gate::matrix2() const {
  Mat4 m{};
  switch (kind) {
    case GateKind::SYC: return syc_matrix();
    case GateKind::Compiled: return unitary;
    case GateKind::SWAP:
      m[0] = m[1 * 4 + 2] = m[2 * 4 + 1] = m[15] = 1.0;
      return m;
    case GateKind::CNOT:
      m[0] = m[5] = m[2 * 4 + 3] = m[3 * 4 + 2] = 1.0;
      return m;
    default: throw validation_error("matrix2 called on a single-qubit gate");
  }
}

nlohmann::json Gate::to_json() const {
  nlohmann::json j{{"kind", gate_kind_name(kind)}};
  if (arity() == 1) {
    j["qubits"] = {qubits[0]};
  } else {
    j["qubits"] = {qubits[0], qubits[1]};
  }
  if (kind == GateKind::PhXZ) j["params"] = {params[0], params[1], params[2]};
  if (kind == GateKind::RotY) j["params"] = {params[0]};
  if (kind == GateKind::Compiled) {
    auto u = nlohmann::json::array();
    for (const cplx& c : unitary) u.push_back({c.real(), c.imag()});
    j["unitary"] = u;
  }
  return j;
}

Gate Gate::from_json(const nlohmann::json& j) {
  Gate g;
  g.kind = gate_kind_from_name(j.at("kind").get<std::string>());
  const auto& qs = j.at("qubits");
  g.qubits[0] = qs.at(0).get<std::size_t>();
  g.qubits[1] = qs.size() > 1 ? qs.at(1).get<std::size_t>() : g.qubits[0];
  if (qs.size() != g.arity()) throw validation_error("gate target count does not match kind");
  if (j.contains("params")) {
    const auto& p = j.at("params");
    for (std::size_t i = 0; i < p.size() && i < 3; ++i) g.params[i] = p.at(i).get<double>();
  }
  if (g.kind == GateKind::Compiled) {
    const auto& u = j.at("unitary");
    if (u.size() != 16) throw validation_error("compiled gate needs 16 entries");
    Mat4 m{};
    for (std::size_t i = 0; i < 16; ++i) m[i] = {u[i][0].get<double>(), u[i][1].get<double>()};
    g = Gate::compiled(g.qubits[0], g.qubits[1], m);
  }
  return g;
}

const char* symmetry_name(SymmetryClass s) { return s == SymmetryClass::General ? "general" : "t_symmetric"; }

SymmetryClass symmetry_from_name(const std::string& name) {
  if (name == "general") return SymmetryClass::General;
  if (name == "t_symmetric") return SymmetryClass::TSymmetric;
  throw validation_error("unknown symmetry label: " + name);
}

nlohmann::json Circuit::to_json() const {
  auto gs = nlohmann::json::array();
  for (const Gate& g : gates) gs.push_back(g.to_json());
  return {{"n", n}, {"depth", depth}, {"symmetry_label", symmetry_name(symmetry)}, {"seed", seed}, {"gates", gs}};
}

Circuit Circuit::from_json(const nlohmann::json& j) {
  Circuit c;
  c.n = j.at("n").get<std::size_t>();
  c.depth = j.value("depth", std::size_t{0});
  c.symmetry = symmetry_from_name(j.value("symmetry_label", std::string("general")));
  c.seed = j.value("seed", std::uint64_t{0});
  for (const auto& g : j.at("gates")) {
    Gate gate = Gate::from_json(g);
    check_qubit(gate.qubits[0], c.n);
    check_qubit(gate.qubits[1], c.n);
    c.gates.push_back(gate);
  }
  return c;
}

StateVector::StateVector(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxQubits) throw resource_error("statevector supports 1 to 26 qubits");
  amps_.assign(std::size_t{1} << n, cplx{0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t n, std::uint64_t index) {
  StateVector s(n);
  if (index >= s.dim()) throw dimension_error("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps) {
  const std::size_t dim = amps.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw dimension_error("amplitude count must be a power of two");
  StateVector s(static_cast<std::size_t>(std::countr_zero(dim)));
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::apply_matrix1(std::size_t q, const Mat2& m) {
  check_qubit(q, n_);
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amps_[i];
      const cplx a1 = amps_[i + stride];
      amps_[i] = m[0] * a0 + m[1] * a1;
      amps_[i + stride] = m[2] * a0 + m[3] * a1;
    }
  }
}

void StateVector::apply_matrix2(std::size_t a, std::size_t b, const Mat4& m) {
  check_qubit(a, n_);
  check_qubit(b, n_);
  if (a == b) throw validation_error("two-qubit gate needs distinct targets");
  const std::size_t ma = std::size_t{1} << a;
  const std::size_t mb = std::size_t{1} << b;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & (ma | mb)) continue;
    const std::array<std::size_t, 4> idx{i, i | mb, i | ma, i | ma | mb};
    const std::array<cplx, 4> in{amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      amps_[idx[r]] = m[r * 4 + 0] * in[0] + m[r * 4 + 1] * in[1] + m[r * 4 + 2] * in[2] + m[r * 4 + 3] * in[3];
    }
  }
}

void StateVector::apply(const Gate& g) {
  if (g.arity() == 1) {
    apply_matrix1(g.qubits[0], g.matrix1());
  } else {
    apply_matrix2(g.qubits[0], g.qubits[1], g.matrix2());
  }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

void run_circuit(StateVector& state, const Circuit& circuit) {
  if (state.qubits() != circuit.n) throw dimension_error("state and circuit qubit counts differ");
  for (const Gate& g : circuit.gates) state.apply(g);
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
  if (circuit.n > 10) throw resource_error("dense circuit unitary limited to 10 qubits");
  const std::size_t dim = std::size_t{1} << circuit.n;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis(circuit.n, col);
    run_circuit(s, circuit);
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = s.amplitudes()[row];
  }
  return u;
}

Mat2 su2_exp(double a, double b, double c) {
  const double r = std::sqrt(a * a + b * b + c * c);
  if (r < 1e-300) return {1.0, 0.0, 0.0, 1.0};
  const double cr = std::cos(r);
  const cplx s = kI * (std::sin(r) / r);
  // a X + b Y + c Z = [[c, a - i b], [a + i b, -c]]
  return {cr + s * c, s * cplx{a, -b}, s * cplx{a, b}, cr - s * c};
}

Mat4 tsym_candidate(const std::array<double, 12>& p) {
  const Mat2 u1 = su2_exp(p[0], p[1], p[2]);
  const Mat2 u2 = su2_exp(p[3], p[4], p[5]);
  const Mat2 u3 = su2_exp(p[6], p[7], p[8]);
  const Mat2 u4 = su2_exp(p[9], p[10], p[11]);
  return mul(kron(u3, u4), mul(syc_matrix(), kron(u1, u2)));
}

Mat4 fix_global_phase(const Mat4& v) {
  int best = 0;
  for (int j = 1; j < 4; ++j) {
    if (std::abs(v[j]) > std::abs(v[best])) best = j;
  }
  const double mag = std::abs(v[best]);
  if (mag == 0.0) return v;
  const cplx phase = std::conj(v[best]) / mag;
  Mat4 out;
  for (int i = 0; i < 16; ++i) out[i] = v[i] * phase;
  return out;
}

double imaginary_loss(const Mat4& v) {
  const Mat4 f = fix_global_phase(v);
  double acc = 0.0;
  for (const cplx& c : f) acc += c.imag() * c.imag();
  return std::sqrt(acc);
}

CompiledTsymGate compile_tsym_gate(Rng& rng, std::size_t max_iters, double tol) {
  if (!(tol > 0.0)) throw validation_error("compile tolerance must be positive");
  std::array<double, 12> p{};
  for (double& v : p) v = (2.0 * rng.uniform() - 1.0) * kPi;

  // Levenberg-Marquardt on the 16 imaginary parts; Jacobian by central differences.
  constexpr double kFd = 1e-7;
  Eigen::Matrix<double, 16, 1> r = imag_residual(p);
  double f = r.squaredNorm();
  double lambda = 1e-3;
  for (std::size_t it = 0; it < max_iters; ++it) {
    if (std::sqrt(f) < tol) {
      CompiledTsymGate out;
      out.v = fix_global_phase(tsym_candidate(p));
      out.params = p;
      out.loss = imaginary_loss(out.v);
      out.unitarity_residual = unitarity_residual(out.v);
      out.iterations = it;
      return out;
    }
    Eigen::Matrix<double, 16, 12> jac;
    for (int i = 0; i < 12; ++i) {
      auto hi = p;
      auto lo = p;
      hi[i] += kFd;
      lo[i] -= kFd;
      jac.col(i) = (imag_residual(hi) - imag_residual(lo)) / (2.0 * kFd);
    }
    const Eigen::Matrix<double, 12, 12> jtj = jac.transpose() * jac;
    const Eigen::Matrix<double, 12, 1> g = jac.transpose() * r;
    bool accepted = false;
    while (lambda < 1e12) {
      Eigen::Matrix<double, 12, 12> a = jtj;
      a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::Matrix<double, 12, 1> step = a.ldlt().solve(-g);
      std::array<double, 12> trial = p;
      for (int i = 0; i < 12; ++i) trial[i] += step(i);
      const Eigen::Matrix<double, 16, 1> rt = imag_residual(trial);
      if (rt.squaredNorm() < f) {
        p = trial;
        r = rt;
        f = rt.squaredNorm();
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
  }
  throw Error(Error::Kind::NonConvergence, "T-symmetric gate compilation did not converge; retry with a new seed");
}

Circuit generate_1d_circuit(std::size_t n, std::size_t depth, SymmetryClass symmetry, Rng& rng) {
  if (n < 2) throw dimension_error("1D circuits need at least 2 qubits");
  if (n > StateVector::kMaxQubits) throw resource_error("circuit exceeds statevector capacity");
  Circuit c;
  c.n = n;
  c.depth = depth;
  c.symmetry = symmetry;

  Mat4 v{};
  if (symmetry == SymmetryClass::TSymmetric) {
    for (int attempt = 0;; ++attempt) {
      Rng sub = rng.split(static_cast<std::uint64_t>(attempt));
      try {
        v = compile_tsym_gate(sub).v;
        break;
      } catch (const Error& e) {
        if (e.kind() != Error::Kind::NonConvergence || attempt >= 32) throw;
      }
    }
  }

  for (std::size_t layer = 0; layer < depth; ++layer) {
    for (std::size_t q = 0; q < n; ++q) {
      if (symmetry == SymmetryClass::General) {
        const double a = 2.0 * rng.uniform();
        const double x = 2.0 * rng.uniform();
        const double z = 2.0 * rng.uniform();
        c.gates.push_back(Gate::phxz(q, a, x, z));
      } else {
        c.gates.push_back(Gate::roty(q, 2.0 * kPi * rng.uniform()));
      }
    }
    for (std::size_t q = layer % 2; q + 1 < n; q += 2) {
      c.gates.push_back(symmetry == SymmetryClass::General ? Gate::syc(q, q + 1) : Gate::compiled(q, q + 1, v));
    }
  }
  return c;
}

}  // namespace qlab
