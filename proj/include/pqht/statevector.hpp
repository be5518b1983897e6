// Copyright 2026 The PQHT Authors
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

// Dense state vectors and gate kernels, templated on the real scalar type.
//
// Amplitudes live in an Eigen column vector of std::complex<Scalar>. Qubit 0
// is the least significant bit of the basis index. Multi-qubit matrices
// returned by gate_matrix() use the same convention locally: operand i of the
// gate is bit i of the row/column index.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "pqht/circuit.hpp"

namespace pqht {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
class StateVector {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(std::size_t num_qubits)
      : num_qubits_(num_qubits), amps_(Amplitudes::Zero(Eigen::Index{1} << num_qubits)) {
    amps_(0) = Complex(1);
  }

  /// Takes ownership of explicit amplitudes; size must be a power of two.
  explicit StateVector(Amplitudes amps) : amps_(std::move(amps)) {
    auto dim = static_cast<std::uint64_t>(amps_.size());
    if (dim == 0 || !std::has_single_bit(dim)) {
      throw std::invalid_argument("amplitude count must be a power of two");
    }
    num_qubits_ = static_cast<std::size_t>(std::countr_zero(dim));
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
  const Amplitudes& amplitudes() const { return amps_; }
  Amplitudes& amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
  Complex* data() { return amps_.data(); }
  const Complex* data() const { return amps_.data(); }

  Scalar norm_squared() const { return amps_.squaredNorm(); }

  /// Probability of basis index `i`.
  Scalar probability(std::size_t i) const { return std::norm((*this)[i]); }

 private:
  std::size_t num_qubits_ = 0;
  Amplitudes amps_;
};

enum class Pauli : std::uint8_t { X, Y, Z };

namespace detail {

/// Spreads `k` over the index space by inserting zero bits at the sorted
/// positions `pos[0] < pos[1] < ...`.
template <std::size_t N>
constexpr std::size_t insert_zero_bits(std::size_t k, const std::array<std::size_t, N>& pos) {
  for (std::size_t p : pos) {
    std::size_t low = k & ((std::size_t{1} << p) - 1);
    k = ((k >> p) << (p + 1)) | low;
  }
  return k;
}

// Plain complex product; std::complex operator* carries inf/nan recovery that
// blocks vectorisation.
template <typename Scalar>
inline std::complex<Scalar> mul(std::complex<Scalar> a, std::complex<Scalar> b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

template <std::size_t N>
std::array<std::size_t, N> sorted(std::array<std::size_t, N> a) {
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace detail

/// Applies a 2x2 matrix to `target` as a strided pair update.
template <typename Scalar, typename Derived>
void apply_matrix1(StateVector<Scalar>& state, const Eigen::MatrixBase<Derived>& m, QubitId target) {
  using C = std::complex<Scalar>;
  const C m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  const std::size_t stride = std::size_t{1} << target;
  const std::size_t dim = state.dimension();
  C* a = state.data();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const C a0 = a[i];
      const C a1 = a[i + stride];
      a[i] = detail::mul(m00, a0) + detail::mul(m01, a1);
      a[i + stride] = detail::mul(m10, a0) + detail::mul(m11, a1);
    }
  }
}

template <typename Scalar>
void apply_x(StateVector<Scalar>& state, QubitId target) {
  const std::size_t stride = std::size_t{1} << target;
  auto* a = state.data();
  for (std::size_t base = 0; base < state.dimension(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) std::swap(a[i], a[i + stride]);
  }
}

template <typename Scalar>
void apply_h(StateVector<Scalar>& state, QubitId target) {
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  const std::size_t stride = std::size_t{1} << target;
  auto* a = state.data();
  for (std::size_t base = 0; base < state.dimension(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const auto a0 = a[i];
      const auto a1 = a[i + stride];
      a[i] = r * (a0 + a1);
      a[i + stride] = r * (a0 - a1);
    }
  }
}

/// SX = (1/2)[[1+i, 1-i], [1-i, 1+i]].
template <typename Scalar>
void apply_sx(StateVector<Scalar>& state, QubitId target) {
  using C = std::complex<Scalar>;
  const Scalar half(0.5);
  const std::size_t stride = std::size_t{1} << target;
  auto* a = state.data();
  for (std::size_t base = 0; base < state.dimension(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const C s = a[i] + a[i + stride];
      const C d = a[i] - a[i + stride];
      // i*d = (-d.imag, d.real)
      a[i] = C(half * (s.real() - d.imag()), half * (s.imag() + d.real()));
      a[i + stride] = C(half * (s.real() + d.imag()), half * (s.imag() - d.real()));
    }
  }
}

/// Diagonal phase update diag(p0, p1) on `target`.
template <typename Scalar>
void apply_phase(StateVector<Scalar>& state, QubitId target, std::complex<Scalar> p0,
                 std::complex<Scalar> p1) {
  const std::size_t stride = std::size_t{1} << target;
  auto* a = state.data();
  for (std::size_t base = 0; base < state.dimension(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      a[i] = detail::mul(a[i], p0);
      a[i + stride] = detail::mul(a[i + stride], p1);
    }
  }
}

/// RZ(theta) = diag(e^{-i theta/2}, e^{i theta/2}).
template <typename Scalar>
void apply_rz(StateVector<Scalar>& state, QubitId target, Scalar theta) {
  const auto p1 = std::polar(Scalar(1), theta / 2);
  apply_phase(state, target, std::conj(p1), p1);
}

template <typename Scalar>
void apply_cx(StateVector<Scalar>& state, QubitId control, QubitId target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const auto pos = detail::sorted(std::array<std::size_t, 2>{control, target});
  auto* a = state.data();
  const std::size_t n = state.dimension() >> 2;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = detail::insert_zero_bits(k, pos) | cbit;
    std::swap(a[i], a[i | tbit]);
  }
}

template <typename Scalar>
void apply_ccx(StateVector<Scalar>& state, QubitId c0, QubitId c1, QubitId target) {
  const std::size_t cbits = (std::size_t{1} << c0) | (std::size_t{1} << c1);
  const std::size_t tbit = std::size_t{1} << target;
  const auto pos = detail::sorted(std::array<std::size_t, 3>{c0, c1, target});
  auto* a = state.data();
  const std::size_t n = state.dimension() >> 3;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = detail::insert_zero_bits(k, pos) | cbits;
    std::swap(a[i], a[i | tbit]);
  }
}

template <typename Scalar>
void apply_swap(StateVector<Scalar>& state, QubitId q0, QubitId q1) {
  const std::size_t b0 = std::size_t{1} << q0;
  const std::size_t b1 = std::size_t{1} << q1;
  const auto pos = detail::sorted(std::array<std::size_t, 2>{q0, q1});
  auto* a = state.data();
  const std::size_t n = state.dimension() >> 2;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = detail::insert_zero_bits(k, pos);
    std::swap(a[i | b0], a[i | b1]);
  }
}

template <typename Scalar>
void apply_pauli(StateVector<Scalar>& state, QubitId target, Pauli p) {
  using C = std::complex<Scalar>;
  switch (p) {
    case Pauli::X:
      apply_x(state, target);
      break;
    case Pauli::Y: {
      // Y = [[0, -i], [i, 0]]
      const std::size_t stride = std::size_t{1} << target;
      auto* a = state.data();
      for (std::size_t base = 0; base < state.dimension(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
          const C a0 = a[i];
          const C a1 = a[i + stride];
          a[i] = C(a1.imag(), -a1.real());
          a[i + stride] = C(-a0.imag(), a0.real());
        }
      }
      break;
    }
    case Pauli::Z:
      apply_phase(state, target, C(1), C(-1));
      break;
  }
}

/// Standard unitary of a gate kind; 2x2, 4x4 or 8x8 in the local operand
/// convention described at the top of this header. Measure has no unitary.
template <typename Scalar = double>
ComplexMatrix<Scalar> gate_matrix(GateKind kind, Scalar angle = Scalar(0)) {
  using C = std::complex<Scalar>;
  using M = ComplexMatrix<Scalar>;
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  switch (kind) {
    case GateKind::H: {
      M m(2, 2);
      m << r, r, r, -r;
      return m;
    }
    case GateKind::X: {
      M m(2, 2);
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::SX: {
      M m(2, 2);
      m << C(0.5, 0.5), C(0.5, -0.5), C(0.5, -0.5), C(0.5, 0.5);
      return m;
    }
    case GateKind::RZ: {
      M m = M::Zero(2, 2);
      m(0, 0) = std::polar(Scalar(1), -angle / 2);
      m(1, 1) = std::polar(Scalar(1), angle / 2);
      return m;
    }
    case GateKind::CX: {
      // operand 0 = control (bit 0), operand 1 = target (bit 1)
      M m = M::Zero(4, 4);
      for (int i = 0; i < 4; ++i) m((i & 1) ? (i ^ 2) : i, i) = 1;
      return m;
    }
    case GateKind::SWAP: {
      M m = M::Zero(4, 4);
      for (int i = 0; i < 4; ++i) m(((i & 1) << 1) | ((i >> 1) & 1), i) = 1;
      return m;
    }
    case GateKind::CCX: {
      M m = M::Zero(8, 8);
      for (int i = 0; i < 8; ++i) m((i & 3) == 3 ? (i ^ 4) : i, i) = 1;
      return m;
    }
    case GateKind::Measure:
      break;
  }
  throw std::invalid_argument("measure has no unitary matrix");
}

/// RX(theta) = cos(theta/2) I - i sin(theta/2) X; used as a reference.
template <typename Scalar = double>
ComplexMatrix<Scalar> rx_matrix(Scalar theta) {
  using C = std::complex<Scalar>;
  ComplexMatrix<Scalar> m(2, 2);
  const Scalar c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << C(c, 0), C(0, -s), C(0, -s), C(c, 0);
  return m;
}

/// Applies one IR gate. Measure is a no-op here; callers handle sampling.
template <typename Scalar>
void apply_gate(StateVector<Scalar>& state, const Gate& g) {
  switch (g.kind) {
    case GateKind::H:
      apply_h(state, g.qubits[0]);
      break;
    case GateKind::X:
      apply_x(state, g.qubits[0]);
      break;
    case GateKind::SX:
      apply_sx(state, g.qubits[0]);
      break;
    case GateKind::RZ:
      apply_rz(state, g.qubits[0], static_cast<Scalar>(g.angle));
      break;
    case GateKind::CX:
      apply_cx(state, g.qubits[0], g.qubits[1]);
      break;
    case GateKind::CCX:
      apply_ccx(state, g.qubits[0], g.qubits[1], g.qubits[2]);
      break;
    case GateKind::SWAP:
      apply_swap(state, g.qubits[0], g.qubits[1]);
      break;
    case GateKind::Measure:
      break;
  }
}

/// Applies instructions [first, last) of `circuit`.
template <typename Scalar>
void apply_range(StateVector<Scalar>& state, const QuantumCircuit& circuit, std::size_t first,
                 std::size_t last) {
  for (std::size_t i = first; i < last; ++i) apply_gate(state, circuit[i]);
}

}  // namespace pqht
