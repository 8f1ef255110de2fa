// Copyright 2026 The bqec Authors
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

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "bqec/bit_matrix.hpp"
#include "bqec/circuit.hpp"
#include "bqec/ft/noise.hpp"
#include "bqec/pauli.hpp"

namespace bqec::ft {

/// Accumulated Pauli error relative to the ideal circuit, ignoring phase.
class PauliFrame {
 public:
  PauliFrame() = default;
  explicit PauliFrame(std::size_t n) : n_(n), x_(words_for_bits(n), 0), z_(words_for_bits(n), 0) {
  }

  std::size_t n() const {
    return n_;
  }
  bool x(std::size_t q) const {
    return (x_[q >> 6] >> (q & 63)) & 1;
  }
  bool z(std::size_t q) const {
    return (z_[q >> 6] >> (q & 63)) & 1;
  }
  void flip_x(std::size_t q) {
    x_[q >> 6] ^= std::uint64_t(1) << (q & 63);
  }
  void flip_z(std::size_t q) {
    z_[q >> 6] ^= std::uint64_t(1) << (q & 63);
  }
  void set(std::size_t q, bool xv, bool zv) {
    const std::uint64_t m = std::uint64_t(1) << (q & 63);
    x_[q >> 6] = (x_[q >> 6] & ~m) | (xv ? m : 0);
    z_[q >> 6] = (z_[q >> 6] & ~m) | (zv ? m : 0);
  }
  void clear(std::size_t q) {
    set(q, false, false);
  }
  void clear() {
    std::fill(x_.begin(), x_.end(), 0);
    std::fill(z_.begin(), z_.end(), 0);
  }
  bool is_clear() const {
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (x_[i] | z_[i]) {
        return false;
      }
    }
    return true;
  }
  /// Multiplies in a single-qubit Pauli coded as x + 2z (1 = X, 2 = Z, 3 = Y).
  void apply_pauli(std::size_t q, std::uint32_t code) {
    if (code & 1) {
      flip_x(q);
    }
    if (code & 2) {
      flip_z(q);
    }
  }

  PauliOp to_pauli() const {
    SympRow r(n_);
    for (std::size_t q = 0; q < n_; ++q) {
      r.set_x(q, x(q));
      r.set_z(q, z(q));
    }
    return PauliOp(r, 0);
  }
  static PauliFrame from_pauli(const PauliOp &p) {
    PauliFrame f(p.n());
    for (std::size_t q = 0; q < p.n(); ++q) {
      f.set(q, p.bits().x(q), p.bits().z(q));
    }
    return f;
  }

  bool operator==(const PauliFrame &) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

/// Noise class of a gate location.
enum class NoiseClass : std::uint8_t { Gate1, Gate2, Mem, Prep, Meas, Ebit, None };
inline constexpr std::size_t kNumNoiseClasses = 6;

inline NoiseClass noise_class(GateKind k) {
  switch (k) {
    case GateKind::H:
    case GateKind::P:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      return NoiseClass::Gate1;
    case GateKind::CNOT:
    case GateKind::CZ:
      return NoiseClass::Gate2;
    case GateKind::WAIT:
      return NoiseClass::Mem;
    case GateKind::PREP_ZERO:
    case GateKind::PREP_PLUS:
      return NoiseClass::Prep;
    case GateKind::MEAS_Z:
    case GateKind::MEAS_X:
      return NoiseClass::Meas;
    case GateKind::PREP_EBIT:
      return NoiseClass::Ebit;
    case GateKind::SWAP:
      return NoiseClass::None;
  }
  return NoiseClass::None;
}

inline double class_probability(const NoiseModel &m, NoiseClass c) {
  switch (c) {
    case NoiseClass::Gate1:
    case NoiseClass::Gate2:
      return m.p_gate;
    case NoiseClass::Mem:
      return m.p_mem;
    case NoiseClass::Prep:
      return m.p_prep;
    case NoiseClass::Meas:
      return m.p_meas;
    case NoiseClass::Ebit:
      return m.p_ebit;
    case NoiseClass::None:
      return 0.0;
  }
  return 0.0;
}

/// Number of distinct nontrivial fault values at a location of this kind:
/// 15 two-qubit Paulis, 3 one-qubit Paulis, or a single flip.
inline std::uint32_t fault_values(GateKind k) {
  switch (noise_class(k)) {
    case NoiseClass::Gate2:
    case NoiseClass::Ebit:
      return 15;
    case NoiseClass::Gate1:
    case NoiseClass::Mem:
      return 3;
    case NoiseClass::Prep:
    case NoiseClass::Meas:
      return 1;
    case NoiseClass::None:
      return 0;
  }
  return 0;
}

/// Ideal action of a gate on the frame. Preparations reset their qubits.
/// Returns the measurement flip for MEAS gates, false otherwise.
inline bool frame_apply_gate(PauliFrame &f, GateKind kind, std::uint32_t a, std::uint32_t b) {
  switch (kind) {
    case GateKind::H: {
      const bool x = f.x(a), z = f.z(a);
      f.set(a, z, x);
      return false;
    }
    case GateKind::P:
      if (f.x(a)) {
        f.flip_z(a);
      }
      return false;
    case GateKind::CNOT:
      if (f.x(a)) {
        f.flip_x(b);
      }
      if (f.z(b)) {
        f.flip_z(a);
      }
      return false;
    case GateKind::CZ:
      if (f.x(a)) {
        f.flip_z(b);
      }
      if (f.x(b)) {
        f.flip_z(a);
      }
      return false;
    case GateKind::SWAP: {
      const bool xa = f.x(a), za = f.z(a);
      f.set(a, f.x(b), f.z(b));
      f.set(b, xa, za);
      return false;
    }
    case GateKind::PREP_ZERO:
    case GateKind::PREP_PLUS:
      f.clear(a);
      return false;
    case GateKind::PREP_EBIT:
      f.clear(a);
      f.clear(b);
      return false;
    case GateKind::MEAS_Z:
      return f.x(a);
    case GateKind::MEAS_X:
      return f.z(a);
    default:
      return false;
  }
}

/// Applies fault `value` (1-based, see fault_values) after the gate.
/// Returns true when the fault flips a measurement outcome.
inline bool frame_apply_fault(PauliFrame &f, GateKind kind, std::uint32_t a, std::uint32_t b, std::uint32_t value) {
  switch (noise_class(kind)) {
    case NoiseClass::Gate2:
    case NoiseClass::Ebit:
      f.apply_pauli(a, value & 3);
      f.apply_pauli(b, value >> 2);
      return false;
    case NoiseClass::Gate1:
    case NoiseClass::Mem:
      f.apply_pauli(a, value);
      return false;
    case NoiseClass::Prep:
      if (kind == GateKind::PREP_ZERO) {
        f.flip_x(a);
      } else {
        f.flip_z(a);
      }
      return false;
    case NoiseClass::Meas:
      return true;
    case NoiseClass::None:
      return false;
  }
  return false;
}

struct PropagationResult {
  PauliFrame frame;
  std::vector<bool> measurement_flips;  // one entry per MEAS gate, in gate order
};

/// Gate-by-gate frame propagation with independent faults drawn from `noise`.
template <class Rng>
PropagationResult propagate(const Circuit &circ, PauliFrame frame, const NoiseModel &noise, Rng &rng) {
  if (frame.n() != circ.n) {
    throw DimensionError("frame size differs from circuit size");
  }
  PropagationResult out;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto &g : circ.gates) {
    bool flip = frame_apply_gate(frame, g.kind, g.q[0], g.q[1]);
    const double p = class_probability(noise, noise_class(g.kind));
    if (p > 0 && unif(rng) < p) {
      const std::uint32_t v = 1 + static_cast<std::uint32_t>(unif(rng) * fault_values(g.kind)) % fault_values(g.kind);
      flip ^= frame_apply_fault(frame, g.kind, g.q[0], g.q[1], v);
    }
    if (g.kind == GateKind::MEAS_Z || g.kind == GateKind::MEAS_X) {
      out.measurement_flips.push_back(flip);
    }
  }
  out.frame = std::move(frame);
  return out;
}

/// Propagation with faults injected at given gate indices (value per fault_values).
inline PropagationResult propagate_with_faults(const Circuit &circ, PauliFrame frame,
                                               const std::map<std::size_t, std::uint32_t> &faults) {
  if (frame.n() != circ.n) {
    throw DimensionError("frame size differs from circuit size");
  }
  PropagationResult out;
  for (std::size_t i = 0; i < circ.gates.size(); ++i) {
    const Gate &g = circ.gates[i];
    bool flip = frame_apply_gate(frame, g.kind, g.q[0], g.q[1]);
    if (auto it = faults.find(i); it != faults.end()) {
      flip ^= frame_apply_fault(frame, g.kind, g.q[0], g.q[1], it->second);
    }
    if (g.kind == GateKind::MEAS_Z || g.kind == GateKind::MEAS_X) {
      out.measurement_flips.push_back(flip);
    }
  }
  out.frame = std::move(frame);
  return out;
}

}  // namespace bqec::ft
