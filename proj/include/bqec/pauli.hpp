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

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bqec/bit_matrix.hpp"
#include "bqec/errors.hpp"

namespace bqec {

/// Binary image of a Pauli operator on n qubits: z and x bit vectors, with
/// X -> (z=0,x=1), Z -> (1,0), Y -> (1,1).
class SympRow {
 public:
  SympRow() = default;
  explicit SympRow(std::size_t n) : n_(n), z_(words_for_bits(n), 0), x_(words_for_bits(n), 0) {
  }
  SympRow(std::size_t n, std::span<const std::uint64_t> z, std::span<const std::uint64_t> x)
      : n_(n), z_(z.begin(), z.end()), x_(x.begin(), x.end()) {
    if (z_.size() != words_for_bits(n) || x_.size() != words_for_bits(n)) {
      throw DimensionError("SympRow: word count does not match qubit count");
    }
  }

  /// Parses the "zzz|xxx" bit notation, e.g. "11|00" for ZZ.
  static SympRow from_bits(std::string_view s) {
    const auto bar = s.find('|');
    if (bar == std::string_view::npos || s.size() != 2 * bar + 1) {
      throw DimensionError("SympRow::from_bits expects 'z...|x...' with equal halves");
    }
    SympRow r(bar);
    for (std::size_t q = 0; q < bar; ++q) {
      r.set_z(q, s[q] == '1');
      r.set_x(q, s[bar + 1 + q] == '1');
    }
    return r;
  }

  std::size_t n() const {
    return n_;
  }
  std::span<const std::uint64_t> z_words() const {
    return z_;
  }
  std::span<const std::uint64_t> x_words() const {
    return x_;
  }
  std::span<std::uint64_t> z_words() {
    return z_;
  }
  std::span<std::uint64_t> x_words() {
    return x_;
  }

  bool z(std::size_t q) const {
    return (z_[q / 64] >> (q % 64)) & 1;
  }
  bool x(std::size_t q) const {
    return (x_[q / 64] >> (q % 64)) & 1;
  }
  void set_z(std::size_t q, bool v) {
    set_bit(z_, q, v);
  }
  void set_x(std::size_t q, bool v) {
    set_bit(x_, q, v);
  }

  SympRow &operator^=(const SympRow &o) {
    check_same(o);
    for (std::size_t w = 0; w < z_.size(); ++w) {
      z_[w] ^= o.z_[w];
      x_[w] ^= o.x_[w];
    }
    return *this;
  }
  friend SympRow operator^(SympRow a, const SympRow &b) {
    a ^= b;
    return a;
  }

  bool is_identity() const {
    for (std::size_t w = 0; w < z_.size(); ++w) {
      if (z_[w] | x_[w]) {
        return false;
      }
    }
    return true;
  }
  bool is_z_type() const {
    for (auto w : x_) {
      if (w) {
        return false;
      }
    }
    return true;
  }
  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < z_.size(); ++i) {
      w += std::popcount(z_[i] | x_[i]);
    }
    return w;
  }

  /// 2n-bit vector laid out as [z | x]; used for GF(2) span computations.
  std::vector<std::uint64_t> concat_bits() const {
    std::vector<std::uint64_t> out(words_for_bits(2 * n_), 0);
    for (std::size_t q = 0; q < n_; ++q) {
      if (z(q)) {
        out[q / 64] |= std::uint64_t{1} << (q % 64);
      }
      if (x(q)) {
        out[(n_ + q) / 64] |= std::uint64_t{1} << ((n_ + q) % 64);
      }
    }
    return out;
  }

  std::string bits_str() const {
    std::string s;
    for (std::size_t q = 0; q < n_; ++q) {
      s.push_back(z(q) ? '1' : '0');
    }
    s.push_back('|');
    for (std::size_t q = 0; q < n_; ++q) {
      s.push_back(x(q) ? '1' : '0');
    }
    return s;
  }

  bool operator==(const SympRow &o) const = default;

  void check_same(const SympRow &o) const {
    if (n_ != o.n_) {
      throw DimensionError("symplectic rows act on " + std::to_string(n_) + " and " + std::to_string(o.n_) + " qubits");
    }
  }

 private:
  static void set_bit(std::vector<std::uint64_t> &v, std::size_t q, bool b) {
    const std::uint64_t bit = std::uint64_t{1} << (q % 64);
    v[q / 64] = b ? (v[q / 64] | bit) : (v[q / 64] & ~bit);
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> z_;
  std::vector<std::uint64_t> x_;
};

/// u_Z . v_X + u_X . v_Z over GF(2). Zero iff the Paulis commute.
inline bool symp_inner(const SympRow &u, const SympRow &v) {
  u.check_same(v);
  std::uint64_t acc = 0;
  auto uz = u.z_words(), ux = u.x_words(), vz = v.z_words(), vx = v.x_words();
  for (std::size_t w = 0; w < uz.size(); ++w) {
    acc ^= (uz[w] & vx[w]) ^ (ux[w] & vz[w]);
  }
  return word_parity(acc);
}

/// Symplectic product restricted to the qubits whose bit is set in `mask`.
inline bool symp_inner_masked(const SympRow &u, const SympRow &v, std::span<const std::uint64_t> mask) {
  u.check_same(v);
  std::uint64_t acc = 0;
  auto uz = u.z_words(), ux = u.x_words(), vz = v.z_words(), vx = v.x_words();
  for (std::size_t w = 0; w < uz.size(); ++w) {
    acc ^= ((uz[w] & vx[w]) ^ (ux[w] & vz[w])) & mask[w];
  }
  return word_parity(acc);
}

/// Pauli operator i^phase * (sigma_1 (x) ... (x) sigma_n), sigma in {I,X,Y,Z}.
///
/// The phase is relative to the Hermitian letters, so Y = i X Z contributes no
/// phase of its own and a Hermitian operator has phase 0 (+1) or 2 (-1).
class PauliOp {
 public:
  PauliOp() = default;
  explicit PauliOp(std::size_t n) : bits_(n) {
  }
  explicit PauliOp(SympRow bits, std::uint8_t phase = 0) : bits_(std::move(bits)), phase_(phase & 3) {
  }

  /// Accepts an optional sign prefix (+, -, i, +i, -i) followed by I/X/Y/Z letters.
  static PauliOp from_string(std::string_view s) {
    std::uint8_t phase = 0;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      phase = s[pos] == '-' ? 2 : 0;
      ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
      phase = (phase + 1) & 3;
      ++pos;
    }
    PauliOp p(s.size() - pos);
    p.phase_ = phase;
    for (std::size_t q = 0; pos < s.size(); ++pos, ++q) {
      if (!p.set_letter(q, s[pos])) {
        throw ParseError(std::string("unexpected Pauli character '") + s[pos] + "'", 1, pos + 1);
      }
    }
    return p;
  }

  std::size_t n() const {
    return bits_.n();
  }
  const SympRow &bits() const {
    return bits_;
  }
  SympRow &bits() {
    return bits_;
  }
  std::uint8_t phase() const {
    return phase_;
  }
  void set_phase(std::uint8_t p) {
    phase_ = p & 3;
  }
  bool is_hermitian() const {
    return (phase_ & 1) == 0;
  }
  bool negative() const {
    return phase_ == 2;
  }

  char letter(std::size_t q) const {
    const bool x = bits_.x(q), z = bits_.z(q);
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  bool set_letter(std::size_t q, char c) {
    switch (c) {
      case 'I':
      case '_':
        bits_.set_x(q, false), bits_.set_z(q, false);
        return true;
      case 'X':
        bits_.set_x(q, true), bits_.set_z(q, false);
        return true;
      case 'Y':
        bits_.set_x(q, true), bits_.set_z(q, true);
        return true;
      case 'Z':
        bits_.set_x(q, false), bits_.set_z(q, true);
        return true;
      default:
        return false;
    }
  }

  std::string letters() const {
    std::string s;
    s.reserve(n());
    for (std::size_t q = 0; q < n(); ++q) {
      s.push_back(letter(q));
    }
    return s;
  }

  /// "+XZ", "-XZ", "+iXZ", "-iXZ".
  std::string str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    return kPrefix[phase_] + letters();
  }

  bool commutes(const PauliOp &o) const {
    return !symp_inner(bits_, o.bits_);
  }

  /// this = this * o, tracking the i-exponent from each qubit's letter product.
  PauliOp &operator*=(const PauliOp &o) {
    bits_.check_same(o.bits_);
    auto az = bits_.z_words(), ax = bits_.x_words();
    auto bz = o.bits_.z_words(), bx = o.bits_.x_words();
    int e = o.phase_;
    for (std::size_t w = 0; w < az.size(); ++w) {
      const std::uint64_t x1 = ax[w], z1 = az[w], x2 = bx[w], z2 = bz[w];
      // XY, YZ, ZX contribute +i; YX, ZY, XZ contribute -i.
      const std::uint64_t pos = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
      const std::uint64_t neg = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2);
      e += std::popcount(pos) - std::popcount(neg);
      ax[w] = x1 ^ x2;
      az[w] = z1 ^ z2;
    }
    phase_ = static_cast<std::uint8_t>(((phase_ + e) % 4 + 4) % 4);
    return *this;
  }

  bool operator==(const PauliOp &o) const = default;

 private:
  SympRow bits_;
  std::uint8_t phase_ = 0;
};

inline PauliOp pauli_mul(PauliOp a, const PauliOp &b) {
  a *= b;
  return a;
}

inline SympRow pauli_to_binary(const PauliOp &p) {
  return p.bits();
}

/// Hermitian (+1 sign) Pauli with the given binary image.
inline PauliOp binary_to_pauli(const SympRow &row) {
  return PauliOp(row, 0);
}

}  // namespace bqec
