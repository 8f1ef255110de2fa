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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bqec/errors.hpp"
#include "bqec/pauli.hpp"
#include "bqec/stabilizer_code.hpp"

namespace bqec {

/// Parses the stabilizer text format: one generator per line over I/X/Y/Z,
/// optional leading '+' or '-', '#' starts a comment, blank lines ignored.
/// Shape errors raise ParseError; the result is not yet validated.
inline StabilizerCode parse_stabilizer_unchecked(std::string_view text) {
  std::vector<PauliOp> gens;
  std::size_t width = 0;
  std::size_t first_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    ++line_no;
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t b = 0;
    while (b < line.size() && (line[b] == ' ' || line[b] == '\t' || line[b] == '\r')) {
      ++b;
    }
    std::size_t e = line.size();
    while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t' || line[e - 1] == '\r')) {
      --e;
    }
    if (b == e) {
      continue;
    }
    std::uint8_t phase = 0;
    std::size_t col = b;
    if (line[col] == '+' || line[col] == '-') {
      phase = line[col] == '-' ? 2 : 0;
      ++col;
    }
    const std::size_t letters = e - col;
    if (letters == 0) {
      throw ParseError("sign without Pauli letters", line_no, col + 1);
    }
    if (gens.empty()) {
      width = letters;
      first_line = line_no;
    } else if (letters != width) {
      throw ParseError("row has " + std::to_string(letters) + " qubits but line " + std::to_string(first_line) +
                           " has " + std::to_string(width),
                       line_no, col + 1);
    }
    PauliOp p(width);
    p.set_phase(phase);
    for (std::size_t q = 0; q < letters; ++q) {
      const char ch = line[col + q];
      if (ch == '_' || !p.set_letter(q, ch)) {
        throw ParseError(std::string("unexpected character '") + ch + "'", line_no, col + q + 1);
      }
    }
    gens.push_back(std::move(p));
  }
  if (gens.empty()) {
    throw ParseError("empty input: no generators", 1, 1);
  }
  return StabilizerCode(width, std::move(gens));
}

/// parse_stabilizer_unchecked followed by validate_code.
inline StabilizerCode parse_stabilizer(std::string_view text) {
  auto code = parse_stabilizer_unchecked(text);
  require_valid(code);
  return code;
}

/// Canonical text: one generator per line, '-' prefix for negative signs only.
inline std::string serialize_stabilizer(const StabilizerCode &c) {
  std::string out;
  for (const auto &g : c.generators()) {
    if (g.negative()) {
      out.push_back('-');
    }
    out += g.letters();
    out.push_back('\n');
  }
  return out;
}

struct BuiltinCode {
  std::string_view name;
  std::string_view text;
};

inline constexpr std::array<BuiltinCode, 4> kBuiltinCodes{{
    {"steane",
     "IIIXXXX\n"
     "IXXIIXX\n"
     "XIXIXIX\n"
     "IIIZZZZ\n"
     "IZZIIZZ\n"
     "ZIZIZIZ\n"},
    {"g8_3_3",
     "XIZIYZXY\n"
     "IXZZYXYI\n"
     "IIXYZZYX\n"
     "ZIZXIYYZ\n"
     "ZZZZXZZX\n"},
    {"five_one_three",
     "XZZXI\n"
     "IXZZX\n"
     "XIXZZ\n"
     "ZXIXZ\n"},
    {"ebit",
     "ZZ\n"
     "XX\n"},
}};

inline std::optional<StabilizerCode> builtin_code(std::string_view name) {
  for (const auto &b : kBuiltinCodes) {
    if (b.name == name) {
      return parse_stabilizer(b.text);
    }
  }
  return std::nullopt;
}

inline StabilizerCode steane_code() {
  return *builtin_code("steane");
}

}  // namespace bqec
