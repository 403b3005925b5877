// Copyright 2026 The qecbound Authors
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

#ifndef QECBOUND_COMPILER_H
#define QECBOUND_COMPILER_H

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecbound/dem.h"
#include "qecbound/frontend.h"

namespace qecbound {

enum class PauliKind : uint8_t { X = 1, Z = 2, Y = 3 };  // bit 0: X part, bit 1: Z part

/// Sparse Pauli operator, global phase dropped. Identity components are never stored.
struct PauliString {
    std::map<uint32_t, PauliKind> components;

    bool operator==(const PauliString &) const = default;
    std::string str() const;
};

struct BernoulliChannel {
    size_t index = 0;
    Probability probability;
    PauliString pauli;
    size_t source = 0;  // index of the originating statement
};

struct DeclarationVerdict {
    size_t declaration = 0;  // index into QecProgram::declarations
    bool deterministic = false;
    bool value = false;  // noiseless parity; meaningful only if deterministic
};

struct WellDefinednessReport {
    bool well_defined = true;
    std::vector<DeclarationVerdict> declarations;

    /// Indices of declarations whose parity depends on a random measurement outcome.
    std::vector<size_t> offending() const;
};

class CompileError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Simulates the noiseless circuit from |0...0> on a symbolic-sign tableau.
WellDefinednessReport check_well_defined(const QecProgram &program);

/// Splits every channel statement into independent Bernoulli Pauli channels.
std::vector<BernoulliChannel> decompose_channels(const QecProgram &program);

/// Pauli-frame propagation of every Bernoulli channel. Channels of probability exactly 0 are
/// dropped; probability exactly 1 is rejected. Throws CompileError if not well defined.
DetectorErrorModel compile_to_dem(const QecProgram &program);

}  // namespace qecbound

#endif
