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

// Textual QEC programs: a straight-line Clifford circuit with Bernoulli/depolarizing error
// channels, followed by syndrome (DETECTOR) and observable (OBSERVABLE) parity declarations.
//
//     XERR(0.01) 0          # error channels: XERR YERR ZERR DEPOLARIZE1 DEPOLARIZE2
//     CX 0 1                # gates: X Y Z H S SDG CX CZ, reset: R
//     M m0 <- 1             # measurement into a named classical register
//     DETECTOR m0           # declarations come after every statement
//     OBSERVABLE m0 m1

#ifndef QECBOUND_FRONTEND_H
#define QECBOUND_FRONTEND_H

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qecbound/probability.h"

namespace qecbound {

enum class GateKind { X, Y, Z, H, S, SDG, CX, CZ };
enum class ChannelKind { XERR, YERR, ZERR, DEPOLARIZE1, DEPOLARIZE2 };
enum class DeclarationKind { Syndrome, Observable };

std::string_view gate_name(GateKind kind);
std::string_view channel_name(ChannelKind kind);
size_t gate_arity(GateKind kind);
size_t channel_arity(ChannelKind kind);

struct GateStatement {
    GateKind kind;
    std::vector<uint32_t> qubits;
    bool operator==(const GateStatement &) const = default;
};

struct ResetStatement {
    uint32_t qubit;
    bool operator==(const ResetStatement &) const = default;
};

struct MeasureStatement {
    std::string name;
    uint32_t qubit;
    bool operator==(const MeasureStatement &) const = default;
};

struct ChannelStatement {
    ChannelKind kind;
    Probability strength;
    std::vector<uint32_t> qubits;
    bool operator==(const ChannelStatement &) const = default;
};

using StatementBody = std::variant<GateStatement, ResetStatement, MeasureStatement, ChannelStatement>;

struct Statement {
    StatementBody body;
    size_t line = 0;  // 1-based source line; not part of structural equality.
    bool operator==(const Statement &other) const {
        return body == other.body;
    }
};

struct Declaration {
    DeclarationKind kind;
    std::vector<std::string> operands;
    size_t line = 0;
    bool operator==(const Declaration &other) const {
        return kind == other.kind && operands == other.operands;
    }
};

struct QecProgram {
    std::vector<Statement> statements;
    std::vector<Declaration> declarations;
    uint32_t qubit_count = 0;
    std::set<std::string> classical_names;

    bool operator==(const QecProgram &) const = default;

    size_t num_measurements() const;
    size_t num_channel_statements() const;
    /// Measurement ordinal of each classical name, in statement order.
    std::unordered_map<std::string, size_t> measurement_indices() const;
    /// Symbolic variable ids in channel order (empty for a concrete program).
    std::vector<uint32_t> symbolic_variables() const;
};

class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, size_t column, const std::string &message);
    size_t line() const {
        return line_;
    }
    size_t column() const {
        return column_;
    }

   private:
    size_t line_;
    size_t column_;
};

/// Parses a concrete program; symbolic strengths are rejected.
QecProgram parse_program(std::string_view text);

/// Parses a program whose channel strengths may be symbolic identifiers `x<k>`, each used by at
/// most one channel statement.
QecProgram parse_symbolic_program(std::string_view text);

/// Canonical text; parsing it back yields a structurally equal program.
std::string to_text(const QecProgram &program);

}  // namespace qecbound

#endif
