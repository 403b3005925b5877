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

#include "qecbound/compiler.h"

#include "qecbound/bit_vector.h"
#include "qecbound/tableau.h"

namespace qecbound {

std::string PauliString::str() const {
    std::string result;
    for (auto [q, kind] : components) {
        if (!result.empty()) {
            result += ' ';
        }
        result += kind == PauliKind::X ? 'X' : kind == PauliKind::Y ? 'Y' : 'Z';
        result += std::to_string(q);
    }
    return result.empty() ? "I" : result;
}

std::vector<size_t> WellDefinednessReport::offending() const {
    std::vector<size_t> result;
    for (const auto &verdict : declarations) {
        if (!verdict.deterministic) {
            result.push_back(verdict.declaration);
        }
    }
    return result;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

WellDefinednessReport check_well_defined(const QecProgram &program) {
    size_t random_capacity = 0;
    for (const auto &statement : program.statements) {
        random_capacity += std::holds_alternative<MeasureStatement>(statement.body) ||
                           std::holds_alternative<ResetStatement>(statement.body);
    }
    SymbolicTableau tableau(program.qubit_count, random_capacity);
    std::unordered_map<std::string, SignExpr> outcomes;

    for (const auto &statement : program.statements) {
        std::visit(overloaded{
                       [&](const GateStatement &g) {
                           const auto &q = g.qubits;
                           switch (g.kind) {
                               case GateKind::X: tableau.x(q[0]); break;
                               case GateKind::Y: tableau.y(q[0]); break;
                               case GateKind::Z: tableau.z(q[0]); break;
                               case GateKind::H: tableau.h(q[0]); break;
                               case GateKind::S: tableau.s(q[0]); break;
                               case GateKind::SDG: tableau.sdg(q[0]); break;
                               case GateKind::CX: tableau.cx(q[0], q[1]); break;
                               case GateKind::CZ: tableau.cz(q[0], q[1]); break;
                           }
                       },
                       [&](const ResetStatement &r) { tableau.reset(r.qubit); },
                       [&](const MeasureStatement &m) { outcomes.emplace(m.name, tableau.measure(m.qubit)); },
                       [&](const ChannelStatement &) {},
                   },
                   statement.body);
    }

    WellDefinednessReport report;
    for (size_t d = 0; d < program.declarations.size(); d++) {
        SignExpr parity{false, BitVector(random_capacity)};
        for (const auto &name : program.declarations[d].operands) {
            parity ^= outcomes.at(name);
        }
        DeclarationVerdict verdict{d, parity.deterministic(), parity.deterministic() && parity.constant};
        report.well_defined &= verdict.deterministic;
        report.declarations.push_back(verdict);
    }
    return report;
}

std::vector<BernoulliChannel> decompose_channels(const QecProgram &program) {
    static constexpr PauliKind kSingle[] = {PauliKind::X, PauliKind::Y, PauliKind::Z};

    std::vector<BernoulliChannel> channels;
    auto scaled = [](const Probability &p, uint32_t parts) {
        if (p.is_symbolic()) {
            return Probability::symbolic(*p.variable, p.divisor * parts);
        }
        return Probability::concrete(p.value / parts);
    };
    auto push = [&](Probability p, PauliString pauli, size_t source) {
        channels.push_back(BernoulliChannel{channels.size(), p, std::move(pauli), source});
    };

    for (size_t s = 0; s < program.statements.size(); s++) {
        const auto *ch = std::get_if<ChannelStatement>(&program.statements[s].body);
        if (!ch) {
            continue;
        }
        const auto &q = ch->qubits;
        switch (ch->kind) {
            case ChannelKind::XERR: push(ch->strength, PauliString{{{q[0], PauliKind::X}}}, s); break;
            case ChannelKind::YERR: push(ch->strength, PauliString{{{q[0], PauliKind::Y}}}, s); break;
            case ChannelKind::ZERR: push(ch->strength, PauliString{{{q[0], PauliKind::Z}}}, s); break;
            case ChannelKind::DEPOLARIZE1:
                for (PauliKind k : kSingle) {
                    push(scaled(ch->strength, 3), PauliString{{{q[0], k}}}, s);
                }
                break;
            case ChannelKind::DEPOLARIZE2:
                // Order IX IY IZ XI XX ... ZZ, with I < X < Y < Z.
                for (int a = 0; a < 4; a++) {
                    for (int b = 0; b < 4; b++) {
                        if (a == 0 && b == 0) {
                            continue;
                        }
                        PauliString pauli;
                        if (a) {
                            pauli.components[q[0]] = kSingle[a - 1];
                        }
                        if (b) {
                            pauli.components[q[1]] = kSingle[b - 1];
                        }
                        push(scaled(ch->strength, 15), std::move(pauli), s);
                    }
                }
                break;
        }
    }
    return channels;
}

DetectorErrorModel compile_to_dem(const QecProgram &program) {
    WellDefinednessReport report = check_well_defined(program);
    if (!report.well_defined) {
        std::string names;
        for (size_t d : report.offending()) {
            names += (names.empty() ? "" : ", ") + std::string("line ") + std::to_string(program.declarations[d].line);
        }
        throw CompileError("program is not well defined: nondeterministic declarations at " + names);
    }

    std::vector<BernoulliChannel> channels = decompose_channels(program);
    for (const auto &ch : channels) {
        if (!ch.probability.is_symbolic() && ch.probability.value == 1) {
            throw CompileError("line " + std::to_string(program.statements[ch.source].line) +
                               ": channel with probability 1 is a deterministic flip; apply the Pauli gate in the circuit instead");
        }
    }

    // Frame bits for all channels at once: bit c of xs[q] says channel c's frame has an X part on q.
    const size_t n = channels.size();
    std::vector<BitVector> xs(program.qubit_count, BitVector(n));
    std::vector<BitVector> zs(program.qubit_count, BitVector(n));
    std::vector<BitVector> flips;
    std::unordered_map<std::string, size_t> measurement_of;

    size_t next_channel = 0;
    for (size_t s = 0; s < program.statements.size(); s++) {
        std::visit(overloaded{
                       [&](const GateStatement &g) {
                           const auto &q = g.qubits;
                           switch (g.kind) {
                               case GateKind::X:
                               case GateKind::Y:
                               case GateKind::Z: break;
                               case GateKind::H: std::swap(xs[q[0]], zs[q[0]]); break;
                               case GateKind::S:
                               case GateKind::SDG: zs[q[0]] ^= xs[q[0]]; break;
                               case GateKind::CX:
                                   xs[q[1]] ^= xs[q[0]];
                                   zs[q[0]] ^= zs[q[1]];
                                   break;
                               case GateKind::CZ:
                                   zs[q[1]] ^= xs[q[0]];
                                   zs[q[0]] ^= xs[q[1]];
                                   break;
                           }
                       },
                       [&](const ResetStatement &r) {
                           xs[r.qubit].clear();
                           zs[r.qubit].clear();
                       },
                       [&](const MeasureStatement &m) {
                           measurement_of.emplace(m.name, flips.size());
                           flips.push_back(xs[m.qubit]);
                       },
                       [&](const ChannelStatement &) {
                           while (next_channel < n && channels[next_channel].source == s) {
                               for (auto [q, kind] : channels[next_channel].pauli.components) {
                                   if (static_cast<uint8_t>(kind) & 1) {
                                       xs[q].flip(next_channel);
                                   }
                                   if (static_cast<uint8_t>(kind) & 2) {
                                       zs[q].flip(next_channel);
                                   }
                               }
                               next_channel++;
                           }
                       },
                   },
                   program.statements[s].body);
    }

    std::vector<std::vector<uint32_t>> dets(n), obs(n);
    size_t n_det = 0, n_obs = 0;
    for (const auto &decl : program.declarations) {
        BitVector parity(n);
        for (const auto &name : decl.operands) {
            parity ^= flips[measurement_of.at(name)];
        }
        bool syndrome = decl.kind == DeclarationKind::Syndrome;
        uint32_t index = static_cast<uint32_t>(syndrome ? n_det++ : n_obs++);
        auto &target = syndrome ? dets : obs;
        parity.for_each_one([&](size_t c) { target[c].push_back(index); });
    }

    DetectorErrorModel model;
    for (size_t c = 0; c < n; c++) {
        const Probability &p = channels[c].probability;
        if (!p.is_symbolic() && p.value == 0) {
            continue;
        }
        model.add_channel(p, std::move(dets[c]), std::move(obs[c]));
    }
    model.n_detectors = n_det;
    model.n_observables = n_obs;
    return model;
}

}  // namespace qecbound
