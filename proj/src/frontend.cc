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

#include "qecbound/frontend.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

namespace qecbound {

namespace {

struct Token {
    std::string_view text;
    size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            k++;
        }
        if (k >= line.size()) {
            break;
        }
        size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            k++;
        }
        tokens.push_back({line.substr(start, k - start), start + 1});
    }
    return tokens;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::optional<uint32_t> parse_index(std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
    }
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

std::optional<GateKind> lookup_gate(std::string_view s) {
    static constexpr std::pair<std::string_view, GateKind> table[] = {
        {"X", GateKind::X}, {"Y", GateKind::Y},   {"Z", GateKind::Z},     {"H", GateKind::H},
        {"S", GateKind::S}, {"SDG", GateKind::SDG}, {"CX", GateKind::CX}, {"CZ", GateKind::CZ},
    };
    for (auto [name, kind] : table) {
        if (s == name) {
            return kind;
        }
    }
    return std::nullopt;
}

std::optional<ChannelKind> lookup_channel(std::string_view s) {
    static constexpr std::pair<std::string_view, ChannelKind> table[] = {
        {"XERR", ChannelKind::XERR},
        {"YERR", ChannelKind::YERR},
        {"ZERR", ChannelKind::ZERR},
        {"DEPOLARIZE1", ChannelKind::DEPOLARIZE1},
        {"DEPOLARIZE2", ChannelKind::DEPOLARIZE2},
    };
    for (auto [name, kind] : table) {
        if (s == name) {
            return kind;
        }
    }
    return std::nullopt;
}

class Parser {
   public:
    explicit Parser(bool allow_symbolic) : allow_symbolic_(allow_symbolic) {
    }

    QecProgram run(std::string_view text) {
        size_t line_no = 0;
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            line_no++;
            std::string_view line = text.substr(pos, end - pos);
            if (auto hash = line.find('#'); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            parse_line(line_no, line);
            if (end == text.size()) {
                break;
            }
            pos = end + 1;
        }
        program_.qubit_count = max_qubit_ ? *max_qubit_ + 1 : 0;
        return std::move(program_);
    }

   private:
    [[noreturn]] void fail(const Token &token, const std::string &message) const {
        throw ParseError(line_, token.column, message);
    }

    uint32_t qubit(const Token &token) {
        auto q = parse_index(token.text);
        if (!q) {
            fail(token, "expected a qubit index, got '" + std::string(token.text) + "'");
        }
        max_qubit_ = std::max(max_qubit_.value_or(0), *q);
        return *q;
    }

    void require_statement_section(const Token &token) {
        if (!program_.declarations.empty()) {
            fail(token, "statement after a declaration; all declarations must come last");
        }
    }

    void expect_count(const std::vector<Token> &tokens, size_t expected, std::string_view what) {
        if (tokens.size() != expected) {
            const Token &at = tokens.size() > expected ? tokens[expected] : tokens.back();
            fail(at, std::string(what) + " expects " + std::to_string(expected - 1) + " operand(s), got " +
                         std::to_string(tokens.size() - 1));
        }
    }

    void require_distinct(const std::vector<Token> &tokens, const std::vector<uint32_t> &qubits) {
        if (qubits.size() == 2 && qubits[0] == qubits[1]) {
            fail(tokens[2], "two-qubit operation needs distinct qubits");
        }
    }

    Probability strength(const Token &token, std::string_view arg, size_t arg_column) {
        Token at{arg, arg_column};
        if (!arg.empty() && arg[0] == 'x') {
            auto var = parse_index(arg.substr(1));
            if (!var) {
                fail(at, "malformed symbolic strength '" + std::string(arg) + "'");
            }
            if (!allow_symbolic_) {
                fail(at, "symbolic strength '" + std::string(arg) + "' in a concrete program");
            }
            if (!seen_variables_.insert(*var).second) {
                fail(at, "symbolic variable '" + std::string(arg) + "' used by more than one channel");
            }
            return Probability::symbolic(*var);
        }
        double value = 0;
        auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
        if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size()) {
            fail(at, "malformed probability '" + std::string(arg) + "' in " + std::string(token.text));
        }
        if (!std::isfinite(value) || value < 0 || value > 1) {
            fail(at, "probability " + std::string(arg) + " outside [0, 1]");
        }
        return Probability::concrete(value);
    }

    void parse_line(size_t line_no, std::string_view line) {
        line_ = line_no;
        auto tokens = tokenize(line);
        if (tokens.empty()) {
            return;
        }
        const Token &head = tokens[0];
        std::string_view word = head.text;

        if (auto paren = word.find('('); paren != std::string_view::npos) {
            if (word.back() != ')') {
                fail(head, "unterminated '(' in '" + std::string(word) + "'");
            }
            auto kind = lookup_channel(word.substr(0, paren));
            if (!kind) {
                fail(head, "unknown error channel '" + std::string(word.substr(0, paren)) + "'");
            }
            require_statement_section(head);
            std::string_view arg = word.substr(paren + 1, word.size() - paren - 2);
            ChannelStatement stmt{*kind, strength(head, arg, head.column + paren + 1), {}};
            expect_count(tokens, 1 + channel_arity(*kind), word.substr(0, paren));
            for (size_t k = 1; k < tokens.size(); k++) {
                stmt.qubits.push_back(qubit(tokens[k]));
            }
            require_distinct(tokens, stmt.qubits);
            program_.statements.push_back({std::move(stmt), line_no});
            return;
        }

        if (auto gate = lookup_gate(word)) {
            require_statement_section(head);
            expect_count(tokens, 1 + gate_arity(*gate), word);
            GateStatement stmt{*gate, {}};
            for (size_t k = 1; k < tokens.size(); k++) {
                stmt.qubits.push_back(qubit(tokens[k]));
            }
            require_distinct(tokens, stmt.qubits);
            program_.statements.push_back({std::move(stmt), line_no});
            return;
        }

        if (word == "R") {
            require_statement_section(head);
            expect_count(tokens, 2, word);
            program_.statements.push_back({ResetStatement{qubit(tokens[1])}, line_no});
            return;
        }

        if (word == "M") {
            require_statement_section(head);
            if (tokens.size() != 4 || tokens[2].text != "<-") {
                fail(tokens.size() > 1 ? tokens[1] : head, "measurement syntax is 'M <name> <- <qubit>'");
            }
            if (!is_identifier(tokens[1].text)) {
                fail(tokens[1], "invalid register name '" + std::string(tokens[1].text) + "'");
            }
            std::string name(tokens[1].text);
            if (!program_.classical_names.insert(name).second) {
                fail(tokens[1], "register '" + name + "' is assigned more than once");
            }
            program_.statements.push_back({MeasureStatement{name, qubit(tokens[3])}, line_no});
            return;
        }

        if (word == "DETECTOR" || word == "OBSERVABLE") {
            if (tokens.size() < 2) {
                fail(head, std::string(word) + " needs at least one register");
            }
            Declaration decl{word == "DETECTOR" ? DeclarationKind::Syndrome : DeclarationKind::Observable, {}, line_no};
            for (size_t k = 1; k < tokens.size(); k++) {
                std::string name(tokens[k].text);
                if (!program_.classical_names.count(name)) {
                    fail(tokens[k], "register '" + name + "' is not assigned by an earlier measurement");
                }
                decl.operands.push_back(std::move(name));
            }
            program_.declarations.push_back(std::move(decl));
            return;
        }

        fail(head, "unknown instruction '" + std::string(word) + "'");
    }

    bool allow_symbolic_;
    QecProgram program_;
    std::optional<uint32_t> max_qubit_;
    std::set<uint32_t> seen_variables_;
    size_t line_ = 0;
};

}  // namespace

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::SDG:
            return "SDG";
        case GateKind::CX:
            return "CX";
        case GateKind::CZ:
            return "CZ";
    }
    return "?";
}

std::string_view channel_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::XERR:
            return "XERR";
        case ChannelKind::YERR:
            return "YERR";
        case ChannelKind::ZERR:
            return "ZERR";
        case ChannelKind::DEPOLARIZE1:
            return "DEPOLARIZE1";
        case ChannelKind::DEPOLARIZE2:
            return "DEPOLARIZE2";
    }
    return "?";
}

size_t gate_arity(GateKind kind) {
    return kind == GateKind::CX || kind == GateKind::CZ ? 2 : 1;
}

size_t channel_arity(ChannelKind kind) {
    return kind == ChannelKind::DEPOLARIZE2 ? 2 : 1;
}

size_t QecProgram::num_measurements() const {
    return std::count_if(statements.begin(), statements.end(),
                         [](const Statement &s) { return std::holds_alternative<MeasureStatement>(s.body); });
}

size_t QecProgram::num_channel_statements() const {
    return std::count_if(statements.begin(), statements.end(),
                         [](const Statement &s) { return std::holds_alternative<ChannelStatement>(s.body); });
}

std::unordered_map<std::string, size_t> QecProgram::measurement_indices() const {
    std::unordered_map<std::string, size_t> result;
    for (const auto &s : statements) {
        if (auto *m = std::get_if<MeasureStatement>(&s.body)) {
            result.emplace(m->name, result.size());
        }
    }
    return result;
}

std::vector<uint32_t> QecProgram::symbolic_variables() const {
    std::vector<uint32_t> result;
    for (const auto &s : statements) {
        if (auto *c = std::get_if<ChannelStatement>(&s.body); c && c->strength.is_symbolic()) {
            result.push_back(*c->strength.variable);
        }
    }
    return result;
}

ParseError::ParseError(size_t line, size_t column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {
}

QecProgram parse_program(std::string_view text) {
    return Parser(false).run(text);
}

QecProgram parse_symbolic_program(std::string_view text) {
    return Parser(true).run(text);
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string Probability::str() const {
    if (!variable) {
        return format_double(value);
    }
    std::string result = "x" + std::to_string(*variable);
    if (divisor != 1) {
        result += "/" + std::to_string(divisor);
    }
    return result;
}

std::string to_text(const QecProgram &program) {
    std::ostringstream out;
    auto qubits = [&](const std::vector<uint32_t> &qs) {
        for (auto q : qs) {
            out << ' ' << q;
        }
    };
    for (const auto &s : program.statements) {
        std::visit(
            [&](const auto &body) {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, GateStatement>) {
                    out << gate_name(body.kind);
                    qubits(body.qubits);
                } else if constexpr (std::is_same_v<T, ResetStatement>) {
                    out << "R " << body.qubit;
                } else if constexpr (std::is_same_v<T, MeasureStatement>) {
                    out << "M " << body.name << " <- " << body.qubit;
                } else {
                    out << channel_name(body.kind) << '(' << body.strength.str() << ')';
                    qubits(body.qubits);
                }
            },
            s.body);
        out << '\n';
    }
    for (const auto &d : program.declarations) {
        out << (d.kind == DeclarationKind::Syndrome ? "DETECTOR" : "OBSERVABLE");
        for (const auto &name : d.operands) {
            out << ' ' << name;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qecbound
