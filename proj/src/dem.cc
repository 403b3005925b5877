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

#include "qecbound/dem.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

namespace qecbound {

void DetectorErrorModel::add_channel(Probability p, std::vector<uint32_t> dets, std::vector<uint32_t> obs) {
    std::sort(dets.begin(), dets.end());
    std::sort(obs.begin(), obs.end());
    if (!dets.empty()) {
        n_detectors = std::max<size_t>(n_detectors, dets.back() + size_t{1});
    }
    if (!obs.empty()) {
        n_observables = std::max<size_t>(n_observables, obs.back() + size_t{1});
    }
    probabilities.push_back(p);
    det_footprint.push_back(std::move(dets));
    obs_footprint.push_back(std::move(obs));
}

bool DetectorErrorModel::is_symbolic() const {
    return std::any_of(probabilities.begin(), probabilities.end(), [](const Probability &p) { return p.is_symbolic(); });
}

std::vector<double> DetectorErrorModel::concrete_probabilities() const {
    std::vector<double> result;
    result.reserve(probabilities.size());
    for (const auto &p : probabilities) {
        if (p.is_symbolic()) {
            throw std::invalid_argument("model has symbolic channel probabilities (" + p.str() + ")");
        }
        result.push_back(p.value);
    }
    return result;
}

DemParseError::DemParseError(size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {
}

namespace {

std::optional<uint64_t> parse_uint(std::string_view s) {
    uint64_t value = 0;
    if (s.empty()) {
        return std::nullopt;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) {
            k++;
        }
        size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) {
            k++;
        }
        if (k > start) {
            tokens.push_back(line.substr(start, k - start));
        }
    }
    return tokens;
}

Probability parse_probability_arg(std::string_view arg, size_t line) {
    if (!arg.empty() && arg[0] == 'x') {
        std::string_view rest = arg.substr(1);
        uint64_t divisor = 1;
        size_t slash = rest.find('/');
        if (slash != std::string_view::npos) {
            auto d = parse_uint(rest.substr(slash + 1));
            if (!d || *d == 0 || *d > UINT32_MAX) {
                throw DemParseError(line, "bad divisor in symbolic probability '" + std::string(arg) + "'");
            }
            divisor = *d;
            rest = rest.substr(0, slash);
        }
        auto var = parse_uint(rest);
        if (!var || *var > UINT32_MAX) {
            throw DemParseError(line, "bad symbolic probability '" + std::string(arg) + "'");
        }
        return Probability::symbolic(static_cast<uint32_t>(*var), static_cast<uint32_t>(divisor));
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size()) {
        throw DemParseError(line, "bad probability '" + std::string(arg) + "'");
    }
    if (!(value >= 0 && value <= 1)) {
        throw DemParseError(line, "probability " + std::string(arg) + " outside [0, 1]");
    }
    return Probability::concrete(value);
}

// `D12` / `L3` -> (kind, index).
std::optional<std::pair<char, uint32_t>> parse_target(std::string_view token) {
    if (token.size() < 2 || (token[0] != 'D' && token[0] != 'L')) {
        return std::nullopt;
    }
    auto index = parse_uint(token.substr(1));
    if (!index || *index > UINT32_MAX) {
        return std::nullopt;
    }
    return std::make_pair(token[0], static_cast<uint32_t>(*index));
}

}  // namespace

DetectorErrorModel parse_dem(std::string_view text) {
    DetectorErrorModel model;
    std::optional<std::pair<size_t, size_t>> header;
    size_t max_det = 0, max_obs = 0;  // 1 + max index seen
    bool seen_content = false;

    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        line_no++;
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_ws(line);
        if (tokens.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }

        std::string_view head = tokens[0];
        if (head == "dem") {
            if (seen_content) {
                throw DemParseError(line_no, "'dem' header must precede all error lines");
            }
            if (tokens.size() != 3) {
                throw DemParseError(line_no, "expected 'dem <n_detectors> <n_observables>'");
            }
            auto nd = parse_uint(tokens[1]);
            auto no = parse_uint(tokens[2]);
            if (!nd || !no) {
                throw DemParseError(line_no, "bad counts in 'dem' header");
            }
            header = std::make_pair(static_cast<size_t>(*nd), static_cast<size_t>(*no));
            seen_content = true;
        } else if (head.starts_with("error(")) {
            seen_content = true;
            size_t close = head.find(')');
            if (close == std::string_view::npos || close + 1 != head.size()) {
                throw DemParseError(line_no, "malformed '" + std::string(head) + "'");
            }
            Probability p = parse_probability_arg(head.substr(6, close - 6), line_no);

            // `^` separates suggested decomposition components; the mechanism is their XOR.
            std::set<uint32_t> dets, obs;
            std::set<std::pair<char, uint32_t>> component;
            for (size_t t = 1; t <= tokens.size(); t++) {
                if (t == tokens.size() || tokens[t] == "^") {
                    for (auto [kind, index] : component) {
                        auto &target_set = kind == 'D' ? dets : obs;
                        if (!target_set.erase(index)) {
                            target_set.insert(index);
                        }
                    }
                    component.clear();
                    continue;
                }
                auto target = parse_target(tokens[t]);
                if (!target) {
                    throw DemParseError(line_no, "bad target '" + std::string(tokens[t]) + "'");
                }
                if (!component.insert(*target).second) {
                    throw DemParseError(line_no, "duplicate target '" + std::string(tokens[t]) + "'");
                }
                if (target->first == 'D') {
                    max_det = std::max<size_t>(max_det, target->second + size_t{1});
                } else {
                    max_obs = std::max<size_t>(max_obs, target->second + size_t{1});
                }
            }
            model.probabilities.push_back(p);
            model.det_footprint.emplace_back(dets.begin(), dets.end());
            model.obs_footprint.emplace_back(obs.begin(), obs.end());
        } else if (head == "detector" || head.starts_with("detector(") || head == "logical_observable") {
            // Stim declarations only extend the index ranges; coordinates are ignored.
            seen_content = true;
            char expected = head == "logical_observable" ? 'L' : 'D';
            for (size_t t = 1; t < tokens.size(); t++) {
                auto target = parse_target(tokens[t]);
                if (!target || target->first != expected) {
                    throw DemParseError(line_no, "bad target '" + std::string(tokens[t]) + "'");
                }
                size_t &bound = expected == 'D' ? max_det : max_obs;
                bound = std::max<size_t>(bound, target->second + size_t{1});
            }
        } else {
            throw DemParseError(line_no, "unsupported instruction '" + std::string(head) + "'");
        }
        if (end == text.size()) {
            break;
        }
    }

    if (header) {
        if (max_det > header->first || max_obs > header->second) {
            throw DemParseError(1, "targets exceed the counts declared in the 'dem' header");
        }
        model.n_detectors = header->first;
        model.n_observables = header->second;
    } else {
        model.n_detectors = max_det;
        model.n_observables = max_obs;
    }
    return model;
}

namespace {

std::string write_impl(const DetectorErrorModel &model) {
    std::ostringstream out;
    out << "# detector error model: " << model.n_channels() << " channels\n";
    out << "dem " << model.n_detectors << " " << model.n_observables << "\n";
    for (size_t c = 0; c < model.n_channels(); c++) {
        out << "error(" << model.probabilities[c].str() << ")";
        for (uint32_t d : model.det_footprint[c]) {
            out << " D" << d;
        }
        for (uint32_t o : model.obs_footprint[c]) {
            out << " L" << o;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string write_dem(const DetectorErrorModel &model) {
    if (model.is_symbolic()) {
        throw std::invalid_argument("write_dem: model is symbolic; use write_symbolic_dem");
    }
    return write_impl(model);
}

std::string write_symbolic_dem(const DetectorErrorModel &model) {
    return write_impl(model);
}

std::string model_digest(const DetectorErrorModel &model) {
    std::string text = write_impl(model);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qecbound
