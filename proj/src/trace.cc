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


#include "qecbound/trace.h"

#include <stdexcept>

namespace qecbound {

nlohmann::json config_to_json(const RunConfig &config) {
    nlohmann::json j;
    j["mode"] = config.mode == Mode::Accuracy ? "accuracy" : "robustness";
    j["strategy"] = strategy_name(config.plan.strategy);
    j["workers"] = config.plan.workers;
    j["distance"] = config.plan.distance ? nlohmann::json(*config.plan.distance) : nlohmann::json(nullptr);
    j["max_shots"] = config.max_shots ? nlohmann::json(*config.max_shots) : nlohmann::json(nullptr);
    j["time_limit_s"] = config.time_limit_s ? nlohmann::json(*config.time_limit_s) : nlohmann::json(nullptr);
    j["samples"] = config.samples;
    j["alpha"] = config.alpha;
    j["checkpoint_growth"] = config.checkpoint_growth;
    j["max_free_variables"] = config.optimizer.max_free_variables;
    return j;
}

nlohmann::json trace_header(const RunConfig &config, const DetectorErrorModel &model) {
    return {{"type", "header"},
            {"config", config_to_json(config)},
            {"model_digest", model_digest(model)},
            {"n_channels", model.n_channels()},
            {"n_detectors", model.n_detectors},
            {"n_observables", model.n_observables},
            {"seed", config.seed}};
}

nlohmann::json record_to_json(const BoundRecord &r) {
    nlohmann::json j = {{"type", "bound"}, {"shots", r.shots}, {"lower", r.lower}, {"upper", r.upper}, {"sound", r.sound}};
    if (r.alpha) {
        j["alpha"] = *r.alpha;
    }
    if (r.samples) {
        j["samples"] = *r.samples;
    }
    if (r.exact) {
        j["exact"] = *r.exact;
    }
    if (r.frozen) {
        j["frozen"] = true;
    }
    j["elapsed_s"] = r.elapsed_s;
    return j;
}

nlohmann::json final_to_json(const BoundsTrace &t) {
    nlohmann::json j = {{"type", "final"},  {"shots", t.shots},         {"lower", t.lower},
                        {"upper", t.upper}, {"exhausted", t.exhausted}};
    if (t.witness_vertex) {
        j["witness_vertex"] = *t.witness_vertex;
    }
    if (t.exact) {
        j["exact"] = *t.exact;
    }
    return j;
}

JsonLinesSink::JsonLinesSink(std::ostream &out, const nlohmann::json &header) : out_(out) {
    write(header);
}

void JsonLinesSink::on_record(const BoundRecord &record) {
    write(record_to_json(record));
}

void JsonLinesSink::on_final(const BoundsTrace &trace) {
    write(final_to_json(trace));
}

void JsonLinesSink::write(const nlohmann::json &line) {
    if (!(out_ << line.dump() << '\n' << std::flush)) {
        throw std::runtime_error("trace sink write failed");
    }
}

void emit_trace(const BoundsTrace &trace, const nlohmann::json &header, std::ostream &out) {
    JsonLinesSink sink(out, header);
    for (const auto &r : trace.records) {
        sink.on_record(r);
    }
    sink.on_final(trace);
}

ParsedTrace parse_trace(std::istream &in) {
    ParsedTrace trace;
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + e.what());
        }
        const std::string type = j.value("type", "");
        if (type == "header") {
            trace.header = j;
            have_header = true;
        } else if (type == "bound") {
            BoundRecord r;
            r.shots = j.at("shots").get<uint64_t>();
            r.lower = j.at("lower").get<double>();
            r.upper = j.at("upper").get<double>();
            r.sound = j.at("sound").get<bool>();
            if (j.contains("alpha")) {
                r.alpha = j["alpha"].get<double>();
            }
            if (j.contains("samples")) {
                r.samples = j["samples"].get<uint64_t>();
            }
            if (j.contains("exact")) {
                r.exact = j["exact"].get<bool>();
            }
            r.frozen = j.value("frozen", false);
            r.elapsed_s = j.value("elapsed_s", 0.0);
            trace.records.push_back(r);
        } else if (type == "final") {
            trace.final = j;
        } else {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": unknown type '" + type + "'");
        }
    }
    if (!have_header) {
        throw std::runtime_error("trace has no header line");
    }
    return trace;
}

std::string canonical_records(const std::vector<BoundRecord> &records) {
    std::string out;
    for (auto r : records) {
        r.elapsed_s = 0;
        out += record_to_json(r).dump();
        out += '\n';
    }
    return out;
}

}  // namespace qecbound
