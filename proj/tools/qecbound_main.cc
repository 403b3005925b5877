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


// qecbound: compile QEC programs and bound decoder logical error rates.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qecbound/compiler.h"
#include "qecbound/decoders.h"
#include "qecbound/dem.h"
#include "qecbound/driver.h"
#include "qecbound/external_decoder.h"
#include "qecbound/frontend.h"
#include "qecbound/trace.h"

namespace {

using namespace qecbound;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A .dem file is read as a detector error model; anything else is compiled as a program.
DetectorErrorModel load_model(const std::string &path) {
    std::string text = read_file(path);
    if (ends_with(path, ".dem")) {
        return parse_dem(text);
    }
    return compile_to_dem(parse_symbolic_program(text));
}

DecoderFactory make_factory(const std::string &spec, const DetectorErrorModel &model, std::vector<double> v) {
    if (spec == "ml") {
        std::shared_ptr<MlDecoder> shared = build_ml_decoder(model, v);
        return [shared](size_t) -> std::unique_ptr<Decoder> { return std::make_unique<MlDecoder>(*shared); };
    }
    if (spec == "greedy") {
        return [&model, v](size_t) -> std::unique_ptr<Decoder> { return build_greedy_decoder(model, v); };
    }
    if (spec.rfind("exec:", 0) == 0) {
        std::string command = spec.substr(5);
        size_t n_det = model.n_detectors, n_obs = model.n_observables;
        return [command, n_det, n_obs](size_t) -> std::unique_ptr<Decoder> {
            return connect_external_decoder(command, n_det, n_obs);
        };
    }
    throw std::invalid_argument("unknown decoder '" + spec + "' (expected ml, greedy or exec:<command>)");
}

Hyperrectangle read_box_file(const std::string &path, size_t n) {
    std::istringstream in(read_file(path));
    Hyperrectangle box;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        double lo, hi;
        if (!(fields >> lo)) {
            continue;
        }
        std::string extra;
        if (!(fields >> hi) || (fields >> extra)) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected '<lower> <upper>'");
        }
        box.lower.push_back(lo);
        box.upper.push_back(hi);
    }
    if (box.size() != n) {
        throw std::invalid_argument(path + ": " + std::to_string(box.size()) + " intervals for " + std::to_string(n) +
                                    " channels");
    }
    box.validate();
    return box;
}

struct Options {
    std::string input;
    std::string output;
    std::string decoder = "ml";
    std::string strategy = "hamming";
    std::optional<size_t> distance;
    size_t workers = 1;
    std::optional<uint64_t> max_shots;
    std::optional<double> time_limit;
    size_t samples = 10000;
    double alpha = 0.01;
    std::string box_scale;
    std::string box_file;
    uint64_t seed = 0;
    std::string trace_path;
};

RunConfig make_config(const Options &o, Mode mode) {
    RunConfig config;
    config.mode = mode;
    config.plan.strategy = parse_strategy(o.strategy);
    config.plan.workers = o.workers;
    config.plan.distance = o.distance;
    if (config.plan.strategy == Strategy::Split && !o.distance) {
        throw std::invalid_argument("--strategy split requires --distance");
    }
    config.max_shots = o.max_shots;
    config.time_limit_s = o.time_limit;
    config.samples = mode == Mode::Accuracy ? o.samples : 0;
    config.alpha = o.alpha;
    config.seed = o.seed;
    return config;
}

void print_summary(const BoundsTrace &trace) {
    std::fprintf(stderr, "shots=%llu lower=%.17g upper=%.17g exhausted=%s\n",
                 static_cast<unsigned long long>(trace.shots), trace.lower, trace.upper,
                 trace.exhausted ? "true" : "false");
}

int run_bounds(const Options &o, Mode mode) {
    DetectorErrorModel model = load_model(o.input);
    RunConfig config = make_config(o, mode);

    std::optional<Hyperrectangle> box;
    std::vector<double> nominal;
    if (mode == Mode::Accuracy) {
        if (model.is_symbolic()) {
            throw std::invalid_argument("accuracy needs concrete probabilities; the model is symbolic");
        }
        nominal = model.concrete_probabilities();
    } else {
        if (!o.box_file.empty()) {
            box = read_box_file(o.box_file, model.n_channels());
        } else {
            if (model.is_symbolic()) {
                throw std::invalid_argument("symbolic model: robustness needs --box-file");
            }
            double lo = 1, hi = 1;
            if (!o.box_scale.empty()) {
                auto comma = o.box_scale.find(',');
                if (comma == std::string::npos) {
                    throw std::invalid_argument("--box-scale expects '<lo>,<hi>'");
                }
                lo = std::stod(o.box_scale.substr(0, comma));
                hi = std::stod(o.box_scale.substr(comma + 1));
            }
            box = Hyperrectangle::scaled(model.concrete_probabilities(), lo, hi);
        }
        nominal = box->midpoint();
    }
    DecoderFactory factory = make_factory(o.decoder, model, nominal);

    std::ofstream trace_file;
    std::ostream *trace_out = &std::cout;
    if (!o.trace_path.empty()) {
        trace_file.open(o.trace_path);
        if (!trace_file) {
            throw std::runtime_error("cannot write '" + o.trace_path + "'");
        }
        trace_out = &trace_file;
    }
    JsonLinesSink sink(*trace_out, trace_header(config, model));
    RunOptions options;
    options.sink = &sink;
    BoundsTrace trace = mode == Mode::Accuracy ? run_accuracy(model, nominal, factory, config, options)
                                               : run_robustness(model, factory, *box, config, options);
    print_summary(trace);
    return 0;
}

int run_compile(const Options &o) {
    DetectorErrorModel model = compile_to_dem(parse_symbolic_program(read_file(o.input)));
    std::string text = model.is_symbolic() ? write_symbolic_dem(model) : write_dem(model);
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output);
        if (!(out << text)) {
            throw std::runtime_error("cannot write '" + o.output + "'");
        }
    }
    return 0;
}

int run_check(const Options &o) {
    QecProgram program = parse_symbolic_program(read_file(o.input));
    WellDefinednessReport report = check_well_defined(program);
    for (const auto &v : report.declarations) {
        const Declaration &d = program.declarations[v.declaration];
        std::cout << "line " << d.line << ": "
                  << (d.kind == DeclarationKind::Syndrome ? "DETECTOR" : "OBSERVABLE") << " "
                  << (v.deterministic ? (v.value ? "deterministic 1" : "deterministic 0") : "RANDOM") << "\n";
    }
    std::cout << (report.well_defined ? "well-defined" : "not well-defined") << "\n";
    return report.well_defined ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bounds on the logical error rate of QEC decoders by error-space enumeration"};
    app.require_subcommand(1);
    Options o;

    auto *compile = app.add_subcommand("compile", "Compile a program to a detector error model");
    compile->add_option("program", o.input, "Program file")->required();
    compile->add_option("-o,--output", o.output, "Output path (default stdout)");

    auto *check = app.add_subcommand("check", "Report whether every declaration is deterministic");
    check->add_option("program", o.input, "Program file")->required();

    auto add_run_flags = [&](CLI::App *cmd) {
        cmd->add_option("model", o.input, "Detector error model (.dem) or program")->required();
        cmd->add_option("--decoder", o.decoder, "ml, greedy or exec:<command>");
        cmd->add_option("--strategy", o.strategy, "hamming, split, local-flip, local-shift, local-both");
        cmd->add_option("--distance", o.distance, "Code distance ansatz for split search");
        cmd->add_option("--workers", o.workers, "Enumeration workers")->check(CLI::PositiveNumber);
        cmd->add_option("--max-shots", o.max_shots, "Stop after this many distinct strings");
        cmd->add_option("--time-limit", o.time_limit, "Wall-clock limit in seconds");
        cmd->add_option("--seed", o.seed, "Random seed");
        cmd->add_option("--trace", o.trace_path, "Trace output path (default stdout)");
    };
    auto *accuracy = app.add_subcommand("accuracy", "Bound the logical error rate at the model's probabilities");
    add_run_flags(accuracy);
    accuracy->add_option("--samples", o.samples, "Unseen-string samples per checkpoint (0 disables)");
    accuracy->add_option("--alpha", o.alpha, "Confidence parameter of sampled bounds");

    auto *robustness = app.add_subcommand("robustness", "Bound the worst-case logical error rate over a box");
    add_run_flags(robustness);
    auto *scale = robustness->add_option("--box-scale", o.box_scale, "Box [lo*p, hi*p] around the model, as lo,hi");
    robustness->add_option("--box-file", o.box_file, "One '<lower> <upper>' line per channel")->excludes(scale);

    CLI11_PARSE(app, argc, argv);

    try {
        if (compile->parsed()) {
            return run_compile(o);
        }
        if (check->parsed()) {
            return run_check(o);
        }
        return run_bounds(o, accuracy->parsed() ? Mode::Accuracy : Mode::Robustness);
    } catch (const ParseError &e) {
        std::cerr << o.input << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    } catch (const DemParseError &e) {
        std::cerr << o.input << ": " << e.what() << "\n";
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
