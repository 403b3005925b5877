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


// Serves a built-in decoder over the line protocol on stdin/stdout, for use with
// `--decoder exec:<command>`.
//
//     qecbound-decoder <model.dem> [--decoder ml|greedy]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qecbound/decoders.h"
#include "qecbound/dem.h"
#include "qecbound/external_decoder.h"

int main(int argc, char **argv) {
    CLI::App app{"Line-protocol decoder server"};
    std::string path;
    std::string kind = "ml";
    app.add_option("model", path, "Detector error model (.dem)")->required();
    app.add_option("--decoder", kind, "ml or greedy")->check(CLI::IsMember({"ml", "greedy"}));
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open '" + path + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        qecbound::DetectorErrorModel model = qecbound::parse_dem(text.str());
        std::vector<double> v = model.concrete_probabilities();
        std::unique_ptr<qecbound::Decoder> decoder;
        if (kind == "ml") {
            decoder = qecbound::build_ml_decoder(model, v);
        } else {
            decoder = qecbound::build_greedy_decoder(model, v);
        }
        return qecbound::serve_decoder(*decoder, std::cin, std::cout, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "qecbound-decoder: " << e.what() << "\n";
        return 1;
    }
}
