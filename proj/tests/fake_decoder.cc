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


// Misbehaving decoder processes for protocol tests.
//
//     fake_decoder truncate     answers each syndrome with its first n_obs characters (padded with 0)
//     fake_decoder wrong-width  answers with n_obs + 1 characters
//     fake_decoder bad-char     answers with '2' characters
//     fake_decoder no-ready     replies to INIT with garbage
//     fake_decoder die          exits after the handshake

#include <iostream>
#include <sstream>
#include <string>

int main(int argc, char **argv) {
    const std::string mode = argc > 1 ? argv[1] : "truncate";
    std::string line;
    if (!std::getline(std::cin, line)) {
        return 1;
    }
    std::istringstream init(line);
    std::string word;
    size_t n_det = 0, n_obs = 0;
    init >> word >> n_det >> n_obs;
    if (mode == "no-ready") {
        std::cout << "HELLO\n" << std::flush;
        return 0;
    }
    std::cout << "READY\n" << std::flush;
    if (mode == "die") {
        return 0;
    }
    while (std::getline(std::cin, line)) {
        if (line == "QUIT") {
            return 0;
        }
        size_t k = std::stoul(line.substr(7));
        std::string reply;
        for (size_t i = 0; i < k; i++) {
            std::getline(std::cin, line);
            std::string answer;
            if (mode == "wrong-width") {
                answer.assign(n_obs + 1, '0');
            } else if (mode == "bad-char") {
                answer.assign(n_obs, '2');
            } else {
                answer = line.substr(0, n_obs);
                answer.resize(n_obs, '0');
            }
            reply += answer + "\n";
        }
        std::cout << reply << std::flush;
    }
    return 0;
}
