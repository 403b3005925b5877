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

#include "qecbound/external_decoder.h"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

namespace qecbound {

namespace {

void ignore_sigpipe() {
    static std::once_flag once;
    std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

std::string abbreviate(const std::string &payload) {
    constexpr size_t kMax = 80;
    return payload.size() <= kMax ? payload : payload.substr(0, kMax) + "...";
}

bool is_bit_line(const std::string &line, size_t width) {
    return line.size() == width && line.find_first_not_of("01") == std::string::npos;
}

}  // namespace

ExternalDecoder::ExternalDecoder(const std::string &command, size_t n_det, size_t n_obs, size_t batch_size)
    : command_(command), n_det_(n_det), n_obs_(n_obs), batch_size_(batch_size == 0 ? 1 : batch_size) {
    ignore_sigpipe();
    int in_pipe[2], out_pipe[2];  // in: parent -> child stdin; out: child stdout -> parent
    if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
        throw DecoderError(std::string("pipe: ") + std::strerror(errno));
    }
    if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
        ::close(in_pipe[0]);
        ::close(in_pipe[1]);
        throw DecoderError(std::string("pipe: ") + std::strerror(errno));
    }
    pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
            ::close(fd);
        }
        throw DecoderError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
        ::_exit(127);
    }
    pid_ = pid;
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    to_child_ = ::fdopen(in_pipe[1], "w");
    from_child_ = ::fdopen(out_pipe[0], "r");
    if (!to_child_ || !from_child_) {
        broken_ = true;
        shutdown();
        throw DecoderError("fdopen failed");
    }

    try {
        send("INIT " + std::to_string(n_det_) + " " + std::to_string(n_obs_) + "\n");
        std::string reply = receive_line("handshake");
        if (reply != "READY") {
            throw DecoderError("external decoder '" + command_ + "': expected READY, got '" + abbreviate(reply) + "'");
        }
    } catch (...) {
        broken_ = true;
        shutdown();
        throw;
    }
}

ExternalDecoder::~ExternalDecoder() {
    shutdown();
}

void ExternalDecoder::send(const std::string &text) {
    if (std::fwrite(text.data(), 1, text.size(), to_child_) != text.size() || std::fflush(to_child_) != 0) {
        broken_ = true;
        throw DecoderError("external decoder '" + command_ + "': write failed (" + std::strerror(errno) + ")");
    }
}

std::string ExternalDecoder::receive_line(const char *context) {
    char *buffer = nullptr;
    size_t capacity = 0;
    ssize_t length = ::getline(&buffer, &capacity, from_child_);
    if (length < 0) {
        std::free(buffer);
        broken_ = true;
        throw DecoderError("external decoder '" + command_ + "': stream closed during " + context);
    }
    std::string line(buffer, static_cast<size_t>(length));
    std::free(buffer);
    if (!line.empty() && line.back() == '\n') {
        line.pop_back();
    } else {
        broken_ = true;
        throw DecoderError("external decoder '" + command_ + "': unterminated line '" + abbreviate(line) + "'");
    }
    return line;
}

void ExternalDecoder::decode_chunk(std::span<const BitVector> syndromes, std::vector<BitVector> &out) {
    std::string request = "DECODE " + std::to_string(syndromes.size()) + "\n";
    request.reserve(request.size() + syndromes.size() * (n_det_ + 1));
    for (const auto &s : syndromes) {
        check_syndrome(s);
        request += s.str();
        request += '\n';
    }
    send(request);
    for (size_t k = 0; k < syndromes.size(); k++) {
        std::string line = receive_line("decode");
        if (!is_bit_line(line, n_obs_)) {
            broken_ = true;
            throw DecoderError("external decoder '" + command_ + "': protocol violation, expected " +
                               std::to_string(n_obs_) + " characters from {0,1}, got '" + abbreviate(line) + "'");
        }
        out.push_back(BitVector::from_string(line));
    }
    calls_ += syndromes.size();
}

BitVector ExternalDecoder::decode(const BitVector &syndrome) {
    return decode_batch(std::span<const BitVector>(&syndrome, 1))[0];
}

std::vector<BitVector> ExternalDecoder::decode_batch(std::span<const BitVector> syndromes) {
    if (broken_) {
        throw DecoderError("external decoder '" + command_ + "': connection is broken");
    }
    std::vector<BitVector> out;
    out.reserve(syndromes.size());
    for (size_t start = 0; start < syndromes.size(); start += batch_size_) {
        size_t count = std::min(batch_size_, syndromes.size() - start);
        decode_chunk(syndromes.subspan(start, count), out);
    }
    return out;
}

void ExternalDecoder::shutdown() {
    if (to_child_) {
        if (!broken_) {
            std::fputs("QUIT\n", to_child_);
        }
        std::fclose(to_child_);
        to_child_ = nullptr;
    }
    if (from_child_) {
        std::fclose(from_child_);
        from_child_ = nullptr;
    }
    if (pid_ > 0) {
        // Give the child a moment to exit on its own, then stop it.
        for (int attempt = 0; attempt < 200; attempt++) {
            if (::waitpid(pid_, nullptr, WNOHANG) != 0) {
                pid_ = -1;
                return;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(10));
        }
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, nullptr, 0);
        pid_ = -1;
    }
}

std::unique_ptr<ExternalDecoder> connect_external_decoder(const std::string &command, size_t n_det, size_t n_obs,
                                                          size_t batch_size) {
    return std::make_unique<ExternalDecoder>(command, n_det, n_obs, batch_size);
}

int serve_decoder(Decoder &decoder, std::istream &in, std::ostream &out, std::ostream &err) {
    std::string line;
    if (!std::getline(in, line)) {
        err << "decoder: no INIT line\n";
        return 1;
    }
    const std::string expected = "INIT " + std::to_string(decoder.num_detectors()) + " " +
                                 std::to_string(decoder.num_observables());
    if (line != expected) {
        err << "decoder: expected '" << expected << "', got '" << line << "'\n";
        return 2;
    }
    out << "READY\n" << std::flush;

    std::vector<BitVector> batch;
    while (std::getline(in, line)) {
        if (line == "QUIT") {
            return 0;
        }
        if (line.rfind("DECODE ", 0) != 0) {
            err << "decoder: unexpected request '" << line << "'\n";
            return 2;
        }
        size_t k = 0;
        try {
            k = std::stoul(line.substr(7));
        } catch (const std::exception &) {
            err << "decoder: bad count in '" << line << "'\n";
            return 2;
        }
        batch.clear();
        for (size_t i = 0; i < k; i++) {
            if (!std::getline(in, line) || !is_bit_line(line, decoder.num_detectors())) {
                err << "decoder: bad syndrome line '" << line << "'\n";
                return 2;
            }
            batch.push_back(BitVector::from_string(line));
        }
        std::string reply;
        for (const auto &prediction : decoder.decode_batch(batch)) {
            reply += prediction.str();
            reply += '\n';
        }
        out << reply << std::flush;
    }
    return 1;
}

}  // namespace qecbound
