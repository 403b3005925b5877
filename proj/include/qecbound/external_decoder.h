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

// Decoders running in a child process, spoken to over its stdin/stdout:
//
//     -> INIT <n_det> <n_obs>
//     <- READY
//     -> DECODE <k>            followed by k lines of n_det characters from {0,1}
//     <- k lines of n_obs characters from {0,1}
//     -> QUIT

#ifndef QECBOUND_EXTERNAL_DECODER_H
#define QECBOUND_EXTERNAL_DECODER_H

#include <cstdio>
#include <iosfwd>
#include <memory>
#include <string>

#include "qecbound/decoders.h"

namespace qecbound {

inline constexpr size_t kDefaultExternalBatch = 1024;

class ExternalDecoder : public Decoder {
   public:
    /// Spawns `/bin/sh -c command` and performs the handshake. Throws DecoderError on failure.
    ExternalDecoder(const std::string &command, size_t n_det, size_t n_obs, size_t batch_size = kDefaultExternalBatch);
    ~ExternalDecoder() override;

    ExternalDecoder(const ExternalDecoder &) = delete;
    ExternalDecoder &operator=(const ExternalDecoder &) = delete;

    std::string_view kind() const override {
        return "external";
    }
    size_t num_detectors() const override {
        return n_det_;
    }
    size_t num_observables() const override {
        return n_obs_;
    }
    BitVector decode(const BitVector &syndrome) override;
    std::vector<BitVector> decode_batch(std::span<const BitVector> syndromes) override;

    /// Number of syndromes sent so far.
    size_t calls() const {
        return calls_;
    }

   private:
    void send(const std::string &text);
    std::string receive_line(const char *context);
    void decode_chunk(std::span<const BitVector> syndromes, std::vector<BitVector> &out);
    void shutdown();

    std::string command_;
    size_t n_det_;
    size_t n_obs_;
    size_t batch_size_;
    size_t calls_ = 0;
    int pid_ = -1;
    FILE *to_child_ = nullptr;
    FILE *from_child_ = nullptr;
    bool broken_ = false;
};

std::unique_ptr<ExternalDecoder> connect_external_decoder(const std::string &command, size_t n_det, size_t n_obs,
                                                          size_t batch_size = kDefaultExternalBatch);

/// Decoder-side loop of the protocol: answers requests from `in` on `out` using `decoder` until
/// QUIT or end of input. Returns 0 on a clean QUIT, nonzero on a protocol violation (reported on
/// `err`).
int serve_decoder(Decoder &decoder, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace qecbound

#endif
