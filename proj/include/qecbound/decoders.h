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

#ifndef QECBOUND_DECODERS_H
#define QECBOUND_DECODERS_H

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qecbound/bit_vector.h"
#include "qecbound/dem.h"
#include "qecbound/errorspace.h"

namespace qecbound {

class DecoderError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A map from syndromes (n_det bits) to predicted observable flips (n_obs bits). Answers must not
/// depend on earlier calls.
class Decoder {
   public:
    virtual ~Decoder() = default;

    virtual std::string_view kind() const = 0;
    virtual size_t num_detectors() const = 0;
    virtual size_t num_observables() const = 0;

    virtual BitVector decode(const BitVector &syndrome) = 0;
    virtual std::vector<BitVector> decode_batch(std::span<const BitVector> syndromes);

   protected:
    void check_syndrome(const BitVector &syndrome) const;
};

/// Creates the decoder instance owned by one worker.
using DecoderFactory = std::function<std::unique_ptr<Decoder>(size_t worker)>;

/// Fixed syndrome -> prediction table; unlisted syndromes decode to all-zeros.
class TableDecoder : public Decoder {
   public:
    TableDecoder(size_t n_det, size_t n_obs, std::unordered_map<BitVector, BitVector> table, std::string kind = "table");

    std::string_view kind() const override {
        return kind_;
    }
    size_t num_detectors() const override {
        return n_det_;
    }
    size_t num_observables() const override {
        return n_obs_;
    }
    BitVector decode(const BitVector &syndrome) override;

    const std::unordered_map<BitVector, BitVector> &table() const {
        return table_;
    }

   private:
    size_t n_det_;
    size_t n_obs_;
    std::unordered_map<BitVector, BitVector> table_;
    std::string kind_;
};

/// Maximum-likelihood lookup table built by enumerating all 2^n error strings.
class MlDecoder : public TableDecoder {
   public:
    using TableDecoder::TableDecoder;
};

inline constexpr size_t kDefaultMlChannelCap = 24;

struct ObservableClass {
    BitVector observable;
    double probability = 0;
};

/// Total probability of each (syndrome, observable) pair, from all 2^n error strings.
std::unordered_map<BitVector, std::vector<ObservableClass>> ml_class_probabilities(
    const DetectorErrorModel &model, std::span<const double> v, size_t channel_cap = kDefaultMlChannelCap);

/// Per syndrome, the observable class of largest total probability; ties go to all-zeros, then to
/// the lexicographically smallest pattern. Throws DecoderError above `channel_cap` channels.
std::unique_ptr<MlDecoder> build_ml_decoder(const DetectorErrorModel &model, std::span<const double> v,
                                            size_t channel_cap = kDefaultMlChannelCap);

/// Greedy footprint peeling: repeatedly apply the channel maximizing
/// |footprint ∩ residual| - |footprint \ residual| while that score is positive.
class GreedyDecoder : public Decoder {
   public:
    GreedyDecoder(const DetectorErrorModel &model, std::span<const double> v);

    std::string_view kind() const override {
        return "greedy";
    }
    size_t num_detectors() const override {
        return n_det_;
    }
    size_t num_observables() const override {
        return n_obs_;
    }
    BitVector decode(const BitVector &syndrome) override;

   private:
    size_t n_det_;
    size_t n_obs_;
    std::vector<std::vector<uint32_t>> dets_;
    std::vector<BitVector> obs_;
    std::vector<double> probability_;
    std::vector<std::vector<uint32_t>> channels_of_detector_;
};

std::unique_ptr<GreedyDecoder> build_greedy_decoder(const DetectorErrorModel &model, std::span<const double> v);

/// True iff the decoder mispredicts the observable flips of e.
bool is_logical_error(Decoder &decoder, const FootprintTable &table, const ErrorBitstring &e);

}  // namespace qecbound

#endif
