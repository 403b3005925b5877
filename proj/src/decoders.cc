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

#include "qecbound/decoders.h"

#include <algorithm>
#include <bit>

#include "qecbound/polynomial.h"

namespace qecbound {

void Decoder::check_syndrome(const BitVector &syndrome) const {
    if (syndrome.size() != num_detectors()) {
        throw DecoderError("syndrome has " + std::to_string(syndrome.size()) + " bits, decoder expects " +
                           std::to_string(num_detectors()));
    }
}

std::vector<BitVector> Decoder::decode_batch(std::span<const BitVector> syndromes) {
    std::vector<BitVector> result;
    result.reserve(syndromes.size());
    for (const auto &s : syndromes) {
        result.push_back(decode(s));
    }
    return result;
}

TableDecoder::TableDecoder(size_t n_det, size_t n_obs, std::unordered_map<BitVector, BitVector> table, std::string kind)
    : n_det_(n_det), n_obs_(n_obs), table_(std::move(table)), kind_(std::move(kind)) {
    for (const auto &[s, o] : table_) {
        if (s.size() != n_det_ || o.size() != n_obs_) {
            throw std::invalid_argument("TableDecoder: entry width does not match the decoder dimensions");
        }
    }
}

BitVector TableDecoder::decode(const BitVector &syndrome) {
    check_syndrome(syndrome);
    auto it = table_.find(syndrome);
    return it == table_.end() ? BitVector(n_obs_) : it->second;
}

std::unordered_map<BitVector, std::vector<ObservableClass>> ml_class_probabilities(const DetectorErrorModel &model,
                                                                                  std::span<const double> v,
                                                                                  size_t channel_cap) {
    const size_t n = model.n_channels();
    if (n > channel_cap) {
        throw DecoderError("maximum-likelihood table needs 2^" + std::to_string(n) + " strings; the cap is " +
                           std::to_string(channel_cap) + " channels");
    }
    if (v.size() != n) {
        throw std::invalid_argument("ml decoder: probability vector length mismatch");
    }
    MintermEvaluator eval(std::vector<double>(v.begin(), v.end()));
    FootprintTable table(model);

    struct Slot {
        BitVector observable;
        CompensatedSum probability;
    };
    std::unordered_map<BitVector, std::vector<Slot>> classes;

    // Gray-code walk: consecutive strings differ in one channel, so footprints update by one XOR.
    BitVector syndrome(model.n_detectors), observable(model.n_observables);
    const uint64_t total = uint64_t{1} << n;
    for (uint64_t k = 0; k < total; k++) {
        uint64_t gray = k ^ (k >> 1);
        if (k > 0) {
            size_t flipped = static_cast<size_t>(std::countr_zero(k));
            syndrome ^= table.detectors_of(flipped);
            observable ^= table.observables_of(flipped);
        }
        double p = eval.base();
        for (uint64_t rest = gray; rest; rest &= rest - 1) {
            p *= eval.point()[std::countr_zero(rest)] / (1 - eval.point()[std::countr_zero(rest)]);
        }
        auto &slots = classes[syndrome];
        auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot &s) { return s.observable == observable; });
        if (it == slots.end()) {
            slots.push_back(Slot{observable, {}});
            it = slots.end() - 1;
        }
        it->probability.add(p);
    }

    std::unordered_map<BitVector, std::vector<ObservableClass>> result;
    for (auto &[s, slots] : classes) {
        auto &out = result[s];
        for (auto &slot : slots) {
            out.push_back(ObservableClass{slot.observable, slot.probability.value()});
        }
    }
    return result;
}

std::unique_ptr<MlDecoder> build_ml_decoder(const DetectorErrorModel &model, std::span<const double> v,
                                            size_t channel_cap) {
    auto classes = ml_class_probabilities(model, v, channel_cap);
    std::unordered_map<BitVector, BitVector> table;
    for (const auto &[syndrome, options] : classes) {
        const ObservableClass *best = nullptr;
        for (const auto &c : options) {
            if (!best || c.probability > best->probability ||
                (c.probability == best->probability && c.observable.str() < best->observable.str())) {
                best = &c;
            }
        }
        if (best->observable.any()) {
            table.emplace(syndrome, best->observable);
        }
    }
    return std::make_unique<MlDecoder>(model.n_detectors, model.n_observables, std::move(table), "ml");
}

GreedyDecoder::GreedyDecoder(const DetectorErrorModel &model, std::span<const double> v)
    : n_det_(model.n_detectors),
      n_obs_(model.n_observables),
      dets_(model.det_footprint),
      probability_(v.begin(), v.end()),
      channels_of_detector_(model.n_detectors) {
    if (v.size() != model.n_channels()) {
        throw std::invalid_argument("greedy decoder: probability vector length mismatch");
    }
    FootprintTable table(model);
    for (size_t c = 0; c < model.n_channels(); c++) {
        obs_.push_back(table.observables_of(c));
        for (uint32_t d : dets_[c]) {
            channels_of_detector_[d].push_back(static_cast<uint32_t>(c));
        }
    }
}

BitVector GreedyDecoder::decode(const BitVector &syndrome) {
    check_syndrome(syndrome);
    BitVector residual = syndrome;
    BitVector prediction(n_obs_);
    std::vector<uint32_t> candidates;
    while (residual.any()) {
        candidates.clear();
        residual.for_each_one([&](size_t d) {
            candidates.insert(candidates.end(), channels_of_detector_[d].begin(), channels_of_detector_[d].end());
        });
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        long best_score = 0;
        uint32_t best = UINT32_MAX;
        for (uint32_t c : candidates) {
            long inside = 0;
            for (uint32_t d : dets_[c]) {
                inside += residual[d];
            }
            long score = 2 * inside - static_cast<long>(dets_[c].size());
            // Candidates are visited in ascending index, so strict comparisons keep the lower index.
            if (score > best_score || (score == best_score && best != UINT32_MAX && probability_[c] > probability_[best])) {
                best_score = score;
                best = c;
            }
        }
        if (best == UINT32_MAX) {
            break;  // no channel explains more than it adds; give up on the residual
        }
        for (uint32_t d : dets_[best]) {
            residual.flip(d);
        }
        prediction ^= obs_[best];
    }
    return prediction;
}

std::unique_ptr<GreedyDecoder> build_greedy_decoder(const DetectorErrorModel &model, std::span<const double> v) {
    return std::make_unique<GreedyDecoder>(model, v);
}

bool is_logical_error(Decoder &decoder, const FootprintTable &table, const ErrorBitstring &e) {
    return decoder.decode(table.syndrome(e)) != table.observable(e);
}

}  // namespace qecbound
